/**
 * Copyright 2026 The photon-distill Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "photondistill/conditional.hpp"
#include "photondistill/oracle.hpp"

using namespace photondistill;
using std::complex;

namespace {

Unitary beam_splitter() {
    Eigen::MatrixXcd bs(2, 2);
    bs << 1, -1, 1, 1;
    bs /= std::sqrt(2.0);
    return Unitary::from_entries(bs);
}

}  // namespace

TEST_CASE("expand on the beam splitter") {
    const Unitary bs = beam_splitter();

    SUBCASE("single photon splits evenly") {
        const auto psi = expand(bs, OccupationVector::from_bits({1, 0}));
        CHECK(psi.grade() == 1);
        CHECK(std::abs(psi.amplitude({1, 0}) - complex<double>(1 / std::sqrt(2.0))) <
              1e-15);
        CHECK(std::abs(psi.amplitude({0, 1}) - complex<double>(1 / std::sqrt(2.0))) <
              1e-15);
        CHECK(psi.amplitude({2, 0}) == complex<double>(0.0));   // absent term
    }

    SUBCASE("two photons bunch") {
        const auto psi = expand(bs, OccupationVector::from_bits({1, 1}));
        CHECK(psi.grade() == 2);
        CHECK(std::abs(psi.amplitude({1, 1})) < 1e-15);
        CHECK(std::abs(psi.amplitude({2, 0}) - complex<double>(-1 / std::sqrt(2.0))) <
              1e-15);
        CHECK(std::abs(psi.amplitude({0, 2}) - complex<double>(1 / std::sqrt(2.0))) <
              1e-15);
    }

    SUBCASE("vacuum in, vacuum out") {
        const auto psi = expand(bs, OccupationVector::from_bits({0, 0}));
        CHECK(psi.grade() == 0);
        CHECK(std::abs(psi.amplitude({0, 0}) - complex<double>(1.0)) < 1e-15);
    }
}

TEST_CASE("expansion preserves norm") {
    // sum over terms of |amplitude|^2 must be 1: the network is lossless
    for (std::uint64_t seed : {3ull, 17ull}) {
        const Unitary u = haar_random(4, seed);
        for (const auto& bits :
             {std::vector<int>{1, 0, 0, 0}, std::vector<int>{1, 1, 0, 1},
              std::vector<int>{1, 1, 1, 1}}) {
            const auto psi = expand(u, OccupationVector::from_bits(bits));
            double norm2 = 0.0;
            int want_grade = 0;
            for (int b : bits) want_grade += b;
            CHECK(psi.grade() == want_grade);
            for (const auto& [occ, amp] : psi.terms()) {
                int tot = 0;
                for (int k : occ) tot += k;
                CHECK(tot == want_grade);
                norm2 += std::norm(amp);
            }
            CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("expansion photon cap") {
    const Unitary u = dft(13);
    CHECK_THROWS_AS(expand(u, OccupationVector::from_bits(std::vector<int>(13, 1))),
                    SizeExceededError);
}

TEST_CASE("outcome_probability agrees with the permanent engine") {
    // the two code paths share no kernels; agreement is a real cross-check
    const Unitary f = dft(3);
    const auto ens = InputEnsemble::from_probs({0.2, 0.5, 0.7});
    const auto pat = DetectionPattern::from_counts({1, 1});

    const int occ0[] = {0, 1, 1};
    const int occ1[] = {1, 1, 1};
    CHECK(outcome_probability(f, ens, occ0) ==
          doctest::Approx(0.04222222222222223).epsilon(1e-12));
    CHECK(outcome_probability(f, ens, occ1) ==
          doctest::Approx(0.023333333333333355).epsilon(1e-12));
    CHECK(std::abs(outcome_probability(f, ens, occ0) -
                   unnormalized_coefficient(f, ens, pat, 0)) <= 1e-10);
    CHECK(std::abs(outcome_probability(f, ens, occ1) -
                   unnormalized_coefficient(f, ens, pat, 1)) <= 1e-10);
}

TEST_CASE("outcome_probability sweeps every pattern consistently") {
    const Unitary u = haar_random(3, 23);
    const auto ens = InputEnsemble::from_probs({0.35, 0.8, 0.15});
    for (int n2 = 0; n2 <= 3; ++n2) {
        for (int n3 = 0; n2 + n3 <= 3; ++n3) {
            const auto pat = DetectionPattern::from_counts({n2, n3});
            for (int n1 = 0; n1 + n2 + n3 <= 3; ++n1) {
                const int occ[] = {n1, n2, n3};
                CHECK(std::abs(outcome_probability(u, ens, occ) -
                               unnormalized_coefficient(u, ens, pat, n1)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("oracle shape checks") {
    const Unitary u = dft(3);
    const auto ens = InputEnsemble::from_probs({0.2, 0.5, 0.7});
    const int short_occ[] = {1, 1};
    CHECK_THROWS_AS(outcome_probability(u, ens, short_occ), DimensionError);
    CHECK_THROWS_AS(expand(u, OccupationVector::from_bits({1, 0})), DimensionError);
}
