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
#include <numeric>

#include "photondistill/conditional.hpp"

using namespace photondistill;

namespace {

Unitary beam_splitter() {
    Eigen::MatrixXcd bs(2, 2);
    bs << 1, -1, 1, 1;
    bs /= std::sqrt(2.0);
    return Unitary::from_entries(bs);
}

}  // namespace

TEST_CASE("weight of an occupation under the ensemble") {
    const auto ens = InputEnsemble::from_probs({0.3, 0.6, 0.0});
    CHECK(weight(ens, OccupationVector::from_bits({1, 1, 0})) ==
          doctest::Approx(0.18));
    CHECK(weight(ens, OccupationVector::from_bits({0, 0, 0})) ==
          doctest::Approx(0.7 * 0.4));
    // occupying a dead mode has zero probability
    CHECK(weight(ens, OccupationVector::from_bits({0, 0, 1})) == 0.0);

    CHECK_THROWS_AS(weight(ens, OccupationVector::from_bits({1, 0})), DimensionError);
}

TEST_CASE("identity network leaves the marginal untouched") {
    // p = (0.3, 0.6, 0), detect exactly one photon on mode 2: herald fires
    // with probability p_2 = 0.6 and mode 1 keeps its own statistics.
    const Unitary id = Unitary::from_entries(Eigen::MatrixXcd::Identity(3, 3));
    const auto ens = InputEnsemble::from_probs({0.3, 0.6, 0.0});
    const auto dist = evaluate(id, ens, DetectionPattern::from_counts({1, 0}));

    CHECK(dist.herald_prob == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(dist.coefficient(0) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(dist.coefficient(1) == doctest::Approx(0.3).epsilon(1e-12));
    REQUIRE(dist.ratio_10.has_value());
    CHECK(*dist.ratio_10 == doctest::Approx(3.0 / 7.0).epsilon(1e-12));
    CHECK(!dist.zero_herald());
    // coefficients normalize
    CHECK(std::accumulate(dist.coefficients.begin(), dist.coefficients.end(), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("balanced three-mode network fixture") {
    // frozen against an independent brute-force implementation
    const Unitary f = dft(3);
    const auto ens = InputEnsemble::from_probs({0.2, 0.5, 0.7});
    const auto pat = DetectionPattern::from_counts({1, 1});

    CHECK(unnormalized_coefficient(f, ens, pat, 0) ==
          doctest::Approx(0.04222222222222223).epsilon(1e-12));
    CHECK(unnormalized_coefficient(f, ens, pat, 1) ==
          doctest::Approx(0.023333333333333355).epsilon(1e-12));

    const auto dist = evaluate(f, ens, pat);
    CHECK(dist.herald_prob == doctest::Approx(0.065555555555555589).epsilon(1e-12));
    CHECK(dist.coefficient(0) == doctest::Approx(0.64406779661016933).epsilon(1e-12));
    CHECK(dist.coefficient(1) == doctest::Approx(0.35593220338983067).epsilon(1e-12));
}

TEST_CASE("four-mode balanced fixture") {
    const Unitary f = dft(4);
    const auto ens = InputEnsemble::from_probs({0.9, 0.05, 0.3, 0.55});
    const auto dist = evaluate(f, ens, DetectionPattern::from_counts({1, 1, 0}));

    CHECK(dist.herald_prob == doctest::Approx(0.055293749999999989).epsilon(1e-12));
    CHECK(dist.coefficient(0) == doctest::Approx(0.81315700237368593).epsilon(1e-12));
    CHECK(dist.coefficient(1) == doctest::Approx(0.18684299762631409).epsilon(1e-12));
    CHECK(dist.coefficient(2) <= 1e-20);   // destructive interference kills c_2
}

TEST_CASE("two-photon interference on the beam splitter") {
    const Unitary bs = beam_splitter();
    const auto ens = InputEnsemble::from_probs({1.0, 1.0});

    SUBCASE("no detection: photons bunch into the kept mode") {
        const auto pat = DetectionPattern::from_counts({0});
        CHECK(unnormalized_coefficient(bs, ens, pat, 2) ==
              doctest::Approx(0.5).epsilon(1e-12));
        CHECK(unnormalized_coefficient(bs, ens, pat, 1) <= 1e-15);
        CHECK(unnormalized_coefficient(bs, ens, pat, 0) == 0.0);

        const auto dist = evaluate(bs, ens, pat);
        CHECK(dist.herald_prob == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(dist.coefficient(2) == doctest::Approx(1.0).epsilon(1e-11));
        CHECK(!dist.ratio_10.has_value());   // c0 = 0
    }

    SUBCASE("both photons detected") {
        const auto dist = evaluate(bs, ens, DetectionPattern::from_counts({2}));
        CHECK(dist.herald_prob == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(dist.coefficient(0) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("coefficients beyond the photon supply are absent") {
    // M = 2 active inputs, D = 1 detected: n1 can only reach M - D = 1.
    const auto ens = InputEnsemble::from_probs({0.3, 0.6, 0.0});
    const auto dist =
        evaluate(dft(3), ens, DetectionPattern::from_counts({1, 0}));
    CHECK(static_cast<int>(dist.coefficients.size()) == 2);
    CHECK(dist.coefficient(2) == 0.0);
    CHECK(dist.coefficient(-1) == 0.0);
}

TEST_CASE("zero-herald pattern") {
    // demanding a photon from an all-vacuum input can never fire
    const auto ens = InputEnsemble::from_probs({0.0, 0.0});
    const auto dist = evaluate(beam_splitter(), ens, DetectionPattern::from_counts({1}));
    CHECK(dist.zero_herald());
    CHECK(dist.herald_prob == 0.0);
    for (double c : dist.coefficients) CHECK(c == 0.0);
    CHECK(!dist.ratio_10.has_value());
}

TEST_CASE("evaluate dimension checks") {
    const auto ens2 = InputEnsemble::from_probs({0.5, 0.5});
    const auto ens3 = InputEnsemble::from_probs({0.5, 0.5, 0.5});
    CHECK_THROWS_AS(evaluate(beam_splitter(), ens3, DetectionPattern::from_counts({1})),
                    DimensionError);
    CHECK_THROWS_AS(
        evaluate(beam_splitter(), ens2, DetectionPattern::from_counts({1, 0})),
        DimensionError);
    CHECK_THROWS_AS(unnormalized_coefficient(beam_splitter(), ens2,
                                             DetectionPattern::from_counts({0}), -1),
                    ValidationError);
}

TEST_CASE("improvement_verdict") {
    const auto ens = InputEnsemble::from_probs({0.3, 0.6, 0.0});
    const Unitary id = Unitary::from_entries(Eigen::MatrixXcd::Identity(3, 3));

    SUBCASE("identity does not improve") {
        const auto dist = evaluate(id, ens, DetectionPattern::from_counts({1, 0}));
        const auto v = improvement_verdict(dist, ens);
        REQUIRE(v.ratio_improved.has_value());
        CHECK(!*v.ratio_improved);   // 3/7 < 1.5
        CHECK(!v.prob_improved);     // 0.3 < 0.6
        CHECK(v.single_photon_clean);
        REQUIRE(v.ratio_margin.has_value());
        CHECK(*v.ratio_margin == doctest::Approx(3.0 / 7.0 - 1.5).epsilon(1e-12));
        CHECK(*v.prob_margin == doctest::Approx(0.3 - 0.6).epsilon(1e-12));
        CHECK(!v.zero_herald);
        CHECK(!v.r_inapplicable);
        CHECK(!v.undefined_ratio);
    }

    SUBCASE("saturated input makes R inapplicable") {
        const auto sat = InputEnsemble::from_probs({1.0, 1.0});
        const auto dist =
            evaluate(beam_splitter(), sat, DetectionPattern::from_counts({0}));
        const auto v = improvement_verdict(dist, sat);
        CHECK(v.r_inapplicable);
        CHECK(!v.ratio_improved.has_value());
        CHECK(v.undefined_ratio);          // c0 = 0 with herald > 0
        CHECK(!v.single_photon_clean);     // all weight sits at n1 = 2
    }

    SUBCASE("zero herald dominates the verdict") {
        const auto vac = InputEnsemble::from_probs({0.0, 0.0});
        const auto dist =
            evaluate(beam_splitter(), vac, DetectionPattern::from_counts({1}));
        const auto v = improvement_verdict(dist, vac);
        CHECK(v.zero_herald);
        CHECK(!v.ratio_improved.has_value());
    }
}
