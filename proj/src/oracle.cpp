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

#include "photondistill/oracle.hpp"

#include <cmath>

#include "photondistill/conditional.hpp"

namespace photondistill {

using std::complex;

std::complex<double> FockPolynomial::amplitude(const Occupation& n) const {
    const auto it = terms_.find(n);
    return it == terms_.end() ? complex<double>{0.0, 0.0} : it->second;
}

FockPolynomial FockPolynomial::from_terms(
    std::map<Occupation, std::complex<double>> terms, int grade) {
    FockPolynomial p;
    p.terms_ = std::move(terms);
    p.grade_ = grade;
    return p;
}

FockPolynomial expand(const Unitary& u, const OccupationVector& s) {
    const int n = u.dim();
    if (s.size() != n) throw DimensionError("expand: occupation size != network size");
    const int photons = s.weight();
    if (photons > kMaxExpansionPhotons) {
        throw SizeExceededError("expand: photon number exceeds cap 12");
    }

    // State as monomial coefficients in the output creation operators,
    // keyed by exponent vector. Start from the (empty-product) vacuum and
    // multiply in one transformed operator per occupied input.
    std::map<std::vector<int>, complex<double>> acc;
    acc[std::vector<int>(static_cast<std::size_t>(n), 0)] = {1.0, 0.0};
    for (const int input : s.support()) {
        std::map<std::vector<int>, complex<double>> next;
        for (const auto& [expo, coeff] : acc) {
            for (int k = 0; k < n; ++k) {
                const complex<double> contribution = coeff * u(k, input);
                if (std::abs(contribution) <= kExpansionPruneTol) continue;
                std::vector<int> key = expo;
                ++key[static_cast<std::size_t>(k)];
                next[key] += contribution;
            }
        }
        acc = std::move(next);
    }

    // Monomial -> Fock amplitude: (a_1†)^{n_1}...|0> = sqrt(prod n_k!) |n>.
    std::map<std::vector<int>, complex<double>> terms;
    for (auto& [expo, coeff] : acc) {
        if (std::abs(coeff) <= kExpansionPruneTol) continue;
        double norm = 1.0;
        for (const int e : expo) {
            for (int i = 2; i <= e; ++i) norm *= static_cast<double>(i);
        }
        terms[expo] = coeff * std::sqrt(norm);
    }
    return FockPolynomial::from_terms(std::move(terms), photons);
}

double outcome_probability(const Unitary& u, const InputEnsemble& ensemble,
                           std::span<const int> occupation) {
    const int n = u.dim();
    if (ensemble.size() != n) {
        throw DimensionError("outcome_probability: ensemble size != network size");
    }
    if (static_cast<int>(occupation.size()) != n) {
        throw DimensionError("outcome_probability: occupation size != network size");
    }
    int target_total = 0;
    for (const int c : occupation) {
        if (c < 0) throw ValidationError("outcome_probability: negative count");
        target_total += c;
    }
    const std::vector<int> key(occupation.begin(), occupation.end());

    // Photon number is conserved, so only input occupations of matching
    // weight contribute. Walk all 2^N of them; the weight() factor kills
    // those outside the ensemble support.
    double prob = 0.0;
    const std::uint64_t n_states = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < n_states; ++mask) {
        std::vector<int> bits(static_cast<std::size_t>(n), 0);
        int w = 0;
        for (int i = 0; i < n; ++i) {
            if (mask & (std::uint64_t{1} << i)) {
                bits[static_cast<std::size_t>(i)] = 1;
                ++w;
            }
        }
        if (w != target_total) continue;
        const auto s = OccupationVector::from_bits(bits);
        const double ps = weight(ensemble, s);
        if (ps == 0.0) continue;
        const auto state = expand(u, s);
        prob += ps * std::norm(state.amplitude(key));
    }
    return prob;
}

}  // namespace photondistill
