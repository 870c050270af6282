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

#ifndef PHOTONDISTILL_ORACLE_HPP
#define PHOTONDISTILL_ORACLE_HPP

#include <complex>
#include <map>
#include <span>
#include <vector>

#include "photondistill/ensemble.hpp"
#include "photondistill/unitary.hpp"

namespace photondistill {

/// Photon-count cap for the symbolic expansion (term count grows like
/// N^photons before pruning).
inline constexpr int kMaxExpansionPhotons = 12;

/// Monomial coefficients below this magnitude are dropped during expansion.
inline constexpr double kExpansionPruneTol = 1e-15;

/**
 * @brief Output state in the Fock basis, produced by brute-force expansion
 * of the product of transformed creation operators. Exists purely as an
 * independent check on the permanent-based engine: no permanents anywhere
 * in this code path.
 */
class FockPolynomial {
  public:
    using Occupation = std::vector<int>;

    /// Fock amplitude <n|psi>, 0 for absent terms.
    std::complex<double> amplitude(const Occupation& n) const;

    const std::map<Occupation, std::complex<double>>& terms() const { return terms_; }

    /// Common total photon number of all stored terms (0 for vacuum).
    int grade() const { return grade_; }

    static FockPolynomial from_terms(std::map<Occupation, std::complex<double>> terms,
                                     int grade);

  private:
    std::map<Occupation, std::complex<double>> terms_;
    int grade_ = 0;
};

/// Expands U |s> term by term: each occupied input contributes one factor
/// sum_k u(k, i) a_k†, monomials collect into occupation keys, and each
/// final amplitude gains the sqrt(prod n_k!) Fock normalization.
FockPolynomial expand(const Unitary& u, const OccupationVector& s);

/// Probability of measuring exactly `occupation` across all N output
/// modes, summed over the ensemble's input occupations with their weights.
/// Brute-force path, usable as an oracle for the conditional engine.
double outcome_probability(const Unitary& u, const InputEnsemble& ensemble,
                           std::span<const int> occupation);

}  // namespace photondistill

#endif
