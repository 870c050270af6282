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

#ifndef PHOTONDISTILL_CONDITIONAL_HPP
#define PHOTONDISTILL_CONDITIONAL_HPP

#include <optional>
#include <vector>

#include "photondistill/ensemble.hpp"
#include "photondistill/unitary.hpp"

namespace photondistill {

/// Coefficients more negative than this raise NumericIntegrityError;
/// anything in (-kCoefficientClampTol, 0) is clamped to 0.
inline constexpr double kCoefficientClampTol = 1e-12;

/// Residual weight above index 1 tolerated by the cleanliness flag.
inline constexpr double kCleanlinessTol = 1e-12;

/**
 * @brief Photon-number distribution on output mode 1 conditioned on one
 * detection pattern, together with the probability of that pattern.
 *
 * coefficients[k] = P(k photons in mode 1 | pattern). When the pattern has
 * zero probability the conditional state does not exist: zero_herald() is
 * true and all coefficients are 0 by convention.
 */
struct ConditionalDistribution {
    std::vector<double> coefficients;   // c_0 .. c_{n1max}
    double herald_prob = 0.0;
    std::optional<double> ratio_10;     // c1/c0, empty when c0 == 0
    std::optional<double> ratio_21;     // c2/c1, empty when c1 == 0

    bool zero_herald() const { return herald_prob <= 0.0; }

    /// c_k, with k beyond the stored range reading as 0.
    double coefficient(int k) const {
        return (k >= 0 && k < static_cast<int>(coefficients.size()))
                   ? coefficients[static_cast<std::size_t>(k)]
                   : 0.0;
    }
};

/// Probability of the ensemble emitting exactly the occupation s:
/// prod_i p_i^{s_i} (1-p_i)^{1-s_i}. Well-defined for p_i in {0, 1}.
double weight(const InputEnsemble& ensemble, const OccupationVector& s);

/// Joint (unnormalized) probability of seeing the pattern on modes 2..N
/// and n1 photons on mode 1: the sum over compatible input occupations of
/// weight(s) * |amplitude|^2. Throws DimensionError on size mismatches.
double unnormalized_coefficient(const Unitary& u, const InputEnsemble& ensemble,
                                const DetectionPattern& pattern, int n1);

/// Full conditional distribution for the pattern. n1 runs over
/// 0 .. max(M - D, 0) where M is the number of active inputs; conservation
/// makes every larger coefficient exactly zero.
ConditionalDistribution evaluate(const Unitary& u, const InputEnsemble& ensemble,
                                 const DetectionPattern& pattern);

/**
 * @brief Comparison of a conditional distribution against its own input
 * ensemble: did heralding improve the single-photon content?
 *
 * Flags are optional where the underlying quantity can be undefined:
 * ratio_improved is empty when the output ratio does not exist (c0 == 0)
 * or the input odds ratio does not (p_max == 1).
 */
struct ImprovementVerdict {
    std::optional<bool> ratio_improved;      // c1/c0 > p_max/(1-p_max)
    bool prob_improved = false;              // c1 > p_max
    bool single_photon_clean = false;        // c_k <= kCleanlinessTol for k >= 2
    std::optional<double> ratio_margin;      // c1/c0 - R
    std::optional<double> prob_margin;       // c1 - p_max
    bool undefined_ratio = false;            // c0 == 0 with herald_prob > 0
    bool r_inapplicable = false;             // p_max == 1
    bool zero_herald = false;
};

ImprovementVerdict improvement_verdict(const ConditionalDistribution& dist,
                                       const InputEnsemble& ensemble);

}  // namespace photondistill

#endif
