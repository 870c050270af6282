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

#ifndef PHOTONDISTILL_BOUNDS_HPP
#define PHOTONDISTILL_BOUNDS_HPP

#include <optional>
#include <span>
#include <vector>

#include "photondistill/conditional.hpp"
#include "photondistill/ensemble.hpp"
#include "photondistill/unitary.hpp"

namespace photondistill {

/// Numerical slack granted to every theorem check.
inline constexpr double kBoundSlackTol = 1e-9;

/// Probabilities are "all equal" for theorem tagging within this tolerance.
inline constexpr double kEqualProbTol = 1e-12;

/// Provable ceilings on the heralded ratio c1/c0.
enum class TheoremTag {
    GeneralBound,        // c1/c0 <= (M - D) * R, always
    DEqualsZero,         // D == 0: c1/c0 <= R
    DEqualsOneEqualP,    // D == 1 and all N probabilities equal: c1/c0 <= R
    DEqualsMMinusOne,    // D == M - 1: no improvement possible at all
};

const char* to_string(TheoremTag tag);

/**
 * @brief One scenario's measured ratio against everything provable about it.
 *
 * bound_value is the universal ceiling (M - D) * R (clamped at 0);
 * effective_bound additionally folds in every special-case theorem that
 * applies. A report is satisfied when the observation respects the
 * effective bound within kBoundSlackTol, vacuously for zero-herald
 * patterns. An unsatisfied report means the engine itself is broken.
 */
struct BoundReport {
    double bound_value = 0.0;
    double effective_bound = 0.0;
    std::optional<double> observed_ratio;   // empty when undefined
    double observed_c0 = 0.0;
    double observed_c1 = 0.0;
    double herald_prob = 0.0;
    double r_value = 0.0;
    double p_max = 0.0;
    int m = 0;
    int d = 0;
    std::vector<TheoremTag> theorem_tags;
    bool zero_herald = false;
    bool satisfied = false;
    std::optional<double> slack;            // bound_value - observed_ratio
};

/// The universal ceiling max(M - D, 0) * R. Throws PMaxOneError when the
/// odds ratio does not exist.
double general_bound(const InputEnsemble& ensemble, const DetectionPattern& pattern);

/// Evaluates the scenario and checks the observation against every
/// applicable theorem. Throws PMaxOneError for p_max == 1.
BoundReport check_bounds(const Unitary& u, const InputEnsemble& ensemble,
                         const DetectionPattern& pattern);

/// Convenience wrapper when the distribution is already in hand.
BoundReport check_bounds(const ConditionalDistribution& dist,
                         const InputEnsemble& ensemble,
                         const DetectionPattern& pattern);

/// True when no report in the batch shows single-photon weight appearing
/// with the vacuum term fully extinguished — i.e. a perfect heralded
/// single-photon source remains impossible across the batch.
bool perfect_output_impossible(std::span<const BoundReport> reports);

}  // namespace photondistill

#endif
