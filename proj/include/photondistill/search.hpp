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

#ifndef PHOTONDISTILL_SEARCH_HPP
#define PHOTONDISTILL_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "photondistill/conditional.hpp"
#include "photondistill/ensemble.hpp"
#include "photondistill/unitary.hpp"

namespace photondistill {

enum class Objective {
    MaxC1,        // herald-conditioned single-photon probability
    MaxRatio10,   // c1/c0
    MaxC1Clean,   // c1, restricted to distributions with no weight above 1
};

/**
 * @brief What detection patterns the search covers.
 * Fixed: every restart climbs on the one supplied pattern. EnumerateAll:
 * the patterns with D <= n_modes are assigned to restarts round-robin in
 * enumeration order, so the pattern is a per-restart categorical
 * coordinate of the search space rather than a per-evaluation maximum.
 */
struct PatternPolicy {
    enum class Kind { Fixed, EnumerateAll };
    Kind kind = Kind::EnumerateAll;
    std::optional<DetectionPattern> fixed;   // set iff kind == Fixed

    static PatternPolicy fixed_pattern(DetectionPattern p);
    static PatternPolicy enumerate_all();
};

struct SearchProblem {
    int n_modes = 0;
    InputEnsemble ensemble = InputEnsemble::from_probs({0.5});
    Objective objective = Objective::MaxC1;
    PatternPolicy pattern_policy;
    long budget = 10000;          // objective evaluations, all restarts combined
    std::uint64_t seed = 0;
    int restarts = 20;
    double cleanliness_tol = 1e-9;   // MaxC1Clean feasibility threshold
};

/// One improvement of the global incumbent: after `evaluation` objective
/// calls the best value seen was `incumbent`.
struct TracePoint {
    long evaluation = 0;
    double incumbent = 0.0;
};

struct SearchResult {
    GivensParameterization best_parameters;
    DetectionPattern best_pattern = DetectionPattern::from_counts({});
    double best_value = 0.0;
    ConditionalDistribution best_distribution;
    long evaluations_used = 0;
    std::vector<TracePoint> trace;   // nondecreasing incumbents
};

/// Multi-start Hooke-Jeeves search over the box parameterization:
/// Haar-seeded restarts, poll steps halved on stall (floor 1e-6) with
/// pattern moves along accepted displacements, and the step re-annealed
/// to its initial size while budget remains. Deterministic for fixed
/// problem+seed regardless of `threads` (0 = hardware default).
/// Incumbents are continuously checked against the provable ratio ceiling;
/// a violation raises NumericIntegrityError.
SearchResult optimize(const SearchProblem& problem, int threads = 1);

/// One row of an epsilon sweep of the built-in scheme family.
struct SweepRow {
    double epsilon = 0.0;
    std::optional<double> ratio_10;
    std::optional<double> ratio_21;
    double herald_prob = 0.0;
    std::optional<double> ratio_10_over_r;
};

/// Evaluates the near-identity scheme at each epsilon for the uniform
/// ensemble p and the pattern (D, 0, ..., 0): D photons on output mode 2.
std::vector<SweepRow> sweep_epsilon_scheme(int n_modes, double p, int d,
                                           std::span<const double> epsilons);

}  // namespace photondistill

#endif
