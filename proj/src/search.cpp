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

#include "photondistill/search.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "photondistill/bounds.hpp"
#include "photondistill/detail/util.hpp"

namespace photondistill {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInitialStep = 0.5;
constexpr double kStepFloor = 1e-6;

// Coefficients are sums of squared permanents, each carrying ~1e-14
// absolute error, so values below this floor are indistinguishable from
// noise. Candidates whose defining quantities sit under the floor are
// infeasible: an optimizer chasing ratios of sub-noise numbers would
// otherwise hill-climb into pure floating-point junk (the true optima of
// interest live many orders of magnitude above the floor).
constexpr double kNoiseFloor = 1e-10;

std::vector<DetectionPattern> enumerate_patterns(int n_modes) {
    // All patterns over modes 2..N with total D <= n_modes, D ascending,
    // lexicographic within each D. Recursion depth is the mode count.
    std::vector<DetectionPattern> out;
    const int slots = n_modes - 1;
    std::vector<int> current(static_cast<std::size_t>(slots), 0);
    auto rec = [&](auto&& self, int slot, int remaining) -> void {
        if (slot == slots - 1) {
            current[static_cast<std::size_t>(slot)] = remaining;
            out.push_back(DetectionPattern::from_counts(current));
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            current[static_cast<std::size_t>(slot)] = c;
            self(self, slot + 1, remaining - c);
        }
    };
    for (int d = 0; d <= n_modes; ++d) {
        if (slots == 0) break;
        rec(rec, 0, d);
    }
    return out;
}

double objective_of(const ConditionalDistribution& dist, Objective objective,
                    double cleanliness_tol) {
    if (dist.herald_prob < kNoiseFloor) return kNegInf;
    switch (objective) {
        case Objective::MaxC1:
            return dist.coefficient(1);
        case Objective::MaxRatio10: {
            // The ratio is only resolved when the (unnormalized) vacuum
            // coefficient is above the noise floor.
            if (dist.coefficient(0) * dist.herald_prob < kNoiseFloor) return kNegInf;
            return dist.ratio_10.has_value() ? *dist.ratio_10 : kNegInf;
        }
        case Objective::MaxC1Clean: {
            double tail = 0.0;
            for (std::size_t k = 2; k < dist.coefficients.size(); ++k) {
                tail += dist.coefficients[k];
            }
            return tail <= cleanliness_tol ? dist.coefficient(1) : kNegInf;
        }
    }
    return kNegInf;
}

struct Scored {
    double value = kNegInf;
    int pattern_index = 0;
    ConditionalDistribution dist;
};

struct RestartOutcome {
    double best = kNegInf;
    GivensParameterization best_x;
    Scored best_scored;
    long used = 0;
    std::vector<TracePoint> trace;   // local evaluation counts
};

class Evaluator {
  public:
    Evaluator(const SearchProblem& problem, std::vector<DetectionPattern> patterns)
        : problem_(problem), patterns_(std::move(patterns)) {}

    Scored score(const GivensParameterization& x, int pattern_index) const {
        const Unitary u = realize(x);
        const auto dist = evaluate(u, problem_.ensemble,
                                   patterns_[static_cast<std::size_t>(pattern_index)]);
        Scored sc;
        sc.value = objective_of(dist, problem_.objective, problem_.cleanliness_tol);
        sc.pattern_index = pattern_index;
        sc.dist = dist;
        return sc;
    }

    int pattern_count() const { return static_cast<int>(patterns_.size()); }

    /// Accepted incumbents must respect the provable ratio ceiling; any
    /// excess is an engine defect, not a discovery. Ratios whose vacuum
    /// coefficient sits under the noise floor carry no information and
    /// are not compared.
    void check_incumbent(const Scored& sc) const {
        const auto r = problem_.ensemble.odds_ratio();
        if (!r.has_value() || !sc.dist.ratio_10.has_value()) return;
        if (sc.dist.coefficient(0) * sc.dist.herald_prob < kNoiseFloor) return;
        const int m_act = problem_.ensemble.active_modes();
        const int d = patterns_[static_cast<std::size_t>(sc.pattern_index)].total();
        const double ceiling = static_cast<double>(std::max(m_act - d, 0)) * *r;
        if (*sc.dist.ratio_10 > ceiling + kBoundSlackTol) {
            throw NumericIntegrityError("optimize: incumbent exceeds the provable ratio bound");
        }
    }

    const DetectionPattern& pattern(int i) const {
        return patterns_[static_cast<std::size_t>(i)];
    }

  private:
    const SearchProblem& problem_;
    std::vector<DetectionPattern> patterns_;
};

// One coordinate move inside the box; returns false when the move is a
// no-op (already clamped to that edge) and must not burn budget.
bool perturb(GivensParameterization& x, int coord, double delta) {
    const std::size_t k = x.angles.size();
    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (coord < static_cast<int>(k)) {
        double v = x.angles[static_cast<std::size_t>(coord)] + delta;
        v = std::min(std::max(v, 0.0), std::numbers::pi / 2);
        if (v == x.angles[static_cast<std::size_t>(coord)]) return false;
        x.angles[static_cast<std::size_t>(coord)] = v;
        return true;
    }
    const std::size_t pc = static_cast<std::size_t>(coord) - k;
    double v = std::fmod(x.phases[pc] + delta, two_pi);
    if (v < 0.0) v += two_pi;
    x.phases[pc] = v;
    return true;
}

// Net phase displacement as the shortest arc, so a pattern move that
// repeats a wrap-around acceptance steps by the small angle, not ~2pi.
double shortest_arc(double delta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double d = std::fmod(delta, two_pi);
    if (d > std::numbers::pi) d -= two_pi;
    if (d < -std::numbers::pi) d += two_pi;
    return d;
}

// Hooke-Jeeves over the Givens box for one restart slot, on one assigned
// detection pattern. A poll cycle probes +/-step on every coordinate; an
// acceptance is followed by pattern moves that re-apply the cycle's net
// displacement while it keeps paying. When the step schedule bottoms out
// with budget left the step re-anneals to its initial size, and once a
// full anneal accepts nothing (a local optimum at every scale) the slot
// spends its remaining budget on fresh Haar-seeded climbs of the same
// pattern, keeping the best across climbs.
RestartOutcome run_restart(const Evaluator& eval, const SearchProblem& problem,
                           int restart_index, long budget, int pattern_index) {
    RestartOutcome out;
    if (budget <= 0) return out;

    const std::uint64_t seed_r =
        detail::mix_seed(problem.seed, static_cast<std::uint64_t>(restart_index));

    // Slot-wide incumbent; the trace stays nondecreasing across climbs.
    const auto record = [&](const Scored& sc, const GivensParameterization& xx) {
        eval.check_incumbent(sc);
        if (sc.value > out.best) {
            out.best = sc.value;
            out.best_x = xx;
            out.best_scored = sc;
            out.trace.push_back({out.used, sc.value});
        }
    };

    for (std::uint64_t attempt = 0; out.used < budget; ++attempt) {
        GivensParameterization x = extract_parameters(
            haar_random(problem.n_modes, detail::mix_seed(seed_r, attempt)));
        Scored incumbent = eval.score(x, pattern_index);
        ++out.used;
        if (attempt == 0) {
            // Seed the slot incumbent so even a fully infeasible slot
            // reports its starting point.
            eval.check_incumbent(incumbent);
            out.best = incumbent.value;
            out.best_x = x;
            out.best_scored = incumbent;
            out.trace.push_back({out.used, incumbent.value});
        } else {
            record(incumbent, x);
        }

        const std::size_t n_angles = x.angles.size();
        const int dims = static_cast<int>(n_angles + x.phases.size());

        const auto accept = [&](GivensParameterization&& y, Scored&& sc) {
            x = std::move(y);
            incumbent = std::move(sc);
            record(incumbent, x);
        };

        bool converged = false;
        while (out.used < budget && !converged) {
            double step = kInitialStep;
            bool accepted_this_anneal = false;
            while (out.used < budget && step >= kStepFloor) {
                const GivensParameterization base = x;
                bool improved_this_cycle = false;
                for (int coord = 0; coord < dims && out.used < budget; ++coord) {
                    for (const double dir : {+1.0, -1.0}) {
                        if (out.used >= budget) break;
                        GivensParameterization y = x;
                        if (!perturb(y, coord, dir * step)) continue;
                        Scored sc = eval.score(y, pattern_index);
                        ++out.used;
                        if (sc.value > incumbent.value) {
                            accept(std::move(y), std::move(sc));
                            improved_this_cycle = true;
                            break;   // move on to the next coordinate
                        }
                    }
                }
                if (!improved_this_cycle) {
                    step *= 0.5;
                    continue;
                }
                accepted_this_anneal = true;
                // Pattern move: keep re-applying the cycle's net displacement.
                GivensParameterization from = base;
                while (out.used < budget) {
                    GivensParameterization y = x;
                    bool moved = false;
                    for (int c = 0; c < dims; ++c) {
                        const std::size_t i = static_cast<std::size_t>(c);
                        double d;
                        if (i < n_angles) {
                            d = x.angles[i] - from.angles[i];
                        } else {
                            d = shortest_arc(x.phases[i - n_angles] -
                                             from.phases[i - n_angles]);
                        }
                        if (d != 0.0 && perturb(y, c, d)) moved = true;
                    }
                    if (!moved) break;
                    Scored sc = eval.score(y, pattern_index);
                    ++out.used;
                    if (sc.value <= incumbent.value) break;
                    from = x;
                    accept(std::move(y), std::move(sc));
                }
            }
            if (!accepted_this_anneal) converged = true;
        }
    }
    return out;
}

}  // namespace

PatternPolicy PatternPolicy::fixed_pattern(DetectionPattern p) {
    PatternPolicy policy;
    policy.kind = Kind::Fixed;
    policy.fixed = std::move(p);
    return policy;
}

PatternPolicy PatternPolicy::enumerate_all() {
    PatternPolicy policy;
    policy.kind = Kind::EnumerateAll;
    return policy;
}

SearchResult optimize(const SearchProblem& problem, int threads) {
    if (problem.n_modes < 2) throw ValidationError("optimize: n_modes must be >= 2");
    if (problem.ensemble.size() != problem.n_modes) {
        throw DimensionError("optimize: ensemble size != n_modes");
    }
    if (problem.budget < 1) throw ValidationError("optimize: budget must be >= 1");
    if (problem.restarts < 1) throw ValidationError("optimize: restarts must be >= 1");
    if (problem.cleanliness_tol < 0.0) {
        throw ValidationError("optimize: cleanliness_tol must be >= 0");
    }

    std::vector<DetectionPattern> patterns;
    if (problem.pattern_policy.kind == PatternPolicy::Kind::Fixed) {
        if (!problem.pattern_policy.fixed.has_value()) {
            throw ValidationError("optimize: fixed pattern policy lacks a pattern");
        }
        if (problem.pattern_policy.fixed->size() != problem.n_modes - 1) {
            throw DimensionError("optimize: fixed pattern must cover modes 2..N");
        }
        patterns.push_back(*problem.pattern_policy.fixed);
    } else {
        patterns = enumerate_patterns(problem.n_modes);
    }
    const Evaluator eval(problem, std::move(patterns));

    // Budget split: floor division, remainder to the earliest restarts.
    const int restarts = problem.restarts;
    std::vector<long> budgets(static_cast<std::size_t>(restarts),
                              problem.budget / restarts);
    for (long i = 0; i < problem.budget % restarts; ++i) {
        ++budgets[static_cast<std::size_t>(i)];
    }

    // Each restart owns one detection pattern, assigned round-robin in
    // enumeration order: the pattern is the categorical coordinate of the
    // search space and is explored across restarts, not inside a climb.
    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
    detail::parallel_for(restarts, threads, [&](int r) {
        outcomes[static_cast<std::size_t>(r)] =
            run_restart(eval, problem, r, budgets[static_cast<std::size_t>(r)],
                        r % eval.pattern_count());
    });

    // Restarts are merged in index order, as if run sequentially: trace
    // evaluation counts accumulate, and only genuinely global improvements
    // survive into the merged trace.
    SearchResult result;
    long offset = 0;
    double global_best = kNegInf;
    int winner = -1;
    for (int r = 0; r < restarts; ++r) {
        const auto& oc = outcomes[static_cast<std::size_t>(r)];
        for (const auto& tp : oc.trace) {
            if (tp.incumbent > global_best) {   // -inf entries never pass
                global_best = tp.incumbent;
                result.trace.push_back({offset + tp.evaluation, global_best});
            }
        }
        if (oc.used > 0 &&
            (winner < 0 || oc.best > outcomes[static_cast<std::size_t>(winner)].best)) {
            winner = r;
        }
        offset += oc.used;
    }
    result.evaluations_used = offset;
    if (winner < 0) throw NumericIntegrityError("optimize: no restart executed");
    const auto& best = outcomes[static_cast<std::size_t>(winner)];
    result.best_parameters = best.best_x;
    result.best_pattern = eval.pattern(best.best_scored.pattern_index);
    result.best_value = best.best;
    result.best_distribution = best.best_scored.dist;
    return result;
}

std::vector<SweepRow> sweep_epsilon_scheme(int n_modes, double p, int d,
                                           std::span<const double> epsilons) {
    if (n_modes < 2) throw ValidationError("sweep: n_modes must be >= 2");
    if (!(p >= 0.0 && p < 1.0)) throw ValidationError("sweep: p must lie in [0, 1)");
    if (d < 1 || d > n_modes - 1) {
        throw ValidationError("sweep: d must lie in [1, n_modes - 1]");
    }
    const auto ensemble = InputEnsemble::from_probs(
        std::vector<double>(static_cast<std::size_t>(n_modes), p));
    std::vector<int> counts(static_cast<std::size_t>(n_modes) - 1, 0);
    counts[0] = d;
    const auto pattern = DetectionPattern::from_counts(counts);
    const double r = p / (1.0 - p);

    std::vector<SweepRow> rows;
    rows.reserve(epsilons.size());
    for (const double eps : epsilons) {
        const Unitary u = epsilon_scheme({n_modes, eps});
        const auto dist = evaluate(u, ensemble, pattern);
        SweepRow row;
        row.epsilon = eps;
        row.herald_prob = dist.herald_prob;
        row.ratio_10 = dist.ratio_10;
        row.ratio_21 = dist.ratio_21;
        if (dist.ratio_10.has_value() && r > 0.0) row.ratio_10_over_r = *dist.ratio_10 / r;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace photondistill
