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

#include "photondistill/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "photondistill/permanent.hpp"

namespace photondistill {

double weight(const InputEnsemble& ensemble, const OccupationVector& s) {
    if (ensemble.size() != s.size()) {
        throw DimensionError("weight: ensemble size != occupation size");
    }
    double w = 1.0;
    for (int i = 0; i < s.size(); ++i) {
        const double p = ensemble.probs()[static_cast<std::size_t>(i)];
        w *= s.bits()[static_cast<std::size_t>(i)] ? p : (1.0 - p);
    }
    return w;
}

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= static_cast<double>(i);
    return f;
}

// Sum over input occupations with exactly `total` photons, all drawn from
// the emitting modes, of weight(s) * |per(submatrix)|^2. `out_rows` lists
// the output row index of each detected/kept photon (with multiplicity,
// ascending). Subsets of `supp` are visited in lexicographic order via a
// rolling index vector; the permanent buffer is reused across subsets.
double sector_sum(const Unitary& u, const InputEnsemble& ensemble,
                  const std::vector<int>& supp, const std::vector<int>& out_rows,
                  int total) {
    const int m_act = static_cast<int>(supp.size());
    if (total < 0 || total > m_act) return 0.0;
    const int n = u.dim();

    // Base weight: probability that *no* mode emits; each selected column
    // then swaps a (1-p) factor for a p factor. p == 1 modes force
    // themselves into every subset, handled by direct per-subset product.
    std::vector<int> sel(static_cast<std::size_t>(total));
    for (int i = 0; i < total; ++i) sel[static_cast<std::size_t>(i)] = i;

    std::vector<std::complex<double>> buf(static_cast<std::size_t>(total) * total);
    double acc = 0.0;
    while (true) {
        double w = 1.0;
        {
            int pos = 0;
            for (int i = 0; i < n; ++i) {
                const bool chosen =
                    pos < total && supp[static_cast<std::size_t>(
                                       sel[static_cast<std::size_t>(pos)])] == i;
                const double p = ensemble.probs()[static_cast<std::size_t>(i)];
                w *= chosen ? p : (1.0 - p);
                if (chosen) ++pos;
            }
        }
        if (w > 0.0) {
            for (int r = 0; r < total; ++r) {
                const int row = out_rows[static_cast<std::size_t>(r)];
                for (int c = 0; c < total; ++c) {
                    const int col =
                        supp[static_cast<std::size_t>(sel[static_cast<std::size_t>(c)])];
                    buf[static_cast<std::size_t>(r) * total + c] = u(row, col);
                }
            }
            const std::complex<double> per = detail::ryser(buf.data(), total);
            acc += w * std::norm(per);
        }
        // Next combination, lexicographic.
        int i = total - 1;
        while (i >= 0 &&
               sel[static_cast<std::size_t>(i)] == m_act - total + i) {
            --i;
        }
        if (i < 0) break;
        ++sel[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < total; ++j) {
            sel[static_cast<std::size_t>(j)] = sel[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return acc;
}

// out_rows for pattern + n1 photons kept on mode 0: row 0 repeated n1
// times, then row j+1 repeated pattern[j] times (ascending, copies
// adjacent).
std::vector<int> output_rows(const DetectionPattern& pattern, int n1) {
    std::vector<int> rows(static_cast<std::size_t>(n1), 0);
    for (int j = 0; j < pattern.size(); ++j) {
        rows.insert(rows.end(), static_cast<std::size_t>(pattern.counts()[static_cast<std::size_t>(j)]),
                    j + 1);
    }
    return rows;
}

double clamp_nonnegative(double v, const char* what) {
    if (v < -kCoefficientClampTol) {
        throw NumericIntegrityError(std::string(what) +
                                    ": impossible negative value " + std::to_string(v));
    }
    return v < 0.0 ? 0.0 : v;
}

void check_scenario_shapes(const Unitary& u, const InputEnsemble& ensemble,
                           const DetectionPattern& pattern) {
    if (ensemble.size() != u.dim()) {
        throw DimensionError("evaluate: ensemble size != network size");
    }
    if (pattern.size() != u.dim() - 1) {
        throw DimensionError("evaluate: pattern must cover modes 2..N");
    }
}

}  // namespace

double unnormalized_coefficient(const Unitary& u, const InputEnsemble& ensemble,
                                const DetectionPattern& pattern, int n1) {
    check_scenario_shapes(u, ensemble, pattern);
    if (n1 < 0) throw ValidationError("unnormalized_coefficient: n1 must be >= 0");
    const int total = pattern.total() + n1;
    if (total > kMaxPermanentDim) {
        throw SizeExceededError("unnormalized_coefficient: photon number exceeds cap 20");
    }

    std::vector<int> supp;
    for (int i = 0; i < ensemble.size(); ++i) {
        if (ensemble.probs()[static_cast<std::size_t>(i)] > 0.0) supp.push_back(i);
    }
    if (total > static_cast<int>(supp.size())) return 0.0;

    const std::vector<int> rows = output_rows(pattern, n1);
    double norm = factorial(n1);
    for (const int c : pattern.counts()) norm *= factorial(c);
    const double acc = sector_sum(u, ensemble, supp, rows, total);
    return clamp_nonnegative(acc / norm, "unnormalized_coefficient");
}

ConditionalDistribution evaluate(const Unitary& u, const InputEnsemble& ensemble,
                                 const DetectionPattern& pattern) {
    check_scenario_shapes(u, ensemble, pattern);
    const int m_act = ensemble.active_modes();
    const int d = pattern.total();
    const int n1_max = std::max(m_act - d, 0);

    ConditionalDistribution dist;
    dist.coefficients.assign(static_cast<std::size_t>(n1_max) + 1, 0.0);
    double herald = 0.0;
    for (int n1 = 0; n1 <= n1_max; ++n1) {
        const double coeff = unnormalized_coefficient(u, ensemble, pattern, n1);
        dist.coefficients[static_cast<std::size_t>(n1)] = coeff;
        herald += coeff;
    }
    dist.herald_prob = clamp_nonnegative(herald, "evaluate herald");
    if (dist.zero_herald()) {
        std::fill(dist.coefficients.begin(), dist.coefficients.end(), 0.0);
        return dist;
    }
    for (auto& c : dist.coefficients) c /= dist.herald_prob;
    if (dist.coefficient(0) > 0.0) {
        dist.ratio_10 = dist.coefficient(1) / dist.coefficient(0);
    }
    if (dist.coefficient(1) > 0.0) {
        dist.ratio_21 = dist.coefficient(2) / dist.coefficient(1);
    }
    return dist;
}

ImprovementVerdict improvement_verdict(const ConditionalDistribution& dist,
                                       const InputEnsemble& ensemble) {
    ImprovementVerdict v;
    if (dist.zero_herald()) {
        v.zero_herald = true;
        return v;
    }
    const double p_max = ensemble.p_max();
    const double c1 = dist.coefficient(1);
    v.prob_improved = c1 > p_max;
    v.prob_margin = c1 - p_max;

    bool clean = true;
    for (std::size_t k = 2; k < dist.coefficients.size(); ++k) {
        if (dist.coefficients[k] > kCleanlinessTol) {
            clean = false;
            break;
        }
    }
    v.single_photon_clean = clean;

    // Orthogonal failure modes: the input-side R and the output-side ratio
    // can each be missing on their own.
    v.undefined_ratio = !dist.ratio_10.has_value();
    const auto r = ensemble.odds_ratio();
    if (!r.has_value()) {
        v.r_inapplicable = true;
        return v;
    }
    if (v.undefined_ratio) return v;
    v.ratio_improved = *dist.ratio_10 > *r;
    v.ratio_margin = *dist.ratio_10 - *r;
    return v;
}

}  // namespace photondistill
