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

#include "photondistill/bounds.hpp"

#include <algorithm>

namespace photondistill {

const char* to_string(TheoremTag tag) {
    switch (tag) {
        case TheoremTag::GeneralBound: return "general_bound";
        case TheoremTag::DEqualsZero: return "d_equals_zero";
        case TheoremTag::DEqualsOneEqualP: return "d_equals_one_equal_p";
        case TheoremTag::DEqualsMMinusOne: return "d_equals_m_minus_one";
    }
    return "unknown";
}

double general_bound(const InputEnsemble& ensemble, const DetectionPattern& pattern) {
    const auto r = ensemble.odds_ratio();
    if (!r.has_value()) {
        throw PMaxOneError("general_bound: odds ratio undefined at p_max = 1");
    }
    const int slack_modes = ensemble.active_modes() - pattern.total();
    return static_cast<double>(std::max(slack_modes, 0)) * *r;
}

BoundReport check_bounds(const ConditionalDistribution& dist,
                         const InputEnsemble& ensemble,
                         const DetectionPattern& pattern) {
    const auto r = ensemble.odds_ratio();
    if (!r.has_value()) {
        throw PMaxOneError("check_bounds: odds ratio undefined at p_max = 1");
    }

    BoundReport rep;
    rep.m = ensemble.active_modes();
    rep.d = pattern.total();
    rep.p_max = ensemble.p_max();
    rep.r_value = *r;
    rep.bound_value = static_cast<double>(std::max(rep.m - rep.d, 0)) * *r;
    rep.herald_prob = dist.herald_prob;
    rep.observed_c0 = dist.coefficient(0);
    rep.observed_c1 = dist.coefficient(1);
    rep.zero_herald = dist.zero_herald();

    rep.theorem_tags.push_back(TheoremTag::GeneralBound);
    rep.effective_bound = rep.bound_value;
    const bool equal_p = ensemble.all_equal(kEqualProbTol);
    if (rep.d == 0) {
        rep.theorem_tags.push_back(TheoremTag::DEqualsZero);
        rep.effective_bound = std::min(rep.effective_bound, *r);
    }
    if (rep.d == 1 && equal_p) {
        rep.theorem_tags.push_back(TheoremTag::DEqualsOneEqualP);
        rep.effective_bound = std::min(rep.effective_bound, *r);
    }
    const bool last_photon = rep.m >= 1 && rep.d == rep.m - 1;
    if (last_photon) {
        rep.theorem_tags.push_back(TheoremTag::DEqualsMMinusOne);
        rep.effective_bound = std::min(rep.effective_bound, *r);
    }

    if (rep.zero_herald) {
        // Nothing was observed; every bound holds vacuously.
        rep.satisfied = true;
        return rep;
    }
    if (rep.observed_c0 > 0.0) {
        rep.observed_ratio = rep.observed_c1 / rep.observed_c0;
        rep.slack = rep.bound_value - *rep.observed_ratio;
        bool ok = *rep.observed_ratio <= rep.effective_bound + kBoundSlackTol;
        // "One photon left" additionally forbids beating the source itself.
        if (last_photon && rep.observed_c1 > rep.p_max + kBoundSlackTol) ok = false;
        rep.satisfied = ok;
    } else {
        // c0 = 0 with a positive herald would be a perfect single-photon
        // source, which the theorems rule out entirely.
        rep.satisfied = rep.observed_c1 <= kBoundSlackTol;
    }
    return rep;
}

BoundReport check_bounds(const Unitary& u, const InputEnsemble& ensemble,
                         const DetectionPattern& pattern) {
    return check_bounds(evaluate(u, ensemble, pattern), ensemble, pattern);
}

bool perfect_output_impossible(std::span<const BoundReport> reports) {
    for (const auto& rep : reports) {
        if (rep.zero_herald) continue;
        if (rep.observed_c1 > 1e-15 && rep.observed_c0 <= 0.0) return false;
    }
    return true;
}

}  // namespace photondistill
