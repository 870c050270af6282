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

#include "photondistill/serialization.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

namespace photondistill {

namespace {

const json& require(const json& j, const char* field, const char* where) {
    const auto it = j.find(field);
    if (it == j.end()) {
        throw ValidationError(std::string(where) + ": missing field '" + field + "'");
    }
    return *it;
}

double as_double(const json& j, const char* what) {
    if (!j.is_number()) throw ValidationError(std::string(what) + " must be a number");
    return j.get<double>();
}

int as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) {
        throw ValidationError(std::string(what) + " must be an integer");
    }
    return j.get<int>();
}

std::vector<double> as_double_vector(const json& j, const char* what) {
    if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(as_double(v, what));
    return out;
}

std::vector<int> as_int_vector(const json& j, const char* what) {
    if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
    std::vector<int> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(as_int(v, what));
    return out;
}

json optional_to_json(const std::optional<double>& v) {
    return v.has_value() ? json(*v) : json(nullptr);
}

json optional_to_json(const std::optional<bool>& v) {
    return v.has_value() ? json(*v) : json(nullptr);
}

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

json to_json(const Unitary& u) {
    const int n = u.dim();
    json re = json::array();
    json im = json::array();
    for (int r = 0; r < n; ++r) {
        json re_row = json::array();
        json im_row = json::array();
        for (int c = 0; c < n; ++c) {
            re_row.push_back(u(r, c).real());
            im_row.push_back(u(r, c).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return json{{"dim", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Unitary unitary_from_json(const json& j) {
    const int n = as_int(require(j, "dim", "unitary"), "unitary.dim");
    if (n < 2) throw DimensionError("unitary.dim must be >= 2");
    const auto& re = require(j, "re", "unitary");
    const auto& im = require(j, "im", "unitary");
    if (!re.is_array() || !im.is_array() || static_cast<int>(re.size()) != n ||
        static_cast<int>(im.size()) != n) {
        throw ValidationError("unitary: re/im must be dim x dim arrays");
    }
    Eigen::MatrixXcd m(n, n);
    for (int r = 0; r < n; ++r) {
        const auto& re_row = re[static_cast<std::size_t>(r)];
        const auto& im_row = im[static_cast<std::size_t>(r)];
        if (!re_row.is_array() || !im_row.is_array() ||
            static_cast<int>(re_row.size()) != n ||
            static_cast<int>(im_row.size()) != n) {
            throw ValidationError("unitary: re/im must be dim x dim arrays");
        }
        for (int c = 0; c < n; ++c) {
            m(r, c) = std::complex<double>(
                as_double(re_row[static_cast<std::size_t>(c)], "unitary.re"),
                as_double(im_row[static_cast<std::size_t>(c)], "unitary.im"));
        }
    }
    return Unitary::from_entries(m);
}

Unitary unitary_from_spec(const json& j) {
    if (!j.is_object()) throw ValidationError("unitary spec must be an object");
    const auto& kind_field = require(j, "kind", "unitary spec");
    if (!kind_field.is_string()) throw ValidationError("unitary.kind must be a string");
    const std::string kind = lowercase(kind_field.get<std::string>());
    if (kind == "explicit") {
        return unitary_from_json(j);
    }
    if (kind == "epsilon_scheme") {
        EpsilonSchemeSpec spec;
        spec.n_modes = as_int(require(j, "n_modes", "epsilon_scheme"), "n_modes");
        spec.epsilon = as_double(require(j, "epsilon", "epsilon_scheme"), "epsilon");
        return epsilon_scheme(spec);
    }
    if (kind == "dft") {
        return dft(as_int(require(j, "dim", "dft"), "dft.dim"));
    }
    if (kind == "haar") {
        const int dim = as_int(require(j, "dim", "haar"), "haar.dim");
        const auto& seed = require(j, "seed", "haar");
        if (!seed.is_number_integer()) throw ValidationError("haar.seed must be an integer");
        return haar_random(dim, seed.get<std::uint64_t>());
    }
    if (kind == "givens") {
        GivensParameterization params;
        params.dim = as_int(require(j, "dim", "givens"), "givens.dim");
        params.angles = as_double_vector(require(j, "angles", "givens"), "givens.angles");
        params.phases = as_double_vector(require(j, "phases", "givens"), "givens.phases");
        return realize(params);
    }
    throw ValidationError("unknown unitary kind '" + kind + "'");
}

json to_json(const ConditionalDistribution& dist) {
    return json{
        {"coefficients", dist.coefficients},
        {"herald_prob", dist.herald_prob},
        {"ratio_10", optional_to_json(dist.ratio_10)},
        {"ratio_21", optional_to_json(dist.ratio_21)},
        {"zero_herald", dist.zero_herald()},
    };
}

json to_json(const ImprovementVerdict& verdict) {
    return json{
        {"ratio_improved", optional_to_json(verdict.ratio_improved)},
        {"prob_improved", verdict.prob_improved},
        {"single_photon_clean", verdict.single_photon_clean},
        {"ratio_margin", optional_to_json(verdict.ratio_margin)},
        {"prob_margin", optional_to_json(verdict.prob_margin)},
        {"undefined_ratio", verdict.undefined_ratio},
        {"r_inapplicable", verdict.r_inapplicable},
        {"zero_herald", verdict.zero_herald},
    };
}

json to_json(const BoundReport& report) {
    json tags = json::array();
    for (const auto t : report.theorem_tags) tags.push_back(to_string(t));
    return json{
        {"m", report.m},
        {"d", report.d},
        {"p_max", report.p_max},
        {"r_value", report.r_value},
        {"bound_value", report.bound_value},
        {"effective_bound", report.effective_bound},
        {"observed_ratio", optional_to_json(report.observed_ratio)},
        {"observed_c0", report.observed_c0},
        {"observed_c1", report.observed_c1},
        {"herald_prob", report.herald_prob},
        {"theorem_tags", std::move(tags)},
        {"zero_herald", report.zero_herald},
        {"satisfied", report.satisfied},
        {"slack", optional_to_json(report.slack)},
    };
}

json to_json(const GivensParameterization& params) {
    return json{{"kind", "givens"},
                {"dim", params.dim},
                {"angles", params.angles},
                {"phases", params.phases}};
}

json to_json(const SearchResult& result) {
    json trace = json::array();
    for (const auto& tp : result.trace) {
        trace.push_back(json{{"evaluation", tp.evaluation}, {"incumbent", tp.incumbent}});
    }
    return json{
        {"best_value", result.best_value},
        {"best_pattern", result.best_pattern.counts()},
        {"best_parameters", to_json(result.best_parameters)},
        {"best_unitary", to_json(realize(result.best_parameters))},
        {"best_distribution", to_json(result.best_distribution)},
        {"evaluations_used", result.evaluations_used},
        {"trace", std::move(trace)},
    };
}

Scenario scenario_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("scenario must be an object");
    Scenario sc;
    sc.ensemble = InputEnsemble::from_probs(
        as_double_vector(require(j, "probs", "scenario"), "scenario.probs"));
    sc.unitary = unitary_from_spec(require(j, "unitary", "scenario"));
    sc.pattern = DetectionPattern::from_counts(
        as_int_vector(require(j, "pattern", "scenario"), "scenario.pattern"));
    if (sc.ensemble.size() != sc.unitary.dim()) {
        throw DimensionError("scenario: probs size != unitary dim");
    }
    if (sc.pattern.size() != sc.unitary.dim() - 1) {
        throw DimensionError("scenario: pattern must have one count per detected mode");
    }
    return sc;
}

SearchProblem search_problem_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("search problem must be an object");
    SearchProblem problem;
    problem.n_modes = as_int(require(j, "n_modes", "search"), "search.n_modes");
    problem.ensemble = InputEnsemble::from_probs(
        as_double_vector(require(j, "probs", "search"), "search.probs"));

    const auto& obj_field = require(j, "objective", "search");
    if (!obj_field.is_string()) throw ValidationError("search.objective must be a string");
    const std::string obj = lowercase(obj_field.get<std::string>());
    if (obj == "max_c1") {
        problem.objective = Objective::MaxC1;
    } else if (obj == "max_ratio_10") {
        problem.objective = Objective::MaxRatio10;
    } else if (obj == "max_c1_clean") {
        problem.objective = Objective::MaxC1Clean;
    } else {
        throw ValidationError("unknown objective '" + obj + "'");
    }

    const auto& policy = require(j, "pattern_policy", "search");
    const auto& kind_field = require(policy, "kind", "pattern_policy");
    if (!kind_field.is_string()) {
        throw ValidationError("pattern_policy.kind must be a string");
    }
    const std::string kind = lowercase(kind_field.get<std::string>());
    if (kind == "fixed") {
        problem.pattern_policy = PatternPolicy::fixed_pattern(DetectionPattern::from_counts(
            as_int_vector(require(policy, "pattern", "pattern_policy"),
                          "pattern_policy.pattern")));
    } else if (kind == "enumerate_all") {
        problem.pattern_policy = PatternPolicy::enumerate_all();
    } else {
        throw ValidationError("unknown pattern policy '" + kind + "'");
    }

    problem.budget = static_cast<long>(
        as_double(require(j, "budget", "search"), "search.budget"));
    if (j.contains("seed")) {
        const auto& seed = j["seed"];
        if (!seed.is_number_integer()) {
            throw ValidationError("search.seed must be an integer");
        }
        problem.seed = seed.get<std::uint64_t>();
    }
    if (j.contains("restarts")) problem.restarts = as_int(j["restarts"], "search.restarts");
    if (j.contains("cleanliness_tol")) {
        problem.cleanliness_tol = as_double(j["cleanliness_tol"], "search.cleanliness_tol");
    }
    return problem;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace photondistill
