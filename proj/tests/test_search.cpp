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
#include <vector>

#include "photondistill/search.hpp"

using namespace photondistill;

namespace {

SearchProblem two_mode_problem() {
    SearchProblem p;
    p.n_modes = 2;
    p.ensemble = InputEnsemble::from_probs({0.3, 0.3});
    p.objective = Objective::MaxC1;
    p.pattern_policy = PatternPolicy::enumerate_all();
    p.budget = 10000;
    p.seed = 7;
    return p;
}

double objective_value(const SearchResult& r, const SearchProblem& p) {
    const auto dist = evaluate(realize(r.best_parameters), p.ensemble, r.best_pattern);
    switch (p.objective) {
        case Objective::MaxRatio10:
            return dist.ratio_10.value_or(-1.0);
        default:
            return dist.coefficient(1);
    }
}

}  // namespace

TEST_CASE("two-mode search cannot beat the source") {
    const SearchProblem p = two_mode_problem();
    const SearchResult r = optimize(p);
    CHECK(r.best_value <= 0.3 + 1e-6);
    CHECK(r.evaluations_used <= p.budget);
    CHECK(r.evaluations_used > 0);
}

TEST_CASE("search result invariants") {
    const SearchProblem p = two_mode_problem();
    const SearchResult r = optimize(p);

    SUBCASE("trace is nondecreasing with increasing evaluation counts") {
        REQUIRE(!r.trace.empty());
        for (std::size_t i = 1; i < r.trace.size(); ++i) {
            CHECK(r.trace[i].incumbent >= r.trace[i - 1].incumbent);
            CHECK(r.trace[i].evaluation > r.trace[i - 1].evaluation);
        }
        CHECK(r.trace.back().incumbent == doctest::Approx(r.best_value));
        CHECK(r.trace.back().evaluation <= r.evaluations_used);
    }

    SUBCASE("best_value reproduces under re-evaluation") {
        CHECK(std::abs(objective_value(r, p) - r.best_value) <= 1e-12);
    }

    SUBCASE("reported parameters realize a valid network") {
        CHECK_NOTHROW(realize(r.best_parameters));
        CHECK(r.best_pattern.size() == p.n_modes - 1);
    }
}

TEST_CASE("search is deterministic across thread counts") {
    const SearchProblem p = two_mode_problem();
    const SearchResult a = optimize(p, 1);
    const SearchResult b = optimize(p, 4);
    const SearchResult c = optimize(p, 0);   // hardware default

    CHECK(a.best_value == b.best_value);
    CHECK(a.best_value == c.best_value);
    CHECK(a.evaluations_used == b.evaluations_used);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].evaluation == b.trace[i].evaluation);
        CHECK(a.trace[i].incumbent == b.trace[i].incumbent);
    }
    CHECK(a.best_parameters.angles == b.best_parameters.angles);
    CHECK(a.best_parameters.phases == b.best_parameters.phases);
}

TEST_CASE("fixed pattern policy searches only that pattern") {
    SearchProblem p = two_mode_problem();
    p.pattern_policy = PatternPolicy::fixed_pattern(DetectionPattern::from_counts({1}));
    p.budget = 2000;
    const SearchResult r = optimize(p);
    CHECK(r.best_pattern.counts() == std::vector<int>{1});
    // detecting the last spare photon forbids any improvement: c1 <= p_max
    CHECK(r.best_value <= 0.3 + 1e-6);
}

TEST_CASE("clean objective stays below the source too") {
    SearchProblem p = two_mode_problem();
    p.objective = Objective::MaxC1Clean;
    p.budget = 4000;
    const SearchResult r = optimize(p);
    CHECK(r.best_value <= 0.3 + 1e-6);
    // winning distribution must actually be clean
    double above_one = 0.0;
    for (std::size_t k = 2; k < r.best_distribution.coefficients.size(); ++k) {
        above_one += r.best_distribution.coefficients[k];
    }
    CHECK(above_one <= p.cleanliness_tol);
}

TEST_CASE("optimize validation") {
    SearchProblem p = two_mode_problem();
    p.n_modes = 1;
    CHECK_THROWS_AS(optimize(p), ValidationError);

    p = two_mode_problem();
    p.budget = 0;
    CHECK_THROWS_AS(optimize(p), ValidationError);

    p = two_mode_problem();
    p.restarts = 0;
    CHECK_THROWS_AS(optimize(p), ValidationError);

    p = two_mode_problem();
    p.ensemble = InputEnsemble::from_probs({0.3, 0.3, 0.3});
    CHECK_THROWS_AS(optimize(p), DimensionError);

    p = two_mode_problem();
    p.pattern_policy = PatternPolicy::fixed_pattern(DetectionPattern::from_counts({1, 1}));
    CHECK_THROWS_AS(optimize(p), DimensionError);

    p = two_mode_problem();
    p.cleanliness_tol = -1.0;
    CHECK_THROWS_AS(optimize(p), ValidationError);
}

TEST_CASE("epsilon sweep reproduces the near-identity asymptotics") {
    // N=4, D=2, p=0.01: ratio_10/R approaches 4/3 as eps -> 0
    const double r_odds = 0.01 / 0.99;
    const double eps[] = {1e-3};
    const auto rows = sweep_epsilon_scheme(4, 0.01, 2, eps);
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].ratio_10.has_value());
    REQUIRE(rows[0].ratio_10_over_r.has_value());
    // frozen against the independent brute-force implementation
    CHECK(*rows[0].ratio_10_over_r ==
          doctest::Approx(1.3333305555563697).epsilon(1e-9));
    CHECK(*rows[0].ratio_10 ==
          doctest::Approx(1.3333305555563697 * r_odds).epsilon(1e-9));
    REQUIRE(rows[0].ratio_21.has_value());
    CHECK(*rows[0].ratio_21 / *rows[0].ratio_10 ==
          doctest::Approx(0.37499993749957045).epsilon(1e-9));
    // explicit relative check: the value is far below Approx's scale
    CHECK(std::abs(rows[0].herald_prob - 1.9867319532667209e-10) <=
          1e-6 * 1.9867319532667209e-10);
}

TEST_CASE("halving epsilon quarters the distance to the asymptote") {
    const double eps[] = {1e-2, 5e-3, 2.5e-3};
    const auto rows = sweep_epsilon_scheme(4, 0.01, 2, eps);
    REQUIRE(rows.size() == 3);
    const double target = (4.0 / 3.0) * (0.01 / 0.99);
    double prev_dev = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        REQUIRE(rows[i].ratio_10.has_value());
        const double dev = std::abs(*rows[i].ratio_10 - target);
        if (i > 0) {
            const double shrink = dev / prev_dev;
            CHECK(shrink > 0.2);
            CHECK(shrink < 0.3);   // O(eps^2) convergence: exactly 1/4 in the limit
        }
        prev_dev = dev;
    }
}

TEST_CASE("odd mode counts tie the two central detection loads") {
    const double eps[] = {1e-3};
    const auto d2 = sweep_epsilon_scheme(5, 0.01, 2, eps);
    const auto d3 = sweep_epsilon_scheme(5, 0.01, 3, eps);
    REQUIRE(d2[0].ratio_10_over_r.has_value());
    REQUIRE(d3[0].ratio_10_over_r.has_value());
    CHECK(*d2[0].ratio_10_over_r == doctest::Approx(1.5).epsilon(1e-2));
    CHECK(*d3[0].ratio_10_over_r == doctest::Approx(1.5).epsilon(1e-2));
    CHECK(*d2[0].ratio_10_over_r ==
          doctest::Approx(*d3[0].ratio_10_over_r).epsilon(1e-5));
}

TEST_CASE("sweep validation") {
    const double eps[] = {1e-3};
    CHECK_THROWS_AS(sweep_epsilon_scheme(1, 0.01, 1, eps), ValidationError);
    CHECK_THROWS_AS(sweep_epsilon_scheme(4, 1.0, 2, eps), ValidationError);
    CHECK_THROWS_AS(sweep_epsilon_scheme(4, -0.1, 2, eps), ValidationError);
    CHECK_THROWS_AS(sweep_epsilon_scheme(4, 0.01, 0, eps), ValidationError);
    CHECK_THROWS_AS(sweep_epsilon_scheme(4, 0.01, 4, eps), ValidationError);
    const double bad_eps[] = {0.0};
    CHECK_THROWS_AS(sweep_epsilon_scheme(4, 0.01, 2, bad_eps), ValidationError);
}
