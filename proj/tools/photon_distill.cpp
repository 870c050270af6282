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

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "photondistill/bounds.hpp"
#include "photondistill/conditional.hpp"
#include "photondistill/detail/util.hpp"
#include "photondistill/search.hpp"
#include "photondistill/serialization.hpp"
#include "photondistill/unitary.hpp"

namespace pd = photondistill;

namespace {

struct CommonOptions {
    std::string config_path;
    std::string output_path;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
};

int resolve_threads(const CommonOptions& opts) {
    if (opts.threads.has_value()) return *opts.threads;   // 0 = auto
    if (const char* env = std::getenv("PHOTON_DISTILL_THREADS")) {
        try {
            return std::stoi(env);
        } catch (...) {
            throw pd::ValidationError("PHOTON_DISTILL_THREADS is not an integer");
        }
    }
    return 1;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pd::ValidationError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Single atomic publish: the output never exists half-written.
void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw pd::ValidationError("cannot write output file: " + path);
        out << content;
        if (!out.flush()) throw pd::ValidationError("failed writing output file: " + path);
    }
    std::filesystem::rename(tmp, path);
}

pd::json parse_config(const std::string& text) {
    try {
        return pd::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw pd::ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
}

std::string envelope_json(const std::string& digest, const std::string& command,
                          pd::json result) {
    pd::json out{
        {"config_digest", digest},
        {"command", command},
        {"result", std::move(result)},
    };
    return out.dump(2) + "\n";
}

std::string csv_cell(const std::optional<double>& v) {
    return v.has_value() ? pd::format_double(*v) : std::string();
}

std::string pattern_key(const std::vector<int>& counts) {
    std::string s;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i) s += ':';
        s += std::to_string(counts[i]);
    }
    return s;
}

// --- evaluate ---------------------------------------------------------------

int run_evaluate(const CommonOptions& opts, const pd::json& config,
                 const std::string& digest) {
    const pd::Scenario sc = pd::scenario_from_json(config);
    const auto dist = pd::evaluate(sc.unitary, sc.ensemble, sc.pattern);
    const auto verdict = pd::improvement_verdict(dist, sc.ensemble);
    pd::json report = nullptr;
    if (sc.ensemble.odds_ratio().has_value()) {
        report = pd::to_json(pd::check_bounds(dist, sc.ensemble, sc.pattern));
    }

    if (opts.format == "json") {
        pd::json result{
            {"distribution", pd::to_json(dist)},
            {"verdict", pd::to_json(verdict)},
            {"bound_report", std::move(report)},
        };
        write_file_atomic(opts.output_path, envelope_json(digest, "evaluate", result));
    } else {
        std::string csv = "# config_digest=" + digest + "\nn1,coefficient\n";
        for (std::size_t k = 0; k < dist.coefficients.size(); ++k) {
            csv += std::to_string(k) + "," + pd::format_double(dist.coefficients[k]) + "\n";
        }
        write_file_atomic(opts.output_path, csv);
    }
    return 0;
}

// --- sweep ------------------------------------------------------------------

int run_sweep(const CommonOptions& opts, const pd::json& config,
              const std::string& digest) {
    if (!config.contains("n_modes") || !config.contains("p") || !config.contains("d") ||
        !config.contains("epsilons")) {
        throw pd::ValidationError("sweep config needs n_modes, p, d, epsilons");
    }
    const int n_modes = config["n_modes"].get<int>();
    const double p = config["p"].get<double>();
    const int d = config["d"].get<int>();
    const std::vector<double> epsilons = config["epsilons"].get<std::vector<double>>();
    const auto rows = pd::sweep_epsilon_scheme(n_modes, p, d, epsilons);

    if (opts.format == "json") {
        pd::json rows_json = pd::json::array();
        for (const auto& row : rows) {
            rows_json.push_back(pd::json{
                {"epsilon", row.epsilon},
                {"ratio_10", row.ratio_10.has_value() ? pd::json(*row.ratio_10) : nullptr},
                {"ratio_21", row.ratio_21.has_value() ? pd::json(*row.ratio_21) : nullptr},
                {"herald_prob", row.herald_prob},
                {"ratio_10_over_r",
                 row.ratio_10_over_r.has_value() ? pd::json(*row.ratio_10_over_r) : nullptr},
            });
        }
        pd::json result{{"n_modes", n_modes}, {"p", p}, {"d", d}, {"rows", rows_json}};
        write_file_atomic(opts.output_path, envelope_json(digest, "sweep", result));
    } else {
        std::string csv = "# config_digest=" + digest +
                          "\nepsilon,ratio_10,ratio_21,herald_prob,ratio_10_over_r\n";
        for (const auto& row : rows) {
            csv += pd::format_double(row.epsilon) + "," + csv_cell(row.ratio_10) + "," +
                   csv_cell(row.ratio_21) + "," + pd::format_double(row.herald_prob) + "," +
                   csv_cell(row.ratio_10_over_r) + "\n";
        }
        write_file_atomic(opts.output_path, csv);
    }
    return 0;
}

// --- search -----------------------------------------------------------------

int run_search(const CommonOptions& opts, const pd::json& config,
               const std::string& digest) {
    pd::SearchProblem problem = pd::search_problem_from_json(config);
    if (opts.seed.has_value()) problem.seed = *opts.seed;
    const auto result = pd::optimize(problem, resolve_threads(opts));

    if (opts.format == "json") {
        write_file_atomic(opts.output_path,
                          envelope_json(digest, "search", pd::to_json(result)));
    } else {
        std::string csv = "# config_digest=" + digest + "\nevaluation,incumbent\n";
        for (const auto& tp : result.trace) {
            csv += std::to_string(tp.evaluation) + "," + pd::format_double(tp.incumbent) +
                   "\n";
        }
        write_file_atomic(opts.output_path, csv);
    }
    return 0;
}

// --- verify -----------------------------------------------------------------

std::vector<pd::DetectionPattern> verify_patterns(int n_modes, std::uint64_t seed) {
    // Exhaustive for small networks; wide networks get every pattern with
    // D <= 2 plus a seeded random sample of heavier ones.
    std::vector<std::vector<int>> raw;
    const int slots = n_modes - 1;
    std::vector<int> current(static_cast<std::size_t>(slots), 0);
    auto rec = [&](auto&& self, int slot, int remaining) -> void {
        if (slot == slots - 1) {
            current[static_cast<std::size_t>(slot)] = remaining;
            raw.push_back(current);
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            current[static_cast<std::size_t>(slot)] = c;
            self(self, slot + 1, remaining - c);
        }
    };
    const int d_cap = n_modes <= 5 ? n_modes : 2;
    for (int d = 0; d <= d_cap; ++d) rec(rec, 0, d);
    if (n_modes > 5) {
        std::mt19937_64 rng(pd::detail::mix_seed(seed, 0x7a77e57));
        std::uniform_int_distribution<int> d_dist(3, n_modes);
        std::uniform_int_distribution<int> slot_dist(0, slots - 1);
        for (int k = 0; k < 64; ++k) {
            std::vector<int> counts(static_cast<std::size_t>(slots), 0);
            const int d = d_dist(rng);
            for (int j = 0; j < d; ++j) ++counts[static_cast<std::size_t>(slot_dist(rng))];
            raw.push_back(std::move(counts));
        }
    }
    std::vector<pd::DetectionPattern> out;
    out.reserve(raw.size());
    for (auto& counts : raw) out.push_back(pd::DetectionPattern::from_counts(counts));
    return out;
}

int run_verify(const CommonOptions& opts, const pd::json& config,
               const std::string& digest) {
    if (!config.contains("trials") || !config.contains("n_modes")) {
        throw pd::ValidationError("verify config needs trials and n_modes");
    }
    const int trials = config["trials"].get<int>();
    const int n_modes = config["n_modes"].get<int>();
    const double p_high = config.value("p_high", 0.95);
    if (trials < 1) throw pd::ValidationError("verify: trials must be >= 1");
    if (n_modes < 2) throw pd::ValidationError("verify: n_modes must be >= 2");
    if (!(p_high >= 0.0 && p_high < 1.0)) {
        throw pd::ValidationError("verify: p_high must lie in [0, 1)");
    }
    std::uint64_t seed = 0;
    if (opts.seed.has_value()) {
        seed = *opts.seed;
    } else if (config.contains("seed")) {
        seed = config["seed"].get<std::uint64_t>();
    }

    const auto patterns = verify_patterns(n_modes, seed);
    std::vector<std::vector<pd::BoundReport>> reports(static_cast<std::size_t>(trials));
    pd::detail::parallel_for(trials, resolve_threads(opts), [&](int t) {
        const std::uint64_t seed_t =
            pd::detail::mix_seed(seed, static_cast<std::uint64_t>(t));
        const pd::Unitary u = pd::haar_random(n_modes, seed_t);
        std::mt19937_64 rng(pd::detail::mix_seed(seed_t, 0xe45e3b1e));
        std::uniform_real_distribution<double> p_dist(0.0, p_high);
        std::vector<double> probs(static_cast<std::size_t>(n_modes));
        for (auto& p : probs) p = p_dist(rng);
        const auto ensemble = pd::InputEnsemble::from_probs(probs);
        auto& slot = reports[static_cast<std::size_t>(t)];
        slot.reserve(patterns.size());
        for (const auto& pattern : patterns) {
            slot.push_back(pd::check_bounds(u, ensemble, pattern));
        }
    });

    long checked = 0;
    long violations = 0;
    for (const auto& slot : reports) {
        for (const auto& rep : slot) {
            ++checked;
            if (!rep.satisfied) ++violations;
        }
    }

    if (opts.format == "json") {
        pd::json report_rows = pd::json::array();
        for (int t = 0; t < trials; ++t) {
            const auto& slot = reports[static_cast<std::size_t>(t)];
            for (std::size_t i = 0; i < slot.size(); ++i) {
                report_rows.push_back(pd::json{
                    {"trial", t},
                    {"pattern", patterns[i].counts()},
                    {"report", pd::to_json(slot[i])},
                });
            }
        }
        pd::json result{
            {"trials", trials},
            {"n_modes", n_modes},
            {"p_high", p_high},
            {"seed", seed},
            {"scenarios_checked", checked},
            {"violations", violations},
            {"all_satisfied", violations == 0},
            {"reports", std::move(report_rows)},
        };
        write_file_atomic(opts.output_path, envelope_json(digest, "verify", result));
    } else {
        std::string csv =
            "# config_digest=" + digest +
            "\ntrial,pattern,m,d,p_max,r_value,bound_value,effective_bound,"
            "observed_ratio,observed_c0,observed_c1,herald_prob,satisfied\n";
        for (int t = 0; t < trials; ++t) {
            const auto& slot = reports[static_cast<std::size_t>(t)];
            for (std::size_t i = 0; i < slot.size(); ++i) {
                const auto& rep = slot[i];
                csv += std::to_string(t) + "," + pattern_key(patterns[i].counts()) + "," +
                       std::to_string(rep.m) + "," + std::to_string(rep.d) + "," +
                       pd::format_double(rep.p_max) + "," + pd::format_double(rep.r_value) +
                       "," + pd::format_double(rep.bound_value) + "," +
                       pd::format_double(rep.effective_bound) + "," +
                       csv_cell(rep.observed_ratio) + "," +
                       pd::format_double(rep.observed_c0) + "," +
                       pd::format_double(rep.observed_c1) + "," +
                       pd::format_double(rep.herald_prob) + "," +
                       (rep.satisfied ? "true" : "false") + "\n";
            }
        }
        write_file_atomic(opts.output_path, csv);
    }
    std::cout << "violations: " << violations << "\n";
    return violations == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conditional photon statistics of passive linear-optical networks"};
    app.require_subcommand(1);

    CommonOptions opts;
    const auto add_common = [&opts](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path, "JSON configuration file")
            ->required();
        cmd->add_option("--output", opts.output_path, "Output file path")->required();
        cmd->add_option("--format", opts.format, "Output format")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
        cmd->add_option("--seed", opts.seed, "Seed override (takes precedence over config)");
        cmd->add_option("--threads", opts.threads,
                        "Worker threads (0 = hardware count; env PHOTON_DISTILL_THREADS "
                        "as fallback)");
    };
    CLI::App* evaluate_cmd =
        app.add_subcommand("evaluate", "Conditional distribution of one scenario");
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Epsilon sweep of the built-in scheme family");
    CLI::App* search_cmd =
        app.add_subcommand("search", "Derivative-free search over networks");
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Random-scenario bound verification");
    for (CLI::App* cmd : {evaluate_cmd, sweep_cmd, search_cmd, verify_cmd}) {
        add_common(cmd);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string config_text = read_file(opts.config_path);
        const std::string digest = pd::fnv1a_hex(config_text);
        const pd::json config = parse_config(config_text);
        if (evaluate_cmd->parsed()) return run_evaluate(opts, config, digest);
        if (sweep_cmd->parsed()) return run_sweep(opts, config, digest);
        if (search_cmd->parsed()) return run_search(opts, config, digest);
        return run_verify(opts, config, digest);
    } catch (const pd::NumericIntegrityError& e) {
        std::cerr << "numeric integrity error: " << e.what() << "\n";
        return 2;
    } catch (const pd::NonUnitaryError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const pd::PMaxOneError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const pd::SizeExceededError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const pd::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
