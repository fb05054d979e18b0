// Copyright 2026 The gmmes Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "gmmes/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "gmmes/covariance.hpp"
#include "gmmes/io.hpp"
#include "gmmes/oracle.hpp"
#include "gmmes/potential.hpp"

#ifndef GMMES_VERSION
#define GMMES_VERSION "0.0.0"
#endif

namespace gmmes::cli {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

double parse_double(std::string_view text, std::string_view what) {
    const std::string s = trim(text);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(s, &used);
    } catch (const std::exception &) {
        throw UsageError("malformed number '" + s + "' in " + std::string(what));
    }
    if (used != s.size()) {
        throw UsageError("malformed number '" + s + "' in " + std::string(what));
    }
    return value;
}

std::vector<double> parse_list(std::string_view text, std::string_view what) {
    std::vector<double> out;
    std::string s(text);
    std::stringstream stream(s);
    std::string item;
    while (std::getline(stream, item, ',')) {
        out.push_back(parse_double(item, what));
    }
    if (out.empty()) {
        throw UsageError("empty list for " + std::string(what));
    }
    return out;
}

bool parse_bool(std::string_view text, std::string_view what) {
    const std::string s = trim(text);
    if (s == "true" || s == "1" || s == "yes" || s == "on") {
        return true;
    }
    if (s == "false" || s == "0" || s == "no" || s == "off") {
        return false;
    }
    throw UsageError("malformed boolean '" + s + "' for " + std::string(what));
}

template <typename Int>
Int parse_integer(std::string_view text, std::string_view what) {
    const std::string s = trim(text);
    const auto malformed = [&] { return UsageError("malformed integer '" + s + "' for " + std::string(what)); };
    if (s.empty() || (std::is_unsigned_v<Int> && s.front() == '-')) {
        throw malformed();
    }
    std::size_t used = 0;
    Int value{};
    try {
        if constexpr (std::is_unsigned_v<Int>) {
            value = static_cast<Int>(std::stoull(s, &used));
        } else {
            value = static_cast<Int>(std::stoll(s, &used));
        }
    } catch (const std::exception &) {
        throw malformed();
    }
    if (used != s.size()) {
        throw malformed();
    }
    return value;
}

void apply_key(ExperimentConfig &config, const std::string &key, const std::string &value) {
    if (key == "n") {
        config.n = parse_integer<int>(value, key);
    } else if (key == "N_grid") {
        config.excitation_grid =
            value.find(':') != std::string::npos ? parse_grid(value) : parse_list(value, key);
    } else if (key == "constraint_mode") {
        try {
            config.constraint_mode = constraint_mode_from_string(trim(value));
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    } else if (key == "restarts") {
        config.restarts = parse_integer<int>(value, key);
    } else if (key == "max_iters") {
        config.max_iters = parse_integer<int>(value, key);
    } else if (key == "tol") {
        config.tol = parse_double(value, key);
    } else if (key == "seed") {
        config.seed = parse_integer<std::uint64_t>(value, key);
    } else if (key == "penalty_schedule") {
        config.penalty_schedule = parse_list(value, key);
    } else if (key == "warm_start") {
        config.warm_start = parse_bool(value, key);
    } else if (key == "polish") {
        config.polish = parse_bool(value, key);
    } else if (key == "threads") {
        config.threads = parse_integer<int>(value, key);
    } else {
        throw UsageError("unknown config key '" + key + "'");
    }
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    file << content;
    if (!file) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

// ---------------------------------------------------------------------------
// Verification checks

CheckOutcome make_check(std::string name, bool passed, std::string detail, json observed) {
    return {std::move(name), passed, std::move(detail), std::move(observed)};
}

Eigen::MatrixXd faulty_twin_beam(double excitations) {
    const double c_true = 2.0 * excitations + 1.0;
    const double c = 2.0 * excitations;
    const double s = std::sqrt(c_true * c_true - 1.0);
    Eigen::MatrixXd v(4, 4);
    // clang-format off
    v << c,  0,  s,  0,
         0,  c,  0, -s,
         s,  0,  c,  0,
         0, -s,  0,  c;
    // clang-format on
    return 0.5 * v;
}

double relative_det_error(const CovarianceMatrix &v) {
    const double target = std::pow(0.25, v.modes());
    return std::abs(determinant(v.matrix()) - target) / target;
}

void constructor_checks(const std::string &label, const std::vector<CovarianceMatrix> &states,
                        const std::vector<double> &grid, std::vector<CheckOutcome> &out) {
    double worst_det = 0.0;
    double worst_margin = 0.0;
    double worst_gap = 0.0;
    double worst_chi = 0.0;
    double worst_energy = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto &v = states[i];
        const double excitations = grid[i];
        worst_det = std::max(worst_det, relative_det_error(v));
        worst_margin = std::min(worst_margin, uncertainty_margin(v));
        for (int k = 1; k <= v.modes(); ++k) {
            worst_energy = std::max(worst_energy, std::abs(mode_energy(v, k) - (excitations + 0.5)));
        }
        if (relative_det_error(v) <= 1e-9 && is_physical(v, 1e-9)) {
            worst_gap = std::max(worst_gap, oracle::perfect_mmes_gap(v, excitations));
            worst_chi = std::max(worst_chi, std::abs(chi(v, excitations) - 1.0));
        } else {
            worst_gap = std::numeric_limits<double>::infinity();
            worst_chi = std::numeric_limits<double>::infinity();
        }
    }
    out.push_back(make_check(label + "-purity", worst_det <= 1e-9, "|det V - 4^-n| / 4^-n <= 1e-9",
                             {{"max_relative_det_error", worst_det}}));
    out.push_back(make_check(label + "-physical", worst_margin >= -1e-9, "min eig(V + i Omega / 2) >= -1e-9",
                             {{"min_uncertainty_margin", worst_margin}}));
    out.push_back(make_check(label + "-energy", worst_energy <= 1e-12, "every mode energy equals N + 1/2",
                             {{"max_energy_deviation", worst_energy}}));
    out.push_back(make_check(label + "-perfect-mmes", worst_gap <= 1e-9 && worst_chi <= 1e-9,
                             "thermal balanced reductions and chi = 1 within 1e-9",
                             {{"max_purity_gap", std::isfinite(worst_gap) ? json(worst_gap) : json("inf")},
                              {"max_chi_error", std::isfinite(worst_chi) ? json(worst_chi) : json("inf")}}));
}

} // namespace

std::vector<double> parse_grid(std::string_view spec) {
    const std::string s(spec);
    const auto first = s.find(':');
    const auto second = first == std::string::npos ? std::string::npos : s.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos || s.find(':', second + 1) != std::string::npos) {
        throw UsageError("grid must look like start:stop:step, got '" + s + "'");
    }
    const double start = parse_double(s.substr(0, first), "grid");
    const double stop = parse_double(s.substr(first + 1, second - first - 1), "grid");
    const double step = parse_double(s.substr(second + 1), "grid");
    if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step) || start < 0.0 || stop < start ||
        step <= 0.0) {
        throw UsageError("grid needs 0 <= start <= stop and step > 0, got '" + s + "'");
    }
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 100000) {
        throw UsageError("grid has too many points");
    }
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        grid.push_back(start + static_cast<double>(i) * step);
    }
    return grid;
}

void apply_config_text(std::string_view text, ExperimentConfig &config) {
    const std::string body = trim(text);
    if (!body.empty() && body.front() == '{') {
        json j;
        try {
            j = json::parse(body);
        } catch (const json::exception &e) {
            throw UsageError(std::string("malformed JSON config: ") + e.what());
        }
        const json &snapshot = j.contains("config") ? j.at("config") : j;
        try {
            // Merge over the current values rather than over defaults.
            json merged = config;
            merged.update(snapshot);
            config = config_from_json(merged);
        } catch (const std::exception &e) {
            throw UsageError(std::string("invalid config: ") + e.what());
        }
        return;
    }
    std::istringstream lines{std::string(text)};
    std::string line;
    int number = 0;
    while (std::getline(lines, line)) {
        ++number;
        const auto hash = line.find('#');
        const std::string content = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (content.empty()) {
            continue;
        }
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config line " + std::to_string(number) + " is not 'key = value'");
        }
        apply_key(config, trim(content.substr(0, eq)), trim(content.substr(eq + 1)));
    }
}

void apply_config_file(const std::string &path, ExperimentConfig &config) {
    std::ifstream file(path);
    if (!file) {
        throw UsageError("cannot read config file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << file.rdbuf();
    apply_config_text(buffer.str(), config);
}

std::vector<CheckOutcome> run_checks(const VerifyOptions &options) {
    std::vector<CheckOutcome> out;
    const std::vector<double> grid{0.5, 1.0, 5.0};

    if (options.closed_form) {
        double worst = 0.0;
        for (int n = 1; n <= 7; ++n) {
            for (const double excitations : {0.0, 0.5, 1.0, 2.5, 20.0}) {
                const double expected = 1.0 / std::pow(2.0 * (excitations + 0.5), n);
                worst = std::max(worst, std::abs(purity(build_thermal(n, excitations)) - expected) / expected);
            }
        }
        out.push_back(make_check("thermal-purity", worst <= 1e-12, "purity = 1 / (2^n (N + 1/2)^n) for n <= 7",
                                 {{"max_relative_error", worst}}));

        std::vector<CovarianceMatrix> beams;
        std::vector<CovarianceMatrix> ghz;
        for (const double excitations : grid) {
            beams.push_back(options.inject_twin_beam_fault ? CovarianceMatrix(faulty_twin_beam(excitations))
                                                           : build_twin_beam(excitations));
            ghz.push_back(build_ghz3(excitations));
        }
        constructor_checks("twin-beam", beams, grid, out);
        constructor_checks("ghz3", ghz, grid, out);

        double worst_det = 0.0;
        double worst_margin = 0.0;
        std::mt19937_64 engine(options.seed);
        std::uniform_real_distribution<double> dist(-std::numbers::pi, std::numbers::pi);
        for (int draw = 0; draw < 600; ++draw) {
            const int n = 2 + draw % 6;
            std::vector<double> flat(PureStateParams::size_for(n));
            for (auto &x : flat) {
                x = dist(engine);
            }
            const CovarianceMatrix v(params_to_matrix(n, flat));
            worst_det = std::max(worst_det, relative_det_error(v));
            worst_margin = std::min(worst_margin, uncertainty_margin(v));
        }
        out.push_back(make_check("parametrization-purity", worst_det <= 1e-10 && worst_margin >= -1e-10,
                                 "random chart points are pure and physical at 1e-10",
                                 {{"max_relative_det_error", worst_det}, {"min_uncertainty_margin", worst_margin}}));
    }

    // Thermal minimality of purity under the energy bound.
    {
        json observed = json::array();
        bool passed = true;
        const std::vector<std::pair<int, double>> cases{{1, 1.0}, {2, 1.0}, {3, 0.5}};
        for (std::size_t c = 0; c < cases.size(); ++c) {
            const auto [n, excitations] = cases[c];
            const double floor = 1.0 / std::pow(2.0 * (excitations + 0.5), n);
            double lowest = 1.0;
            for (const auto &v : oracle::sample_random_physical_cm(n, excitations, options.seed + c, options.samples)) {
                lowest = std::min(lowest, purity(v));
            }
            passed = passed && lowest >= floor - 1e-12;
            observed.push_back({{"n", n}, {"N", excitations}, {"min_purity", lowest}, {"thermal_purity", floor}});
        }
        out.push_back(make_check("thermal-minimality", passed, "no sampled purity below the thermal value",
                                 std::move(observed)));
    }

    // Wigner-grid purity against the determinant formula.
    {
        double worst = 0.0;
        double worst_norm = 0.0;
        std::vector<CovarianceMatrix> one_mode{build_thermal(1, 0.0), build_thermal(1, 1.0)};
        for (auto &v : oracle::sample_random_physical_cm(1, 1.0, options.seed + 11, 8)) {
            one_mode.push_back(std::move(v));
        }
        for (const auto &v : one_mode) {
            const auto q = oracle::wigner_purity(v, 10.0, 256);
            worst = std::max(worst, std::abs(q.purity - purity(v)) / purity(v));
            worst_norm = std::max(worst_norm, std::abs(q.normalization - 1.0));
        }
        std::vector<CovarianceMatrix> two_mode{build_twin_beam(1.0)};
        for (auto &v : oracle::sample_random_physical_cm(2, 1.0, options.seed + 12, 1)) {
            two_mode.push_back(std::move(v));
        }
        for (const auto &v : two_mode) {
            const auto q = oracle::wigner_purity(v, 12.0, 128);
            worst = std::max(worst, std::abs(q.purity - purity(v)) / purity(v));
            worst_norm = std::max(worst_norm, std::abs(q.normalization - 1.0));
        }
        out.push_back(make_check("wigner-oracle", worst <= 1e-5 && worst_norm <= 1e-4,
                                 "grid purity matches 1 / (2^n sqrt(det V)) within 1e-5 relative",
                                 {{"max_relative_error", worst}, {"max_normalization_error", worst_norm}}));
    }

    // No perfect MMES for four modes.
    {
        double smallest_gap = std::numeric_limits<double>::infinity();
        int perfect = 0;
        for (const auto &v : oracle::sample_random_pure_cm(4, 1.0, options.seed + 21, 200)) {
            const double gap = oracle::perfect_mmes_gap(v, 1.0);
            smallest_gap = std::min(smallest_gap, gap);
            perfect += gap <= 1e-9 ? 1 : 0;
        }
        out.push_back(make_check("no-go-n4", perfect == 0, "no sampled 4-mode pure state is a perfect MMES",
                                 {{"min_purity_gap", smallest_gap}, {"perfect_count", perfect}}));
    }
    return out;
}

nlohmann::json make_manifest(const std::string &command, const ExperimentConfig &config,
                             const std::vector<std::string> &artifacts) {
    return json{{"tool", "gmmes"},
                {"version", GMMES_VERSION},
                {"command", command},
                {"timestamp", utc_timestamp()},
                {"seed", config.seed},
                {"config", config},
                {"artifacts", artifacts}};
}

namespace {

struct RunFlags {
    std::string config_path;
    int modes = 0;
    double excitations = 0.0;
    std::string grid;
    int restarts = 0;
    std::uint64_t seed = 0;
    std::string constraint;
    int threads = 0;
    int max_iters = 0;
    std::string out_path;
    std::string jsonl_path;
    bool no_warm_start = false;
    bool uniformity = false;
};

void add_config_flags(CLI::App &cmd, RunFlags &flags) {
    cmd.add_option("--config", flags.config_path, "Key-value config file or run manifest");
    cmd.add_option("--modes", flags.modes, "Number of modes n")->check(CLI::Range(2, 9));
    cmd.add_option("--restarts", flags.restarts, "Random restarts per excitation bound")->check(CLI::PositiveNumber);
    cmd.add_option("--seed", flags.seed, "Seed for the restart draws");
    cmd.add_option("--constraint", flags.constraint, "Energy constraint")
        ->check(CLI::IsMember({"per-mode", "average"}));
    cmd.add_option("--threads", flags.threads, "Worker cap (0 = all cores)")->check(CLI::NonNegativeNumber);
    cmd.add_option("--max-iters", flags.max_iters, "Iteration cap per simplex run")->check(CLI::PositiveNumber);
    cmd.add_option("--out", flags.out_path, "Output path");
}

bool given(const CLI::App &cmd, const std::string &name) {
    const CLI::Option *option = cmd.get_option_no_throw(name);
    return option != nullptr && option->count() > 0;
}

ExperimentConfig resolve_config(const CLI::App &cmd, const RunFlags &flags) {
    ExperimentConfig config;
    if (!flags.config_path.empty()) {
        apply_config_file(flags.config_path, config);
    }
    if (given(cmd, "--modes")) {
        config.n = flags.modes;
    }
    if (given(cmd, "--excitations")) {
        config.excitation_grid = {flags.excitations};
    }
    if (given(cmd, "--grid")) {
        config.excitation_grid = parse_grid(flags.grid);
    }
    if (given(cmd, "--restarts")) {
        config.restarts = flags.restarts;
    }
    if (given(cmd, "--seed")) {
        config.seed = flags.seed;
    }
    if (given(cmd, "--constraint")) {
        config.constraint_mode = constraint_mode_from_string(flags.constraint);
    }
    if (given(cmd, "--threads")) {
        config.threads = flags.threads;
    }
    if (given(cmd, "--max-iters")) {
        config.max_iters = flags.max_iters;
    }
    if (flags.no_warm_start) {
        config.warm_start = false;
    }
    try {
        config.validate();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    return config;
}

int cmd_verify(bool as_json, const VerifyOptions &options, std::ostream &out, std::ostream &err) {
    const auto checks = run_checks(options);
    const auto failed = std::find_if(checks.begin(), checks.end(), [](const auto &c) { return !c.passed; });
    if (as_json) {
        json report = json::array();
        for (const auto &c : checks) {
            report.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"observed", c.observed}});
        }
        json summary{{"passed", failed == checks.end()}, {"checks", std::move(report)}};
        if (failed != checks.end()) {
            summary["first_failure"] = failed->name;
        }
        out << summary.dump(2) << '\n';
    } else {
        for (const auto &c : checks) {
            out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "  " << c.observed.dump() << '\n';
        }
    }
    if (failed != checks.end()) {
        err << "verification failed: " << failed->name << '\n';
        return kExitCheckFailed;
    }
    return kExitOk;
}

int cmd_optimize(const ExperimentConfig &config, const RunFlags &flags, std::ostream &out) {
    const double excitations = config.excitation_grid.front();
    OptimizationResult result = minimize_chi(config, excitations);
    std::optional<OptimizationResult> uniform;
    if (flags.uniformity) {
        uniform = minimize_delta_chi_at_chi_min(config, excitations, result);
    }

    out << "n = " << config.n << ", N = " << format_double(excitations) << '\n';
    out << "chi_min = " << format_double(result.best_chi) << '\n';
    out << "delta_chi = " << format_double(result.best_delta_chi) << '\n';
    out << "feasible = " << (result.feasible ? "true" : "false") << '\n';
    if (uniform) {
        out << "uniform_chi = " << format_double(uniform->best_chi) << '\n';
        out << "uniform_delta_chi = " << format_double(uniform->best_delta_chi) << '\n';
    }

    if (!flags.out_path.empty()) {
        json record = result;
        record["wall_time_seconds"] = result.wall_time_seconds;
        if (result.feasible) {
            record["report"] = report(params_to_cm(result.best_params), excitations);
        }
        if (uniform) {
            record["uniformity"] = *uniform;
        }
        write_file(flags.out_path, record.dump(2) + "\n");
        const std::string manifest_path = flags.out_path + ".manifest.json";
        write_file(manifest_path, make_manifest("optimize", config, {flags.out_path}).dump(2) + "\n");
    }
    return result.feasible ? kExitOk : kExitCheckFailed;
}

int cmd_scan(const ExperimentConfig &config, const RunFlags &flags, std::ostream &out) {
    const std::vector<OptimizationResult> rows = scan(config);
    std::ostringstream csv;
    write_scan_csv(csv, rows);
    if (flags.out_path.empty()) {
        out << csv.str();
    } else {
        write_file(flags.out_path, csv.str());
        out << "wrote " << rows.size() << " rows to " << flags.out_path << '\n';
    }

    std::vector<std::string> artifacts;
    if (!flags.out_path.empty()) {
        artifacts.push_back(flags.out_path);
    }
    const std::string jsonl_path =
        !flags.jsonl_path.empty() ? flags.jsonl_path : (flags.out_path.empty() ? "" : flags.out_path + ".jsonl");
    if (!jsonl_path.empty()) {
        std::ostringstream lines;
        write_json_lines(lines, rows);
        write_file(jsonl_path, lines.str());
        artifacts.push_back(jsonl_path);
    }
    if (!flags.out_path.empty()) {
        write_file(flags.out_path + ".manifest.json", make_manifest("scan", config, artifacts).dump(2) + "\n");
    }
    const bool all_feasible = std::all_of(rows.begin(), rows.end(), [](const auto &r) { return r.feasible; });
    return all_feasible ? kExitOk : kExitCheckFailed;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Gaussian maximally multipartite entangled states: construction, potential and search"};
    app.set_version_flag("--version", std::string(GMMES_VERSION));
    app.require_subcommand(1);

    VerifyOptions verify_options;
    bool verify_json = false;
    auto *verify = app.add_subcommand("verify", "Run the closed-form and oracle verification suite");
    verify->add_flag("--json", verify_json, "Machine-readable report");
    verify->add_option("--samples", verify_options.samples, "Draws per thermal-minimality case")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", verify_options.seed, "Sampler seed");
    verify->add_flag("--inject-fault", verify_options.inject_twin_beam_fault,
                     "Corrupt the twin-beam diagonal to exercise the failure path");

    VerifyOptions oracle_options;
    oracle_options.closed_form = false;
    auto *oracle_cmd = app.add_subcommand("oracle", "Run the brute-force oracle checks and print a JSON report");
    oracle_cmd->add_option("--samples", oracle_options.samples, "Draws per thermal-minimality case")
        ->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--seed", oracle_options.seed, "Sampler seed");

    RunFlags opt_flags;
    auto *optimize = app.add_subcommand("optimize", "Minimize chi at one excitation bound");
    add_config_flags(*optimize, opt_flags);
    optimize->add_option("--excitations", opt_flags.excitations, "Excitation bound N")
        ->check(CLI::NonNegativeNumber);
    optimize->add_flag("--uniformity", opt_flags.uniformity,
                       "Also minimize delta chi among near-minimal chi states");

    RunFlags scan_flags;
    auto *scan_cmd = app.add_subcommand("scan", "Minimize chi over a grid of excitation bounds (CSV)");
    add_config_flags(*scan_cmd, scan_flags);
    scan_cmd->add_option("--grid", scan_flags.grid, "Excitation grid start:stop:step");
    scan_cmd->add_option("--jsonl", scan_flags.jsonl_path, "JSON-lines output (default: <out>.jsonl)");
    scan_cmd->add_flag("--no-warm-start", scan_flags.no_warm_start, "Disable warm starts across the grid");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (verify->parsed()) {
            return cmd_verify(verify_json, verify_options, out, err);
        }
        if (oracle_cmd->parsed()) {
            return cmd_verify(true, oracle_options, out, err);
        }
        if (optimize->parsed()) {
            const ExperimentConfig config = resolve_config(*optimize, opt_flags);
            if (config.excitation_grid.size() != 1) {
                throw UsageError("optimize takes a single excitation bound");
            }
            return cmd_optimize(config, opt_flags, out);
        }
        if (scan_cmd->parsed()) {
            return cmd_scan(resolve_config(*scan_cmd, scan_flags), scan_flags, out);
        }
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitUsage;
}

} // namespace gmmes::cli
