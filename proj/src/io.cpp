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
#include "gmmes/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace gmmes {

namespace {

// nlohmann writes non-finite doubles as null; keep the distinction explicit.
json number_or_string(double value) {
    if (std::isfinite(value)) {
        return value;
    }
    return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
}

} // namespace

void to_json(json &j, const CovarianceMatrix &v) {
    const Eigen::MatrixXd &m = v.matrix();
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        rows.push_back(std::move(row));
    }
    j = json{{"n", v.modes()}, {"ordering", std::string(to_string(v.ordering()))}, {"entries", std::move(rows)}};
}

CovarianceMatrix covariance_from_json(const json &j) {
    const int n = j.at("n").get<int>();
    const auto &rows = j.at("entries");
    if (n < 1 || !rows.is_array() || rows.size() != static_cast<std::size_t>(2 * n)) {
        throw std::invalid_argument("covariance JSON needs a 2n x 2n entries array");
    }
    Eigen::MatrixXd m(2 * n, 2 * n);
    for (int r = 0; r < 2 * n; ++r) {
        const auto &row = rows.at(static_cast<std::size_t>(r));
        if (!row.is_array() || row.size() != static_cast<std::size_t>(2 * n)) {
            throw std::invalid_argument("covariance JSON row " + std::to_string(r) + " has the wrong length");
        }
        for (int c = 0; c < 2 * n; ++c) {
            m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
        }
    }
    const Ordering ordering =
        j.contains("ordering") ? ordering_from_string(j.at("ordering").get<std::string>()) : Ordering::Interleaved;
    return CovarianceMatrix(std::move(m), ordering);
}

void to_json(json &j, const Bipartition &part) { j = part.subset(); }

void to_json(json &j, const EntanglementReport &report) {
    json parts = json::array();
    for (const auto &entry : report.per_partition) {
        parts.push_back({{"subset", entry.partition.subset()}, {"value", entry.value}});
    }
    j = json{{"chi", report.chi},
             {"delta_chi", report.delta_chi},
             {"N", report.excitations},
             {"per_partition", std::move(parts)}};
}

void to_json(json &j, const PureStateParams &params) {
    j = json{{"n", params.n}, {"kappa", params.kappa}, {"generator", params.generator}, {"flat", params.flat()}};
}

PureStateParams params_from_json(const json &j) {
    const int n = j.at("n").get<int>();
    if (j.contains("flat")) {
        return PureStateParams::from_flat(n, j.at("flat").get<std::vector<double>>());
    }
    PureStateParams p{n, j.at("kappa").get<std::vector<double>>(), j.at("generator").get<std::vector<double>>()};
    return PureStateParams::from_flat(n, p.flat());
}

void to_json(json &j, const ExperimentConfig &config) {
    j = json{{"n", config.n},
             {"N_grid", config.excitation_grid},
             {"constraint_mode", std::string(to_string(config.constraint_mode))},
             {"restarts", config.restarts},
             {"max_iters", config.max_iters},
             {"tol", config.tol},
             {"seed", config.seed},
             {"penalty_schedule", config.penalty_schedule},
             {"warm_start", config.warm_start},
             {"polish", config.polish},
             {"threads", config.threads}};
}

ExperimentConfig config_from_json(const json &j) {
    ExperimentConfig c;
    c.n = j.value("n", c.n);
    c.excitation_grid = j.value("N_grid", c.excitation_grid);
    if (j.contains("constraint_mode")) {
        c.constraint_mode = constraint_mode_from_string(j.at("constraint_mode").get<std::string>());
    }
    c.restarts = j.value("restarts", c.restarts);
    c.max_iters = j.value("max_iters", c.max_iters);
    c.tol = j.value("tol", c.tol);
    c.seed = j.value("seed", c.seed);
    c.penalty_schedule = j.value("penalty_schedule", c.penalty_schedule);
    c.warm_start = j.value("warm_start", c.warm_start);
    c.polish = j.value("polish", c.polish);
    c.threads = j.value("threads", c.threads);
    c.validate();
    return c;
}

void to_json(json &j, const RestartSummary &summary) {
    j = json{{"index", summary.index},
             {"warm", summary.warm},
             {"chi", summary.chi},
             {"delta_chi", summary.delta_chi},
             {"energy_excess", summary.energy_excess},
             {"feasible", summary.feasible},
             {"evaluations", summary.evaluations},
             {"min_feasible_chi", number_or_string(summary.min_feasible_chi)}};
}

// Wall time is left out so records of identical runs compare equal.
void to_json(json &j, const OptimizationResult &result) {
    j = json{{"n", result.n},
             {"N", result.excitations},
             {"constraint_mode", std::string(to_string(result.constraint_mode))},
             {"status", std::string(to_string(result.status))},
             {"best_chi", number_or_string(result.best_chi)},
             {"best_delta_chi", number_or_string(result.best_delta_chi)},
             {"feasible", result.feasible},
             {"seed", result.seed},
             {"restarts", result.restarts},
             {"best_params", result.best_params},
             {"min_feasible_iterate_chi", number_or_string(result.min_feasible_iterate_chi)},
             {"trace", result.trace}};
}

std::string format_double(double value) {
    if (!std::isfinite(value)) {
        return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
    }
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void write_scan_csv(std::ostream &out, std::span<const OptimizationResult> rows) {
    out << kScanCsvHeader << '\n';
    for (const auto &row : rows) {
        out << row.n << ',' << format_double(row.excitations) << ',' << format_double(row.best_chi) << ','
            << format_double(row.best_delta_chi) << ',' << (row.feasible ? "true" : "false") << ',' << row.restarts
            << ',' << row.seed << '\n';
    }
}

void write_json_lines(std::ostream &out, std::span<const OptimizationResult> rows) {
    for (const auto &row : rows) {
        out << json(row).dump() << '\n';
    }
}

} // namespace gmmes
