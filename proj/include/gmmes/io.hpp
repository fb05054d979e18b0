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
#pragma once

#include <iosfwd>
#include <span>

#include <json.hpp>

#include "gmmes/covariance.hpp"
#include "gmmes/optimizer.hpp"
#include "gmmes/potential.hpp"
#include "gmmes/pure_param.hpp"

// JSON and CSV encodings of the library types. Doubles are written with
// round-trip precision.
namespace gmmes {

using nlohmann::json;

void to_json(json &j, const CovarianceMatrix &v);
CovarianceMatrix covariance_from_json(const json &j);

void to_json(json &j, const Bipartition &part);
void to_json(json &j, const EntanglementReport &report);

/// {"n", "kappa", "generator", "flat"}; `flat` is kappa followed by generator.
void to_json(json &j, const PureStateParams &params);
PureStateParams params_from_json(const json &j);

void to_json(json &j, const ExperimentConfig &config);
ExperimentConfig config_from_json(const json &j);

void to_json(json &j, const RestartSummary &summary);
void to_json(json &j, const OptimizationResult &result);

inline constexpr const char *kScanCsvHeader = "n,N,chi_min,delta_chi,feasible,restarts,seed";

/// Formats a double with 17 significant digits ("inf" for infinities).
std::string format_double(double value);

/// Header plus one row per grid point.
void write_scan_csv(std::ostream &out, std::span<const OptimizationResult> rows);

/// One compact JSON record per line.
void write_json_lines(std::ostream &out, std::span<const OptimizationResult> rows);

} // namespace gmmes
