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

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gmmes/optimizer.hpp"

namespace gmmes::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Raised for malformed flags, grids and config files (exit code 2).
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Parses "start:stop:step" into an ascending grid including both ends.
std::vector<double> parse_grid(std::string_view spec);

/**
 * @brief Applies a config file on top of `config`.
 *
 * Two formats are accepted. A JSON object (for instance a run manifest, whose
 * "config" member is used) or flat `key = value` lines with `#` comments.
 * Keys are the ExperimentConfig field names: n, N_grid, constraint_mode,
 * restarts, max_iters, tol, seed, penalty_schedule, warm_start, polish,
 * threads. N_grid takes a comma list or a start:stop:step grid.
 */
void apply_config_file(const std::string &path, ExperimentConfig &config);
void apply_config_text(std::string_view text, ExperimentConfig &config);

struct CheckOutcome {
    std::string name;
    bool passed = false;
    std::string detail;
    /// Observed extrema and other numbers behind the verdict.
    nlohmann::json observed;
};

struct VerifyOptions {
    /// Draws per (n, N) pair for the thermal-minimality sampling.
    int samples = 2000;
    std::uint64_t seed = 7;
    /// Replaces the twin-beam diagonal with cosh r = 2N while keeping
    /// sinh r, which breaks purity.
    bool inject_twin_beam_fault = false;
    /// Include the closed-form constructor checks (off for `oracle`).
    bool closed_form = true;
};

/// Runs every check of the verification suite, in a fixed order.
std::vector<CheckOutcome> run_checks(const VerifyOptions &options);

/// Writes the manifest describing one CLI run.
nlohmann::json make_manifest(const std::string &command, const ExperimentConfig &config,
                             const std::vector<std::string> &artifacts);

/// Entry point shared by the executable and the tests; `args` excludes the
/// program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace gmmes::cli
