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
#include <optional>
#include <string_view>
#include <vector>

#include "gmmes/pure_param.hpp"

namespace gmmes {

/// Per-mode energy slack allowed for a reported optimum.
inline constexpr double kFeasibilityTol = 1e-6;
/// Width of the near-minimal chi window used by the uniformity search.
inline constexpr double kChiWindow = 1e-4;

struct ExperimentConfig {
    int n = 4;
    std::vector<double> excitation_grid{1.0};
    ConstraintMode constraint_mode = ConstraintMode::PerMode;
    int restarts = 16;
    /// Iteration cap of each simplex run.
    int max_iters = 20000;
    /// Convergence tolerance on the objective.
    double tol = 1e-12;
    std::uint64_t seed = 7;
    std::vector<double> penalty_schedule{1e2, 1e4, 1e6};
    bool warm_start = true;
    /// Finite-difference BFGS refinement after the simplex phase.
    bool polish = true;
    /// Worker cap for independent restarts; 0 picks the hardware count.
    int threads = 1;

    /// Throws std::invalid_argument on an inconsistent configuration.
    void validate() const;
};

enum class OptimizationStatus { Ok, Infeasible };

std::string_view to_string(OptimizationStatus status);

struct RestartSummary {
    int index = 0;
    /// True for the candidate seeded from the previous grid point.
    bool warm = false;
    double chi = 0.0;
    double delta_chi = 0.0;
    /// Largest per-mode (or mean) energy above N + 1/2.
    double energy_excess = 0.0;
    bool feasible = false;
    long evaluations = 0;
    /// Smallest chi over every evaluated point satisfying the energy
    /// constraint exactly; +inf when none did.
    double min_feasible_chi = 0.0;
    std::vector<double> params;
};

struct OptimizationResult {
    int n = 0;
    double excitations = 0.0;
    ConstraintMode constraint_mode = ConstraintMode::PerMode;
    OptimizationStatus status = OptimizationStatus::Infeasible;
    PureStateParams best_params;
    double best_chi = 0.0;
    double best_delta_chi = 0.0;
    bool feasible = false;
    std::uint64_t seed = 0;
    int restarts = 0;
    std::vector<RestartSummary> trace;
    /// Minimum of RestartSummary::min_feasible_chi over the trace.
    double min_feasible_iterate_chi = 0.0;
    double wall_time_seconds = 0.0;
};

/**
 * @brief Multi-restart minimization of chi over pure states.
 *
 * Each restart draws kappa uniformly in [-ln(2(2N+1)), ln(2(2N+1))] and the
 * generator uniformly in [-pi, pi], then for every penalty multiplier runs
 * restarted simplex descent on chi + lambda * constraint_excess, polishes
 * with finite-difference BFGS and finally restores exact feasibility by
 * shrinking kappa. The result is the feasible candidate with the smallest
 * chi; ties resolve to the lowest restart index. Results depend only on the
 * configuration, never on the thread count.
 */
OptimizationResult minimize_chi(const ExperimentConfig &config, double excitations,
                                const std::optional<PureStateParams> &warm_start = std::nullopt);

/// One minimize_chi run per grid point, warm-started from the previous
/// point when the configuration asks for it.
std::vector<OptimizationResult> scan(const ExperimentConfig &config);

/**
 * @brief Lexicographic follow-up: smallest delta chi among near-minimal chi.
 *
 * Starts from every feasible candidate of `chi_result` whose chi lies within
 * kChiWindow of the best one and minimizes the variance of the normalized
 * purities, penalizing chi above best_chi + kChiWindow / 2 and any energy
 * excess. Only candidates that end feasible and inside the window compete.
 */
OptimizationResult minimize_delta_chi_at_chi_min(const ExperimentConfig &config, double excitations,
                                                 const OptimizationResult &chi_result);

} // namespace gmmes
