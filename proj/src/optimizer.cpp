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
#include "gmmes/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "gmmes/local_search.hpp"
#include "gmmes/potential.hpp"

namespace gmmes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kSimplexRounds = 4;
constexpr double kWindowWeight = 1e8;

/// chi + lambda * excess, recording the best chi seen at exactly feasible
/// points.
class PenalizedChi {
  public:
    PenalizedChi(const PotentialEvaluator &evaluator, double excitations, ConstraintMode mode)
        : evaluator_(evaluator), excitations_(excitations), mode_(mode), values_(evaluator.partitions().size()) {}

    double lambda = 0.0;
    double min_feasible_chi = kInf;
    long evaluations = 0;

    double operator()(std::span<const double> p) {
        ++evaluations;
        const Eigen::MatrixXd v = params_to_matrix(evaluator_.modes(), p);
        evaluator_.normalized_purities(v, excitations_, values_);
        const double chi = summarize(values_).chi;
        const double excess = constraint_excess(v, excitations_, mode_);
        if (excess == 0.0 && chi < min_feasible_chi) {
            min_feasible_chi = chi;
        }
        return chi + lambda * excess;
    }

  private:
    const PotentialEvaluator &evaluator_;
    double excitations_;
    ConstraintMode mode_;
    std::vector<double> values_;
};

std::mt19937_64 restart_engine(std::uint64_t seed, int restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                      static_cast<std::uint32_t>(restart), 0x9e3779b9U};
    return std::mt19937_64(seq);
}

std::vector<double> random_start(int n, double excitations, std::uint64_t seed, int restart) {
    auto engine = restart_engine(seed, restart);
    const double kappa_bound = std::log(2.0 * (2.0 * excitations + 1.0));
    std::uniform_real_distribution<double> kappa_dist(-kappa_bound, kappa_bound);
    std::uniform_real_distribution<double> generator_dist(-std::numbers::pi, std::numbers::pi);
    std::vector<double> x(PureStateParams::size_for(n));
    for (int k = 0; k < n; ++k) {
        x[static_cast<std::size_t>(k)] = kappa_dist(engine);
    }
    for (std::size_t i = static_cast<std::size_t>(n); i < x.size(); ++i) {
        x[i] = generator_dist(engine);
    }
    return x;
}

void fill_summary(RestartSummary &summary, const PotentialEvaluator &evaluator, double excitations,
                  ConstraintMode mode) {
    const Eigen::MatrixXd v = params_to_matrix(evaluator.modes(), summary.params);
    const PotentialMoments m = evaluator.moments(v, excitations);
    summary.chi = m.chi;
    summary.delta_chi = m.delta_chi;
    summary.energy_excess = max_energy_excess(v, excitations, mode);
    summary.feasible = summary.energy_excess <= kFeasibilityTol;
}

RestartSummary run_restart(const ExperimentConfig &config, const PotentialEvaluator &evaluator, double excitations,
                           std::vector<double> x) {
    const int n = config.n;
    PenalizedChi objective(evaluator, excitations, config.constraint_mode);
    const search::Objective f = [&objective](std::span<const double> p) { return objective(p); };

    double step = 0.3;
    for (const double lambda : config.penalty_schedule) {
        objective.lambda = lambda;
        double current = f(x);
        for (int round = 0; round < kSimplexRounds; ++round) {
            const auto res = search::nelder_mead(
                f, x, {.max_iterations = config.max_iters, .value_tol = config.tol, .step_tol = 1e-10, .initial_step = step});
            const double gain = current - res.value;
            x = res.x;
            current = res.value;
            if (gain <= config.tol * std::max(1.0, std::abs(current))) {
                break;
            }
        }
        if (config.polish) {
            x = search::bfgs(f, x, {.max_iterations = 2000, .value_tol = config.tol}).x;
        }
        step = 0.05;
    }

    RestartSummary summary;
    summary.params = restore_feasibility(PureStateParams::from_flat(n, x), excitations, config.constraint_mode).flat();
    summary.evaluations = objective.evaluations;
    summary.min_feasible_chi = objective.min_feasible_chi;
    fill_summary(summary, evaluator, excitations, config.constraint_mode);
    return summary;
}

/// Runs `count` jobs on up to `threads` workers; results land by index.
template <typename Job>
void run_indexed(int count, int threads, Job &&job) {
    const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
    const int workers = std::clamp(threads <= 0 ? static_cast<int>(hw) : threads, 1, std::max(1, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) {
            job(i);
        }
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) {
                job(i);
            }
        });
    }
}

/// Picks the feasible candidate with the smallest chi (lowest index on ties).
void select_best(OptimizationResult &result) {
    const RestartSummary *best = nullptr;
    result.min_feasible_iterate_chi = kInf;
    for (const auto &s : result.trace) {
        result.min_feasible_iterate_chi = std::min(result.min_feasible_iterate_chi, s.min_feasible_chi);
        if (s.feasible && (best == nullptr || s.chi < best->chi)) {
            best = &s;
        }
    }
    if (best == nullptr) {
        result.status = OptimizationStatus::Infeasible;
        result.feasible = false;
        result.best_params = PureStateParams::zeros(result.n);
        result.best_chi = kInf;
        result.best_delta_chi = kInf;
        return;
    }
    result.status = OptimizationStatus::Ok;
    result.feasible = true;
    result.best_params = PureStateParams::from_flat(result.n, best->params);
    result.best_chi = best->chi;
    result.best_delta_chi = best->delta_chi;
}

OptimizationResult empty_result(const ExperimentConfig &config, double excitations) {
    OptimizationResult result;
    result.n = config.n;
    result.excitations = excitations;
    result.constraint_mode = config.constraint_mode;
    result.seed = config.seed;
    result.restarts = config.restarts;
    return result;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

void ExperimentConfig::validate() const {
    if (n < 2 || n > 9) {
        throw std::invalid_argument("mode count must lie in 2..9");
    }
    if (excitation_grid.empty()) {
        throw std::invalid_argument("excitation grid is empty");
    }
    for (const double value : excitation_grid) {
        if (!std::isfinite(value) || value < 0.0) {
            throw std::invalid_argument("excitation bounds must be finite and nonnegative");
        }
    }
    if (!std::is_sorted(excitation_grid.begin(), excitation_grid.end())) {
        throw std::invalid_argument("excitation grid must be sorted ascending");
    }
    if (restarts < 1) {
        throw std::invalid_argument("restarts must be positive");
    }
    if (max_iters < 1) {
        throw std::invalid_argument("max_iters must be positive");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("tol must be positive");
    }
    if (penalty_schedule.empty()) {
        throw std::invalid_argument("penalty schedule is empty");
    }
    for (const double lambda : penalty_schedule) {
        if (!std::isfinite(lambda) || lambda <= 0.0) {
            throw std::invalid_argument("penalty multipliers must be positive");
        }
    }
    if (threads < 0) {
        throw std::invalid_argument("threads must be nonnegative");
    }
}

std::string_view to_string(OptimizationStatus status) {
    return status == OptimizationStatus::Ok ? "ok" : "infeasible";
}

OptimizationResult minimize_chi(const ExperimentConfig &config, double excitations,
                                const std::optional<PureStateParams> &warm_start) {
    config.validate();
    if (!std::isfinite(excitations) || excitations < 0.0) {
        throw std::invalid_argument("excitation bound must be finite and nonnegative");
    }
    if (warm_start && warm_start->n != config.n) {
        throw std::invalid_argument("warm start has the wrong mode count");
    }
    const auto start = std::chrono::steady_clock::now();
    const PotentialEvaluator evaluator(config.n);

    OptimizationResult result = empty_result(config, excitations);
    const int jobs = config.restarts + (warm_start ? 1 : 0);
    result.trace.resize(static_cast<std::size_t>(jobs));
    run_indexed(jobs, config.threads, [&](int i) {
        const bool warm = i == config.restarts;
        std::vector<double> x = warm ? warm_start->flat() : random_start(config.n, excitations, config.seed, i);
        RestartSummary summary = run_restart(config, evaluator, excitations, std::move(x));
        summary.index = i;
        summary.warm = warm;
        result.trace[static_cast<std::size_t>(i)] = std::move(summary);
    });
    select_best(result);
    result.wall_time_seconds = seconds_since(start);
    return result;
}

std::vector<OptimizationResult> scan(const ExperimentConfig &config) {
    config.validate();
    std::vector<OptimizationResult> rows;
    rows.reserve(config.excitation_grid.size());
    std::optional<PureStateParams> previous;
    for (const double excitations : config.excitation_grid) {
        rows.push_back(minimize_chi(config, excitations, config.warm_start ? previous : std::nullopt));
        if (rows.back().feasible) {
            previous = rows.back().best_params;
        }
    }
    return rows;
}

OptimizationResult minimize_delta_chi_at_chi_min(const ExperimentConfig &config, double excitations,
                                                 const OptimizationResult &chi_result) {
    config.validate();
    if (chi_result.n != config.n) {
        throw std::invalid_argument("chi result has the wrong mode count");
    }
    if (!chi_result.feasible) {
        OptimizationResult none = empty_result(config, excitations);
        select_best(none);
        return none;
    }
    const auto start = std::chrono::steady_clock::now();
    const int n = config.n;
    const PotentialEvaluator evaluator(n);
    const double chi_ceiling = chi_result.best_chi + kChiWindow;
    const double chi_target = chi_result.best_chi + 0.5 * kChiWindow;

    std::vector<const RestartSummary *> seeds;
    for (const auto &s : chi_result.trace) {
        if (s.feasible && s.chi <= chi_ceiling) {
            seeds.push_back(&s);
        }
    }

    OptimizationResult result = empty_result(config, excitations);
    result.trace.resize(seeds.size());
    run_indexed(static_cast<int>(seeds.size()), config.threads, [&](int i) {
        const RestartSummary &seed = *seeds[static_cast<std::size_t>(i)];
        std::vector<double> values(evaluator.partitions().size());
        double min_feasible_chi = kInf;
        long evaluations = 0;
        double lambda = 0.0;
        const search::Objective f = [&](std::span<const double> p) {
            ++evaluations;
            const Eigen::MatrixXd v = params_to_matrix(n, p);
            evaluator.normalized_purities(v, excitations, values);
            const PotentialMoments m = summarize(values);
            const double excess = constraint_excess(v, excitations, config.constraint_mode);
            if (excess == 0.0) {
                min_feasible_chi = std::min(min_feasible_chi, m.chi);
            }
            const double over = std::max(0.0, m.chi - chi_target);
            return m.delta_chi * m.delta_chi + lambda * excess + kWindowWeight * over * over;
        };

        std::vector<double> x = seed.params;
        for (const double multiplier : config.penalty_schedule) {
            lambda = multiplier;
            x = search::bfgs(f, x, {.max_iterations = 2000, .value_tol = config.tol}).x;
        }

        RestartSummary refined;
        refined.index = seed.index;
        refined.warm = seed.warm;
        refined.params = restore_feasibility(PureStateParams::from_flat(n, x), excitations, config.constraint_mode).flat();
        fill_summary(refined, evaluator, excitations, config.constraint_mode);
        // Keep the starting point when refinement leaves the window or does
        // not reduce the spread.
        if (!refined.feasible || refined.chi > chi_ceiling || refined.delta_chi > seed.delta_chi) {
            refined.params = seed.params;
            fill_summary(refined, evaluator, excitations, config.constraint_mode);
        }
        refined.evaluations = evaluations;
        refined.min_feasible_chi = min_feasible_chi;
        result.trace[static_cast<std::size_t>(i)] = std::move(refined);
    });

    const RestartSummary *best = nullptr;
    result.min_feasible_iterate_chi = kInf;
    for (const auto &s : result.trace) {
        result.min_feasible_iterate_chi = std::min(result.min_feasible_iterate_chi, s.min_feasible_chi);
        if (s.feasible && s.chi <= chi_ceiling && (best == nullptr || s.delta_chi < best->delta_chi)) {
            best = &s;
        }
    }
    if (best == nullptr) {
        select_best(result);
    } else {
        result.status = OptimizationStatus::Ok;
        result.feasible = true;
        result.best_params = PureStateParams::from_flat(n, best->params);
        result.best_chi = best->chi;
        result.best_delta_chi = best->delta_chi;
    }
    result.wall_time_seconds = seconds_since(start);
    return result;
}

} // namespace gmmes
