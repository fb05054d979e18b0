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
#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "gmmes/covariance.hpp"
#include "gmmes/optimizer.hpp"
#include "gmmes/potential.hpp"
#include "gmmes/pure_param.hpp"

using namespace gmmes;

namespace {

ExperimentConfig small_config(int n, int restarts) {
    ExperimentConfig config;
    config.n = n;
    config.restarts = restarts;
    return config;
}

void check_result_invariants(const OptimizationResult &r) {
    REQUIRE(r.feasible);
    const CovarianceMatrix v = params_to_cm(r.best_params);
    CHECK(std::abs(chi(v, r.excitations) - r.best_chi) <= 1e-10);
    CHECK(is_pure(v, 1e-10));
    for (int k = 1; k <= r.n; ++k) {
        CHECK(mode_energy(v, k) <= r.excitations + 0.5 + kFeasibilityTol);
    }
    CHECK(r.best_chi >= 1.0 - 1e-9);
    CHECK(r.min_feasible_iterate_chi >= 1.0 - 1e-6);
}

} // namespace

TEST_SUITE("optimizer") {

TEST_CASE("two modes reach the perfect value") {
    const OptimizationResult r = minimize_chi(small_config(2, 8), 1.0);
    CHECK(r.status == OptimizationStatus::Ok);
    CHECK(r.best_chi <= 1.0 + 1e-4);
    CHECK(r.trace.size() == 8);
    CHECK(r.restarts == 8);
    CHECK(r.seed == 7);
    check_result_invariants(r);
}

TEST_CASE("three modes reach the perfect value") {
    const OptimizationResult r = minimize_chi(small_config(3, 8), 1.0);
    CHECK(r.best_chi <= 1.0 + 1e-4);
    CHECK(r.best_delta_chi <= 1e-3);
    check_result_invariants(r);
}

TEST_CASE("zero excitations force the vacuum") {
    const OptimizationResult r = minimize_chi(small_config(4, 2), 0.0);
    CHECK(r.best_chi == doctest::Approx(1.0).epsilon(1e-12));
    const CovarianceMatrix v = params_to_cm(r.best_params);
    CHECK((v.matrix() - 0.5 * Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("average constraint") {
    ExperimentConfig config = small_config(3, 4);
    config.constraint_mode = ConstraintMode::Average;
    const OptimizationResult r = minimize_chi(config, 1.0);
    REQUIRE(r.feasible);
    const Eigen::VectorXd e = mode_energies(params_to_cm(r.best_params).matrix());
    CHECK(e.mean() <= 1.5 + kFeasibilityTol);
    CHECK(r.constraint_mode == ConstraintMode::Average);
}

TEST_CASE("deterministic and independent of the thread count") {
    ExperimentConfig config = small_config(3, 6);
    const OptimizationResult a = minimize_chi(config, 0.5);
    const OptimizationResult b = minimize_chi(config, 0.5);
    config.threads = 4;
    const OptimizationResult c = minimize_chi(config, 0.5);
    for (const OptimizationResult *other : {&b, &c}) {
        CHECK(other->best_params == a.best_params);
        CHECK(other->best_chi == a.best_chi);
        REQUIRE(other->trace.size() == a.trace.size());
        for (std::size_t i = 0; i < a.trace.size(); ++i) {
            CHECK(other->trace[i].params == a.trace[i].params);
            CHECK(other->trace[i].evaluations == a.trace[i].evaluations);
        }
    }
    config.seed = 8;
    CHECK(minimize_chi(config, 0.5).trace[0].params != a.trace[0].params);
}

TEST_CASE("warm start adds a candidate") {
    const ExperimentConfig config = small_config(2, 2);
    const OptimizationResult first = minimize_chi(config, 1.0);
    const OptimizationResult warm = minimize_chi(config, 1.5, first.best_params);
    REQUIRE(warm.trace.size() == 3);
    CHECK(warm.trace.back().warm);
    CHECK_FALSE(warm.trace.front().warm);
    CHECK_THROWS_AS(minimize_chi(config, 1.0, PureStateParams::zeros(3)), std::invalid_argument);
}

TEST_CASE("scan rows follow the grid") {
    ExperimentConfig config = small_config(2, 2);
    config.excitation_grid = {0.0, 0.5, 1.0};
    const auto rows = scan(config);
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].excitations == config.excitation_grid[i]);
        CHECK(rows[i].best_chi <= 1.0 + 1e-4);
    }
    CHECK(rows[0].trace.size() == 2);
    CHECK(rows[1].trace.size() == 3);
    config.warm_start = false;
    CHECK(scan(config)[1].trace.size() == 2);
}

TEST_CASE("lexicographic spread search stays in the window") {
    const ExperimentConfig config = small_config(4, 4);
    const OptimizationResult chi_run = minimize_chi(config, 1.0);
    const OptimizationResult spread = minimize_delta_chi_at_chi_min(config, 1.0, chi_run);
    REQUIRE(spread.feasible);
    CHECK(spread.best_chi <= chi_run.best_chi + kChiWindow);
    CHECK(spread.best_delta_chi <= chi_run.best_delta_chi + 1e-12);
    check_result_invariants(spread);

    OptimizationResult failed = chi_run;
    failed.feasible = false;
    failed.status = OptimizationStatus::Infeasible;
    const OptimizationResult none = minimize_delta_chi_at_chi_min(config, 1.0, failed);
    CHECK(none.status == OptimizationStatus::Infeasible);
    CHECK_FALSE(none.feasible);
    CHECK(std::isinf(none.best_chi));
    CHECK(to_string(none.status) == "infeasible");
}

TEST_CASE("configuration validation") {
    ExperimentConfig config;
    CHECK_NOTHROW(config.validate());
    config.n = 1;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = {};
    config.excitation_grid = {1.0, 0.5};
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = {};
    config.excitation_grid = {-1.0};
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = {};
    config.restarts = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = {};
    config.tol = 0.0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = {};
    config.penalty_schedule = {};
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = {};
    CHECK_THROWS_AS(minimize_chi(config, -1.0), std::invalid_argument);
}

} // TEST_SUITE
