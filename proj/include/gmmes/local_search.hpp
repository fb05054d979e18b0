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

#include <functional>
#include <span>
#include <vector>

namespace gmmes::search {

using Objective = std::function<double(std::span<const double>)>;

struct LocalResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
};

struct NelderMeadOptions {
    int max_iterations = 2000;
    /// Stop once the spread of simplex values falls below this.
    double value_tol = 1e-12;
    /// ... and the simplex diameter falls below this.
    double step_tol = 1e-10;
    /// Edge length of the initial right-angled simplex.
    double initial_step = 0.1;
};

/// Nelder-Mead with the dimension-adaptive coefficients of Gao and Han.
LocalResult nelder_mead(const Objective &f, std::span<const double> x0, const NelderMeadOptions &options = {});

struct QuasiNewtonOptions {
    int max_iterations = 500;
    /// Stop when the infinity norm of the finite-difference gradient is below.
    double gradient_tol = 1e-9;
    /// Stop after `stall_limit` consecutive steps improving by less than this.
    double value_tol = 1e-15;
    int stall_limit = 3;
    /// Central-difference step.
    double fd_step = 1e-6;
};

/// BFGS on central finite-difference gradients with a backtracking Armijo
/// line search. Curvature pairs with s.y <= 0 are skipped.
LocalResult bfgs(const Objective &f, std::span<const double> x0, const QuasiNewtonOptions &options = {});

/// Central-difference gradient, 2 * dim evaluations.
std::vector<double> central_gradient(const Objective &f, std::span<const double> x, double step);

} // namespace gmmes::search
