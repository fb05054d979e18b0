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
#include "gmmes/local_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

namespace gmmes::search {

namespace {

using Vec = Eigen::VectorXd;

struct Counted {
    const Objective &f;
    int evaluations = 0;

    double operator()(const Vec &x) {
        ++evaluations;
        const double value = f(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
        return std::isnan(value) ? std::numeric_limits<double>::infinity() : value;
    }
};

Vec to_vec(std::span<const double> x) { return Eigen::Map<const Vec>(x.data(), static_cast<Eigen::Index>(x.size())); }

std::vector<double> to_std(const Vec &x) { return {x.data(), x.data() + x.size()}; }

} // namespace

LocalResult nelder_mead(const Objective &f, std::span<const double> x0, const NelderMeadOptions &options) {
    const auto dim = static_cast<Eigen::Index>(x0.size());
    if (dim == 0) {
        throw std::invalid_argument("nelder_mead needs a nonempty start point");
    }
    const double d = static_cast<double>(dim);
    const double reflect = 1.0;
    const double expand = 1.0 + 2.0 / d;
    const double contract = 0.75 - 1.0 / (2.0 * d);
    const double shrink = 1.0 - 1.0 / d;

    Counted eval{f};
    std::vector<Vec> simplex(static_cast<std::size_t>(dim + 1), to_vec(x0));
    std::vector<double> values(simplex.size());
    for (Eigen::Index i = 0; i < dim; ++i) {
        simplex[static_cast<std::size_t>(i + 1)](i) += options.initial_step;
    }
    for (std::size_t i = 0; i < simplex.size(); ++i) {
        values[i] = eval(simplex[i]);
    }

    std::vector<std::size_t> order(simplex.size());
    LocalResult result;
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[order.size() - 2];

        double diameter = 0.0;
        for (const auto &p : simplex) {
            diameter = std::max(diameter, (p - simplex[best]).lpNorm<Eigen::Infinity>());
        }
        if (values[worst] - values[best] <= options.value_tol && diameter <= options.step_tol) {
            result.converged = true;
            break;
        }

        Vec centroid = Vec::Zero(dim);
        for (std::size_t i = 0; i < simplex.size(); ++i) {
            if (i != worst) {
                centroid += simplex[i];
            }
        }
        centroid /= d;

        const Vec xr = centroid + reflect * (centroid - simplex[worst]);
        const double fr = eval(xr);
        if (fr < values[best]) {
            const Vec xe = centroid + expand * (xr - centroid);
            const double fe = eval(xe);
            if (fe < fr) {
                simplex[worst] = xe;
                values[worst] = fe;
            } else {
                simplex[worst] = xr;
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[second]) {
            simplex[worst] = xr;
            values[worst] = fr;
            continue;
        }
        const bool outside = fr < values[worst];
        const Vec xc = outside ? Vec(centroid + contract * (xr - centroid))
                               : Vec(centroid - contract * (centroid - simplex[worst]));
        const double fc = eval(xc);
        if (fc < (outside ? fr : values[worst])) {
            simplex[worst] = xc;
            values[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i < simplex.size(); ++i) {
            if (i != best) {
                simplex[i] = simplex[best] + shrink * (simplex[i] - simplex[best]);
                values[i] = eval(simplex[i]);
            }
        }
    }

    const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    result.x = to_std(simplex[best]);
    result.value = values[best];
    result.iterations = iter;
    result.evaluations = eval.evaluations;
    return result;
}

std::vector<double> central_gradient(const Objective &f, std::span<const double> x, double step) {
    std::vector<double> probe(x.begin(), x.end());
    std::vector<double> grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double h = step * std::max(1.0, std::abs(x[i]));
        probe[i] = x[i] + h;
        const double up = f(probe);
        probe[i] = x[i] - h;
        const double down = f(probe);
        probe[i] = x[i];
        grad[i] = (up - down) / (2.0 * h);
    }
    return grad;
}

LocalResult bfgs(const Objective &f, std::span<const double> x0, const QuasiNewtonOptions &options) {
    const auto dim = static_cast<Eigen::Index>(x0.size());
    if (dim == 0) {
        throw std::invalid_argument("bfgs needs a nonempty start point");
    }
    Counted eval{f};
    const auto gradient = [&](const Vec &x) {
        std::vector<double> g = central_gradient(
            [&](std::span<const double> p) { return eval(to_vec(p)); },
            std::span<const double>(x.data(), static_cast<std::size_t>(dim)), options.fd_step);
        return to_vec(g);
    };

    Vec x = to_vec(x0);
    double fx = eval(x);
    Vec g = gradient(x);
    Eigen::MatrixXd inv_hessian = Eigen::MatrixXd::Identity(dim, dim);

    LocalResult result;
    int stalls = 0;
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        if (!g.allFinite()) {
            break;
        }
        if (g.lpNorm<Eigen::Infinity>() <= options.gradient_tol) {
            result.converged = true;
            break;
        }
        Vec direction = -inv_hessian * g;
        double slope = g.dot(direction);
        if (slope >= 0.0) {
            inv_hessian.setIdentity();
            direction = -g;
            slope = -g.squaredNorm();
        }

        // Backtracking Armijo search with a quadratic-interpolation step.
        double alpha = 1.0;
        Vec x_new = x;
        double f_new = fx;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            x_new = x + alpha * direction;
            f_new = eval(x_new);
            if (f_new <= fx + 1e-4 * alpha * slope) {
                accepted = true;
                break;
            }
            const double quad = -slope * alpha * alpha / (2.0 * (f_new - fx - slope * alpha));
            alpha = std::isfinite(quad) ? std::clamp(quad, 0.1 * alpha, 0.5 * alpha) : 0.5 * alpha;
        }
        if (!accepted) {
            if (inv_hessian.isIdentity()) {
                break;
            }
            inv_hessian.setIdentity();
            continue;
        }

        const Vec g_new = gradient(x_new);
        const Vec s = x_new - x;
        const Vec y = g_new - g;
        const double sy = s.dot(y);
        if (iter == 0 && sy > 0.0) {
            inv_hessian *= sy / y.squaredNorm();
        }
        if (sy > 1e-300) {
            const double rho = 1.0 / sy;
            const Vec hy = inv_hessian * y;
            inv_hessian += (rho * rho * y.dot(hy) + rho) * (s * s.transpose()) - rho * (hy * s.transpose() + s * hy.transpose());
        }

        stalls = (fx - f_new <= options.value_tol * std::max(1.0, std::abs(fx))) ? stalls + 1 : 0;
        x = x_new;
        fx = f_new;
        g = g_new;
        if (stalls >= options.stall_limit) {
            result.converged = true;
            break;
        }
    }

    result.x = to_std(x);
    result.value = fx;
    result.iterations = iter;
    result.evaluations = eval.evaluations;
    return result;
}

} // namespace gmmes::search
