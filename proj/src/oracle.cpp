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
#include "gmmes/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "gmmes/bipartition.hpp"
#include "gmmes/pure_param.hpp"

namespace gmmes::oracle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Trapezoid weight of node k out of m.
double weight(int k, int m, double h) { return (k == 0 || k == m - 1) ? 0.5 * h : h; }

/**
 * Sum over the grid line x_k = -L + k h of w_k exp(-(c + 2 b x_k + a x_k^2)).
 *
 * The exponential is evaluated once at the node nearest the vertex and
 * propagated outwards with multiplicative ratios, so underflow only ever
 * hits terms that are already negligible.
 */
double line_sum(double c, double b, double a, double extent, double h, int m) {
    const auto exponent = [&](double x) { return c + 2.0 * b * x + a * x * x; };
    const double vertex = -b / a;
    const int peak = std::clamp(static_cast<int>(std::lround((vertex + extent) / h)), 0, m - 1);
    const double x_peak = -extent + peak * h;
    const double e_peak = std::exp(-exponent(x_peak));
    const double step_growth = std::exp(-2.0 * a * h * h);

    double total = weight(peak, m, h) * e_peak;
    // Upwards: q(x + h) - q(x) = 2 b h + a (2 x h + h^2).
    double value = e_peak;
    double ratio = std::exp(-(2.0 * b * h + a * (2.0 * x_peak * h + h * h)));
    for (int k = peak + 1; k < m; ++k) {
        value *= ratio;
        ratio *= step_growth;
        total += weight(k, m, h) * value;
    }
    // Downwards: q(x - h) - q(x) = -2 b h + a (-2 x h + h^2).
    value = e_peak;
    ratio = std::exp(-(-2.0 * b * h + a * (-2.0 * x_peak * h + h * h)));
    for (int k = peak - 1; k >= 0; --k) {
        value *= ratio;
        ratio *= step_growth;
        total += weight(k, m, h) * value;
    }
    return total;
}

/// Grid integral of exp(-X^T A X) over [-L, L]^{dim}, dim in {2, 4}.
double gaussian_grid_integral(const Eigen::MatrixXd &a, double extent, int m) {
    const double h = 2.0 * extent / (m - 1);
    const auto node = [&](int k) { return -extent + k * h; };
    const Eigen::Index dim = a.rows();
    const Eigen::Index last = dim - 1;
    const double a_last = a(last, last);

    if (dim == 2) {
        double total = 0.0;
        for (int i = 0; i < m; ++i) {
            const double x0 = node(i);
            total += weight(i, m, h) * line_sum(a(0, 0) * x0 * x0, a(1, 0) * x0, a_last, extent, h, m);
        }
        return total;
    }

    double total = 0.0;
    for (int i = 0; i < m; ++i) {
        const double x0 = node(i);
        double slab_i = 0.0;
        for (int j = 0; j < m; ++j) {
            const double x1 = node(j);
            const double c01 = a(0, 0) * x0 * x0 + 2.0 * a(0, 1) * x0 * x1 + a(1, 1) * x1 * x1;
            const double b01 = a(3, 0) * x0 + a(3, 1) * x1;
            double slab_j = 0.0;
            for (int k = 0; k < m; ++k) {
                const double x2 = node(k);
                const double c = c01 + 2.0 * (a(2, 0) * x0 + a(2, 1) * x1) * x2 + a(2, 2) * x2 * x2;
                const double b = b01 + a(3, 2) * x2;
                slab_j += weight(k, m, h) * line_sum(c, b, a_last, extent, h, m);
            }
            slab_i += weight(j, m, h) * slab_j;
        }
        total += weight(i, m, h) * slab_i;
    }
    return total;
}

Eigen::MatrixXd pure_state_at_energy(int n, std::vector<double> flat, double target, ConstraintMode mode) {
    // Mode energies grow monotonically with a common scale t on kappa.
    const std::vector<double> original(flat);
    const auto top_energy = [&](double t) {
        for (int k = 0; k < n; ++k) {
            flat[static_cast<std::size_t>(k)] = t * original[static_cast<std::size_t>(k)];
        }
        const Eigen::VectorXd e = mode_energies(params_to_matrix(n, flat));
        return mode == ConstraintMode::Average ? e.mean() : e.maxCoeff();
    };
    if (target <= 0.5) {
        return params_to_matrix(n, std::vector<double>(original.size(), 0.0));
    }
    double hi = 1.0;
    while (top_energy(hi) < target && hi < 1e3) {
        hi *= 2.0;
    }
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (top_energy(mid) <= target ? lo : hi) = mid;
    }
    top_energy(lo);
    return params_to_matrix(n, flat);
}

std::vector<double> random_chart_point(int n, double excitations, std::mt19937_64 &engine) {
    const double kappa_bound = std::log(2.0 * (2.0 * excitations + 1.0));
    std::uniform_real_distribution<double> kappa_dist(-std::max(kappa_bound, 0.5), std::max(kappa_bound, 0.5));
    std::uniform_real_distribution<double> generator_dist(-std::numbers::pi, std::numbers::pi);
    std::vector<double> flat(PureStateParams::size_for(n));
    for (int k = 0; k < n; ++k) {
        flat[static_cast<std::size_t>(k)] = kappa_dist(engine);
    }
    for (std::size_t i = static_cast<std::size_t>(n); i < flat.size(); ++i) {
        flat[i] = generator_dist(engine);
    }
    return flat;
}

void require_sampler_args(int n, double excitations, int count) {
    if (n < 1) {
        throw std::invalid_argument("mode count must be positive");
    }
    if (!std::isfinite(excitations) || excitations < 0.0) {
        throw std::invalid_argument("excitation bound must be finite and nonnegative");
    }
    if (count < 0) {
        throw std::invalid_argument("sample count must be nonnegative");
    }
}

} // namespace

WignerQuadrature wigner_purity(const CovarianceMatrix &v, double extent, int points) {
    const int n = v.modes();
    if (n > 2) {
        throw std::invalid_argument("Wigner quadrature supports one or two modes only");
    }
    if (points < 64) {
        throw std::invalid_argument("Wigner quadrature needs at least 64 points per axis");
    }
    if (!(extent > 0.0) || !std::isfinite(extent)) {
        throw std::invalid_argument("grid extent must be positive");
    }
    const Eigen::MatrixXd cov = reorder(v, Ordering::Interleaved).matrix();
    const Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        throw std::domain_error("Wigner function needs a positive definite covariance matrix");
    }
    const Eigen::MatrixXd inverse = llt.solve(Eigen::MatrixXd::Identity(cov.rows(), cov.cols()));
    const double det = determinant(cov);
    const double norm_n = std::pow(kTwoPi, n);

    WignerQuadrature out;
    // W = exp(-X^T V^-1 X / 2) / ((2 pi)^n sqrt(det V)).
    out.normalization = gaussian_grid_integral(0.5 * inverse, extent, points) / (norm_n * std::sqrt(det));
    // (2 pi)^n W^2 = exp(-X^T V^-1 X) / ((2 pi)^n det V).
    out.purity = gaussian_grid_integral(inverse, extent, points) / (norm_n * det);
    out.truncated = extent < 6.0 * std::sqrt(cov.diagonal().maxCoeff());
    return out;
}

std::vector<CovarianceMatrix> sample_random_pure_cm(int n, double excitations, std::uint64_t seed, int count) {
    require_sampler_args(n, excitations, count);
    std::mt19937_64 engine(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double bound = excitations + 0.5;
    std::vector<CovarianceMatrix> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const bool boundary = i % 2 == 0;
        const double target = boundary ? bound * (1.0 - 0.01 * unit(engine)) : 0.5 + excitations * unit(engine);
        out.emplace_back(pure_state_at_energy(n, random_chart_point(n, excitations, engine), target,
                                              ConstraintMode::PerMode));
    }
    return out;
}

std::vector<CovarianceMatrix> sample_random_physical_cm(int n, double excitations, std::uint64_t seed, int count) {
    require_sampler_args(n, excitations, count);
    std::mt19937_64 engine(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double bound = excitations + 0.5;
    const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(2 * n, 2 * n);

    std::vector<CovarianceMatrix> out;
    out.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(out.size()) < count) {
        const bool boundary = out.size() % 2 == 0;
        const auto energy_draw = [&] {
            return boundary ? std::max(0.5, bound * (1.0 - 0.01 * unit(engine))) : 0.5 + excitations * unit(engine);
        };
        const Eigen::MatrixXd pure =
            pure_state_at_energy(n, random_chart_point(n, excitations, engine), energy_draw(), ConstraintMode::PerMode);
        const double thermal_energy = energy_draw();
        const double w = unit(engine);
        Eigen::MatrixXd v = w * pure + (1.0 - w) * thermal_energy * identity;

        // Isotropic noise within the remaining slack keeps the bound.
        const double slack = bound - mode_energies(v).maxCoeff();
        if (slack > 0.0) {
            v += (boundary ? 0.01 : 1.0) * slack * unit(engine) * identity;
        }
        v = 0.5 * (v + v.transpose()).eval();

        CovarianceMatrix cm(std::move(v));
        if (!is_physical(cm, 1e-10) || mode_energies(cm.matrix()).maxCoeff() > bound + 1e-12) {
            continue;
        }
        out.push_back(std::move(cm));
    }
    return out;
}

double perfect_mmes_gap(const CovarianceMatrix &v, double excitations) {
    const int n = v.modes();
    const int size = n / 2;
    const double thermal = 1.0 / std::pow(2.0 * (excitations + 0.5), size);
    double gap = 0.0;
    for (const auto &part : balanced_bipartitions(n)) {
        gap = std::max(gap, std::abs(purity(reduce(v, part.subset())) - thermal));
    }
    return gap;
}

bool verify_perfect_mmes(const CovarianceMatrix &v, double excitations, double tol) {
    return perfect_mmes_gap(v, excitations) <= tol;
}

} // namespace gmmes::oracle
