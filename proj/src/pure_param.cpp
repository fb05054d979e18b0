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
#include "gmmes/pure_param.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace gmmes {

namespace {

void require_finite(std::span<const double> values, const char *what) {
    for (const double x : values) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument(std::string(what) + " has non-finite entries");
        }
    }
}

} // namespace

std::string_view to_string(ConstraintMode mode) { return mode == ConstraintMode::PerMode ? "per-mode" : "average"; }

ConstraintMode constraint_mode_from_string(std::string_view name) {
    if (name == "per-mode" || name == "PerMode") {
        return ConstraintMode::PerMode;
    }
    if (name == "average" || name == "Average") {
        return ConstraintMode::Average;
    }
    throw std::invalid_argument("unknown constraint mode '" + std::string(name) + "'");
}

PureStateParams PureStateParams::zeros(int n) {
    if (n < 1) {
        throw std::invalid_argument("mode count must be positive");
    }
    return {n, std::vector<double>(static_cast<std::size_t>(n), 0.0),
            std::vector<double>(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0)};
}

PureStateParams PureStateParams::from_flat(int n, std::span<const double> flat) {
    if (n < 1 || flat.size() != size_for(n)) {
        throw std::invalid_argument("parameter vector for " + std::to_string(n) + " modes needs " +
                                    std::to_string(size_for(n)) + " entries, got " + std::to_string(flat.size()));
    }
    const auto split = flat.begin() + n;
    return {n, std::vector<double>(flat.begin(), split), std::vector<double>(split, flat.end())};
}

std::vector<double> PureStateParams::flat() const {
    std::vector<double> out(kappa);
    out.insert(out.end(), generator.begin(), generator.end());
    return out;
}

Eigen::MatrixXcd unitary_from_generator(int n, std::span<const double> generator) {
    if (n < 1 || generator.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
        throw std::invalid_argument("generator for " + std::to_string(n) + " modes needs n^2 entries");
    }
    require_finite(generator, "generator");

    Eigen::MatrixXcd h(n, n);
    std::size_t pos = 0;
    for (int i = 0; i < n; ++i) {
        h(i, i) = generator[pos++];
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const std::complex<double> z(generator[pos], generator[pos + 1]);
            pos += 2;
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    // exp(iH) = Q diag(exp(i lambda)) Q^dagger keeps U unitary to rounding.
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    const Eigen::MatrixXcd &q = solver.eigenvectors();
    Eigen::VectorXcd phases(n);
    for (int i = 0; i < n; ++i) {
        phases(i) = std::polar(1.0, solver.eigenvalues()(i));
    }
    return q * phases.asDiagonal() * q.adjoint();
}

Eigen::MatrixXd params_to_matrix(int n, std::span<const double> flat) {
    if (n < 1 || flat.size() != PureStateParams::size_for(n)) {
        throw std::invalid_argument("parameter vector has the wrong length for " + std::to_string(n) + " modes");
    }
    require_finite(flat, "parameter vector");

    const Eigen::MatrixXcd u = unitary_from_generator(n, flat.subspan(static_cast<std::size_t>(n)));
    const Eigen::MatrixXd x = u.real();
    const Eigen::MatrixXd y = u.imag();

    Eigen::MatrixXd r(2 * n, 2 * n);
    r << x, y, -y, x;
    Eigen::VectorXd t2(2 * n);
    for (int k = 0; k < n; ++k) {
        t2(k) = std::exp(2.0 * flat[static_cast<std::size_t>(k)]);
        t2(n + k) = std::exp(-2.0 * flat[static_cast<std::size_t>(k)]);
    }
    const Eigen::MatrixXd blocked = 0.5 * r * t2.asDiagonal() * r.transpose();

    // Blocked (q..., p...) to Interleaved (q1 p1 ...), symmetrized.
    Eigen::MatrixXd v(2 * n, 2 * n);
    for (int a = 0; a < 2 * n; ++a) {
        const int ia = a < n ? 2 * a : 2 * (a - n) + 1;
        for (int b = 0; b < 2 * n; ++b) {
            const int ib = b < n ? 2 * b : 2 * (b - n) + 1;
            v(ia, ib) = 0.5 * (blocked(a, b) + blocked(b, a));
        }
    }
    return v;
}

CovarianceMatrix params_to_cm(const PureStateParams &params) {
    if (params.kappa.size() != static_cast<std::size_t>(params.n)) {
        throw std::invalid_argument("kappa must have one entry per mode");
    }
    const std::vector<double> flat = params.flat();
    return CovarianceMatrix(params_to_matrix(params.n, flat));
}

Eigen::VectorXd mode_energies(const Eigen::MatrixXd &v) {
    const Eigen::Index n = v.rows() / 2;
    Eigen::VectorXd e(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        e(k) = 0.5 * (v(2 * k, 2 * k) + v(2 * k + 1, 2 * k + 1));
    }
    return e;
}

double constraint_excess(const Eigen::MatrixXd &v, double excitations, ConstraintMode mode) {
    const double bound = excitations + 0.5;
    const Eigen::VectorXd e = mode_energies(v);
    if (mode == ConstraintMode::Average) {
        const double over = std::max(0.0, e.mean() - bound);
        return over * over;
    }
    double total = 0.0;
    for (Eigen::Index k = 0; k < e.size(); ++k) {
        const double over = std::max(0.0, e(k) - bound);
        total += over * over;
    }
    return total;
}

double constraint_excess(const CovarianceMatrix &v, double excitations, ConstraintMode mode) {
    return constraint_excess(reorder(v, Ordering::Interleaved).matrix(), excitations, mode);
}

double max_energy_excess(const Eigen::MatrixXd &v, double excitations, ConstraintMode mode) {
    const Eigen::VectorXd e = mode_energies(v);
    const double top = mode == ConstraintMode::Average ? e.mean() : e.maxCoeff();
    return std::max(0.0, top - (excitations + 0.5));
}

PureStateParams restore_feasibility(const PureStateParams &params, double excitations, ConstraintMode mode) {
    std::vector<double> flat = params.flat();
    const int n = params.n;
    if (max_energy_excess(params_to_matrix(n, flat), excitations, mode) <= 0.0) {
        return params;
    }
    const std::vector<double> original(flat);
    const auto excess_at = [&](double t) {
        for (int k = 0; k < n; ++k) {
            flat[static_cast<std::size_t>(k)] = t * original[static_cast<std::size_t>(k)];
        }
        return max_energy_excess(params_to_matrix(n, flat), excitations, mode);
    };
    // t = 0 is the vacuum-squeezing point with all energies equal to 1/2.
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > 1e-15) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (excess_at(mid) <= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    excess_at(lo);
    return PureStateParams::from_flat(n, flat);
}

} // namespace gmmes
