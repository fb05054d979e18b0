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
#include "gmmes/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmmes {

namespace {

constexpr double kSymmetryTol = 1e-12;

void require_excitations(double excitations) {
    if (!std::isfinite(excitations) || excitations < 0.0) {
        throw std::invalid_argument("excitation number must be finite and nonnegative");
    }
}

// Position of coordinate `idx` (given in `from` ordering) in the other ordering.
Eigen::Index permuted_index(Eigen::Index idx, Eigen::Index n, Ordering from) {
    if (from == Ordering::Interleaved) {
        const Eigen::Index mode = idx / 2;
        return (idx % 2 == 0) ? mode : n + mode;
    }
    return (idx < n) ? 2 * idx : 2 * (idx - n) + 1;
}

Eigen::MatrixXd interleaved_matrix(const CovarianceMatrix &v) {
    return v.ordering() == Ordering::Interleaved ? v.matrix() : reorder(v, Ordering::Interleaved).matrix();
}

} // namespace

std::string_view to_string(Ordering ordering) {
    return ordering == Ordering::Interleaved ? "interleaved" : "blocked";
}

Ordering ordering_from_string(std::string_view name) {
    if (name == "interleaved") {
        return Ordering::Interleaved;
    }
    if (name == "blocked") {
        return Ordering::Blocked;
    }
    throw std::invalid_argument("unknown ordering '" + std::string(name) + "'");
}

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries, Ordering ordering)
    : entries_(std::move(entries)), ordering_(ordering) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0 || entries_.rows() % 2 != 0) {
        throw std::invalid_argument("covariance matrix must be square with even positive dimension");
    }
    if (!entries_.allFinite()) {
        throw std::invalid_argument("covariance matrix has non-finite entries");
    }
    for (Eigen::Index l = 0; l < entries_.rows(); ++l) {
        for (Eigen::Index m = l + 1; m < entries_.cols(); ++m) {
            const double scale = std::max(1.0, std::abs(entries_(l, m)));
            if (std::abs(entries_(l, m) - entries_(m, l)) > kSymmetryTol * scale) {
                throw std::invalid_argument("covariance matrix is not symmetric");
            }
        }
    }
}

Eigen::MatrixXd symplectic_form(int n, Ordering ordering) {
    if (n < 1) {
        throw std::invalid_argument("mode count must be positive");
    }
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        if (ordering == Ordering::Interleaved) {
            omega(2 * k, 2 * k + 1) = 1.0;
            omega(2 * k + 1, 2 * k) = -1.0;
        } else {
            omega(k, n + k) = 1.0;
            omega(n + k, k) = -1.0;
        }
    }
    return omega;
}

CovarianceMatrix build_thermal(int n, double excitations) {
    if (n < 1) {
        throw std::invalid_argument("mode count must be positive");
    }
    require_excitations(excitations);
    return CovarianceMatrix((excitations + 0.5) * Eigen::MatrixXd::Identity(2 * n, 2 * n));
}

CovarianceMatrix build_twin_beam(double excitations) {
    require_excitations(excitations);
    const double c = 2.0 * excitations + 1.0;
    const double s = std::sqrt(c * c - 1.0);
    Eigen::MatrixXd v(4, 4);
    // clang-format off
    v << c,  0,  s,  0,
         0,  c,  0, -s,
         s,  0,  c,  0,
         0, -s,  0,  c;
    // clang-format on
    return CovarianceMatrix(0.5 * v);
}

CovarianceMatrix build_ghz3(double excitations) {
    require_excitations(excitations);
    if (excitations == 0.0) {
        return build_thermal(3, 0.0);
    }
    const double nn = excitations * (excitations + 1.0);
    const double width = 4.0 * excitations + 2.0;
    const double root = std::sqrt(1.0 + width * width / (2.0 * nn));
    const double v_plus = nn / width * (1.0 + root);
    const double v_minus = nn / width * (1.0 - root);

    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(6, 6);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == j) {
                v(2 * i, 2 * i) = excitations + 0.5;
                v(2 * i + 1, 2 * i + 1) = excitations + 0.5;
            } else {
                v(2 * i, 2 * j) = v_plus;
                v(2 * i + 1, 2 * j + 1) = v_minus;
            }
        }
    }
    return CovarianceMatrix(std::move(v));
}

CovarianceMatrix reorder(const CovarianceMatrix &v, Ordering target) {
    if (v.ordering() == target) {
        return v;
    }
    const Eigen::Index dim = v.matrix().rows();
    const Eigen::Index n = dim / 2;
    Eigen::MatrixXd out(dim, dim);
    for (Eigen::Index l = 0; l < dim; ++l) {
        const Eigen::Index pl = permuted_index(l, n, v.ordering());
        for (Eigen::Index m = 0; m < dim; ++m) {
            out(pl, permuted_index(m, n, v.ordering())) = v(l, m);
        }
    }
    return CovarianceMatrix(std::move(out), target);
}

double determinant(const Eigen::MatrixXd &m) { return m.partialPivLu().determinant(); }

double purity(const CovarianceMatrix &v) {
    const Eigen::LLT<Eigen::MatrixXd> llt(v.matrix());
    if (llt.info() != Eigen::Success) {
        throw std::domain_error("purity requires a positive definite covariance matrix");
    }
    // sqrt(det V) is the product of the Cholesky diagonal.
    double value = 1.0;
    const auto diag = llt.matrixLLT().diagonal();
    for (Eigen::Index i = 0; i < diag.size(); i += 2) {
        value /= 2.0 * diag(i) * diag(i + 1);
    }
    return value;
}

bool is_pure(const CovarianceMatrix &v, double tol) {
    const double target = std::pow(0.25, v.modes());
    return std::abs(determinant(v.matrix()) - target) <= tol * target;
}

double uncertainty_margin(const CovarianceMatrix &v) {
    const int n = v.modes();
    Eigen::MatrixXcd h = v.matrix().cast<std::complex<double>>();
    h += std::complex<double>(0.0, 0.5) * symplectic_form(n, v.ordering()).cast<std::complex<double>>();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool is_physical(const CovarianceMatrix &v, double tol) { return uncertainty_margin(v) >= -tol; }

CovarianceMatrix reduce(const CovarianceMatrix &v, std::span<const int> modes) {
    const int n = v.modes();
    if (modes.empty()) {
        throw std::invalid_argument("reduction needs at least one mode");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const int mode : modes) {
        if (mode < 1 || mode > n) {
            throw std::invalid_argument("mode index " + std::to_string(mode) + " out of range 1.." +
                                        std::to_string(n));
        }
        if (seen[static_cast<std::size_t>(mode - 1)]) {
            throw std::invalid_argument("duplicate mode index " + std::to_string(mode));
        }
        seen[static_cast<std::size_t>(mode - 1)] = true;
    }

    const Eigen::MatrixXd full = interleaved_matrix(v);
    const auto k = static_cast<Eigen::Index>(modes.size());
    Eigen::MatrixXd out(2 * k, 2 * k);
    for (Eigen::Index a = 0; a < k; ++a) {
        const Eigen::Index ra = 2 * (modes[static_cast<std::size_t>(a)] - 1);
        for (Eigen::Index b = 0; b < k; ++b) {
            const Eigen::Index rb = 2 * (modes[static_cast<std::size_t>(b)] - 1);
            out.block<2, 2>(2 * a, 2 * b) = full.block<2, 2>(ra, rb);
        }
    }
    return CovarianceMatrix(std::move(out));
}

double mode_energy(const CovarianceMatrix &v, int mode) {
    const int n = v.modes();
    if (mode < 1 || mode > n) {
        throw std::invalid_argument("mode index " + std::to_string(mode) + " out of range 1.." + std::to_string(n));
    }
    const Eigen::Index k = mode - 1;
    if (v.ordering() == Ordering::Interleaved) {
        return 0.5 * (v(2 * k, 2 * k) + v(2 * k + 1, 2 * k + 1));
    }
    return 0.5 * (v(k, k) + v(n + k, n + k));
}

} // namespace gmmes
