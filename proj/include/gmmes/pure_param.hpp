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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gmmes/covariance.hpp"

namespace gmmes {

enum class ConstraintMode { PerMode, Average };

std::string_view to_string(ConstraintMode mode);
ConstraintMode constraint_mode_from_string(std::string_view name);

/**
 * @brief Unconstrained chart onto zero-mean pure Gaussian states of n modes.
 *
 * `kappa` holds n squeezing exponents (K = exp(diag(kappa))). `generator`
 * holds n^2 reals packing a Hermitian H: first the n diagonal entries, then
 * for every i < j in row-major order the pair (Re H_ij, Im H_ij). The
 * passive part is U = exp(iH). The flat packing is kappa followed by
 * generator, which is also the JSON layout.
 */
struct PureStateParams {
    int n = 0;
    std::vector<double> kappa;
    std::vector<double> generator;

    static PureStateParams zeros(int n);
    static PureStateParams from_flat(int n, std::span<const double> flat);
    [[nodiscard]] std::vector<double> flat() const;

    static constexpr std::size_t size_for(int n) {
        return static_cast<std::size_t>(n) + static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    }

    friend bool operator==(const PureStateParams &, const PureStateParams &) = default;
};

/// U = exp(iH) for the Hermitian H packed in `generator` (n^2 reals).
Eigen::MatrixXcd unitary_from_generator(int n, std::span<const double> generator);

/// Interleaved CM of the pure state 1/2 R T^2 R^T (Blocked form), with
/// T = diag(K, K^-1) and R = [[X, Y], [-Y, X]] for U = X + iY.
CovarianceMatrix params_to_cm(const PureStateParams &params);

/// Same map on a flat parameter vector; returns the raw Interleaved matrix.
Eigen::MatrixXd params_to_matrix(int n, std::span<const double> flat);

/// Per-mode energies of a raw Interleaved matrix.
Eigen::VectorXd mode_energies(const Eigen::MatrixXd &v);

/// Squared excess of the mode energies over N + 1/2. PerMode sums the
/// squared excess of every mode; Average penalizes the mean energy.
double constraint_excess(const CovarianceMatrix &v, double excitations, ConstraintMode mode);
double constraint_excess(const Eigen::MatrixXd &v, double excitations, ConstraintMode mode);

/// Largest energy excess max(0, E - (N + 1/2)) in the given constraint mode.
double max_energy_excess(const Eigen::MatrixXd &v, double excitations, ConstraintMode mode);

/**
 * @brief Shrinks the squeezing exponents until the constraint holds.
 *
 * Every mode energy is a convex combination of cosh(2 kappa_j) / 2, so
 * scaling kappa by t in [0, 1] lowers all energies monotonically. Returns
 * the parameters with the largest t (bisection to 1e-15) whose energies are
 * within N + 1/2; parameters that already satisfy the constraint are
 * returned unchanged.
 */
PureStateParams restore_feasibility(const PureStateParams &params, double excitations, ConstraintMode mode);

} // namespace gmmes
