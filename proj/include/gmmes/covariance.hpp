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
#include <string_view>

#include <Eigen/Dense>

namespace gmmes {

/**
 * @brief Ordering of the canonical coordinates in a phase-space vector.
 *
 * Interleaved is (q1, p1, ..., qn, pn) and is the canonical internal
 * layout. Blocked is (q1, ..., qn, p1, ..., pn) and only appears at the
 * pure-state parametrization boundary.
 */
enum class Ordering { Interleaved, Blocked };

std::string_view to_string(Ordering ordering);
Ordering ordering_from_string(std::string_view name);

/**
 * @brief Covariance matrix of a zero-mean Gaussian state of n bosonic modes.
 *
 * Entries are dimensionless (hbar = 1, unit frequency). The matrix is
 * validated for shape and symmetry at construction and is immutable
 * afterwards. Physicality is a separate predicate (see is_physical) since
 * intermediate matrices built by tests and samplers need not be physical.
 */
class CovarianceMatrix {
  public:
    /// Throws std::invalid_argument on a non-square, odd-sized, non-finite
    /// or non-symmetric input.
    CovarianceMatrix(Eigen::MatrixXd entries, Ordering ordering = Ordering::Interleaved);

    [[nodiscard]] int modes() const noexcept { return static_cast<int>(entries_.rows() / 2); }
    [[nodiscard]] Ordering ordering() const noexcept { return ordering_; }
    [[nodiscard]] const Eigen::MatrixXd &matrix() const noexcept { return entries_; }
    [[nodiscard]] double operator()(Eigen::Index row, Eigen::Index col) const { return entries_(row, col); }

    friend bool operator==(const CovarianceMatrix &a, const CovarianceMatrix &b) {
        return a.ordering_ == b.ordering_ && a.entries_ == b.entries_;
    }

  private:
    Eigen::MatrixXd entries_;
    Ordering ordering_;
};

/// Symplectic form for n modes in the requested ordering. Interleaved gives
/// the direct sum of n blocks [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int n, Ordering ordering = Ordering::Interleaved);

/// Thermal state with N excitations per mode: (N + 1/2) I_{2n}.
CovarianceMatrix build_thermal(int n, double excitations);

/// Two-mode squeezed (twin-beam) state with cosh r = 2N + 1.
CovarianceMatrix build_twin_beam(double excitations);

/// Symmetric three-mode Gaussian GHZ state whose single-mode reductions are
/// all thermal with N excitations. N = 0 returns the vacuum.
CovarianceMatrix build_ghz3(double excitations);

/// Permutation similarity between the two coordinate orderings.
CovarianceMatrix reorder(const CovarianceMatrix &v, Ordering target);

/// Determinant through a partial-pivot LU factorization.
double determinant(const Eigen::MatrixXd &m);

/// Gaussian purity 1 / (2^n sqrt(det V)). Throws std::domain_error when V
/// is not positive definite.
double purity(const CovarianceMatrix &v);

/// |det V - 4^-n| <= tol * 4^-n.
bool is_pure(const CovarianceMatrix &v, double tol);

/// Bona fide condition: the smallest eigenvalue of V + (i/2) Omega is at
/// least -tol.
bool is_physical(const CovarianceMatrix &v, double tol);

/// Smallest eigenvalue of the Hermitian matrix V + (i/2) Omega.
double uncertainty_margin(const CovarianceMatrix &v);

/// Reduced state on the given 1-based mode indices, returned in Interleaved
/// ordering. Indices must be unique and within 1..n.
CovarianceMatrix reduce(const CovarianceMatrix &v, std::span<const int> modes);

/// Mean excitation energy (<q_k^2> + <p_k^2>) / 2 of the 1-based mode k.
double mode_energy(const CovarianceMatrix &v, int mode);

} // namespace gmmes
