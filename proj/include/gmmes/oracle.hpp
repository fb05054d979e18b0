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
#include <vector>

#include "gmmes/covariance.hpp"

// Brute-force cross-checks for the closed-form machinery. Nothing in here
// is used by the optimizer.
namespace gmmes::oracle {

struct WignerQuadrature {
    /// (2 pi)^n times the grid integral of W^2.
    double purity = 0.0;
    /// Grid integral of W; should be 1 for a well-resolved grid.
    double normalization = 0.0;
    /// Set when the extent is below 6 standard deviations of some quadrature.
    bool truncated = false;
};

/**
 * @brief Purity from trapezoidal quadrature of the Gaussian Wigner function.
 *
 * The grid has `points` nodes per axis on [-extent, extent]^{2n}. Only
 * n = 1 and n = 2 are supported (cost grows as points^{2n}); other sizes and
 * fewer than 64 points throw std::invalid_argument.
 */
WignerQuadrature wigner_purity(const CovarianceMatrix &v, double extent, int points);

/**
 * @brief Seeded sampler of physical CMs obeying the per-mode energy bound.
 *
 * Each draw starts from a random pure state of the exponential chart whose
 * squeezing is shrunk onto the constraint; half of the draws are pushed to
 * within 1% of the bound. The pure CM is then mixed with a thermal CM and
 * isotropic noise (both within the bound). Draws failing the bona fide check
 * or the energy bound are rejected and redrawn.
 */
std::vector<CovarianceMatrix> sample_random_physical_cm(int n, double excitations, std::uint64_t seed,
                                                        int count);

/// Random pure CMs from the parametrization with the energy bound enforced.
std::vector<CovarianceMatrix> sample_random_pure_cm(int n, double excitations, std::uint64_t seed, int count);

/// True iff every balanced reduction attains the thermal purity within tol.
bool verify_perfect_mmes(const CovarianceMatrix &v, double excitations, double tol);

/// Largest deviation |purity(V_A) - thermal purity| over balanced A.
double perfect_mmes_gap(const CovarianceMatrix &v, double excitations);

} // namespace gmmes::oracle
