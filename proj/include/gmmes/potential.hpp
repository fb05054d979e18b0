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

#include "gmmes/bipartition.hpp"
#include "gmmes/covariance.hpp"

namespace gmmes {

/// Relative tolerance on det V used to accept a state as pure.
inline constexpr double kPurityGateTol = 1e-6;
/// Bona fide tolerance used to accept a state as physical.
inline constexpr double kPhysicalGateTol = 1e-9;

struct PartitionPurity {
    Bipartition partition;
    /// (N + 1/2)^{n_A} / sqrt(det V_A); equals 1 for a thermal reduction.
    double value;
};

struct EntanglementReport {
    double chi = 0.0;
    double delta_chi = 0.0;
    double excitations = 0.0;
    std::vector<PartitionPurity> per_partition;
};

/// Mean and population standard deviation of the normalized purities.
struct PotentialMoments {
    double chi = 0.0;
    double delta_chi = 0.0;
};

/**
 * @brief Reusable evaluator of the normalized balanced-bipartition purities.
 *
 * Caches the bipartition list for a fixed mode count. The evaluation entry
 * points take a raw Interleaved 2n x 2n matrix and perform no purity or
 * physicality checks; they are the hot path of the optimizer.
 */
class PotentialEvaluator {
  public:
    explicit PotentialEvaluator(int n);

    [[nodiscard]] int modes() const noexcept { return n_; }
    [[nodiscard]] int subsystem_size() const noexcept { return n_ / 2; }
    [[nodiscard]] const std::vector<Bipartition> &partitions() const noexcept { return partitions_; }

    /// Writes one normalized purity per bipartition into `out`. A reduction
    /// that is not positive definite yields +infinity.
    void normalized_purities(const Eigen::MatrixXd &v, double excitations, std::span<double> out) const;

    [[nodiscard]] PotentialMoments moments(const Eigen::MatrixXd &v, double excitations) const;

  private:
    int n_;
    std::vector<Bipartition> partitions_;
    std::vector<std::vector<Eigen::Index>> rows_;
};

/// Population mean and standard deviation, summed in index order.
PotentialMoments summarize(std::span<const double> values);

/// Normalized potential of multipartite entanglement. Throws
/// std::domain_error unless V is pure and physical, and
/// std::invalid_argument for a negative excitation bound.
double chi(const CovarianceMatrix &v, double excitations);

/// Standard deviation of the normalized purities over balanced bipartitions.
double delta_chi(const CovarianceMatrix &v, double excitations);

EntanglementReport report(const CovarianceMatrix &v, double excitations);

} // namespace gmmes
