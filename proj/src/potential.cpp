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
#include "gmmes/potential.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gmmes {

namespace {

// Reductions have at most 2 * floor(9 / 2) = 8 rows for the supported sizes;
// the fixed capacity keeps the hot loop free of allocations.
using SubMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 16, 16>;

CovarianceMatrix checked_interleaved(const CovarianceMatrix &v, double excitations) {
    if (!std::isfinite(excitations) || excitations < 0.0) {
        throw std::invalid_argument("excitation bound must be finite and nonnegative");
    }
    if (v.modes() < 2) {
        throw std::invalid_argument("the potential needs at least two modes");
    }
    if (!is_pure(v, kPurityGateTol)) {
        throw std::domain_error("the potential is defined for pure global states only");
    }
    if (!is_physical(v, kPhysicalGateTol)) {
        throw std::domain_error("covariance matrix violates the uncertainty relation");
    }
    return reorder(v, Ordering::Interleaved);
}

} // namespace

PotentialEvaluator::PotentialEvaluator(int n) : n_(n), partitions_(balanced_bipartitions(n)) {
    if (n > 16) {
        throw std::invalid_argument("mode count too large for the potential evaluator");
    }
    rows_.reserve(partitions_.size());
    for (const auto &part : partitions_) {
        std::vector<Eigen::Index> rows;
        for (const int mode : part.subset()) {
            rows.push_back(2 * (mode - 1));
            rows.push_back(2 * (mode - 1) + 1);
        }
        rows_.push_back(std::move(rows));
    }
}

void PotentialEvaluator::normalized_purities(const Eigen::MatrixXd &v, double excitations,
                                             std::span<double> out) const {
    const double root_scale = std::sqrt(excitations + 0.5);
    SubMatrix sub;
    for (std::size_t p = 0; p < rows_.size(); ++p) {
        const auto &rows = rows_[p];
        const auto dim = static_cast<Eigen::Index>(rows.size());
        sub.resize(dim, dim);
        for (Eigen::Index a = 0; a < dim; ++a) {
            for (Eigen::Index b = 0; b < dim; ++b) {
                sub(a, b) = v(rows[static_cast<std::size_t>(a)], rows[static_cast<std::size_t>(b)]);
            }
        }
        const Eigen::LLT<SubMatrix> llt(sub);
        if (llt.info() != Eigen::Success) {
            out[p] = std::numeric_limits<double>::infinity();
            continue;
        }
        // (N + 1/2)^{n_A} / sqrt(det V_A) as a product of per-pivot ratios.
        double value = 1.0;
        const auto diag = llt.matrixLLT().diagonal();
        for (Eigen::Index i = 0; i < dim; ++i) {
            value *= root_scale / diag(i);
        }
        out[p] = value;
    }
}

PotentialMoments PotentialEvaluator::moments(const Eigen::MatrixXd &v, double excitations) const {
    std::vector<double> values(partitions_.size());
    normalized_purities(v, excitations, values);
    return summarize(values);
}

PotentialMoments summarize(std::span<const double> values) {
    if (values.empty()) {
        return {};
    }
    const auto count = static_cast<double>(values.size());
    double sum = 0.0;
    for (const double x : values) {
        sum += x;
    }
    const double mean = sum / count;
    double spread = 0.0;
    for (const double x : values) {
        spread += (x - mean) * (x - mean);
    }
    return {mean, std::sqrt(spread / count)};
}

double chi(const CovarianceMatrix &v, double excitations) { return report(v, excitations).chi; }

double delta_chi(const CovarianceMatrix &v, double excitations) { return report(v, excitations).delta_chi; }

EntanglementReport report(const CovarianceMatrix &v, double excitations) {
    const CovarianceMatrix canonical = checked_interleaved(v, excitations);
    const PotentialEvaluator evaluator(canonical.modes());
    std::vector<double> values(evaluator.partitions().size());
    evaluator.normalized_purities(canonical.matrix(), excitations, values);

    EntanglementReport out;
    const PotentialMoments m = summarize(values);
    out.chi = m.chi;
    out.delta_chi = m.delta_chi;
    out.excitations = excitations;
    out.per_partition.reserve(values.size());
    for (std::size_t p = 0; p < values.size(); ++p) {
        out.per_partition.push_back({evaluator.partitions()[p], values[p]});
    }
    return out;
}

} // namespace gmmes
