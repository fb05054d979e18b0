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

namespace gmmes {

/// One side A of a bipartition (A, complement) of n modes. Mode indices are
/// 1-based, unique and sorted.
class Bipartition {
  public:
    Bipartition(int n, std::vector<int> subset);

    [[nodiscard]] int modes() const noexcept { return n_; }
    [[nodiscard]] const std::vector<int> &subset() const noexcept { return subset_; }
    [[nodiscard]] int size() const noexcept { return static_cast<int>(subset_.size()); }
    [[nodiscard]] Bipartition complement() const;

    friend bool operator==(const Bipartition &, const Bipartition &) = default;

  private:
    int n_;
    std::vector<int> subset_;
};

/// Binomial coefficient C(n, k) for small arguments.
std::uint64_t binomial(int n, int k);

/// All A with |A| = floor(n/2), in lexicographic order. Complements are kept
/// for even n so the list length is exactly C(n, floor(n/2)).
std::vector<Bipartition> balanced_bipartitions(int n);

} // namespace gmmes
