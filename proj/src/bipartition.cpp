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
#include "gmmes/bipartition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gmmes {

Bipartition::Bipartition(int n, std::vector<int> subset) : n_(n), subset_(std::move(subset)) {
    if (n_ < 1) {
        throw std::invalid_argument("mode count must be positive");
    }
    if (subset_.empty()) {
        throw std::invalid_argument("bipartition subset must be nonempty");
    }
    std::sort(subset_.begin(), subset_.end());
    if (std::adjacent_find(subset_.begin(), subset_.end()) != subset_.end()) {
        throw std::invalid_argument("bipartition has duplicate mode indices");
    }
    if (subset_.front() < 1 || subset_.back() > n_) {
        throw std::invalid_argument("bipartition index out of range 1.." + std::to_string(n_));
    }
}

Bipartition Bipartition::complement() const {
    std::vector<int> rest;
    rest.reserve(static_cast<std::size_t>(n_ - size()));
    for (int mode = 1; mode <= n_; ++mode) {
        if (!std::binary_search(subset_.begin(), subset_.end(), mode)) {
            rest.push_back(mode);
        }
    }
    return {n_, std::move(rest)};
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return result;
}

std::vector<Bipartition> balanced_bipartitions(int n) {
    if (n < 2) {
        throw std::invalid_argument("balanced bipartitions need at least two modes");
    }
    const int k = n / 2;
    std::vector<Bipartition> out;
    out.reserve(binomial(n, k));

    // Lexicographic k-combinations of 1..n.
    std::vector<int> comb(static_cast<std::size_t>(k));
    std::iota(comb.begin(), comb.end(), 1);
    while (true) {
        out.emplace_back(n, comb);
        int i = k - 1;
        while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i + 1) {
            --i;
        }
        if (i < 0) {
            break;
        }
        ++comb[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) {
            comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return out;
}

} // namespace gmmes
