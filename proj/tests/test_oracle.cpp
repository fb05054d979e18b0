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
#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "gmmes/covariance.hpp"
#include "gmmes/oracle.hpp"
#include "gmmes/pure_param.hpp"

using namespace gmmes;

TEST_SUITE("oracle") {

TEST_CASE("Wigner purity examples") {
    const auto vac = oracle::wigner_purity(build_thermal(1, 0.0), 8.0, 256);
    CHECK(std::abs(vac.purity - 1.0) <= 1e-6);
    CHECK(std::abs(vac.normalization - 1.0) <= 1e-4);
    CHECK_FALSE(vac.truncated);

    const auto th = oracle::wigner_purity(build_thermal(1, 1.0), 10.0, 256);
    CHECK(std::abs(th.purity - 1.0 / 3.0) <= 1e-6);

    const auto tb = oracle::wigner_purity(build_twin_beam(1.0), 12.0, 128);
    CHECK(std::abs(tb.purity - 1.0) <= 1e-4);
    CHECK(std::abs(tb.normalization - 1.0) <= 1e-4);
}

TEST_CASE("Wigner purity agrees with the determinant formula") {
    const auto one = oracle::sample_random_physical_cm(1, 1.0, 5, 10);
    for (const auto &v : one) {
        const double expected = purity(v);
        CHECK(std::abs(oracle::wigner_purity(v, 10.0, 256).purity - expected) <= 1e-5 * expected);
    }
    const auto two = oracle::sample_random_physical_cm(2, 1.0, 6, 2);
    for (const auto &v : two) {
        const double expected = purity(v);
        CHECK(std::abs(oracle::wigner_purity(v, 12.0, 128).purity - expected) <= 1e-5 * expected);
    }
}

TEST_CASE("Wigner quadrature guards") {
    CHECK_THROWS_AS(oracle::wigner_purity(build_ghz3(1.0), 10.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(oracle::wigner_purity(build_thermal(1, 1.0), 10.0, 32), std::invalid_argument);
    CHECK_THROWS_AS(oracle::wigner_purity(build_thermal(1, 1.0), -1.0, 64), std::invalid_argument);
    const auto narrow = oracle::wigner_purity(build_thermal(1, 4.0), 5.0, 64);
    CHECK(narrow.truncated);
    CHECK(narrow.normalization < 0.99);
}

TEST_CASE("sampler postconditions") {
    const auto samples = oracle::sample_random_physical_cm(1, 1.0, 1, 1000);
    REQUIRE(samples.size() == 1000);
    for (const auto &v : samples) {
        CHECK(is_physical(v, 1e-10));
        CHECK(mode_energy(v, 1) <= 1.5 + 1e-12);
    }
    const auto again = oracle::sample_random_physical_cm(1, 1.0, 1, 1000);
    CHECK(again == samples);
    CHECK(oracle::sample_random_physical_cm(1, 1.0, 2, 1)[0] != samples[0]);
    CHECK(oracle::sample_random_physical_cm(2, 1.0, 1, 0).empty());
    CHECK_THROWS_AS(oracle::sample_random_physical_cm(0, 1.0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(oracle::sample_random_physical_cm(1, -1.0, 1, 1), std::invalid_argument);
}

TEST_CASE("sampler covers the boundary") {
    const auto samples = oracle::sample_random_physical_cm(3, 2.0, 9, 200);
    int near_bound = 0;
    for (const auto &v : samples) {
        const Eigen::VectorXd e = mode_energies(v.matrix());
        if (e.maxCoeff() >= 0.99 * 2.5 - 1e-12) {
            ++near_bound;
        }
    }
    CHECK(near_bound >= 100);
}

TEST_CASE("thermal purity is never undercut") {
    for (const auto &[n, big_n] : {std::pair{1, 1.0}, std::pair{2, 1.0}, std::pair{3, 0.5}}) {
        const double floor = 1.0 / std::pow(2.0 * (big_n + 0.5), n);
        double lowest = 1.0;
        for (const auto &v : oracle::sample_random_physical_cm(n, big_n, 31, 2000)) {
            lowest = std::min(lowest, purity(v));
        }
        CHECK(lowest >= floor - 1e-12);
        CHECK(lowest <= floor * 1.2);
    }
}

TEST_CASE("pure sampler") {
    for (const auto &v : oracle::sample_random_pure_cm(4, 1.0, 3, 100)) {
        CHECK(is_pure(v, 1e-10));
        CHECK(mode_energies(v.matrix()).maxCoeff() <= 1.5 + 1e-12);
    }
}

TEST_CASE("perfect MMES verification") {
    for (double big_n : {0.5, 1.0, 5.0}) {
        CHECK(oracle::verify_perfect_mmes(build_twin_beam(big_n), big_n, 1e-9));
    }
    CHECK(oracle::verify_perfect_mmes(build_ghz3(1.0), 1.0, 1e-9));
    CHECK_FALSE(oracle::verify_perfect_mmes(build_ghz3(1.0), 2.0, 1e-9));
    CHECK(oracle::perfect_mmes_gap(build_thermal(4, 0.0), 0.0) <= 1e-15);
}

TEST_CASE("no perfect MMES among sampled four-mode states") {
    int perfect = 0;
    for (const auto &v : oracle::sample_random_pure_cm(4, 1.0, 37, 1000)) {
        perfect += oracle::verify_perfect_mmes(v, 1.0, 1e-9) ? 1 : 0;
    }
    CHECK(perfect == 0);
}

} // TEST_SUITE
