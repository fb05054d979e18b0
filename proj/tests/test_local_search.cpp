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
#include <vector>

#include <doctest.h>

#include "gmmes/local_search.hpp"

using namespace gmmes::search;

namespace {

double rosenbrock(std::span<const double> x) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        total += 100.0 * std::pow(x[i + 1] - x[i] * x[i], 2) + std::pow(1.0 - x[i], 2);
    }
    return total;
}

double shifted_bowl(std::span<const double> x) {
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - static_cast<double>(i);
        total += static_cast<double>(i + 1) * d * d;
    }
    return total;
}

} // namespace

TEST_SUITE("local_search") {

TEST_CASE("simplex descent on a quadratic") {
    const std::vector<double> x0(5, 3.0);
    const LocalResult r = nelder_mead(shifted_bowl, x0, {.max_iterations = 20000, .initial_step = 0.5});
    CHECK(r.converged);
    CHECK(r.value <= 1e-10);
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        CHECK(r.x[i] == doctest::Approx(static_cast<double>(i)).epsilon(1e-4));
    }
    CHECK(r.evaluations > r.iterations);
}

TEST_CASE("simplex descent on Rosenbrock") {
    const std::vector<double> x0{-1.2, 1.0};
    const LocalResult r = nelder_mead(rosenbrock, x0, {.max_iterations = 5000, .initial_step = 0.5});
    CHECK(r.value <= 1e-10);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("simplex respects the iteration cap") {
    const std::vector<double> x0{-1.2, 1.0};
    const LocalResult r = nelder_mead(rosenbrock, x0, {.max_iterations = 5});
    CHECK(r.iterations <= 5);
    CHECK_FALSE(r.converged);
    CHECK(r.value <= rosenbrock(x0));
}

TEST_CASE("quasi-Newton on Rosenbrock") {
    const std::vector<double> x0{-1.2, 1.0, 0.5, -0.3};
    const LocalResult r = bfgs(rosenbrock, x0);
    CHECK(r.value <= 1e-12);
    for (double v : r.x) {
        CHECK(v == doctest::Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("quasi-Newton stops at a stationary start") {
    const std::vector<double> x0{0.0, 1.0, 2.0};
    const LocalResult r = bfgs(shifted_bowl, x0);
    CHECK(r.converged);
    CHECK(r.value == 0.0);
    CHECK(r.x == x0);
}

TEST_CASE("central gradient") {
    const std::vector<double> x{1.0, 2.0, 0.5};
    const auto g = central_gradient(shifted_bowl, x, 1e-5);
    CHECK(g[0] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(g[1] == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(g[2] == doctest::Approx(-9.0).epsilon(1e-8));
}

TEST_CASE("non-finite values are treated as uphill") {
    const Objective barrier = [](std::span<const double> x) {
        return x[0] < 0.0 ? std::nan("") : (x[0] - 1.0) * (x[0] - 1.0);
    };
    const std::vector<double> x0{0.2};
    const LocalResult nm = nelder_mead(barrier, x0, {.initial_step = 1.0});
    CHECK(nm.x[0] == doctest::Approx(1.0).epsilon(1e-4));
    const LocalResult q = bfgs(barrier, std::vector<double>{3.0});
    CHECK(q.x[0] == doctest::Approx(1.0).epsilon(1e-5));
}

} // TEST_SUITE
