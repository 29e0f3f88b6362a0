/*
 * Copyright 2021 Budapest Quantum Computing Group
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <random>

#include "doctest.h"
#include "ubs/taylor.hpp"

using namespace ubs;

namespace {
TaylorScalar random_series(const std::vector<int> &orders, std::uint64_t seed, cplx c0 = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    TaylorScalar t(orders, 0.0);
    for (auto &c : t.coefficients()) c = cplx(g(rng), g(rng));
    t.coefficients()[0] = c0;
    return t;
}
double dist(const TaylorScalar &a, const TaylorScalar &b) {
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a.coefficients()[i] - b.coefficients()[i]));
    return d;
}
}  // namespace

TEST_CASE("taylor ring laws") {
    const std::vector<int> o{2, 1, 3};
    for (int k = 0; k < 10; ++k) {
        auto a = random_series(o, 3 * k), b = random_series(o, 3 * k + 1), c = random_series(o, 3 * k + 2);
        CHECK(dist(a + b, b + a) < 1e-12);
        CHECK(dist(a * b, b * a) < 1e-12);
        CHECK(dist((a * b) * c, a * (b * c)) < 1e-12);
        CHECK(dist(a * (b + c), a * b + a * c) < 1e-12);
    }
}

TEST_CASE("taylor elementary functions") {
    const std::vector<int> o{3, 2};
    auto t = random_series(o, 11, cplx(1.3, -0.4));
    const auto one = t.constant_like(1.0);
    CHECK(dist(reciprocal(t) * t, one) < 1e-12);
    CHECK(dist(sqrt(t) * sqrt(t), t) < 1e-12);
    CHECK(dist(exp(t) * exp(-t), one) < 1e-12);
    CHECK(dist(pow(t, -0.5) * pow(t, -0.5) * t, one) < 1e-12);
}

TEST_CASE("taylor coefficients of known functions") {
    // exp(x + 2y) on the box (4, 3): d^a/dx d^b/dy = 2^b e^0.
    const std::vector<int> o{4, 3};
    auto s = TaylorScalar::variable(o, 0) + 2.0 * TaylorScalar::variable(o, 1);
    auto e = exp(s);
    CHECK(std::abs(e.derivative({4, 0}) - 1.0) < 1e-13);
    CHECK(std::abs(e.derivative({2, 3}) - 8.0) < 1e-12);

    // 1/(1 - x) = sum x^k.
    const std::vector<int> o1{6};
    auto g = reciprocal(TaylorScalar(o1, 1.0) - TaylorScalar::variable(o1, 0));
    for (int k = 0; k <= 6; ++k) CHECK(std::abs(g.coefficient({k}) - 1.0) < 1e-14);

    // Conjugation leaves the variable real.
    auto z = TaylorScalar::variable(o1, 0) * cplx(0, 1);
    CHECK(z.conj().coefficient({1}) == cplx(0, -1));
}

TEST_CASE("taylor matrix inverse and determinant") {
    const std::vector<int> o{2, 2};
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    TaylorMatrix m(3, 3, TaylorScalar(o, 0.0));
    for (auto &v : m.a) {
        for (auto &c : v.coefficients()) c = cplx(g(rng), g(rng));
    }
    TaylorLU lu(m);
    const TaylorMatrix inv = lu.inverse();
    const TaylorMatrix prod = m * inv;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(dist(prod(i, j), prod(i, j).constant_like(i == j ? 1.0 : 0.0)) < 1e-10);
    CHECK(std::abs(lu.determinant().constant() - m.constant_part().determinant()) < 1e-10);
    // d det / dx at 0 = tr(adj(M0) M1)
    const CMat M0 = m.constant_part(), M1 = m.coefficient({1, 0});
    const cplx dd = M0.determinant() * (M0.inverse() * M1).trace();
    CHECK(std::abs(lu.determinant().coefficient({1, 0}) - dd) < 1e-10);
}
