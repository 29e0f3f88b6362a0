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

#include "doctest.h"
#include "helpers.hpp"
#include "ubs/errors.hpp"
#include "ubs/fock_oracle.hpp"
#include "ubs/generating.hpp"

#include <unsupported/Eigen/MatrixFunctions>

using namespace ubs;

namespace {
// <n|S(r)|0> for U = cosh r, V = sinh r: even n only.
double squeezed_vacuum(int n, double r) {
    if (n % 2) return 0.0;
    const int k = n / 2;
    double c = 1.0 / std::sqrt(std::cosh(r)) * std::pow(0.5 * std::tanh(r), k);
    return c * std::sqrt(factorial(n)) / factorial(k);
}
}  // namespace

TEST_CASE("FockBasis indexing") {
    FockBasis b{3, 2};
    CHECK(b.dimension() == 27);
    CHECK(b.index(PhotonPattern{1, 0, 0}) == 9);
    CHECK(b.index(PhotonPattern{0, 0, 1}) == 1);
    for (std::size_t i = 0; i < b.dimension(); ++i) CHECK(b.index(b.pattern(i)) == i);
}

TEST_CASE("truncated_unitary") {
    auto id = truncated_unitary(HamiltonianCoeffs{CMat::Zero(4, 4)}, FockBasis{2, 3});
    CHECK((id.matrix - CMat::Identity(16, 16)).norm() < 1e-14);

    const double r = 0.3;
    RVec rv(1);
    rv << r;
    auto tu = truncated_unitary(hamiltonian_coeffs(SymplecticGaussian::squeezers(rv)), FockBasis{1, 14});
    // At cutoff 14 the truncated generator is accurate to 1e-9 only up to n = 4;
    // the low half of the column stays within the reported tail.
    for (int n = 0; n <= 4; ++n) CHECK(std::abs(tu.matrix(n, 0) - squeezed_vacuum(n, r)) < 1e-9);
    for (int n = 0; n <= 7; ++n) CHECK(std::abs(tu.matrix(n, 0) - squeezed_vacuum(n, r)) < tu.tail_estimate);
    auto wide = truncated_unitary(hamiltonian_coeffs(SymplecticGaussian::squeezers(rv)), FockBasis{1, 30});
    for (int n = 0; n <= 14; ++n) CHECK(std::abs(wide.matrix(n, 0) - squeezed_vacuum(n, r)) < 1e-9);

    // Number-conserving Hamiltonian: exactly unitary on every sector.
    auto iu = truncated_unitary(hamiltonian_coeffs(SymplecticGaussian::interferometer(haar_unitary(2, 4))),
                                FockBasis{2, 4});
    for (int c = 0; c < 25; ++c) {
        const auto p = iu.basis.pattern(static_cast<std::size_t>(c));
        if (p.total() > 4) continue;
        CHECK(std::abs(iu.matrix.col(c).norm() - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(truncated_unitary(HamiltonianCoeffs{CMat::Zero(8, 8)}, FockBasis{4, 9}), ResourceError);
}

TEST_CASE("oracle_probability") {
    const auto I = SymplecticGaussian::identity(2);
    CHECK(oracle_probability(I, {1, 1}, {1, 1}).value == doctest::Approx(1.0));
    CHECK(oracle_probability(I, {1, 1}, {2, 0}).value < 1e-15);

    const auto bs = SymplecticGaussian::interferometer(testing::beam_splitter_5050());
    CHECK(oracle_probability(bs, {1, 1}, {1, 1}, 4).value < 1e-10);
    CHECK(oracle_probability(bs, {1, 1}, {2, 0}, 4).value == doctest::Approx(0.5).epsilon(1e-12));

    RVec rv(1);
    rv << 0.5;
    const auto sq = SymplecticGaussian::squeezers(rv);
    auto o = oracle_probability(sq, {0}, {2}, 20);
    CHECK(std::abs(o.value - std::pow(std::tanh(0.5), 2) / (2 * std::cosh(0.5))) < 1e-8);
    auto od = oracle_probability(sq, {0}, {2});
    CHECK(od.tail_bound < 1e-12);
    CHECK(std::abs(od.value - std::pow(std::tanh(0.5), 2) / (2 * std::cosh(0.5))) < 1e-13);
}

TEST_CASE("factorized oracle agrees with the dense truncated unitary") {
    const auto T = testing::random_gaussian(2, 23, 0.25);
    auto tu = truncated_unitary(hamiltonian_coeffs(T), FockBasis{2, 24}, 1000);
    for (const auto &n : {PhotonPattern{1, 0}, PhotonPattern{1, 1}, PhotonPattern{0, 2}}) {
        for (const auto &m : {PhotonPattern{1, 0}, PhotonPattern{0, 1}, PhotonPattern{2, 1}, PhotonPattern{1, 1}}) {
            const double dense = std::norm(tu.matrix(static_cast<Eigen::Index>(tu.basis.index(m)),
                                                     static_cast<Eigen::Index>(tu.basis.index(n))));
            CHECK(std::abs(dense - oracle_probability(T, n, m).value) < 1e-9);
        }
    }
}

TEST_CASE("oracle self-consistency under cutoff doubling") {
    const auto T = testing::random_gaussian(2, 41, 0.5);
    auto a = oracle_probability(T, {1, 0}, {2, 1}, 20);
    auto b = oracle_probability(T, {1, 0}, {2, 1}, 40);
    CHECK(std::abs(a.value - b.value) <= std::max(a.tail_bound, 1e-14));
}

TEST_CASE("normal-ordered form reproduces the oracle") {
    // N exp(a^dag B a^dag) exp(a^dag D a) exp(a A a) on a truncated space.
    const auto T = testing::random_gaussian(1, 12, 0.4);
    const auto n = normal_order_coefficients(T);
    const int c = 60;
    CMat a = CMat::Zero(c + 1, c + 1);
    for (int k = 1; k <= c; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    const CMat ad = a.adjoint();
    const CMat num = ad * a;
    const CMat L = CMat(n.pair_creation(0, 0) * ad * ad).exp();
    const CMat Mx = CMat(n.mixing_log(0, 0) * num).exp();
    const CMat R = CMat(n.pair_annihilation(0, 0) * a * a).exp();
    const CMat op = n.normalization * L * Mx * R;
    cplx phase = 0.0;
    for (int in = 0; in <= 3; ++in) {
        for (int out = 0; out <= 3; ++out) {
            const auto o = oracle_amplitude(T, PhotonPattern{in}, PhotonPattern{out});
            if (phase == cplx(0.0) && std::abs(o.value) > 1e-3) phase = op(out, in) / o.value;
            CHECK(std::abs(std::abs(op(out, in)) - std::abs(o.value)) < 1e-8);
        }
    }
    for (int in = 0; in <= 3; ++in)
        for (int out = 0; out <= 3; ++out)
            CHECK(std::abs(op(out, in) - phase * oracle_amplitude(T, PhotonPattern{in}, PhotonPattern{out}).value) < 1e-8);
}

TEST_CASE("oracle_moment") {
    const auto I = SymplecticGaussian::identity(2);
    CHECK(std::abs(oracle_moment(I, {0, 0}, {0, 0}, {0, 0}).value - 1.0) < 1e-14);
    RVec rv(1);
    rv << 0.4;
    const auto sq = SymplecticGaussian::squeezers(rv);
    CHECK(std::abs(oracle_moment(sq, {0}, {1}, {1}).value - std::pow(std::cosh(0.4), 2)) < 1e-10);
    const auto T = testing::random_gaussian(2, 3, 0.3);
    CHECK(std::abs(oracle_moment(T, {1, 1}, {1, 0}, {0, 0}).value) < 1e-10);
    CHECK(std::abs(oracle_moment(T, {1, 0}, {2, 0}, {0, 1}).value) < 1e-10);
    // <a a^dag> = 1 + <n>; <a_i a_j^dag> summed over i = j gives 2 + total photons
    const auto m = oracle_moment(T, {0, 0}, {1, 0}, {1, 0});
    CHECK(std::abs(m.value - (1.0 + T.V.row(0).squaredNorm())) < 1e-10);
}
