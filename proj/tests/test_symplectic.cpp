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
#include "ubs/symplectic.hpp"

using namespace ubs;

namespace {
CMat scalar(cplx v) {
    CMat m(1, 1);
    m(0, 0) = v;
    return m;
}
}  // namespace

TEST_CASE("validate_symplectic on known inputs") {
    auto id = validate_symplectic(CMat::Identity(3, 3), CMat::Zero(3, 3));
    CHECK(id.pass);
    CHECK(id.residual_norm == 0.0);
    CHECK(id.residual_symmetry == 0.0);

    CHECK(validate_symplectic(scalar(std::cosh(0.3)), scalar(std::sinh(0.3))).pass);

    auto bad = validate_symplectic(scalar(std::cosh(0.3)), scalar(2 * std::sinh(0.3)));
    CHECK_FALSE(bad.pass);
    CHECK(bad.residual_norm == doctest::Approx(3 * std::pow(std::sinh(0.3), 2)).epsilon(1e-12));

    CHECK_THROWS_AS(validate_symplectic(CMat::Identity(2, 2), CMat::Zero(3, 3)), ShapeError);
}

TEST_CASE("compose") {
    const auto T = testing::random_gaussian(3, 7);
    const auto I = SymplecticGaussian::identity(3);
    auto c = compose(I, T);
    CHECK((c.U - T.U).norm() < 1e-14);
    CHECK((c.V - T.V).norm() < 1e-14);

    RVec r(1);
    r << 0.4;
    auto pair = compose(SymplecticGaussian::squeezers(r), SymplecticGaussian::squeezers(-r));
    CHECK((pair.U - CMat::Identity(1, 1)).norm() < 1e-12);
    CHECK(pair.V.norm() < 1e-12);

    for (int k = 0; k < 100; ++k) {
        auto t = compose(testing::random_gaussian(3, 100 + k), testing::random_gaussian(3, 500 + k));
        CHECK(validate_symplectic(t.U, t.V).pass);
    }
    CHECK_THROWS_AS(compose(I, SymplecticGaussian::identity(2)), ShapeError);

    // full-matrix product in the documented order
    auto a = testing::random_gaussian(2, 1), b = testing::random_gaussian(2, 2);
    CHECK((compose(a, b).full() - b.full() * a.full()).norm() < 1e-12);
}

TEST_CASE("compose is associative") {
    for (int k = 0; k < 20; ++k) {
        const int M = 1 + k % 4;
        auto a = testing::random_gaussian(M, 3 * k), b = testing::random_gaussian(M, 3 * k + 1),
             c = testing::random_gaussian(M, 3 * k + 2);
        auto l = compose(compose(a, b), c), r = compose(a, compose(b, c));
        CHECK((l.full() - r.full()).norm() < 1e-12);
    }
}

TEST_CASE("bloch_messiah") {
    SUBCASE("identity") {
        auto f = bloch_messiah(SymplecticGaussian::identity(3));
        CHECK((f.sigma_u - RVec::Ones(3)).norm() < 1e-12);
        CHECK(f.sigma_v.norm() < 1e-12);
        CHECK((f.L * f.R - CMat::Identity(3, 3)).norm() < 1e-12);
    }
    SUBCASE("single-mode squeezer") {
        RVec r(1);
        r << 0.7;
        auto f = bloch_messiah(SymplecticGaussian::squeezers(r));
        CHECK(f.sigma_u(0) == doctest::Approx(std::cosh(0.7)).epsilon(1e-12));
        CHECK(std::abs(f.sigma_v(0) - std::sinh(0.7)) < 1e-12);
    }
    SUBCASE("random reconstruction") {
        for (int k = 0; k < 30; ++k) {
            const auto T = testing::random_gaussian(4, 900 + k, 1.0);
            auto f = bloch_messiah(T);
            auto R = f.reconstruct();
            CHECK((R.full() - T.full()).norm() < 1e-10);
            CHECK((f.L * f.L.adjoint() - CMat::Identity(4, 4)).norm() < 1e-10);
            CHECK((f.R * f.R.adjoint() - CMat::Identity(4, 4)).norm() < 1e-10);
            for (int i = 0; i < 4; ++i) {
                CHECK(std::abs(f.sigma_u(i) - std::sqrt(1 + std::norm(f.sigma_v(i)))) < 1e-10);
                if (i) CHECK(f.sigma_u(i) <= f.sigma_u(i - 1));
            }
            auto g = bloch_messiah(R);
            CHECK((g.sigma_u - f.sigma_u).norm() < 1e-10);
        }
    }
    SUBCASE("degenerate squeezing") {
        RVec r = RVec::Constant(4, 0.5);
        auto T = compose(compose(SymplecticGaussian::interferometer(haar_unitary(4, 3)), SymplecticGaussian::squeezers(r)),
                         SymplecticGaussian::interferometer(haar_unitary(4, 4)));
        auto f = bloch_messiah(T);
        CHECK((f.reconstruct().full() - T.full()).norm() < 1e-10);
    }
    SUBCASE("rejects invalid input") {
        CHECK_THROWS_AS(bloch_messiah(SymplecticGaussian(scalar(2.0), scalar(0.0))), ValidationError);
    }
}

TEST_CASE("haar_unitary") {
    auto u1 = haar_unitary(1, 5);
    CHECK(std::abs(std::abs(u1(0, 0)) - 1.0) < 1e-12);
    CHECK((haar_unitary(4, 42) - haar_unitary(4, 42)).norm() == 0.0);
    CHECK_THROWS_AS(haar_unitary(0, 1), ShapeError);

    for (std::uint64_t s = 0; s < 100; ++s) {
        auto U = haar_unitary(5, s);
        CHECK((U * U.adjoint() - CMat::Identity(5, 5)).norm() < 1e-12);
        CHECK((U - haar_unitary(5, s + 1000)).norm() > 1e-3);
    }

    // Monte-Carlo second moment: E|U_ij|^2 = 1/M.
    const int draws = 10000;
    double sum = 0.0, sum2 = 0.0;
    for (int d = 0; d < draws; ++d) {
        const double v = std::norm(haar_unitary(4, 77000 + d)(1, 2));
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sum2 / draws - mean * mean) / draws);
    CHECK(std::abs(mean - 0.25) < 3 * se);
}

TEST_CASE("build_circuit_transform") {
    CircuitSpec s;
    s.mode_count = 3;
    s.squeezing_db = {0, 0, 0};
    s.interferometer_type = "identity";
    auto T = build_circuit_transform(s);
    CHECK((T.U - CMat::Identity(3, 3)).norm() == 0.0);
    CHECK(T.V.norm() == 0.0);

    CircuitSpec one;
    one.mode_count = 1;
    one.squeezing_db = {0.5 / kDbToR};
    one.interferometer_type = "identity";
    auto S = build_circuit_transform(one);
    CHECK(std::abs(S.U(0, 0) - std::cosh(0.5)) < 1e-12);
    CHECK(std::abs(S.V(0, 0) - std::sinh(0.5)) < 1e-12);

    CircuitSpec sat;
    sat.mode_count = 2;
    sat.squeezing_db = {3.0, 3.0};
    sat.seed = 11;
    sat.scenario = "saturated";
    CHECK(validate_symplectic(build_circuit_transform(sat).U, build_circuit_transform(sat).V).pass);

    // squeezers first: U = W diag(cosh r)
    auto Tsat = build_circuit_transform(sat);
    const double r = 3.0 * kDbToR;
    CHECK((Tsat.U - sat.interferometer() * std::cosh(r)).norm() < 1e-12);

    sat.squeezing_db = {-1.0, 0.0};
    CHECK_THROWS_AS(build_circuit_transform(sat), DomainError);
}

TEST_CASE("CircuitSpec json round trip") {
    CircuitSpec s;
    s.mode_count = 2;
    s.squeezing_db = {1.5, 0.0};
    s.interferometer_type = "explicit";
    s.explicit_unitary = testing::beam_splitter_5050();
    s.scenario = "dilute";
    nlohmann::json j = s;
    auto back = j.get<CircuitSpec>();
    CHECK(back.mode_count == 2);
    CHECK(back.squeezing_db == s.squeezing_db);
    CHECK(back.scenario == "dilute");
    CHECK((back.explicit_unitary - s.explicit_unitary).norm() < 1e-15);

    auto h = nlohmann::json::parse(R"({"modes":3,"squeezing_db":[1,2,3],"interferometer":{"type":"haar","seed":9}})");
    auto hs = h.get<CircuitSpec>();
    CHECK(hs.seed == 9);
    CHECK((hs.interferometer() - haar_unitary(3, 9)).norm() == 0.0);
}

TEST_CASE("hamiltonian_coeffs") {
    auto H0 = hamiltonian_coeffs(SymplecticGaussian::identity(2));
    CHECK(H0.H.norm() < 1e-14);

    // Squeezer: H = (1/2)[[0, i z], [-i conj z, 0]] with z = -r in this convention.
    const double r = 0.45;
    RVec rv(1);
    rv << r;
    auto Hs = hamiltonian_coeffs(SymplecticGaussian::squeezers(rv));
    CMat expect(2, 2);
    const cplx z = -r;
    expect << 0.0, 0.5 * cplx(0, 1) * z, -0.5 * cplx(0, 1) * std::conj(z), 0.0;
    CHECK((Hs.H - expect).norm() < 1e-12);

    // Interferometer: H = (1/2) blockdiag(-i log W, i log conj W).
    const CMat W = haar_unitary(3, 21);
    auto Hw = hamiltonian_coeffs(SymplecticGaussian::interferometer(W));
    Eigen::ComplexSchur<CMat> schur(W);
    CVec th(3);
    for (int i = 0; i < 3; ++i) th(i) = std::arg(schur.matrixT()(i, i));
    const CMat logW = cplx(0, 1) * schur.matrixU() * th.asDiagonal() * schur.matrixU().adjoint();
    CMat blk = CMat::Zero(6, 6);
    blk.topLeftCorner(3, 3) = -0.5 * cplx(0, 1) * logW;
    blk.bottomRightCorner(3, 3) = 0.5 * cplx(0, 1) * logW.conjugate();
    CHECK((Hw.H - blk).norm() < 1e-10);

    int ok = 0;
    for (int k = 0; k < 20; ++k) {
        auto T = testing::random_gaussian(3, 300 + k);
        try {
            auto H = hamiltonian_coeffs(T);
            CHECK((H.H - H.H.adjoint()).norm() < 1e-10);
            CHECK((transform_from_hamiltonian(H).full() - T.full()).norm() < 1e-8);
            ++ok;
        } catch (const LogBranchError &) {
            // Real eigenvalues come in conjugate-reciprocal pairs, so a draw may hit the cut.
            Eigen::ComplexEigenSolver<CMat> es(T.full(), false);
            bool on_cut = false;
            for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
                const cplx l = es.eigenvalues()(i);
                on_cut |= l.real() < 0 && std::abs(l.imag()) < 1e-8 * std::abs(l);
            }
            CHECK(on_cut);
        }
    }
    CHECK(ok >= 10);

    // A pi phase shifter sits on the branch cut.
    CHECK_THROWS_AS(hamiltonian_coeffs(SymplecticGaussian::interferometer(-CMat::Identity(1, 1))), LogBranchError);
}
