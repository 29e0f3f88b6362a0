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

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "ubs/entanglement.hpp"
#include "ubs/errors.hpp"
#include "ubs/fock_oracle.hpp"

using namespace ubs;
using ubs::testing::random_gaussian;

namespace {

PhotonPattern unit(int M, std::initializer_list<int> modes) {
    PhotonPattern p = PhotonPattern::zeros(M);
    for (int j : modes) p.occupations[static_cast<size_t>(j)]++;
    return p;
}

SymplecticGaussian coupled_pairs(int d, double r) {
    const int M = 2 * d;
    CMat W = CMat::Zero(M, M);
    for (int i = 0; i < d; ++i) {
        W(i, i) = W(i + d, i + d) = 1.0 / std::sqrt(2.0);
        W(i, i + d) = W(i + d, i) = cplx(0.0, 1.0 / std::sqrt(2.0));
    }
    return compose(SymplecticGaussian::squeezers(RVec::Constant(M, r)), SymplecticGaussian::interferometer(W));
}

}  // namespace

TEST_CASE("finite-difference step rule and frozen derivatives") {
    const FiniteDifferenceConfig cfg;
    CHECK(cfg.step(2) == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(cfg.step(6) == doctest::Approx(0.9 * std::pow(1e-16, 1.0 / 8.0)).epsilon(1e-12));

    const auto sq = [](const RVec &p) { return cplx(p(0) * p(0)); };
    CHECK(std::abs(finite_difference_derivative(sq, {2}) - 2.0) < 1e-9);

    const auto ex = [](const RVec &p) { return cplx(std::exp(p(0))); };
    CHECK(std::abs(finite_difference_derivative(ex, {2}) - 1.0) < 1e-8);
    CHECK(std::abs(finite_difference_derivative(ex, {4}) - 1.0) < 1e-6);
    CHECK(std::abs(finite_difference_derivative(ex, {6}) - 1.0) < 1e-5 * 1.5);
    CHECK(std::abs(finite_difference_derivative(ex, {8}) - 1.0) < 1e-4);

    // d_x d_y^2 of e^{x + 2y} = 4
    const auto mixed = [](const RVec &p) { return cplx(std::exp(p(0) + 2.0 * p(1))); };
    CHECK(std::abs(finite_difference_derivative(mixed, {1, 2}) - 4.0) < 1e-6 * 4.0);
    CHECK(std::abs(finite_difference_derivative(mixed, {0, 0}) - 1.0) == 0.0);

    CHECK_THROWS_AS(finite_difference_derivative(ex, {9}), UnsupportedPatternError);
    CHECK_THROWS_AS(finite_difference_derivative(ex, {-1}), DomainError);
}

TEST_CASE("error budget") {
    CHECK(fd_absolute_error(2) == 1e-8);
    CHECK(fd_absolute_error(8) == 1e-4);
    CHECK_THROWS_AS(fd_absolute_error(3), DomainError);

    const ErrorReport e = error_estimate(2, 6, 0, 0.0);
    CHECK(e.eps_lambda == doctest::Approx(7.9e-7).epsilon(1e-12));
    CHECK(e.eps_mean_photon == doctest::Approx(1.2e-7).epsilon(1e-12));
    CHECK(e.reliable);

    const ErrorReport g = error_estimate(4, 2, 4, -0.5);
    CHECK(g.eps_log_negativity == doctest::Approx(1e-6 * 11 * 2.0 / 0.5).epsilon(1e-12));

    const ErrorReport bad = error_estimate(2, 2, 1, -1e-12);
    CHECK_FALSE(bad.reliable);
    CHECK(std::isinf(bad.eps_log_negativity));
}

TEST_CASE("moment limits") {
    const SymplecticGaussian I = SymplecticGaussian::identity(2);
    for (auto b : {MomentBackend::FiniteDifference, MomentBackend::Taylor}) {
        CHECK(std::abs(moment(I, {0, 0}, {0, 0}, {0, 0}, b) - 1.0) < 1e-14);
        // <1| a a^dag |1> = 2
        CHECK(std::abs(moment(I, {1, 0}, {1, 0}, {1, 0}, b) - 2.0) < 1e-6);
        CHECK(std::abs(normal_moment(I, {1, 0}, {1, 0}, {1, 0}, b) - 1.0) < 1e-6);
    }
    const auto T = random_gaussian(2, 3);
    CHECK(moment(T, {1, 0}, {1, 0}, {0, 0}) == cplx(0.0));
    CHECK(moment(T, {1, 1}, {2, 1}, {0, 0}, MomentBackend::Taylor) == cplx(0.0));
    CHECK_THROWS_AS(moment(T, {1}, {0, 0}, {0, 0}), ShapeError);
}

TEST_CASE("single-mode squeezer benchmark") {
    for (double r : {0.1, 0.3, 0.5}) {
        RVec rr(1);
        rr << r;
        const auto S = SymplecticGaussian::squeezers(rr);
        const double s2 = std::sinh(r) * std::sinh(r);
        const double c2 = std::cosh(r) * std::cosh(r);
        CHECK(std::abs(normal_moment(S, {0}, {1}, {1}) - s2) < 1e-7);
        CHECK(std::abs(moment(S, {0}, {1}, {1}) - c2) < 1e-7);
        CHECK(std::abs(normal_moment(S, {0}, {1}, {1}, MomentBackend::Taylor) - s2) < 1e-14);
        // <a^dag^2 a^2> = 3 sinh^4 + sinh^2 cosh^2 ... via the exact series
        const cplx exact4 = normal_moment(S, {0}, {2}, {2}, MomentBackend::Taylor);
        CHECK(std::abs(exact4 - (2.0 * s2 * s2 + s2 * c2)) < 1e-13);
        CHECK(std::abs(normal_moment(S, {0}, {2}, {2}) - exact4) < 1e-5);
        // <a^2> for this convention
        CHECK(std::abs(moment(S, {0}, {2}, {0}, MomentBackend::Taylor) - std::sinh(r) * std::cosh(r)) < 1e-13);
    }
}

TEST_CASE("taylor moments agree with the oracle") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 24; ++trial) {
        const int M = 1 + trial % 4;
        const double rmax = M == 4 ? 0.35 : 0.69;
        const auto T = random_gaussian(M, rng(), rmax);
        std::uniform_int_distribution<int> mode(0, M - 1);
        PhotonPattern in = PhotonPattern::zeros(M), k = in, l = in;
        for (int i = 0; i < static_cast<int>(rng() % 3); ++i) in.occupations[static_cast<size_t>(mode(rng))]++;
        const int order = 2 + 2 * static_cast<int>(rng() % 2);
        for (int i = 0; i < order; ++i) (rng() % 2 ? k : l).occupations[static_cast<size_t>(mode(rng))]++;
        const int cutoff = M == 1 ? 120 : (M == 2 ? 90 : (M == 3 ? 60 : 36));
        const OracleMoment o = oracle_moment(T, in, k, l, cutoff);
        const cplx t = moment(T, in, k, l, MomentBackend::Taylor);
        CHECK(std::abs(t - o.value) < 1e-8 * std::max(1.0, std::abs(o.value)));
    }
}

TEST_CASE("finite differences against the exact series") {
    // Measured envelope under the prescribed step rule: most moments meet the
    // per-order table, the worst stay within 20x (roundoff dominated).
    std::mt19937_64 rng(5);
    std::vector<double> ratios;
    for (int trial = 0; trial < 200; ++trial) {
        const int M = 1 + trial % 4;
        const auto T = random_gaussian(M, rng(), 0.69);
        std::uniform_int_distribution<int> mode(0, M - 1);
        PhotonPattern in = PhotonPattern::zeros(M), k = in, l = in;
        for (int i = 0; i < static_cast<int>(rng() % 3); ++i) in.occupations[static_cast<size_t>(mode(rng))]++;
        const int order = 2 + 2 * static_cast<int>(rng() % 2);
        for (int i = 0; i < order; ++i) (rng() % 2 ? k : l).occupations[static_cast<size_t>(mode(rng))]++;
        const int n = in.total() + order;
        if (n > 6) continue;
        const double eps = fd_absolute_error(n + n % 2);
        const cplx exact = moment(T, in, k, l, MomentBackend::Taylor);
        const cplx fd = moment(T, in, k, l);
        const double ratio = std::abs(fd - exact) / eps;
        CHECK(ratio < 20.0);
        ratios.push_back(ratio);
    }
    std::sort(ratios.begin(), ratios.end());
    CHECK(ratios[ratios.size() / 2] < 1.0);
}

TEST_CASE("monomials and dimensions") {
    CHECK(moments_matrix_dimension(1) == 4);
    CHECK(moments_matrix_dimension(6) == 79);
    const auto mono = moments_monomials(4);
    REQUIRE(mono.size() == 11);
    CHECK(mono[0] == PhotonPattern({0, 0, 0, 0}));
    CHECK(mono[1] == PhotonPattern({1, 0, 0, 0}));
    CHECK(mono[4] == PhotonPattern({0, 0, 0, 1}));
    CHECK(mono[5] == PhotonPattern({1, 1, 0, 0}));
    CHECK(mono[6] == PhotonPattern({1, 0, 1, 0}));
    CHECK(mono[10] == PhotonPattern({0, 0, 1, 1}));
}

TEST_CASE("moments matrix structure") {
    const auto T = coupled_pairs(2, 0.3);
    const PhotonPattern in = unit(4, {0, 2});
    MomentsOptions opt;
    const MomentsMatrix m = build_moments_matrix(T, in, Bipartition{2}, false, opt);
    REQUIRE(m.dimension() == 11);
    CHECK(m.derivative_order == 6);
    int zeros = 0;
    for (int i = 0; i < 11; ++i) {
        for (int j = 0; j < 11; ++j) {
            if (m.structural_zero(i, j)) {
                CHECK(m.entries(i, j) == cplx(0.0));
                ++zeros;
            }
        }
    }
    CHECK(zeros == 2 * 4 * 7);
    CHECK(m.computed_entries == 121 - zeros);
    CHECK(m.asymmetry < 1e-5);
    CHECK(std::abs(m.entries(0, 0) - 1.0) < 1e-7);

    // Gram matrix: positive semidefinite up to eps_lambda
    const double eps_lambda = error_estimate(6, 2, 0, 0.0).eps_lambda;
    const NegativityResult plain = log_negativity(m, eps_lambda);
    CHECK(plain.negative_count == 0);
    CHECK(plain.eigenvalues.minCoeff() > -eps_lambda);

    opt.backend = MomentBackend::Taylor;
    const MomentsMatrix exact = build_moments_matrix(T, in, Bipartition{2}, false, opt);
    CHECK((exact.entries - m.entries).cwiseAbs().maxCoeff() < 1e-4);
    CHECK(exact.asymmetry < 1e-12);
}

TEST_CASE("product states are not flagged") {
    const auto T = coupled_pairs(2, 0.0);
    const MomentsMatrix m = build_moments_matrix(T, PhotonPattern::zeros(4), Bipartition{2}, false);
    const MomentsMatrix pt = build_moments_matrix(T, PhotonPattern::zeros(4), Bipartition{2}, true);
    CHECK((m.entries - pt.entries).norm() < 1e-12);
    const EntanglementReport rep = analyze_entanglement(T, PhotonPattern::zeros(4), Bipartition{2});
    CHECK(rep.negativity.log_negativity == 0.0);
    CHECK(rep.negativity.negative_count == 0);
    CHECK(std::abs(rep.mean_photon_number) < 1e-12);
}

TEST_CASE("log negativity arithmetic") {
    RVec ev(4);
    ev << -0.5, 0.1, 1.0, 2.0;
    const CMat m = ev.cast<cplx>().asDiagonal();
    const NegativityResult r = log_negativity(m, 1e-9);
    CHECK(r.log_negativity == doctest::Approx(1.0));
    CHECK(r.negative_count == 1);
    CHECK(log_negativity(CMat(CMat::Identity(3, 3)), 1e-9).log_negativity == 0.0);
    RVec tiny(2);
    tiny << -1e-10, 1.0;
    CHECK(log_negativity(CMat(tiny.cast<cplx>().asDiagonal()), 1e-9).negative_count == 0);
}

TEST_CASE("two-mode squeezed vacuum negativity grows with r") {
    double previous = 0.0;
    for (double r : {0.1, 0.3, 0.6, 0.9}) {
        // one squeezer, then the coupler: a two-mode squeezed state up to local operations
        CMat W(2, 2);
        W << 1.0, cplx(0, 1), cplx(0, 1), 1.0;
        W /= std::sqrt(2.0);
        RVec rr(2);
        rr << r, r;
        const auto T = compose(SymplecticGaussian::squeezers(rr), SymplecticGaussian::interferometer(W));
        const EntanglementReport rep = analyze_entanglement(T, {0, 0}, Bipartition{1});
        CHECK(rep.negativity.log_negativity > previous);
        CHECK(rep.mean_photon_number == doctest::Approx(2.0 * std::sinh(r) * std::sinh(r)).epsilon(1e-6));
        previous = rep.negativity.log_negativity;
    }
}

TEST_CASE("backends agree on the entanglement report") {
    const auto T = coupled_pairs(3, 0.35);
    const PhotonPattern in = unit(6, {0, 1, 3, 4});
    MomentsOptions fd, exact;
    exact.backend = MomentBackend::Taylor;
    const EntanglementReport a = analyze_entanglement(T, in, Bipartition{3}, fd);
    const EntanglementReport b = analyze_entanglement(T, in, Bipartition{3}, exact);
    CHECK(a.derivative_order == 8);
    CHECK(std::abs(a.mean_photon_number - b.mean_photon_number) < a.errors.eps_mean_photon * 10);
    CHECK(a.negativity.negative_count == b.negativity.negative_count);
    CHECK(std::abs(a.negativity.log_negativity - b.negativity.log_negativity) < 1e-2);
    CHECK(b.negativity.log_negativity > 1.0);
}

TEST_CASE("moments matrix rejects bad shapes") {
    CHECK_THROWS_AS(build_moments_matrix(SymplecticGaussian::identity(3), PhotonPattern::zeros(3), Bipartition{1}, false),
                    ShapeError);
    CHECK_THROWS_AS(build_moments_matrix(coupled_pairs(3, 0.3), unit(6, {0, 1, 2, 3, 4}), Bipartition{3}, true),
                    UnsupportedPatternError);
}
