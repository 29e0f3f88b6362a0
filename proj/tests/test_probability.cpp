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
#include <numeric>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "ubs/combinatorics.hpp"
#include "ubs/errors.hpp"
#include "ubs/fock_oracle.hpp"
#include "ubs/probability.hpp"

using namespace ubs;

TEST_CASE("ubs_probability frozen values") {
    CHECK(ubs_probability({SymplecticGaussian::identity(2), {0, 0}, {0, 0}}) == doctest::Approx(1.0));

    const auto bs = SymplecticGaussian::interferometer(testing::beam_splitter_5050());
    CHECK(ubs_probability({bs, {1, 1}, {1, 1}}) < 1e-15);
    CHECK(ubs_probability({bs, {1, 1}, {2, 0}}) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(ubs_probability({bs, {1, 1}, {0, 2}}) == doctest::Approx(0.5).epsilon(1e-13));

    const double r = 0.5;
    RVec rv(1);
    rv << r;
    const auto sq = SymplecticGaussian::squeezers(rv);
    const double expect = std::pow(std::tanh(r), 2) / (2 * std::cosh(r));
    CHECK(ubs_probability({sq, {0}, {2}}) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(ubs_probability({sq, {0}, {0}}) == doctest::Approx(1 / std::cosh(r)).epsilon(1e-13));

    CHECK(ubs_probability({sq, {1}, {0}}) == 0.0);  // parity
    CHECK_THROWS_AS(ubs_probability({sq, {6}, {6}}), ResourceError);
}

TEST_CASE("ubs_probability against the Fock oracle, multi-photon patterns") {
    struct Case {
        PhotonPattern n, m;
    };
    const std::vector<Case> cases2{{{2, 1}, {1, 0}}, {{2, 2}, {0, 0}}, {{1, 2}, {1, 0}}, {{3, 0}, {1, 0}},
                                   {{2, 1}, {3, 0}}, {{1, 1}, {1, 1}}, {{0, 0}, {2, 2}}, {{1, 0}, {2, 1}}};
    const auto T2 = testing::random_gaussian(2, 17, 0.35);
    for (const auto &c : cases2) {
        const double p = ubs_probability({T2, c.n, c.m});
        const auto o = oracle_probability(T2, c.n, c.m);
        CHECK(o.tail_bound < 1e-8);
        CHECK(std::abs(p - o.value) < 1e-9);
    }
    const auto T3 = testing::random_gaussian(3, 19, 0.3);
    const std::vector<Case> cases3{{{1, 1, 1}, {1, 1, 1}}, {{2, 0, 1}, {0, 1, 0}}, {{1, 1, 0}, {1, 0, 1}}};
    for (const auto &c : cases3) {
        CHECK(std::abs(ubs_probability({T3, c.n, c.m}) - oracle_probability(T3, c.n, c.m).value) < 1e-9);
    }
}

TEST_CASE("hafnian backend") {
    SUBCASE("linear optics") {
        const CMat W = haar_unitary(4, 3);
        const auto T = SymplecticGaussian::interferometer(W);
        const PhotonPattern n{1, 0, 1, 1}, m{0, 1, 1, 1};
        CHECK(std::abs(ubs_probability_hafnian({T, n, m}) - sbs_probability(W, n, m)) < 1e-12);
    }
    SUBCASE("zero input") {
        const auto T = testing::random_gaussian(4, 8);
        const PhotonPattern z{0, 0, 0, 0}, m{1, 1, 0, 1};
        CHECK(std::abs(ubs_probability_hafnian({T, z, PhotonPattern{1, 1, 0, 0}}) -
                       gbs_probability(T, PhotonPattern{1, 1, 0, 0})) < 1e-13);
        CHECK(ubs_probability_hafnian({T, z, m}) == 0.0);
    }
    SUBCASE("agrees with the Taylor backend") {
        for (int s = 0; s < 10; ++s) {
            const auto T = testing::random_gaussian(3, 200 + s, 0.6);
            for (const auto &n : patterns_with_total(3, 2)) {
                if (!n.single_photon()) continue;
                for (int tot = 0; tot <= 3; ++tot) {
                    for (const auto &m : patterns_with_total(3, tot)) {
                        if (!m.single_photon()) continue;
                        CHECK(std::abs(ubs_probability_hafnian({T, n, m}) - ubs_probability({T, n, m})) < 1e-10);
                    }
                }
            }
        }
    }
    SUBCASE("larger inputs and partition counts") {
        const auto T = testing::random_gaussian(5, 31, 0.4);
        const PhotonPattern n{1, 1, 1, 1, 0}, m{1, 0, 1, 1, 1};
        HafnianBackendStats st;
        const double ph = ubs_probability_hafnian({T, n, m}, &st);
        CHECK(std::abs(ph - ubs_probability({T, n, m})) < 1e-10);
        // even beta over 4 inputs: 1 + 6 + 1; partitions: B4 + 6 B2 + B0
        CHECK(st.prefactor_terms == 8);
        CHECK(st.partitions == 15 + 6 * 2 + 1);
    }
    SUBCASE("multi-photon rejected") {
        CHECK_THROWS_AS(ubs_probability_hafnian({SymplecticGaussian::identity(2), {2, 0}, {2, 0}}),
                        UnsupportedPatternError);
    }
}

TEST_CASE("sbs_probability") {
    CHECK(sbs_probability(CMat::Identity(3, 3), {1, 0, 0}, {1, 0, 0}) == doctest::Approx(1.0));
    const CMat bs = testing::beam_splitter_5050();
    CHECK(sbs_probability(bs, {1, 1}, {1, 1}) < 1e-15);
    CHECK(sbs_probability(bs, {1, 1}, {2, 0}) == doctest::Approx(0.5));
    CHECK(sbs_probability(bs, {1, 0}, {2, 0}) == 0.0);
    for (int s = 0; s < 5; ++s) {
        const CMat U = haar_unitary(2, 10 + s);
        double sum = 0.0;
        for (const auto &m : patterns_with_total(2, 2)) sum += sbs_probability(U, {1, 1}, m);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    // linear-optics limit of the Taylor backend, multi-photon
    const CMat U = haar_unitary(3, 4);
    const auto T = SymplecticGaussian::interferometer(U);
    CHECK(std::abs(ubs_probability({T, {2, 1, 0}, {0, 1, 2}}) - sbs_probability(U, {2, 1, 0}, {0, 1, 2})) < 1e-12);
}

TEST_CASE("gbs_probability") {
    RVec r(3);
    r << 0.3, 0.2, 0.5;
    const auto S = SymplecticGaussian::squeezers(r);
    const double vac = 1 / (std::cosh(0.3) * std::cosh(0.2) * std::cosh(0.5));
    CHECK(gbs_probability(S, {0, 0, 0}) == doctest::Approx(vac).epsilon(1e-13));
    const auto T = compose(S, SymplecticGaussian::interferometer(haar_unitary(3, 1)));
    CHECK(gbs_probability(T, {0, 0, 0}) == doctest::Approx(vac).epsilon(1e-13));
    CHECK(gbs_probability(SymplecticGaussian::identity(1), {1}) == 0.0);
    RVec r1(1);
    r1 << 0.4;
    CHECK(gbs_probability(SymplecticGaussian::squeezers(r1), {2}) ==
          doctest::Approx(std::pow(std::tanh(0.4), 2) / (2 * std::cosh(0.4))).epsilon(1e-13));
    for (int s = 0; s < 5; ++s) {
        const auto G = testing::random_gaussian(3, 60 + s);
        for (const auto &m : patterns_with_total(3, 2)) {
            CHECK(std::abs(gbs_probability(G, m) - ubs_probability({G, {0, 0, 0}, m})) < 1e-12);
        }
    }
}

TEST_CASE("verify_hafnian_identity") {
    const CMat S = testing::random_symmetric(4, 1, 0.4), R = testing::random_symmetric(4, 2, 0.4);
    CHECK(verify_hafnian_identity(S, R, {0, 2, 3}) == 0.0);
    CHECK(verify_hafnian_identity(CMat::Zero(4, 4), CMat::Zero(4, 4), {0, 1}) == 0.0);
    for (int k = 0; k < 50; ++k) {
        const CMat s = testing::random_symmetric(4, 100 + k, 0.5), rr = testing::random_symmetric(4, 200 + k, 0.5);
        CHECK(verify_hafnian_identity(s, rr, {0, 1, 2, 3}) < 1e-9);
    }
}

TEST_CASE("enumerate_distribution") {
    auto d = enumerate_distribution(SymplecticGaussian::identity(2), {1, 0}, 1);
    REQUIRE(d.size() == 2);
    CHECK(d[0].first == PhotonPattern{1, 0});
    CHECK(d[0].second == doctest::Approx(1.0));
    CHECK(d[1].second == 0.0);

    const auto T = SymplecticGaussian::interferometer(haar_unitary(3, 77));
    double sum = 0.0;
    for (auto &[p, v] : enumerate_distribution(T, {1, 1, 1}, 3)) sum += v;
    CHECK(std::abs(sum - 1.0) < 1e-10);

    RVec r(2);
    r << 0.3, 0.2;
    const auto G = compose(SymplecticGaussian::squeezers(r), SymplecticGaussian::interferometer(haar_unitary(2, 5)));
    double acc = 0.0, prev = -1.0;
    for (int tot = 1; tot <= 7; tot += 2) {
        for (auto &[p, v] : enumerate_distribution(G, {1, 0}, tot)) acc += v;
        CHECK(acc > prev);
        CHECK(acc <= 1.0 + 1e-8);
        prev = acc;
    }
    CHECK(acc > 0.97);
    CHECK_THROWS_AS(enumerate_distribution(T, {1, 1, 1}, 3, Backend::Taylor, 5), ResourceError);
}

TEST_CASE("permutation covariance") {
    const auto T = testing::random_gaussian(3, 14);
    std::vector<int> perm{2, 0, 1};
    CMat P = CMat::Zero(3, 3);
    for (int i = 0; i < 3; ++i) P(perm[static_cast<size_t>(i)], i) = 1.0;
    const SymplecticGaussian Tp(P * T.U * P.transpose(), P * T.V * P.transpose());
    auto permute = [&](const PhotonPattern &p) {
        std::vector<int> o(3);
        for (int i = 0; i < 3; ++i) o[static_cast<size_t>(perm[static_cast<size_t>(i)])] = p[i];
        return PhotonPattern(o);
    };
    const PhotonPattern n{1, 2, 0}, m{0, 1, 1};
    CHECK(std::abs(ubs_probability({T, n, m}) - ubs_probability({Tp, permute(n), permute(m)})) < 1e-12);
}

TEST_CASE("distance_pair") {
    const CMat W = haar_unitary(3, 9);
    const auto T0 = SymplecticGaussian::interferometer(W);
    auto s0 = distance_pair(T0, W, {1, 1, 0}, {0, 1, 1});
    CHECK(s0.d_P < 1e-12);
    CHECK(std::abs(s0.d_H - std::abs(s0.p_sbs - s0.p_gbs)) < 1e-14);

    RVec r = RVec::Constant(3, 0.3);
    const auto T = compose(SymplecticGaussian::squeezers(r), T0);
    auto s = distance_pair(T, W, {0, 0, 0}, {1, 1, 0});
    CHECK(s.d_H < 1e-14);
}

TEST_CASE("finalize_probability") {
    CHECK(finalize_probability(cplx(-1e-13, 0), 1e-8) == 0.0);
    CHECK_THROWS_AS(finalize_probability(cplx(-1e-6, 0), 1e-8), IntegrityError);
    CHECK_THROWS_AS(finalize_probability(cplx(0.5, 1e-3), 1e-8), IntegrityError);
}
