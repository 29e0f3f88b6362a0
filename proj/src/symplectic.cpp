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

#include "ubs/symplectic.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "ubs/errors.hpp"

namespace ubs {

double kDbToR = std::log(10.0) / 20.0;

SymplecticGaussian::SymplecticGaussian(CMat u, CMat v)
    : mode_count(static_cast<int>(u.rows())), U(std::move(u)), V(std::move(v)) {
    if (U.rows() != U.cols() || V.rows() != V.cols() || U.rows() != V.rows()) {
        throw ShapeError("U and V must be square matrices of equal size");
    }
}

SymplecticGaussian SymplecticGaussian::identity(int M) {
    return {CMat::Identity(M, M), CMat::Zero(M, M)};
}

SymplecticGaussian SymplecticGaussian::interferometer(const CMat &W) {
    return {W, CMat::Zero(W.rows(), W.cols())};
}

SymplecticGaussian SymplecticGaussian::squeezers(const RVec &r) {
    const auto M = r.size();
    CMat u = CMat::Zero(M, M), v = CMat::Zero(M, M);
    for (Eigen::Index i = 0; i < M; ++i) {
        u(i, i) = std::cosh(r(i));
        v(i, i) = std::sinh(r(i));
    }
    return {u, v};
}

SymplecticGaussian SymplecticGaussian::from_full(const CMat &T) {
    if (T.rows() != T.cols() || T.rows() % 2 != 0) throw ShapeError("full transform must be 2M x 2M");
    const auto M = T.rows() / 2;
    return {T.topLeftCorner(M, M), T.topRightCorner(M, M)};
}

CMat SymplecticGaussian::full() const {
    const int M = mode_count;
    CMat T(2 * M, 2 * M);
    T << U, V, V.conjugate(), U.conjugate();
    return T;
}

ValidationReport validate_symplectic(const CMat &U, const CMat &V) {
    if (U.rows() != U.cols() || V.rows() != V.cols() || U.rows() != V.rows()) {
        throw ShapeError("validate_symplectic: U and V must be square and equal-sized");
    }
    ValidationReport rep;
    const auto M = U.rows();
    rep.residual_norm = (U * U.adjoint() - V * V.adjoint() - CMat::Identity(M, M)).norm();
    rep.residual_symmetry = (U * V.transpose() - V * U.transpose()).norm();
    rep.pass = rep.residual_norm < kSymplecticTol && rep.residual_symmetry < kSymplecticTol;
    return rep;
}

void require_symplectic(const SymplecticGaussian &T) {
    auto rep = validate_symplectic(T.U, T.V);
    if (!rep.pass) {
        throw ValidationError("transform is not symplectic (residuals " +
                              std::to_string(rep.residual_norm) + ", " +
                              std::to_string(rep.residual_symmetry) + ")");
    }
}

SymplecticGaussian compose(const SymplecticGaussian &first, const SymplecticGaussian &second) {
    if (first.mode_count != second.mode_count) throw ShapeError("compose: mode-count mismatch");
    return {second.U * first.U + second.V * first.V.conjugate(),
            second.U * first.V + second.V * first.U.conjugate()};
}

SymplecticGaussian BlochMessiahFactors::reconstruct() const {
    CMat su = sigma_u.cast<cplx>().asDiagonal();
    CMat sv = sigma_v.asDiagonal();
    return {L * su * R, L * sv * R.conjugate()};
}

namespace {

// Takagi factor of a symmetric unitary Y: Y = O O^T with O unitary.
CMat symmetric_unitary_sqrt(const CMat &Y) {
    const double tau = 0.6180339887498949;
    RMat X = Y.real() + tau * Y.imag();
    X = 0.5 * (X + X.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<RMat> es(X);
    CMat Z = es.eigenvectors().cast<cplx>();
    CMat D = Z.transpose() * Y * Z;
    CMat O = Z;
    for (Eigen::Index i = 0; i < Z.cols(); ++i) {
        O.col(i) *= std::exp(cplx(0.0, 0.5 * std::arg(D(i, i))));
    }
    return O;
}

}  // namespace

BlochMessiahFactors bloch_messiah(const SymplecticGaussian &T) {
    require_symplectic(T);
    const int M = T.mode_count;
    Eigen::JacobiSVD<CMat> svd(T.U, Eigen::ComputeFullU | Eigen::ComputeFullV);
    BlochMessiahFactors f;
    f.L = svd.matrixU();
    f.R = svd.matrixV().adjoint();
    f.sigma_u = svd.singularValues();
    f.sigma_v = CVec::Zero(M);

    // Q = L^dag V R^T is block diagonal over groups of equal singular values.
    CMat Q = f.L.adjoint() * T.V * f.R.transpose();
    int start = 0;
    while (start < M) {
        int end = start + 1;
        const double s0 = f.sigma_u(start);
        while (end < M && std::abs(f.sigma_u(end) - s0) < 1e-11 * std::max(1.0, s0)) ++end;
        const int n = end - start;
        CMat Qg = Q.block(start, start, n, n);
        const double s = std::sqrt(Qg.squaredNorm() / n);
        if (s > 1e-14) {
            CMat Y = 0.5 * (Qg + Qg.transpose()) / s;
            CMat O = symmetric_unitary_sqrt(Y);
            f.L.middleCols(start, n) = (f.L.middleCols(start, n) * O).eval();
            f.R.middleRows(start, n) = (O.adjoint() * f.R.middleRows(start, n)).eval();
            CMat Dg = O.adjoint() * Qg * O.conjugate();
            for (int i = 0; i < n; ++i) f.sigma_v(start + i) = Dg(i, i);
        } else {
            for (int i = 0; i < n; ++i) f.sigma_v(start + i) = Qg(i, i);
        }
        start = end;
    }
    return f;
}

CMat haar_unitary(int M, std::uint64_t seed) {
    if (M <= 0) throw ShapeError("haar_unitary: M must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    CMat Z(M, M);
    for (int j = 0; j < M; ++j) {
        for (int i = 0; i < M; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            Z(i, j) = cplx(re, im) / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<CMat> qr(Z);
    CMat Q = qr.householderQ();
    CMat R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < M; ++i) {
        const double a = std::abs(R(i, i));
        const cplx ph = a > 0 ? R(i, i) / a : cplx(1.0, 0.0);
        Q.col(i) *= ph;
    }
    return Q;
}

CMat CircuitSpec::interferometer() const {
    if (interferometer_type == "haar") return haar_unitary(mode_count, seed);
    if (interferometer_type == "identity") return CMat::Identity(mode_count, mode_count);
    if (interferometer_type == "explicit") {
        if (explicit_unitary.rows() != mode_count || explicit_unitary.cols() != mode_count) {
            throw ShapeError("explicit interferometer has wrong shape");
        }
        return explicit_unitary;
    }
    throw DomainError("unknown interferometer type '" + interferometer_type + "'");
}

int CircuitSpec::squeezed_modes() const {
    int k = 0;
    for (double z : squeezing_db) k += z != 0.0;
    return k;
}

void to_json(nlohmann::json &j, const CircuitSpec &spec) {
    j = nlohmann::json{{"modes", spec.mode_count},
                       {"squeezing_db", spec.squeezing_db},
                       {"scenario", spec.scenario}};
    if (spec.interferometer_type == "explicit") {
        std::vector<std::vector<double>> re, im;
        for (int r = 0; r < spec.explicit_unitary.rows(); ++r) {
            re.emplace_back();
            im.emplace_back();
            for (int c = 0; c < spec.explicit_unitary.cols(); ++c) {
                re.back().push_back(spec.explicit_unitary(r, c).real());
                im.back().push_back(spec.explicit_unitary(r, c).imag());
            }
        }
        j["interferometer"] = {{"type", "explicit"}, {"re", re}, {"im", im}};
    } else if (spec.interferometer_type == "haar") {
        j["interferometer"] = {{"type", "haar"}, {"seed", spec.seed}};
    } else {
        j["interferometer"] = {{"type", spec.interferometer_type}};
    }
}

void from_json(const nlohmann::json &j, CircuitSpec &spec) {
    spec.mode_count = j.at("modes").get<int>();
    spec.squeezing_db = j.value("squeezing_db", std::vector<double>(static_cast<size_t>(spec.mode_count), 0.0));
    spec.scenario = j.value("scenario", std::string("custom"));
    if (j.contains("interferometer")) {
        const auto &I = j.at("interferometer");
        spec.interferometer_type = I.at("type").get<std::string>();
        if (spec.interferometer_type == "haar") {
            spec.seed = I.value("seed", std::uint64_t{0});
        } else if (spec.interferometer_type == "explicit") {
            auto re = I.at("re").get<std::vector<std::vector<double>>>();
            auto im = I.contains("im") ? I.at("im").get<std::vector<std::vector<double>>>()
                                       : std::vector<std::vector<double>>{};
            CMat W = CMat::Zero(spec.mode_count, spec.mode_count);
            if (static_cast<int>(re.size()) != spec.mode_count) throw ShapeError("explicit re has wrong shape");
            for (int r = 0; r < spec.mode_count; ++r) {
                if (static_cast<int>(re[static_cast<size_t>(r)].size()) != spec.mode_count) {
                    throw ShapeError("explicit re has wrong shape");
                }
                for (int c = 0; c < spec.mode_count; ++c) {
                    const double i = im.empty() ? 0.0 : im.at(static_cast<size_t>(r)).at(static_cast<size_t>(c));
                    W(r, c) = cplx(re[static_cast<size_t>(r)][static_cast<size_t>(c)], i);
                }
            }
            spec.explicit_unitary = W;
        }
    } else {
        spec.interferometer_type = "identity";
    }
}

CircuitSpec load_circuit_spec(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open circuit spec '" + path + "'");
    nlohmann::json j;
    in >> j;
    return j.get<CircuitSpec>();
}

SymplecticGaussian build_circuit_transform(const CircuitSpec &spec) {
    if (spec.mode_count <= 0) throw ShapeError("circuit needs at least one mode");
    if (static_cast<int>(spec.squeezing_db.size()) != spec.mode_count) {
        throw ShapeError("squeezing_db length differs from mode count");
    }
    RVec r(spec.mode_count);
    for (int i = 0; i < spec.mode_count; ++i) {
        const double z = spec.squeezing_db[static_cast<size_t>(i)];
        if (!std::isfinite(z) || z < 0) throw DomainError("squeezing must be finite and nonnegative");
        r(i) = z * kDbToR;
    }
    CMat W = spec.interferometer();
    auto T = compose(SymplecticGaussian::squeezers(r), SymplecticGaussian::interferometer(W));
    require_symplectic(T);
    return T;
}

HamiltonianCoeffs hamiltonian_coeffs(const SymplecticGaussian &T) {
    require_symplectic(T);
    const int M = T.mode_count;
    CMat F = T.full();
    Eigen::ComplexEigenSolver<CMat> es(F, false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const cplx l = es.eigenvalues()(i);
        if (l.real() < 0 && std::abs(l.imag()) < 1e-10 * std::abs(l)) {
            throw LogBranchError("log branch failure: eigenvalue on the negative real axis");
        }
    }
    CMat logT = F.log();
    CMat Kd = CMat::Identity(2 * M, 2 * M);
    Kd.bottomRightCorner(M, M) *= -1.0;
    CMat H = cplx(0.0, -0.5) * Kd * logT;
    return {0.5 * (H + H.adjoint())};
}

SymplecticGaussian transform_from_hamiltonian(const HamiltonianCoeffs &h) {
    const int M = h.modes();
    CMat Kd = CMat::Identity(2 * M, 2 * M);
    Kd.bottomRightCorner(M, M) *= -1.0;
    CMat G = cplx(0.0, 2.0) * Kd * h.H;
    return SymplecticGaussian::from_full(G.exp());
}

}  // namespace ubs
