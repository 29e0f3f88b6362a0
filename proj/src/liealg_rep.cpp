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

#include "ubs/liealg_rep.hpp"

#include <cmath>
#include <vector>

#include <Eigen/SVD>
#include <Eigen/Sparse>

#include <unsupported/Eigen/MatrixFunctions>

#include "ubs/errors.hpp"

namespace ubs {

QuadraticForm QuadraticForm::zero(int M) {
    return {CMat::Zero(M, M), CMat::Zero(M, M), CMat::Zero(M, M)};
}

QuadraticForm QuadraticForm::operator+(const QuadraticForm &o) const { return {A + o.A, B + o.B, C + o.C}; }

CMat pair_coefficient(const CMat &form_matrix) { return 0.5 * form_matrix; }
CMat pair_form(const CMat &coefficient) { return 2.0 * coefficient; }

namespace {

CMat reversal(int M) {
    CMat J = CMat::Zero(M, M);
    for (int i = 0; i < M; ++i) J(i, M - 1 - i) = 1.0;
    return J;
}

void require_symmetric(const CMat &X, const char *name) {
    if ((X - X.transpose()).norm() > 1e-12 * std::max(1.0, X.norm())) {
        throw DomainError(std::string("quadratic form: ") + name + " must be symmetric");
    }
}

CMat embed(const QuadraticForm &q) { return embed_quadratic_form(q).matrix; }

CMat expm(const CMat &X) { return X.exp(); }

}  // namespace

SpRep embed_quadratic_form(const QuadraticForm &q) {
    const int M = q.modes();
    if (q.A.rows() != M || q.B.rows() != M || q.A.cols() != M || q.B.cols() != M || q.C.cols() != M) {
        throw ShapeError("quadratic form blocks must be M x M");
    }
    require_symmetric(q.A, "A");
    require_symmetric(q.B, "B");
    const CMat J = reversal(M);
    CMat R = CMat::Zero(2 * M + 2, 2 * M + 2);
    R.block(1, 1, M, M) = q.C;
    R.block(1, 1 + M, M, M) = pair_form(pair_coefficient(q.B)) * J;
    R.block(1 + M, 1, M, M) = -J * q.A;
    R.block(1 + M, 1 + M, M, M) = -J * q.C.transpose() * J;
    return {R};
}

SpRep rep_exponential(const SpRep &x) { return {CMat(x.matrix.exp())}; }

ReorderingKind parse_reordering_kind(const std::string &s) {
    if (s == "a") return ReorderingKind::A;
    if (s == "b") return ReorderingKind::B;
    if (s == "c") return ReorderingKind::C;
    throw DomainError("unknown reordering kind '" + s + "'");
}

namespace {

using SpMat = Eigen::SparseMatrix<cplx>;

constexpr Eigen::Index kMaxFockDim = 20000;

struct FockOps {
    int M;
    int c;
    Eigen::Index dim;
    std::vector<SpMat> a;
    std::vector<SpMat> ad;
    std::vector<int> total;  // photon number of each basis state
};

FockOps fock_ops(int M, int c) {
    FockOps f{M, c, 1, {}, {}, {}};
    for (int i = 0; i < M; ++i) f.dim *= c + 1;
    if (f.dim > kMaxFockDim) throw ResourceError("reordering check: Fock space too large");
    f.total.assign(static_cast<size_t>(f.dim), 0);
    for (Eigen::Index s = 0; s < f.dim; ++s) {
        Eigen::Index rem = s;
        for (int i = 0; i < M; ++i, rem /= c + 1) f.total[static_cast<size_t>(s)] += static_cast<int>(rem % (c + 1));
    }
    for (int mode = 0; mode < M; ++mode) {
        Eigen::Index stride = 1;
        for (int i = mode + 1; i < M; ++i) stride *= c + 1;
        std::vector<Eigen::Triplet<cplx>> trip;
        for (Eigen::Index s = 0; s < f.dim; ++s) {
            const auto n = (s / stride) % (c + 1);
            if (n > 0) trip.emplace_back(s - stride, s, std::sqrt(static_cast<double>(n)));
        }
        SpMat a(f.dim, f.dim);
        a.setFromTriplets(trip.begin(), trip.end());
        f.ad.push_back(SpMat(a.adjoint()));
        f.a.push_back(std::move(a));
    }
    return f;
}

SpMat fock_form(const FockOps &f, const QuadraticForm &q) {
    SpMat H(f.dim, f.dim);
    for (int i = 0; i < f.M; ++i) {
        const auto ui = static_cast<size_t>(i);
        for (int j = 0; j < f.M; ++j) {
            const auto uj = static_cast<size_t>(j);
            if (q.C(i, j) != cplx(0.0)) H += SpMat(q.C(i, j) * (f.ad[ui] * f.a[uj]));
            if (q.B(i, j) != cplx(0.0)) H += SpMat(0.5 * q.B(i, j) * (f.ad[ui] * f.ad[uj]));
            if (q.A(i, j) != cplx(0.0)) H += SpMat(0.5 * q.A(i, j) * (f.a[ui] * f.a[uj]));
        }
    }
    return H;
}

// e^X v by its power series; the operators used here are nilpotent or
// number conserving on the truncated space, so the series is exact there.
CVec apply_exp(const SpMat &X, const CVec &v) {
    CVec sum = v;
    CVec term = v;
    for (int k = 1; k < 2000; ++k) {
        term = (X * term) / static_cast<double>(k);
        sum += term;
        const double t = term.norm();
        if (t == 0.0 || (k > 8 && t < 1e-20 * sum.norm())) break;
    }
    return sum;
}

int max_cutoff(int M) {
    int c = 0;
    Eigen::Index d = 1;
    while (true) {
        d = 1;
        for (int i = 0; i < M; ++i) d *= c + 2;
        if (d > kMaxFockDim) return c;
        ++c;
    }
}

constexpr int kLowPhotons = 4;

}  // namespace

double fock_reordering_residual(const QuadraticForm &left, const QuadraticForm &right,
                                const std::vector<QuadraticForm> &factors, cplx scale, int cutoff) {
    const int M = left.modes();
    const FockOps f = fock_ops(M, cutoff);
    const SpMat L1 = fock_form(f, left);
    const SpMat L2 = fock_form(f, right);
    std::vector<SpMat> R;
    for (const auto &q : factors) R.push_back(fock_form(f, q));
    double worst = 0.0;
    for (Eigen::Index col = 0; col < f.dim; ++col) {
        if (f.total[static_cast<size_t>(col)] > kLowPhotons) continue;
        CVec e = CVec::Zero(f.dim);
        e(col) = 1.0;
        const CVec lhs = apply_exp(L1, apply_exp(L2, e));
        CVec rhs = e;
        for (auto it = R.rbegin(); it != R.rend(); ++it) rhs = apply_exp(*it, rhs);
        rhs *= scale;
        for (Eigen::Index row = 0; row < f.dim; ++row) {
            if (f.total[static_cast<size_t>(row)] > kLowPhotons) continue;
            worst = std::max(worst, std::abs(lhs(row) - rhs(row)));
        }
    }
    return worst;
}

ReorderingResidual check_reordering_identity(ReorderingKind kind, const CMat &A, const CMat &second,
                                             int fock_cutoff) {
    const int M = static_cast<int>(A.rows());
    if (A.cols() != M || second.rows() != M || second.cols() != M) throw ShapeError("reordering check: shape mismatch");
    const CMat I = CMat::Identity(M, M);
    const QuadraticForm z = QuadraticForm::zero(M);
    ReorderingResidual res;

    switch (kind) {
    case ReorderingKind::A: {
        const CMat &C = second;
        const CMat eC = expm(C);
        QuadraticForm qa = z, qc = z, qa2 = z;
        qa.A = A;
        qc.C = C;
        qa2.A = eC.transpose() * A * eC;
        const CMat lhs = expm(embed(qa)) * expm(embed(qc));
        const CMat rhs = expm(embed(qc)) * expm(embed(qa2));
        res.representation = (lhs - rhs).norm();
        res.pass = res.representation < 1e-10;
        return res;
    }
    case ReorderingKind::B: {
        const CMat &B = A;
        const CMat &C = second;
        const CMat eC = expm(C);
        QuadraticForm qb = z, qc = z, qb2 = z;
        qb.B = B;
        qc.C = C;
        qb2.B = eC * B * eC.transpose();
        const CMat lhs = expm(embed(qc)) * expm(embed(qb));
        const CMat rhs = expm(embed(qb2)) * expm(embed(qc));
        res.representation = (lhs - rhs).norm();
        res.pass = res.representation < 1e-10;
        return res;
    }
    case ReorderingKind::C: {
        const CMat &B = second;
        Eigen::ComplexEigenSolver<CMat> es(A * B, false);
        if (es.eigenvalues().cwiseAbs().maxCoeff() >= 1.0) {
            throw DomainError("reordering check: spectral radius of AB must be below 1");
        }
        const CMat Dinv = (I - A * B).inverse();
        const CMat B2 = B * Dinv;
        const CMat A2 = Dinv * A;
        const CMat E = -CMat(CMat(I - B * A).log());
        QuadraticForm qa = z, qb = z, qa2 = z, qb2 = z, qe = z;
        qa.A = A;
        qb.B = B;
        qa2.A = 0.5 * (A2 + A2.transpose());
        qb2.B = 0.5 * (B2 + B2.transpose());
        qe.C = E;
        const CMat lhs = expm(embed(qa)) * expm(embed(qb));
        const CMat rhs = expm(embed(qb2)) * expm(embed(qe)) * expm(embed(qa2));
        res.representation = (lhs - rhs).norm();

        // Intermediate states with 2k extra photons enter with weight ~ (|A| |B|)^k; the
        // truncated exponentials are only well conditioned for operator norms below one.
        const double na = Eigen::JacobiSVD<CMat>(A).singularValues()(0);
        const double nb = Eigen::JacobiSVD<CMat>(B).singularValues()(0);
        const double rate = na * nb;
        int cutoff = fock_cutoff;
        if (cutoff <= 0) {
            const int k = rate > 0.0 ? static_cast<int>(std::ceil(std::log(1e-12) / std::log(rate))) + 2 : 2;
            cutoff = 2 * k + kLowPhotons;
            if (na >= 0.9 || nb >= 0.9 || cutoff > max_cutoff(M)) cutoff = -1;
        }
        if (cutoff > 0) {
            const cplx scale = 1.0 / std::sqrt((I - A * B).determinant());
            res.fock = fock_reordering_residual(qa, qb, {qb2, qe, qa2}, scale, cutoff);
        }
        res.pass = res.representation < 1e-10 && (res.fock < 0.0 || res.fock < 1e-8);
        return res;
    }
    }
    return res;
}

}  // namespace ubs
