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

#include "ubs/generating.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "ubs/errors.hpp"

namespace ubs {

NormalOrderedUnitary normal_order_coefficients(const SymplecticGaussian &T) {
    require_symplectic(T);
    const CMat Ui = T.U.inverse();
    const CMat Uid = Ui.adjoint();
    NormalOrderedUnitary n;
    n.pair_creation = 0.5 * Uid * T.V.transpose();
    n.pair_annihilation = -0.5 * (Ui * T.V).conjugate();
    n.mixing_log = Uid.log();
    n.normalization = 1.0 / std::sqrt(T.U.adjoint().determinant());
    return n;
}

CMat GeneratingKernel::G() const {
    const auto M = A.rows();
    CMat g(2 * M, 2 * M);
    g << A, B, B.transpose(), Abar;
    return g;
}

CMat GeneratingKernel::Gdet() const {
    const auto M = A.rows();
    CMat g(2 * M, 2 * M);
    g << A, Bd, Bd.transpose(), Abar;
    return g;
}

namespace {

struct HalfKernel {
    CMat A;
    CMat Bd;
    CMat K;
};

HalfKernel half_kernel(const CMat &U, const CMat &V, const CMat &X) {
    const auto M = U.rows();
    const CMat Ui = U.inverse();
    const CMat W = Ui * V;
    HalfKernel h;
    h.K = CMat::Identity(M, M) - X * W.conjugate() * X * W;
    Eigen::PartialPivLU<CMat> lu(h.K);
    const CMat Ki = lu.inverse();
    h.A = V.conjugate() * Ui - Ui.transpose() * Ki * X * W.conjugate() * X * Ui;
    h.Bd = Ui.transpose() * Ki * X * Ui.conjugate();
    return h;
}

}  // namespace

GeneratingKernel kernel_at(const SymplecticGaussian &T, const RVec &x) {
    if (x.size() != T.mode_count) throw ShapeError("kernel_at: evaluation point has wrong length");
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!(x(i) >= 0.0 && x(i) <= 1.0)) throw DomainError("kernel_at: x must lie in [0, 1]");
    }
    return kernel_extended(T, x);
}

GeneratingKernel kernel_extended(const SymplecticGaussian &T, const RVec &x) {
    const int M = T.mode_count;
    if (x.size() != M) throw ShapeError("kernel_extended: evaluation point has wrong length");
    const CMat X = x.cast<cplx>().asDiagonal();
    const CMat W = T.U.inverse() * T.V;
    const CMat K = CMat::Identity(M, M) - X * W.conjugate() * X * W;
    const cplx detK = K.determinant();
    if (std::abs(detK) < 1e-14) {
        int worst = 0;
        for (int i = 1; i < M; ++i)
            if (std::abs(K(i, i)) < std::abs(K(worst, worst))) worst = i;
        throw SingularKernelError("kernel_at: singular kernel (mode " + std::to_string(worst) + ")", worst);
    }
    const HalfKernel h = half_kernel(T.U, T.V, X);
    const HalfKernel hc = half_kernel(T.U.conjugate(), T.V.conjugate(), X);
    GeneratingKernel k;
    k.A = h.A;
    k.Abar = hc.A;
    k.Bd = h.Bd;
    k.B = h.Bd - CMat::Identity(M, M);
    k.K = h.K;
    k.D = h.K.diagonal();
    k.prefactor = 1.0 / (std::abs(T.U.determinant()) * std::sqrt(detK));
    k.evaluation_point = x;
    return k;
}

TaylorMatrix TaylorKernel::B() const {
    TaylorMatrix b = Bd;
    for (int i = 0; i < b.rows; ++i) b(i, i) += cplx(-1.0);
    return b;
}

static TaylorMatrix assemble(const TaylorMatrix &A, const TaylorMatrix &B, const TaylorMatrix &Abar) {
    const int M = A.rows;
    TaylorMatrix g(2 * M, 2 * M, A.a.front().zero_like());
    const TaylorMatrix Bt = B.transpose();
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < M; ++j) {
            g(i, j) = A(i, j);
            g(i, j + M) = B(i, j);
            g(i + M, j) = Bt(i, j);
            g(i + M, j + M) = Abar(i, j);
        }
    }
    return g;
}

TaylorMatrix TaylorKernel::G() const { return assemble(A, B(), Abar); }
TaylorMatrix TaylorKernel::Gdet() const { return assemble(A, Bd, Abar); }

namespace {

// diag(x) * C as a series matrix.
TaylorMatrix scale_rows(const CMat &C, const std::vector<int> &orders) {
    const int M = static_cast<int>(C.rows());
    TaylorMatrix r(M, static_cast<int>(C.cols()), TaylorScalar(orders, 0.0));
    for (int i = 0; i < M; ++i) {
        const TaylorScalar xi = TaylorScalar::variable(orders, i);
        for (int j = 0; j < r.cols; ++j) r(i, j) = xi * C(i, j);
    }
    return r;
}

struct TaylorHalf {
    TaylorMatrix A;
    TaylorMatrix Bd;
    TaylorMatrix K;
    TaylorScalar detK;
};

TaylorHalf taylor_half(const CMat &U, const CMat &V, const std::vector<int> &orders) {
    const int M = static_cast<int>(U.rows());
    const CMat Ui = U.inverse();
    const CMat W = Ui * V;
    const TaylorMatrix XWb = scale_rows(W.conjugate(), orders);
    const TaylorMatrix XW = scale_rows(W, orders);
    TaylorHalf h;
    h.K = TaylorMatrix::constant(CMat::Identity(M, M), orders) - XWb * XW;
    TaylorLU lu(h.K);
    h.detK = lu.determinant();
    const TaylorMatrix Ki = lu.inverse();
    const TaylorMatrix XUi = scale_rows(Ui, orders);
    h.A = TaylorMatrix::constant(V.conjugate() * Ui, orders) - Ui.transpose() * (Ki * (XWb * XUi));
    h.Bd = Ui.transpose() * (Ki * scale_rows(Ui.conjugate(), orders));
    return h;
}

}  // namespace

TaylorKernel kernel_taylor(const SymplecticGaussian &T, const PhotonPattern &orders, int order_limit) {
    if (orders.modes() != T.mode_count) throw ShapeError("kernel_taylor: order pattern has wrong length");
    if (orders.total() > order_limit) throw ResourceError("kernel_taylor: total order exceeds limit");
    const auto &o = orders.occupations;
    const TaylorHalf h = taylor_half(T.U, T.V, o);
    const TaylorHalf hc = taylor_half(T.U.conjugate(), T.V.conjugate(), o);
    TaylorKernel k;
    k.orders = o;
    k.A = h.A;
    k.Abar = hc.A;
    k.Bd = h.Bd;
    k.K = h.K;
    k.prefactor = pow(h.detK, -0.5) * cplx(1.0 / std::abs(T.U.determinant()));
    return k;
}

TaylorScalar diagonal_product_series(const CMat &S, const CMat &R, const std::vector<int> &orders) {
    const int M = static_cast<int>(S.rows());
    if (S.cols() != M || R.rows() != M || R.cols() != M || static_cast<int>(orders.size()) != M) {
        throw ShapeError("diagonal_product_series: shape mismatch");
    }
    const TaylorMatrix XS = scale_rows(S, orders);
    const TaylorMatrix XR = scale_rows(R, orders);
    const TaylorMatrix P = XS * XR;
    TaylorScalar acc(orders, 1.0);
    for (int i = 0; i < M; ++i) {
        TaylorScalar d = acc.constant_like(1.0) - P(i, i);
        acc = acc * pow(d, -0.5);
    }
    return acc;
}

}  // namespace ubs
