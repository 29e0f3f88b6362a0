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

#pragma once

#include <vector>

#include "ubs/symplectic.hpp"
#include "ubs/taylor.hpp"

namespace ubs {

/**
 * @brief T^ = N exp(a^dag B a^dag) exp(a^dag D a) exp(a A a), double sums over modes.
 *
 * pair_creation = U^{-dag} V^T / 2, pair_annihilation = -conj(U^{-1} V) / 2,
 * mixing_log = log U^{-dag}, normalization N = det(U^dag)^{-1/2} up to a phase.
 */
struct NormalOrderedUnitary {
    CMat pair_creation;
    CMat pair_annihilation;
    CMat mixing_log;
    cplx normalization;
};

NormalOrderedUnitary normal_order_coefficients(const SymplecticGaussian &T);

/**
 * @brief Kernel of the x-dependent generating operator at a real point x.
 *
 * With W = U^{-1} V and X = diag(x):
 *   K = 1 - X conj(W) X W                      (D = diag K)
 *   A = conj(V) U^{-1} - U^{-T} K^{-1} X conj(W) X U^{-1}
 *   Bd = U^{-T} K^{-1} X conj(U)^{-1},  B = Bd - 1
 *   prefactor = 1 / (|det U| sqrt(det K))
 * The symbol matrix is G = [[A, B], [B^T, Abar]] and detection uses
 * Gdet = [[A, Bd], [Bd^T, Abar]]; Abar is A with U, V conjugated.
 */
struct GeneratingKernel {
    CMat A;
    CMat Abar;
    CMat B;
    CMat Bd;
    CMat K;
    CVec D;
    cplx prefactor;
    RVec evaluation_point;

    CMat G() const;
    CMat Gdet() const;
};

GeneratingKernel kernel_at(const SymplecticGaussian &T, const RVec &x);

/// kernel_at without the [0, 1] range check; finite-difference stencils straddle x = 0.
GeneratingKernel kernel_extended(const SymplecticGaussian &T, const RVec &x);

struct TaylorKernel {
    TaylorMatrix A;
    TaylorMatrix Abar;
    TaylorMatrix Bd;
    TaylorMatrix K;
    TaylorScalar prefactor;
    std::vector<int> orders;

    TaylorMatrix B() const;
    TaylorMatrix G() const;
    TaylorMatrix Gdet() const;
};

constexpr int kDefaultTaylorOrderLimit = 8;

/// Kernel entries as series in x truncated at the box given by `orders`.
TaylorKernel kernel_taylor(const SymplecticGaussian &T, const PhotonPattern &orders,
                           int order_limit = kDefaultTaylorOrderLimit);

/// Series of prod_i (1 - X S X R)_{ii}^{-1/2}.
TaylorScalar diagonal_product_series(const CMat &S, const CMat &R, const std::vector<int> &orders);

}  // namespace ubs
