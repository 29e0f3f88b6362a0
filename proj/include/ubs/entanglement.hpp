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

#include <functional>
#include <string>
#include <vector>

#include "ubs/symplectic.hpp"
#include "ubs/types.hpp"

namespace ubs {

/**
 * @brief Step rule for the central finite-difference path.
 *
 * For n derivatives in total the finest step is h = f^{1/(2+n)} * scale with
 * scale = h_scale_low for n <= 4 and h_scale_high otherwise.
 */
struct FiniteDifferenceConfig {
    double float_precision = 1e-16;
    double h_scale_low = 1.0;
    double h_scale_high = 0.9;
    int richardson_order = 2;  // 2 or 0 (plain central stencil)

    double step(int n) const;
};

constexpr int kMaxFiniteDifferenceOrder = 8;

using RealPointField = std::function<cplx(const RVec &)>;

/**
 * @brief Mixed partial derivative of f at the origin.
 *
 * Each variable uses the nested central stencil with points (2j - o) h,
 * j = 0..o; the tensor product covers all variables. Richardson:
 * (4 D(h) - D(2h)) / 3.
 */
cplx finite_difference_derivative(const RealPointField &f, const std::vector<int> &multi_index,
                                  const FiniteDifferenceConfig &config = {});

/// Expected absolute error of the finite-difference path for n derivatives (n in {2, 4, 6, 8}).
double fd_absolute_error(int n);

enum class MomentBackend { FiniteDifference, Taylor };
MomentBackend parse_moment_backend(const std::string &name);
std::string moment_backend_name(MomentBackend b);

/**
 * @brief <psi| a^k a^dag^l |psi> with psi = T^ |n>.
 *
 * F(x, u, w) = prefactor(x) det(-P G(x))^{-1/2} exp(-v^T G(x)^{-1} v / 2), v = [-u; w],
 * P the block swap; the moment is (-1)^{|k|} d^n_x d^k_u d^l_w F / n! at zero.
 * The Taylor backend evaluates the same expression as an exact series:
 * the x^n coefficient of prefactor det(-P G)^{-1/2} Haf((-G^{-1})_sel).
 * Odd |k| + |l| gives exactly 0.
 */
cplx moment(const SymplecticGaussian &T, const PhotonPattern &input, const PhotonPattern &k, const PhotonPattern &l,
            MomentBackend backend = MomentBackend::FiniteDifference, const FiniteDifferenceConfig &config = {});

/**
 * @brief Normally ordered <psi| a^dag^l a^k |psi>.
 *
 * e^{w a^dag} e^{-u a} = e^{-u a} e^{w a^dag} e^{u w}, so F is multiplied by
 * e^{u w} (the series kernel becomes -G^{-1} - P).
 */
cplx normal_moment(const SymplecticGaussian &T, const PhotonPattern &input, const PhotonPattern &l,
                   const PhotonPattern &k, MomentBackend backend = MomentBackend::FiniteDifference,
                   const FiniteDifferenceConfig &config = {});

/// Party one holds modes 0..d-1, party two d..2d-1.
struct Bipartition {
    int d = 1;

    int modes() const { return 2 * d; }
    bool in_party_one(int mode) const { return mode < d; }
};

/// 2d^2 + d + 1, i.e. [(2d+1)^2 - 2d + 1] / 2.
int moments_matrix_dimension(int d);

/**
 * Operator monomials 1, a_i, a_i a_j (i < j) as exponent tuples.
 * Grade ascending; within a grade tuples are in descending lexicographic order
 * (a_0 before a_1, a_0 a_1 before a_0 a_2).
 */
std::vector<PhotonPattern> moments_monomials(int modes);

struct MomentsMatrix {
    int d = 0;
    bool transposed = false;
    std::vector<PhotonPattern> monomials;
    CMat entries;
    std::vector<char> zero_block;  // row-major; entries coupling odd total order
    int derivative_order = 0;      // largest derivative count over computed entries
    double asymmetry = 0.0;        // max |m - m^dag| before hermitization
    int computed_entries = 0;

    int dimension() const { return static_cast<int>(entries.rows()); }
    bool structural_zero(int i, int j) const { return zero_block[static_cast<size_t>(i * dimension() + j)] != 0; }
    CMat hermitized() const { return 0.5 * (entries + entries.adjoint()); }
};

struct MomentsOptions {
    MomentBackend backend = MomentBackend::FiniteDifference;
    FiniteDifferenceConfig fd;
    unsigned threads = 0;  // 0: UBS_THREADS / hardware
};

/**
 * Entry (i, j) = <m_i^dag m_j> = <a^dag^{e_i} a^{e_j}>, a Gram matrix. With
 * transpose_party_one the exponents of party-one modes are exchanged
 * (e_i <-> e_j) before evaluation.
 * Throws IntegrityError when the asymmetry exceeds 10 eps_abs(n) (finite differences).
 */
MomentsMatrix build_moments_matrix(const SymplecticGaussian &T, const PhotonPattern &input, const Bipartition &part,
                                   bool transpose_party_one, const MomentsOptions &options = {});

struct NegativityResult {
    double log_negativity = 0.0;
    int negative_count = 0;
    double negative_sum = 0.0;  // sum of eigenvalues below -eps_lambda (<= 0)
    RVec eigenvalues;
};

/// log2(2 N + 1), N = |sum of eigenvalues below -eps_lambda| of the hermitized matrix.
NegativityResult log_negativity(const CMat &m, double eps_lambda);
NegativityResult log_negativity(const MomentsMatrix &m, double eps_lambda);

struct ErrorReport {
    int n_derivatives = 0;
    double eps_abs = 0.0;
    double eps_lambda = 0.0;
    double eps_mean_photon = 0.0;
    double eps_log_negativity = 0.0;
    bool reliable = true;  // false when negative eigenvalues sum to (almost) zero
};

/**
 * eps_lambda = eps_abs(n) (2d^2 + d + 1), eps_<n> = eps_abs(n) 2d,
 * eps_logneg = eps_lambda sqrt(negative_eigs) / |neg_sum|.
 */
ErrorReport error_estimate(int n_derivatives, int d, int negative_eigs, double neg_sum);
ErrorReport error_estimate_for_abs(double eps_abs, int d, int negative_eigs, double neg_sum);

/// Nominal absolute error of the Taylor moment backend.
constexpr double kTaylorMomentError = 1e-12;

struct EntanglementReport {
    double mean_photon_number = 0.0;
    NegativityResult negativity;
    ErrorReport errors;
    int derivative_order = 0;
};

/// Moments matrix, its partial transpose, mean photon number and log-negativity.
EntanglementReport analyze_entanglement(const SymplecticGaussian &T, const PhotonPattern &input,
                                        const Bipartition &part, const MomentsOptions &options = {});

}  // namespace ubs
