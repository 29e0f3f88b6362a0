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

#include <string>
#include <vector>

#include "ubs/types.hpp"

namespace ubs {

/**
 * @brief Q = a^dag C a + (1/2) a^dag B a^dag + (1/2) a A a.
 *
 * A and B are stored with the 1/2 convention; the coefficient of the full
 * double sum sum_ij X_ij a_i a_j is X / 2 (see pair_coefficient / pair_form).
 */
struct QuadraticForm {
    CMat A;
    CMat B;
    CMat C;

    static QuadraticForm zero(int M);
    int modes() const { return static_cast<int>(C.rows()); }
    QuadraticForm operator+(const QuadraticForm &o) const;
};

/// Full-double-sum coefficient of a pair term stored as X: X / 2.
CMat pair_coefficient(const CMat &form_matrix);
/// Inverse of pair_coefficient: 2 * coefficient.
CMat pair_form(const CMat &coefficient);

/// Matrix element of the (2M + 2)-dimensional representation.
struct SpRep {
    CMat matrix;
    int modes() const { return static_cast<int>(matrix.rows() / 2 - 1); }
};

/**
 * Block layout on (1, a^dag_1..M, a_M..1, 1):
 *   [[0, 0,     0,        0],
 *    [0, C,     B J,      0],
 *    [0, -J A,  -J C^T J, 0],
 *    [0, 0,     0,        0]]
 * with J the reversal matrix; displacement entries (first column, last row) stay zero.
 */
SpRep embed_quadratic_form(const QuadraticForm &q);

SpRep rep_exponential(const SpRep &x);

enum class ReorderingKind { A, B, C };
ReorderingKind parse_reordering_kind(const std::string &s);

struct ReorderingResidual {
    double representation = 0.0;
    double fock = -1.0;  // kind c only; negative when the truncated space would be too large
    bool pass = false;
};

/**
 * Kind a: e^{aAa/2} e^{a^dag C a} = e^{a^dag C a} e^{a A' a/2}, A' = (e^C)^T A e^C.
 * Kind b: e^{a^dag C a} e^{a^dag B a^dag/2} = e^{a^dag B' a^dag/2} e^{a^dag C a}, B' = e^C B e^{C^T}.
 * Kind c: e^{aAa/2} e^{a^dag B a^dag/2}
 *       = det(1-AB)^{-1/2} e^{a^dag B(1-AB)^{-1} a^dag/2} e^{a^dag E a} e^{a (1-AB)^{-1} A a/2},
 *         e^E = (1 - BA)^{-1}; also checked on a truncated Fock space.
 * `second` is C for kinds a and b and B for kind c.
 * fock_cutoff <= 0 picks a per-mode cutoff from |A| |B| (spectral norms) and skips
 * the Fock comparison when either norm is 0.9 or more, or the space exceeds 20000 states.
 */
ReorderingResidual check_reordering_identity(ReorderingKind kind, const CMat &A, const CMat &second,
                                             int fock_cutoff = 0);

/**
 * Max deviation between e^{left} e^{right} and scale * prod_k e^{factors[k]} on Fock
 * states with at most four photons in total, evaluated on a per-mode truncated space.
 */
double fock_reordering_residual(const QuadraticForm &left, const QuadraticForm &right,
                                const std::vector<QuadraticForm> &factors, cplx scale, int cutoff);

}  // namespace ubs
