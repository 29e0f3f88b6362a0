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

#include <memory>
#include <vector>

#include "ubs/types.hpp"

namespace ubs {

/**
 * @brief Truncated multivariate power series in x_1..x_k.
 *
 * Coefficients live on the box 0 <= alpha_i <= n_i (row-major, last
 * variable fastest). Products drop every monomial leaving the box, so
 * coefficient(alpha) is exact for every alpha inside it.
 */
class TaylorScalar {
public:
    struct Shape;

    TaylorScalar() = default;
    explicit TaylorScalar(const std::vector<int> &orders, cplx constant = 0.0);
    TaylorScalar(std::shared_ptr<const Shape> shape, cplx constant);

    /// The series of x_var on the given box.
    static TaylorScalar variable(const std::vector<int> &orders, int var);

    int variable_count() const;
    const std::vector<int> &orders() const;
    size_t size() const { return c_.size(); }
    const std::shared_ptr<const Shape> &shape() const { return shape_; }

    cplx constant() const { return c_.empty() ? cplx(0.0) : c_[0]; }
    cplx coefficient(const std::vector<int> &alpha) const;
    /// alpha! * coefficient(alpha).
    cplx derivative(const std::vector<int> &alpha) const;
    /// Coefficient at the top corner of the box.
    cplx top_coefficient() const { return c_.back(); }
    const std::vector<cplx> &coefficients() const { return c_; }
    std::vector<cplx> &coefficients() { return c_; }

    TaylorScalar zero_like() const { return {shape_, 0.0}; }
    TaylorScalar constant_like(cplx v) const { return {shape_, v}; }

    TaylorScalar &operator+=(const TaylorScalar &o);
    TaylorScalar &operator-=(const TaylorScalar &o);
    TaylorScalar &operator*=(const TaylorScalar &o);
    TaylorScalar &operator*=(cplx s);
    TaylorScalar &operator+=(cplx s);

    friend TaylorScalar operator+(TaylorScalar a, const TaylorScalar &b) { return a += b; }
    friend TaylorScalar operator-(TaylorScalar a, const TaylorScalar &b) { return a -= b; }
    friend TaylorScalar operator*(const TaylorScalar &a, const TaylorScalar &b);
    friend TaylorScalar operator*(TaylorScalar a, cplx s) { return a *= s; }
    friend TaylorScalar operator*(cplx s, TaylorScalar a) { return a *= s; }
    friend TaylorScalar operator+(TaylorScalar a, cplx s) { return a += s; }
    friend TaylorScalar operator-(TaylorScalar a) { return a *= cplx(-1.0); }

    /// Coefficientwise complex conjugation (x stays real).
    TaylorScalar conj() const;

    /// f(c0 + u) = sum_k coeffs[k] u^k for the nilpotent part u.
    TaylorScalar compose_series(const std::vector<cplx> &coeffs) const;
    int total_order() const;

private:
    std::shared_ptr<const Shape> shape_;
    std::vector<cplx> c_;
};

TaylorScalar reciprocal(const TaylorScalar &t);
TaylorScalar sqrt(const TaylorScalar &t);
TaylorScalar exp(const TaylorScalar &t);
/// t^alpha through the principal branch of the constant term.
TaylorScalar pow(const TaylorScalar &t, double alpha);

/// Dense row-major matrix of series sharing one shape.
struct TaylorMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<TaylorScalar> a;

    TaylorMatrix() = default;
    TaylorMatrix(int r, int c, const TaylorScalar &fill);
    static TaylorMatrix constant(const CMat &m, const std::vector<int> &orders);

    TaylorScalar &operator()(int i, int j) { return a[static_cast<size_t>(i * cols + j)]; }
    const TaylorScalar &operator()(int i, int j) const { return a[static_cast<size_t>(i * cols + j)]; }

    TaylorMatrix transpose() const;
    TaylorMatrix conj() const;
    CMat constant_part() const;
    /// Coefficient of x^alpha in every entry.
    CMat coefficient(const std::vector<int> &alpha) const;
};

TaylorMatrix operator*(const TaylorMatrix &a, const TaylorMatrix &b);
TaylorMatrix operator+(const TaylorMatrix &a, const TaylorMatrix &b);
TaylorMatrix operator-(const TaylorMatrix &a, const TaylorMatrix &b);
TaylorMatrix operator*(const CMat &a, const TaylorMatrix &b);
TaylorMatrix operator*(const TaylorMatrix &a, const CMat &b);

/// LU with partial pivoting on |constant term|; throws SingularKernelError.
struct TaylorLU {
    TaylorMatrix lu;
    std::vector<int> perm;
    int sign = 1;

    explicit TaylorLU(const TaylorMatrix &m);
    TaylorScalar determinant() const;
    TaylorMatrix inverse() const;
};

}  // namespace ubs
