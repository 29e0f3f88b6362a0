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

#include "ubs/taylor.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "ubs/errors.hpp"

namespace ubs {

struct TaylorScalar::Shape {
    std::vector<int> orders;
    std::vector<size_t> strides;
    size_t size = 1;
    int total = 0;
    // Index pairs (i, j) whose multi-indices add up inside the box; the
    // product lands at i + j because the layout is linear in alpha.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
};

namespace {

std::shared_ptr<const TaylorScalar::Shape> make_shape(const std::vector<int> &orders) {
    static std::mutex mu;
    static std::map<std::vector<int>, std::shared_ptr<const TaylorScalar::Shape>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(orders);
    if (it != cache.end()) return it->second;

    auto s = std::make_shared<TaylorScalar::Shape>();
    s->orders = orders;
    const size_t k = orders.size();
    s->strides.assign(k, 1);
    for (size_t i = k; i-- > 0;) {
        if (orders[i] < 0) throw DomainError("TaylorScalar: negative truncation order");
        s->strides[i] = s->size;
        s->size *= static_cast<size_t>(orders[i] + 1);
        s->total += orders[i];
    }
    if (s->size > (1u << 13)) throw ResourceError("TaylorScalar: box too large");
    std::vector<std::vector<int>> idx(s->size, std::vector<int>(k));
    for (size_t lin = 0; lin < s->size; ++lin) {
        size_t rem = lin;
        for (size_t v = 0; v < k; ++v) {
            idx[lin][v] = static_cast<int>(rem / s->strides[v]);
            rem %= s->strides[v];
        }
    }
    for (size_t i = 0; i < s->size; ++i) {
        for (size_t j = 0; i + j < s->size; ++j) {
            bool ok = true;
            for (size_t v = 0; v < k && ok; ++v) ok = idx[i][v] + idx[j][v] <= orders[v];
            if (ok) s->pairs.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
        }
    }
    cache.emplace(orders, s);
    return s;
}

}  // namespace

TaylorScalar::TaylorScalar(const std::vector<int> &orders, cplx constant)
    : TaylorScalar(make_shape(orders), constant) {}

TaylorScalar::TaylorScalar(std::shared_ptr<const Shape> shape, cplx constant)
    : shape_(std::move(shape)), c_(shape_->size, cplx(0.0)) {
    c_[0] = constant;
}

TaylorScalar TaylorScalar::variable(const std::vector<int> &orders, int var) {
    TaylorScalar t(orders, 0.0);
    if (var < 0 || var >= static_cast<int>(orders.size())) throw ShapeError("TaylorScalar: bad variable index");
    if (orders[static_cast<size_t>(var)] >= 1) t.c_[t.shape_->strides[static_cast<size_t>(var)]] = 1.0;
    return t;
}

int TaylorScalar::variable_count() const { return static_cast<int>(shape_->orders.size()); }
const std::vector<int> &TaylorScalar::orders() const { return shape_->orders; }
int TaylorScalar::total_order() const { return shape_->total; }

cplx TaylorScalar::coefficient(const std::vector<int> &alpha) const {
    if (alpha.size() != shape_->orders.size()) throw ShapeError("TaylorScalar: multi-index length mismatch");
    size_t lin = 0;
    for (size_t v = 0; v < alpha.size(); ++v) {
        if (alpha[v] < 0 || alpha[v] > shape_->orders[v]) throw ShapeError("TaylorScalar: multi-index outside box");
        lin += static_cast<size_t>(alpha[v]) * shape_->strides[v];
    }
    return c_[lin];
}

cplx TaylorScalar::derivative(const std::vector<int> &alpha) const {
    double f = 1.0;
    for (int a : alpha) f *= factorial(a);
    return f * coefficient(alpha);
}

static void require_same_shape(const TaylorScalar &a, const TaylorScalar &b) {
    if (a.shape() != b.shape() && a.orders() != b.orders()) {
        throw ShapeError("TaylorScalar: operands have different truncation boxes");
    }
}

TaylorScalar &TaylorScalar::operator+=(const TaylorScalar &o) {
    require_same_shape(*this, o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

TaylorScalar &TaylorScalar::operator-=(const TaylorScalar &o) {
    require_same_shape(*this, o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

TaylorScalar operator*(const TaylorScalar &a, const TaylorScalar &b) {
    require_same_shape(a, b);
    TaylorScalar r(a.shape_, 0.0);
    const cplx *pa = a.c_.data();
    const cplx *pb = b.c_.data();
    cplx *pr = r.c_.data();
    for (auto [i, j] : a.shape_->pairs) pr[i + j] += pa[i] * pb[j];
    return r;
}

TaylorScalar &TaylorScalar::operator*=(const TaylorScalar &o) {
    *this = *this * o;
    return *this;
}

TaylorScalar &TaylorScalar::operator*=(cplx s) {
    for (auto &v : c_) v *= s;
    return *this;
}

TaylorScalar &TaylorScalar::operator+=(cplx s) {
    c_[0] += s;
    return *this;
}

TaylorScalar TaylorScalar::conj() const {
    TaylorScalar r = *this;
    for (auto &v : r.c_) v = std::conj(v);
    return r;
}

TaylorScalar TaylorScalar::compose_series(const std::vector<cplx> &coeffs) const {
    TaylorScalar u = *this;
    u.c_[0] = 0.0;
    const int K = std::min(static_cast<int>(coeffs.size()) - 1, shape_->total);
    TaylorScalar acc(shape_, K >= 0 ? coeffs[static_cast<size_t>(K)] : cplx(0.0));
    for (int k = K - 1; k >= 0; --k) {
        acc = acc * u;
        acc.c_[0] += coeffs[static_cast<size_t>(k)];
    }
    return acc;
}

TaylorScalar pow(const TaylorScalar &t, double alpha) {
    const cplx c0 = t.constant();
    if (std::abs(c0) == 0.0) throw DomainError("TaylorScalar: power of a series with zero constant term");
    const int N = t.total_order();
    std::vector<cplx> coeffs(static_cast<size_t>(N + 1));
    const cplx base = std::pow(c0, alpha);
    double binom = 1.0;
    for (int k = 0; k <= N; ++k) {
        coeffs[static_cast<size_t>(k)] = base * binom / std::pow(c0, static_cast<double>(k));
        binom *= (alpha - k) / (k + 1.0);
    }
    return t.compose_series(coeffs);
}

TaylorScalar reciprocal(const TaylorScalar &t) {
    const cplx c0 = t.constant();
    if (std::abs(c0) == 0.0) throw DomainError("TaylorScalar: reciprocal of a series with zero constant term");
    const int N = t.total_order();
    std::vector<cplx> coeffs(static_cast<size_t>(N + 1));
    cplx p = 1.0 / c0;
    for (int k = 0; k <= N; ++k) {
        coeffs[static_cast<size_t>(k)] = p;
        p *= -1.0 / c0;
    }
    return t.compose_series(coeffs);
}

TaylorScalar sqrt(const TaylorScalar &t) { return pow(t, 0.5); }

TaylorScalar exp(const TaylorScalar &t) {
    const int N = t.total_order();
    std::vector<cplx> coeffs(static_cast<size_t>(N + 1));
    const cplx e = std::exp(t.constant());
    for (int k = 0; k <= N; ++k) coeffs[static_cast<size_t>(k)] = e / factorial(k);
    return t.compose_series(coeffs);
}

TaylorMatrix::TaylorMatrix(int r, int c, const TaylorScalar &fill)
    : rows(r), cols(c), a(static_cast<size_t>(r * c), fill) {}

TaylorMatrix TaylorMatrix::constant(const CMat &m, const std::vector<int> &orders) {
    TaylorScalar z(orders, 0.0);
    TaylorMatrix t(static_cast<int>(m.rows()), static_cast<int>(m.cols()), z);
    for (int i = 0; i < t.rows; ++i)
        for (int j = 0; j < t.cols; ++j) t(i, j) = z.constant_like(m(i, j));
    return t;
}

TaylorMatrix TaylorMatrix::transpose() const {
    TaylorMatrix t(cols, rows, a.front());
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

TaylorMatrix TaylorMatrix::conj() const {
    TaylorMatrix t = *this;
    for (auto &v : t.a) v = v.conj();
    return t;
}

CMat TaylorMatrix::constant_part() const {
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = (*this)(i, j).constant();
    return m;
}

CMat TaylorMatrix::coefficient(const std::vector<int> &alpha) const {
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = (*this)(i, j).coefficient(alpha);
    return m;
}

TaylorMatrix operator*(const TaylorMatrix &x, const TaylorMatrix &y) {
    if (x.cols != y.rows) throw ShapeError("TaylorMatrix: product shape mismatch");
    TaylorMatrix r(x.rows, y.cols, x.a.front().zero_like());
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k)
            for (int j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
    return r;
}

TaylorMatrix operator*(const CMat &x, const TaylorMatrix &y) {
    if (x.cols() != y.rows) throw ShapeError("TaylorMatrix: product shape mismatch");
    TaylorMatrix r(static_cast<int>(x.rows()), y.cols, y.a.front().zero_like());
    for (int i = 0; i < r.rows; ++i)
        for (int k = 0; k < y.rows; ++k) {
            if (x(i, k) == cplx(0.0)) continue;
            for (int j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
        }
    return r;
}

TaylorMatrix operator*(const TaylorMatrix &x, const CMat &y) {
    if (x.cols != y.rows()) throw ShapeError("TaylorMatrix: product shape mismatch");
    TaylorMatrix r(x.rows, static_cast<int>(y.cols()), x.a.front().zero_like());
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k)
            for (int j = 0; j < r.cols; ++j) {
                if (y(k, j) == cplx(0.0)) continue;
                r(i, j) += x(i, k) * y(k, j);
            }
    return r;
}

TaylorMatrix operator+(const TaylorMatrix &x, const TaylorMatrix &y) {
    if (x.rows != y.rows || x.cols != y.cols) throw ShapeError("TaylorMatrix: sum shape mismatch");
    TaylorMatrix r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

TaylorMatrix operator-(const TaylorMatrix &x, const TaylorMatrix &y) {
    if (x.rows != y.rows || x.cols != y.cols) throw ShapeError("TaylorMatrix: difference shape mismatch");
    TaylorMatrix r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

TaylorLU::TaylorLU(const TaylorMatrix &m) : lu(m) {
    if (m.rows != m.cols) throw ShapeError("TaylorLU: matrix must be square");
    const int n = m.rows;
    perm.resize(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    double scale = 0.0;
    for (const auto &v : m.a) scale = std::max(scale, std::abs(v.constant()));
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(lu(k, k).constant());
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(lu(i, k).constant());
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best <= 1e-14 * std::max(1.0, scale)) {
            throw SingularKernelError("TaylorLU: matrix is singular at the expansion point", k);
        }
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
            std::swap(perm[static_cast<size_t>(k)], perm[static_cast<size_t>(p)]);
            sign = -sign;
        }
        const TaylorScalar inv = reciprocal(lu(k, k));
        for (int i = k + 1; i < n; ++i) {
            lu(i, k) = lu(i, k) * inv;
            for (int j = k + 1; j < n; ++j) lu(i, j) -= lu(i, k) * lu(k, j);
        }
    }
}

TaylorScalar TaylorLU::determinant() const {
    TaylorScalar d = lu.a.front().constant_like(static_cast<double>(sign));
    for (int k = 0; k < lu.rows; ++k) d = d * lu(k, k);
    return d;
}

TaylorMatrix TaylorLU::inverse() const {
    const int n = lu.rows;
    const TaylorScalar zero = lu.a.front().zero_like();
    TaylorMatrix inv(n, n, zero);
    std::vector<TaylorScalar> diag_inv;
    for (int k = 0; k < n; ++k) diag_inv.push_back(reciprocal(lu(k, k)));
    for (int col = 0; col < n; ++col) {
        std::vector<TaylorScalar> y(static_cast<size_t>(n), zero);
        for (int i = 0; i < n; ++i) {
            TaylorScalar s = zero.constant_like(perm[static_cast<size_t>(i)] == col ? 1.0 : 0.0);
            for (int j = 0; j < i; ++j) s -= lu(i, j) * y[static_cast<size_t>(j)];
            y[static_cast<size_t>(i)] = s;
        }
        for (int i = n - 1; i >= 0; --i) {
            TaylorScalar s = y[static_cast<size_t>(i)];
            for (int j = i + 1; j < n; ++j) s -= lu(i, j) * inv(j, col);
            inv(i, col) = s * diag_inv[static_cast<size_t>(i)];
        }
    }
    return inv;
}

}  // namespace ubs
