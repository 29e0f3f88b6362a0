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

#include "ubs/combinatorics.hpp"

#include <cmath>

namespace ubs {

static void check_symmetric(const CMat &S) {
    if (S.rows() != S.cols()) throw ShapeError("hafnian: matrix must be square");
    if ((S - S.transpose()).norm() > 1e-10 * std::max(1.0, S.norm())) {
        throw DomainError("hafnian: matrix is not symmetric");
    }
}

cplx hafnian(const CMat &S) {
    check_symmetric(S);
    const int n = static_cast<int>(S.rows());
    return hafnian_generic<cplx>(n, [&](int i, int j) { return S(i, j); }, cplx(0.0), cplx(1.0));
}

std::uint64_t for_each_perfect_matching(
    int n, const std::function<void(const std::vector<std::pair<int, int>> &)> &visit) {
    if (n % 2 != 0) return 0;
    std::vector<std::pair<int, int>> pairs;
    std::vector<char> used(static_cast<size_t>(n), 0);
    std::uint64_t count = 0;
    std::function<void()> rec = [&]() {
        int i = 0;
        while (i < n && used[static_cast<size_t>(i)]) ++i;
        if (i == n) {
            ++count;
            visit(pairs);
            return;
        }
        used[static_cast<size_t>(i)] = 1;
        for (int j = i + 1; j < n; ++j) {
            if (used[static_cast<size_t>(j)]) continue;
            used[static_cast<size_t>(j)] = 1;
            pairs.emplace_back(i, j);
            rec();
            pairs.pop_back();
            used[static_cast<size_t>(j)] = 0;
        }
        used[static_cast<size_t>(i)] = 0;
    };
    rec();
    return count;
}

cplx hafnian_enumerate(const CMat &S, std::uint64_t *matchings) {
    check_symmetric(S);
    const int n = static_cast<int>(S.rows());
    cplx sum = 0.0;
    std::uint64_t c = for_each_perfect_matching(n, [&](const std::vector<std::pair<int, int>> &p) {
        cplx prod = 1.0;
        for (auto [i, j] : p) prod *= S(i, j);
        sum += prod;
    });
    if (matchings) *matchings = c;
    return n % 2 ? cplx(0.0) : sum;
}

double double_factorial(int n) {
    double r = 1.0;
    for (int k = n; k > 1; k -= 2) r *= k;
    return r;
}

cplx permanent(const CMat &A) {
    if (A.rows() != A.cols()) throw ShapeError("permanent: matrix must be square");
    const int n = static_cast<int>(A.rows());
    if (n == 0) return 1.0;
    if (n > 30) throw ResourceError("permanent: matrix too large");
    std::vector<cplx> rowsum(static_cast<size_t>(n), 0.0);
    cplx total = 0.0;
    std::uint64_t gray = 0;
    const std::uint64_t limit = 1ull << n;
    for (std::uint64_t k = 1; k < limit; ++k) {
        const std::uint64_t g = k ^ (k >> 1);
        const std::uint64_t diff = g ^ gray;
        const int col = __builtin_ctzll(diff);
        const double sgn = (g & diff) ? 1.0 : -1.0;
        for (int i = 0; i < n; ++i) rowsum[static_cast<size_t>(i)] += sgn * A(i, col);
        gray = g;
        cplx prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= rowsum[static_cast<size_t>(i)];
        const int bits = __builtin_popcountll(g);
        total += ((n - bits) % 2 ? -1.0 : 1.0) * prod;
    }
    return total;
}

std::vector<std::vector<int>> enumerate_partitions(int n) {
    if (n < 0) throw DomainError("enumerate_partitions: negative size");
    if (n > kMaxPartitionSize) throw ResourceError("enumerate_partitions: n exceeds resource guard");
    std::vector<std::vector<int>> out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> a(static_cast<size_t>(n), 0), mx(static_cast<size_t>(n), 0);
    while (true) {
        out.push_back(a);
        int i = n - 1;
        while (i > 0 && a[static_cast<size_t>(i)] == mx[static_cast<size_t>(i - 1)] + 1) --i;
        if (i == 0) break;
        ++a[static_cast<size_t>(i)];
        mx[static_cast<size_t>(i)] = std::max(mx[static_cast<size_t>(i - 1)], a[static_cast<size_t>(i)]);
        for (int k = i + 1; k < n; ++k) {
            a[static_cast<size_t>(k)] = 0;
            mx[static_cast<size_t>(k)] = mx[static_cast<size_t>(k - 1)];
        }
    }
    return out;
}

std::vector<std::vector<int>> partition_blocks(const std::vector<int> &rgs) {
    std::vector<std::vector<int>> blocks;
    for (size_t i = 0; i < rgs.size(); ++i) {
        const auto b = static_cast<size_t>(rgs[i]);
        if (b >= blocks.size()) blocks.resize(b + 1);
        blocks[b].push_back(static_cast<int>(i));
    }
    return blocks;
}

std::uint64_t bell_number(int n) {
    std::vector<std::uint64_t> row{1};
    for (int i = 0; i < n; ++i) {
        std::vector<std::uint64_t> next{row.back()};
        for (auto v : row) next.push_back(next.back() + v);
        row = next;
    }
    return row.front();
}

std::vector<int> selection_indices(const PhotonPattern &pattern) {
    const int M = pattern.modes();
    std::vector<int> idx;
    for (int j = 0; j < M; ++j)
        for (int k = 0; k < pattern[j]; ++k) idx.push_back(j);
    for (int j = 0; j < M; ++j)
        for (int k = 0; k < pattern[j]; ++k) idx.push_back(j + M);
    return idx;
}

CMat select_indices(const CMat &G, const std::vector<int> &idx) {
    const auto n = static_cast<Eigen::Index>(idx.size());
    CMat S(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            const int i = idx[static_cast<size_t>(r)], j = idx[static_cast<size_t>(c)];
            if (i < 0 || j < 0 || i >= G.rows() || j >= G.cols()) throw ShapeError("selection index out of range");
            S(r, c) = G(i, j);
        }
    }
    return S;
}

CMat select_submatrix(const CMat &G, const PhotonPattern &pattern) {
    if (G.rows() != G.cols() || G.rows() != 2 * pattern.modes()) {
        throw ShapeError("select_submatrix: kernel size does not match pattern");
    }
    return select_indices(G, selection_indices(pattern));
}

RMat hadamard_abs_square(const CMat &W) { return W.cwiseAbs2(); }

}  // namespace ubs
