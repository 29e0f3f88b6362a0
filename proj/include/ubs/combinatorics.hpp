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

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "ubs/errors.hpp"
#include "ubs/types.hpp"

namespace ubs {

/**
 * @brief Hafnian of an n x n symmetric matrix given through an entry accessor.
 *
 * Memoized expansion along the lowest remaining index,
 * haf(S) = sum_j S_{0j} haf(S without 0, j). Works for any ring type T
 * (complex numbers or truncated Taylor series). Odd n gives zero.
 */
template <class T, class Entry>
T hafnian_generic(int n, Entry &&entry, const T &zero, const T &one) {
    if (n % 2 != 0) return zero;
    if (n == 0) return one;
    if (n > 30) throw ResourceError("hafnian: matrix too large");
    std::unordered_map<std::uint32_t, T> memo;
    std::function<T(std::uint32_t)> rec = [&](std::uint32_t mask) -> T {
        if (mask == 0) return one;
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        const int i = __builtin_ctz(mask);
        const std::uint32_t rest = mask & ~(1u << i);
        T acc = zero;
        for (std::uint32_t m = rest; m; m &= m - 1) {
            const int j = __builtin_ctz(m);
            acc += entry(i, j) * rec(rest & ~(1u << j));
        }
        memo.emplace(mask, acc);
        return acc;
    };
    const std::uint32_t full = n == 32 ? 0xffffffffu : ((1u << n) - 1u);
    return rec(full);
}

/// Hafnian by the memoized expansion; symmetry is checked at 1e-10.
cplx hafnian(const CMat &S);

/// Reference hafnian: explicit enumeration of all (n-1)!! perfect matchings.
cplx hafnian_enumerate(const CMat &S, std::uint64_t *matchings = nullptr);

/// Calls `visit(pairs)` for every perfect matching of {0..n-1}; returns the count.
std::uint64_t for_each_perfect_matching(int n, const std::function<void(const std::vector<std::pair<int, int>> &)> &visit);

double double_factorial(int n);

/// Ryser formula with Gray-code updates; the 0 x 0 permanent is 1.
cplx permanent(const CMat &A);

/// Set partitions of {0..n-1} as restricted-growth strings, lexicographic.
std::vector<std::vector<int>> enumerate_partitions(int n);

/// Blocks of the partition encoded by a restricted-growth string.
std::vector<std::vector<int>> partition_blocks(const std::vector<int> &rgs);

std::uint64_t bell_number(int n);

constexpr int kMaxPartitionSize = 12;

/// Indices j (repeated m_j times) followed by j + M (repeated m_j times).
std::vector<int> selection_indices(const PhotonPattern &pattern);

CMat select_submatrix(const CMat &G, const PhotonPattern &pattern);
CMat select_indices(const CMat &G, const std::vector<int> &idx);

RMat hadamard_abs_square(const CMat &W);

}  // namespace ubs
