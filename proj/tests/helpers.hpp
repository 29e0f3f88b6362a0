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
#include <random>

#include "ubs/symplectic.hpp"

namespace ubs::testing {

/// W2 * S(r) * W1 with r drawn uniformly from [0, rmax].
inline SymplecticGaussian random_gaussian(int M, std::uint64_t seed, double rmax = 0.5) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, rmax);
    RVec r(M);
    for (int i = 0; i < M; ++i) r(i) = uni(rng);
    const CMat W1 = haar_unitary(M, rng());
    const CMat W2 = haar_unitary(M, rng());
    return compose(compose(SymplecticGaussian::interferometer(W1), SymplecticGaussian::squeezers(r)),
                   SymplecticGaussian::interferometer(W2));
}

inline CMat random_symmetric(int n, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, scale);
    CMat S(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) S(i, j) = S(j, i) = cplx(g(rng), g(rng));
    return S;
}

inline CMat random_complex(int n, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, scale);
    CMat S(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) S(i, j) = cplx(g(rng), g(rng));
    return S;
}

inline CMat beam_splitter_5050() {
    CMat W(2, 2);
    W << 1.0, cplx(0, 1), cplx(0, 1), 1.0;
    return W / std::sqrt(2.0);
}

}  // namespace ubs::testing
