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

#include <cstddef>
#include <vector>

#include "ubs/symplectic.hpp"

namespace ubs {

/// (c+1)^M occupation basis, row-major with mode 0 slowest.
struct FockBasis {
    int mode_count = 0;
    int cutoff = 0;

    std::size_t dimension() const;
    std::size_t index(const PhotonPattern &p) const;
    PhotonPattern pattern(std::size_t index) const;
};

struct TruncatedUnitary {
    CMat matrix;
    FockBasis basis;
    double tail_estimate = 0.0;  // largest weight reaching the top shell from a low-photon column
};

constexpr std::size_t kOracleDimensionLimit = 4096;

/// exp(i H^) on the truncated space, H^ = a^dag H a normal ordered.
TruncatedUnitary truncated_unitary(const HamiltonianCoeffs &H, const FockBasis &basis,
                                   std::size_t limit = kOracleDimensionLimit);

struct OracleResult {
    double value = 0.0;
    double tail_bound = 0.0;
    int cutoff = 0;
};

struct OracleAmplitude {
    cplx value = 0.0;
    double tail_bound = 0.0;
    int cutoff = 0;
};

/**
 * @brief <m| T^ |n> via the factorization T^ = L^ S^ R^ (Bloch-Messiah).
 *
 * Interferometers act exactly on fixed-photon-number sectors; each
 * single-mode squeezer is exponentiated on its own truncated space of
 * size `cutoff` + 1. cutoff < 0 picks it from the squeezing strength.
 */
OracleAmplitude oracle_amplitude(const SymplecticGaussian &T, const PhotonPattern &input,
                                 const PhotonPattern &output, int cutoff = -1);

OracleResult oracle_probability(const SymplecticGaussian &T, const PhotonPattern &input,
                                const PhotonPattern &output, int cutoff = -1);

struct OracleMoment {
    cplx value = 0.0;
    double tail_bound = 0.0;
    int cutoff = 0;
};

/// <psi| a^k a^dag^l |psi> for psi = T^ |n>, per-mode box cutoff.
OracleMoment oracle_moment(const SymplecticGaussian &T, const PhotonPattern &input, const PhotonPattern &k,
                           const PhotonPattern &l, int cutoff = -1);

/// Matrix of an interferometer on the N-photon sector (basis: patterns_with_total order).
CMat interferometer_sector(const CMat &W, int photons);

/// Single-mode Gaussian [[u, v], [conj v, u]] on a truncated space of size cutoff + 1.
CMat single_mode_operator(double u, cplx v, int cutoff);

}  // namespace ubs
