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
#include <string>
#include <utility>
#include <vector>

#include "ubs/symplectic.hpp"

namespace ubs {

struct TransitionSpec {
    SymplecticGaussian transform;
    PhotonPattern input;
    PhotonPattern output;
};

struct ProbabilityOptions {
    int photon_limit = 10;        // bound on input.total() + output.total()
    double imag_tolerance = 1e-8;
    bool parity_shortcut = true;  // false: evaluate forbidden transitions in full (timing)
};

/// Parity rule: odd total-photon difference gives exactly zero.
bool parity_forbidden(const PhotonPattern &in, const PhotonPattern &out);

/// Turns a raw complex value into a probability (imaginary residue and dust checks).
double finalize_probability(cplx value, double imag_tolerance);

/// Taylor backend: exact x-derivatives of prefactor * Haf(Gdet selected by the output).
double ubs_probability(const TransitionSpec &spec, const ProbabilityOptions &opt = {});

struct HafnianBackendStats {
    std::uint64_t partitions = 0;      // set partitions visited in the chain rule
    std::uint64_t prefactor_terms = 0; // even subsets beta of the input modes
};

/// Hafnian backend for single-photon patterns, N <= 6.
double ubs_probability_hafnian(const TransitionSpec &spec, HafnianBackendStats *stats = nullptr,
                               bool parity_shortcut = true);

/// |Perm(U[out, in])|^2 / (n! m!) with repeated rows and columns.
double sbs_probability(const CMat &U, const PhotonPattern &input, const PhotonPattern &output);

double gbs_probability(const SymplecticGaussian &T, const PhotonPattern &output);

/// |d^beta prod_i (1 - X S X R)_ii^{-1/2}|_0 - Haf((S o R)_beta)|.
double verify_hafnian_identity(const CMat &S, const CMat &R, const std::vector<int> &beta);

enum class Backend { Taylor, Hafnian, Oracle };
Backend parse_backend(const std::string &name);
std::string backend_name(Backend b);

double transition_probability(const TransitionSpec &spec, Backend backend);

constexpr std::uint64_t kDistributionLimit = 20000;

std::vector<std::pair<PhotonPattern, double>> enumerate_distribution(
    const SymplecticGaussian &T, const PhotonPattern &input, int total_out,
    Backend backend = Backend::Taylor, std::uint64_t limit = kDistributionLimit);

struct DistanceSample {
    double squeezing_db = 0.0;
    double d_P = 0.0;
    double d_H = 0.0;
    double p_ubs = 0.0;
    double p_sbs = 0.0;
    double p_gbs = 0.0;
};

/// d_P = |UBS - SBS(U_only)|, d_H = |UBS - GBS(T)|.
DistanceSample distance_pair(const SymplecticGaussian &T, const CMat &U_only, const PhotonPattern &input,
                             const PhotonPattern &output);

}  // namespace ubs
