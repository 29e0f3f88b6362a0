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
#include <vector>

#include "json.hpp"

#include "ubs/types.hpp"

namespace ubs {

/// dB to squeezing parameter: r = zeta * kDbToR (zeta = 10 log10(e^{2r})).
extern double kDbToR;

constexpr double kSymplecticTol = 1e-10;

/**
 * @brief Gaussian transformation T = [[U, V], [conj(V), conj(U)]] acting as
 * T^dag a T = T a on the vector (a_1..a_M, a_1^dag..a_M^dag).
 */
struct SymplecticGaussian {
    int mode_count = 0;
    CMat U;
    CMat V;

    SymplecticGaussian() = default;
    SymplecticGaussian(CMat u, CMat v);

    static SymplecticGaussian identity(int M);
    static SymplecticGaussian interferometer(const CMat &W);
    /// Single-mode squeezers with U = diag(cosh r), V = diag(sinh r).
    static SymplecticGaussian squeezers(const RVec &r);
    static SymplecticGaussian from_full(const CMat &T);

    CMat full() const;
};

struct ValidationReport {
    bool pass = false;
    double residual_norm = 0.0;      // ||U U^dag - V V^dag - 1||
    double residual_symmetry = 0.0;  // ||U V^T - V U^T||
};

ValidationReport validate_symplectic(const CMat &U, const CMat &V);

/// Throws ValidationError when the transform is not symplectic.
void require_symplectic(const SymplecticGaussian &T);

/// Applies `first`, then `second`: the result is second * first.
SymplecticGaussian compose(const SymplecticGaussian &first, const SymplecticGaussian &second);

struct BlochMessiahFactors {
    CMat L;
    CMat R;
    RVec sigma_u;
    CVec sigma_v;

    /// L S R with S = [[diag(sigma_u), diag(sigma_v)], [conj, conj]].
    SymplecticGaussian reconstruct() const;
};

BlochMessiahFactors bloch_messiah(const SymplecticGaussian &T);

CMat haar_unitary(int M, std::uint64_t seed);

struct CircuitSpec {
    int mode_count = 0;
    std::vector<double> squeezing_db;
    std::string interferometer_type = "haar";  // "haar" | "explicit" | "identity"
    std::uint64_t seed = 0;
    CMat explicit_unitary;
    std::string scenario = "custom";

    CMat interferometer() const;
    int squeezed_modes() const;
};

void to_json(nlohmann::json &j, const CircuitSpec &spec);
void from_json(const nlohmann::json &j, CircuitSpec &spec);
CircuitSpec load_circuit_spec(const std::string &path);

/// Squeezers first, interferometer second.
SymplecticGaussian build_circuit_transform(const CircuitSpec &spec);

/// Hermitian H with T^ = exp(i a^dag H a) for a = (a, a^dag), a^dag = (a^dag, a).
struct HamiltonianCoeffs {
    CMat H;
    int modes() const { return static_cast<int>(H.rows() / 2); }
};

HamiltonianCoeffs hamiltonian_coeffs(const SymplecticGaussian &T);

/// Inverse map: T = exp(2 i Kd H), Kd = diag(1, -1).
SymplecticGaussian transform_from_hamiltonian(const HamiltonianCoeffs &h);

}  // namespace ubs
