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

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ubs {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Occupation numbers per mode.
struct PhotonPattern {
    std::vector<int> occupations;

    PhotonPattern() = default;
    explicit PhotonPattern(std::vector<int> occ);
    PhotonPattern(std::initializer_list<int> occ);

    static PhotonPattern zeros(int modes);
    static PhotonPattern parse(const std::string &csv);

    int modes() const { return static_cast<int>(occupations.size()); }
    int total() const;
    int max_occupation() const;
    bool single_photon() const;
    double factorial() const;  // prod_j n_j!
    int operator[](int j) const { return occupations[static_cast<size_t>(j)]; }
    std::string str() const;

    bool operator==(const PhotonPattern &o) const { return occupations == o.occupations; }
    bool operator<(const PhotonPattern &o) const { return occupations < o.occupations; }
};

/// All patterns with `total` photons over `modes` modes, in descending lexicographic order.
std::vector<PhotonPattern> patterns_with_total(int modes, int total);

/// Number of multisets of size `total` from `modes` kinds.
std::uint64_t multichoose(int modes, int total);

double factorial(int n);

}  // namespace ubs
