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

#include "ubs/types.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ubs/errors.hpp"

namespace ubs {

PhotonPattern::PhotonPattern(std::vector<int> occ) : occupations(std::move(occ)) {
    for (int n : occupations) {
        if (n < 0) throw DomainError("negative occupation in photon pattern");
    }
}

PhotonPattern::PhotonPattern(std::initializer_list<int> occ)
    : PhotonPattern(std::vector<int>(occ)) {}

PhotonPattern PhotonPattern::zeros(int modes) {
    return PhotonPattern(std::vector<int>(static_cast<size_t>(modes), 0));
}

PhotonPattern PhotonPattern::parse(const std::string &csv) {
    std::vector<int> occ;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(item, &pos);
        } catch (const std::exception &) {
            throw DomainError("cannot parse photon pattern '" + csv + "'");
        }
        if (pos != item.size()) throw DomainError("cannot parse photon pattern '" + csv + "'");
        occ.push_back(v);
    }
    return PhotonPattern(occ);
}

int PhotonPattern::total() const {
    return std::accumulate(occupations.begin(), occupations.end(), 0);
}

int PhotonPattern::max_occupation() const {
    return occupations.empty() ? 0 : *std::max_element(occupations.begin(), occupations.end());
}

bool PhotonPattern::single_photon() const { return max_occupation() <= 1; }

double PhotonPattern::factorial() const {
    double f = 1.0;
    for (int n : occupations) f *= ubs::factorial(n);
    return f;
}

std::string PhotonPattern::str() const {
    std::string s;
    for (size_t i = 0; i < occupations.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(occupations[i]);
    }
    return s;
}

static void fill_patterns(int mode, int remaining, std::vector<int> &cur,
                          std::vector<PhotonPattern> &out) {
    const int M = static_cast<int>(cur.size());
    if (mode == M - 1) {
        cur[static_cast<size_t>(mode)] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (int k = remaining; k >= 0; --k) {
        cur[static_cast<size_t>(mode)] = k;
        fill_patterns(mode + 1, remaining - k, cur, out);
    }
}

std::vector<PhotonPattern> patterns_with_total(int modes, int total) {
    std::vector<PhotonPattern> out;
    if (modes <= 0) {
        if (total == 0) out.emplace_back();
        return out;
    }
    std::vector<int> cur(static_cast<size_t>(modes), 0);
    fill_patterns(0, total, cur, out);
    return out;
}

std::uint64_t multichoose(int modes, int total) {
    if (modes <= 0) return total == 0 ? 1 : 0;
    // C(modes + total - 1, total)
    std::uint64_t r = 1;
    for (int i = 1; i <= total; ++i) {
        r = r * static_cast<std::uint64_t>(modes - 1 + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace ubs
