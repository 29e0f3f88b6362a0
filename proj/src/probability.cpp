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

#include "ubs/probability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "ubs/combinatorics.hpp"
#include "ubs/errors.hpp"
#include "ubs/fock_oracle.hpp"
#include "ubs/generating.hpp"
#include "ubs/parallel.hpp"

namespace ubs {

bool parity_forbidden(const PhotonPattern &in, const PhotonPattern &out) {
    return (in.total() - out.total()) % 2 != 0;
}

double finalize_probability(cplx value, double imag_tolerance) {
    if (std::abs(value.imag()) > imag_tolerance * std::max(1.0, std::abs(value.real()))) {
        throw IntegrityError("probability has imaginary residue " + std::to_string(value.imag()));
    }
    double p = value.real();
    if (p < 0.0) {
        if (p > -1e-12) return 0.0;
        throw IntegrityError("probability is negative beyond numerical dust: " + std::to_string(p));
    }
    if (p > 1.0) {
        if (p < 1.0 + 1e-10) return 1.0;
        throw IntegrityError("probability exceeds one: " + std::to_string(p));
    }
    return p;
}

static void check_patterns(const TransitionSpec &spec) {
    const int M = spec.transform.mode_count;
    if (spec.input.modes() != M || spec.output.modes() != M) {
        throw ShapeError("photon pattern length differs from mode count");
    }
}

double ubs_probability(const TransitionSpec &spec, const ProbabilityOptions &opt) {
    check_patterns(spec);
    if (opt.parity_shortcut && parity_forbidden(spec.input, spec.output)) return 0.0;
    if (spec.input.total() + spec.output.total() > opt.photon_limit) {
        throw ResourceError("ubs_probability: photon count exceeds limit");
    }
    const TaylorKernel k = kernel_taylor(spec.transform, spec.input, std::max(opt.photon_limit, spec.input.total()));
    const TaylorMatrix G = k.Gdet();
    const std::vector<int> sel = selection_indices(spec.output);
    const TaylorScalar zero = k.prefactor.zero_like();
    const TaylorScalar haf = hafnian_generic<TaylorScalar>(
        static_cast<int>(sel.size()),
        [&](int i, int j) { return G(sel[static_cast<size_t>(i)], sel[static_cast<size_t>(j)]); },
        zero, zero.constant_like(1.0));
    const TaylorScalar f = k.prefactor * haf;
    const cplx value = f.top_coefficient() / spec.output.factorial();
    return finalize_probability(value, opt.imag_tolerance);
}

namespace {

// x-derivatives at 0 of single kernel entries, expanded as sums over
// orderings of the differentiated modes (geometric series of K^{-1}).
class EntryDerivatives {
public:
    explicit EntryDerivatives(const SymplecticGaussian &T)
        : M_(T.mode_count) {
        const CMat Ui = T.U.inverse();
        W_ = Ui * T.V;
        Wb_ = W_.conjugate();
        Uit_ = Ui.transpose();
        Ui_ = Ui;
        Uibt_ = Ui.conjugate().transpose();
        Uib_ = Ui.conjugate();
        A0_ = T.V.conjugate() * Ui;
        Ab0_ = T.V * Ui.conjugate();
    }

    cplx operator()(int ku, int kv, const std::vector<int> &modes) const {
        const bool odd = modes.size() % 2 == 1;
        if (ku < M_ && kv < M_) {
            if (modes.empty()) return A0_(ku, kv);
            if (odd) return 0.0;
            return -paths(Uit_, ku, Wb_, W_, Ui_, kv, modes);
        }
        if (ku >= M_ && kv >= M_) {
            if (modes.empty()) return Ab0_(ku - M_, kv - M_);
            if (odd) return 0.0;
            return -paths(Uibt_, ku - M_, W_, Wb_, Uib_, kv - M_, modes);
        }
        if (!odd) return 0.0;
        if (ku < M_) return paths(Uit_, ku, Wb_, W_, Uib_, kv - M_, modes);
        return paths(Uit_, kv, Wb_, W_, Uib_, ku - M_, modes);
    }

private:
    static cplx paths(const CMat &left, int i, const CMat &first, const CMat &second, const CMat &right, int j,
                      std::vector<int> modes) {
        std::sort(modes.begin(), modes.end());
        cplx sum = 0.0;
        do {
            cplx p = left(i, modes.front());
            for (size_t t = 1; t < modes.size(); ++t) {
                const CMat &link = (t % 2 == 1) ? first : second;
                p *= link(modes[t - 1], modes[t]);
            }
            p *= right(modes.back(), j);
            sum += p;
        } while (std::next_permutation(modes.begin(), modes.end()));
        return sum;
    }

    int M_;
    CMat W_, Wb_, Uit_, Ui_, Uibt_, Uib_, A0_, Ab0_;
};

}  // namespace

double ubs_probability_hafnian(const TransitionSpec &spec, HafnianBackendStats *stats, bool parity_shortcut) {
    check_patterns(spec);
    if (!spec.input.single_photon() || !spec.output.single_photon()) {
        throw UnsupportedPatternError("hafnian backend supports single-photon patterns only");
    }
    if (spec.input.total() > 6 || spec.output.total() > 6) {
        throw ResourceError("hafnian backend limited to 6 photons per side");
    }
    if (parity_shortcut && parity_forbidden(spec.input, spec.output)) return 0.0;
    const SymplecticGaussian &T = spec.transform;
    const int M = T.mode_count;

    std::vector<int> in_modes;
    for (int j = 0; j < M; ++j)
        if (spec.input[j] == 1) in_modes.push_back(j);
    const std::vector<int> sel = selection_indices(spec.output);
    const int nv = static_cast<int>(sel.size());

    const EntryDerivatives deriv(T);
    const CMat W = T.U.inverse() * T.V;
    const CMat Wb = W.conjugate();

    CMat E0(nv, nv);
    for (int u = 0; u < nv; ++u)
        for (int v = 0; v < nv; ++v) E0(u, v) = deriv(sel[static_cast<size_t>(u)], sel[static_cast<size_t>(v)], {});

    std::map<std::uint32_t, cplx> haf_memo;
    auto haf_rest = [&](std::uint32_t unused) -> cplx {
        auto it = haf_memo.find(unused);
        if (it != haf_memo.end()) return it->second;
        std::vector<int> idx;
        for (int v = 0; v < nv; ++v)
            if (unused & (1u << v)) idx.push_back(v);
        const cplx h = hafnian_generic<cplx>(
            static_cast<int>(idx.size()),
            [&](int a, int b) { return E0(idx[static_cast<size_t>(a)], idx[static_cast<size_t>(b)]); }, 0.0, 1.0);
        haf_memo.emplace(unused, h);
        return h;
    };

    HafnianBackendStats st;
    const int nin = static_cast<int>(in_modes.size());
    cplx total = 0.0;
    for (std::uint32_t bmask = 0; bmask < (1u << nin); ++bmask) {
        if (__builtin_popcount(bmask) % 2) continue;
        std::vector<int> beta, rest;
        for (int t = 0; t < nin; ++t) ((bmask >> t) & 1u ? beta : rest).push_back(in_modes[static_cast<size_t>(t)]);
        const cplx pf = hafnian(select_indices(Wb, beta)) * hafnian(select_indices(W, beta));
        ++st.prefactor_terms;
        if (pf == cplx(0.0)) continue;

        // Chain rule over set partitions of the remaining derivative modes.
        cplx chain = 0.0;
        const auto parts = enumerate_partitions(static_cast<int>(rest.size()));
        for (const auto &rgs : parts) {
            ++st.partitions;
            std::vector<std::vector<int>> blocks;
            for (const auto &b : partition_blocks(rgs)) {
                std::vector<int> mb;
                for (int t : b) mb.push_back(rest[static_cast<size_t>(t)]);
                blocks.push_back(mb);
            }
            if (2 * static_cast<int>(blocks.size()) > nv) continue;
            std::function<cplx(size_t, std::uint32_t)> assign = [&](size_t t, std::uint32_t unused) -> cplx {
                if (t == blocks.size()) return haf_rest(unused);
                cplx s = 0.0;
                for (int u = 0; u < nv; ++u) {
                    if (!(unused & (1u << u))) continue;
                    for (int v = u + 1; v < nv; ++v) {
                        if (!(unused & (1u << v))) continue;
                        const cplx d = deriv(sel[static_cast<size_t>(u)], sel[static_cast<size_t>(v)], blocks[t]);
                        if (d == cplx(0.0)) continue;
                        s += d * assign(t + 1, unused & ~(1u << u) & ~(1u << v));
                    }
                }
                return s;
            };
            const std::uint32_t all = nv == 0 ? 0u : ((1u << nv) - 1u);
            chain += assign(0, all);
        }
        total += pf * chain;
    }
    if (stats) *stats = st;
    const cplx value = total / std::abs(T.U.determinant()) / spec.output.factorial();
    return finalize_probability(value, 1e-8);
}

double sbs_probability(const CMat &U, const PhotonPattern &input, const PhotonPattern &output) {
    if (input.modes() != U.cols() || output.modes() != U.rows()) throw ShapeError("sbs_probability: shape mismatch");
    if (input.total() != output.total()) return 0.0;
    std::vector<int> rows, cols;
    for (int j = 0; j < output.modes(); ++j)
        for (int k = 0; k < output[j]; ++k) rows.push_back(j);
    for (int j = 0; j < input.modes(); ++j)
        for (int k = 0; k < input[j]; ++k) cols.push_back(j);
    CMat S(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < cols.size(); ++c) S(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = U(rows[r], cols[c]);
    return std::norm(permanent(S)) / (input.factorial() * output.factorial());
}

double gbs_probability(const SymplecticGaussian &T, const PhotonPattern &output) {
    if (output.modes() != T.mode_count) throw ShapeError("gbs_probability: pattern length mismatch");
    if (output.total() % 2) return 0.0;
    const GeneratingKernel k = kernel_at(T, RVec::Zero(T.mode_count));
    const cplx value = k.prefactor * hafnian(select_submatrix(k.Gdet(), output)) / output.factorial();
    return finalize_probability(value, 1e-8);
}

double verify_hafnian_identity(const CMat &S, const CMat &R, const std::vector<int> &beta) {
    const int M = static_cast<int>(S.rows());
    std::vector<int> orders(static_cast<size_t>(M), 0);
    for (int b : beta) {
        if (b < 0 || b >= M) throw ShapeError("verify_hafnian_identity: index out of range");
        if (orders[static_cast<size_t>(b)]) throw DomainError("verify_hafnian_identity: repeated index");
        orders[static_cast<size_t>(b)] = 1;
    }
    if (beta.size() > 8) throw ResourceError("verify_hafnian_identity: |beta| > 8");
    const TaylorScalar lhs_series = diagonal_product_series(S, R, orders);
    const cplx lhs = lhs_series.top_coefficient();
    const CMat SR = S.cwiseProduct(R);
    const cplx rhs = beta.size() % 2 ? cplx(0.0) : hafnian(select_indices(SR, beta));
    return std::abs(lhs - rhs);
}

Backend parse_backend(const std::string &name) {
    if (name == "taylor") return Backend::Taylor;
    if (name == "hafnian") return Backend::Hafnian;
    if (name == "oracle") return Backend::Oracle;
    throw DomainError("unknown backend '" + name + "'");
}

std::string backend_name(Backend b) {
    switch (b) {
    case Backend::Taylor: return "taylor";
    case Backend::Hafnian: return "hafnian";
    case Backend::Oracle: return "oracle";
    }
    return "?";
}

double transition_probability(const TransitionSpec &spec, Backend backend) {
    switch (backend) {
    case Backend::Taylor: return ubs_probability(spec);
    case Backend::Hafnian: return ubs_probability_hafnian(spec);
    case Backend::Oracle: return oracle_probability(spec.transform, spec.input, spec.output).value;
    }
    return 0.0;
}

std::vector<std::pair<PhotonPattern, double>> enumerate_distribution(const SymplecticGaussian &T,
                                                                     const PhotonPattern &input, int total_out,
                                                                     Backend backend, std::uint64_t limit) {
    if (total_out < 0) throw DomainError("enumerate_distribution: negative photon number");
    if (multichoose(T.mode_count, total_out) > limit) throw ResourceError("enumerate_distribution: too many patterns");
    const auto patterns = patterns_with_total(T.mode_count, total_out);
    std::vector<std::pair<PhotonPattern, double>> out(patterns.size());
    parallel_for(patterns.size(), [&](size_t i) {
        out[i] = {patterns[i], transition_probability({T, input, patterns[i]}, backend)};
    });
    return out;
}

DistanceSample distance_pair(const SymplecticGaussian &T, const CMat &U_only, const PhotonPattern &input,
                             const PhotonPattern &output) {
    if (!input.single_photon() || !output.single_photon()) {
        throw UnsupportedPatternError("distance_pair expects single-photon patterns");
    }
    DistanceSample s;
    s.p_ubs = ubs_probability({T, input, output});
    s.p_sbs = sbs_probability(U_only, input, output);
    s.p_gbs = gbs_probability(T, output);
    s.d_P = std::abs(s.p_ubs - s.p_sbs);
    s.d_H = std::abs(s.p_ubs - s.p_gbs);
    return s;
}

}  // namespace ubs
