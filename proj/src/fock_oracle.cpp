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

#include "ubs/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <unsupported/Eigen/MatrixFunctions>

#include "ubs/errors.hpp"

namespace ubs {

std::size_t FockBasis::dimension() const {
    std::size_t d = 1;
    for (int i = 0; i < mode_count; ++i) d *= static_cast<std::size_t>(cutoff + 1);
    return d;
}

std::size_t FockBasis::index(const PhotonPattern &p) const {
    if (p.modes() != mode_count) throw ShapeError("FockBasis: pattern length mismatch");
    std::size_t idx = 0;
    for (int i = 0; i < mode_count; ++i) {
        if (p[i] > cutoff) throw ShapeError("FockBasis: occupation above cutoff");
        idx = idx * static_cast<std::size_t>(cutoff + 1) + static_cast<std::size_t>(p[i]);
    }
    return idx;
}

PhotonPattern FockBasis::pattern(std::size_t index) const {
    std::vector<int> occ(static_cast<size_t>(mode_count));
    for (int i = mode_count - 1; i >= 0; --i) {
        occ[static_cast<size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(cutoff + 1));
        index /= static_cast<std::size_t>(cutoff + 1);
    }
    return PhotonPattern(occ);
}

namespace {

struct Ladder {
    int mode;
    bool dagger;
};

// Applies op to |occ> in place; returns the matrix element or 0 if it leaves the space.
double apply_ladder(const Ladder &op, std::vector<int> &occ, int cutoff) {
    int &n = occ[static_cast<size_t>(op.mode)];
    if (op.dagger) {
        if (n + 1 > cutoff) return 0.0;
        ++n;
        return std::sqrt(static_cast<double>(n));
    }
    if (n == 0) return 0.0;
    const double f = std::sqrt(static_cast<double>(n));
    --n;
    return f;
}

}  // namespace

TruncatedUnitary truncated_unitary(const HamiltonianCoeffs &H, const FockBasis &basis, std::size_t limit) {
    const int M = basis.mode_count;
    if (H.modes() != M) throw ShapeError("truncated_unitary: Hamiltonian size differs from basis");
    const std::size_t dim = basis.dimension();
    if (dim > limit) throw ResourceError("truncated_unitary: Fock space dimension exceeds limit");

    // Normal-ordered quadratic form: (first applied last, second applied first).
    struct Term {
        cplx coeff;
        Ladder left;
        Ladder right;
    };
    std::vector<Term> terms;
    cplx constant = 0.0;
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < M; ++j) {
            terms.push_back({H.H(i, j), {i, true}, {j, false}});
            terms.push_back({H.H(i, M + j), {i, true}, {j, true}});
            terms.push_back({H.H(M + i, j), {i, false}, {j, false}});
            terms.push_back({H.H(M + i, M + j), {j, true}, {i, false}});
        }
        constant += H.H(M + i, M + i);
    }

    CMat Hop = CMat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t col = 0; col < dim; ++col) {
        const PhotonPattern p = basis.pattern(col);
        Hop(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(col)) += constant;
        for (const auto &t : terms) {
            if (t.coeff == cplx(0.0)) continue;
            std::vector<int> occ = p.occupations;
            double f = apply_ladder(t.right, occ, basis.cutoff);
            if (f == 0.0) continue;
            f *= apply_ladder(t.left, occ, basis.cutoff);
            if (f == 0.0) continue;
            const std::size_t row = basis.index(PhotonPattern(occ));
            Hop(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += t.coeff * f;
        }
    }
    TruncatedUnitary tu;
    tu.basis = basis;
    tu.matrix = (cplx(0.0, 1.0) * Hop).exp();

    double tail = 0.0;
    for (std::size_t col = 0; col < dim; ++col) {
        if (2 * basis.pattern(col).total() > basis.cutoff) continue;
        double top = 0.0;
        for (std::size_t row = 0; row < dim; ++row) {
            if (basis.pattern(row).max_occupation() == basis.cutoff) {
                top += std::norm(tu.matrix(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)));
            }
        }
        tail = std::max(tail, top);
    }
    tu.tail_estimate = tail;
    return tu;
}

CMat interferometer_sector(const CMat &W, int photons) {
    const int M = static_cast<int>(W.rows());
    const auto basis = patterns_with_total(M, photons);
    std::map<PhotonPattern, Eigen::Index> where;
    for (size_t i = 0; i < basis.size(); ++i) where[basis[i]] = static_cast<Eigen::Index>(i);

    // h = -i log W from the Schur form of the (normal) unitary.
    Eigen::ComplexSchur<CMat> schur(W);
    const CMat Q = schur.matrixU();
    CVec theta(M);
    for (int i = 0; i < M; ++i) theta(i) = std::arg(schur.matrixT()(i, i));
    const CMat h = Q * theta.asDiagonal() * Q.adjoint();

    const auto d = static_cast<Eigen::Index>(basis.size());
    CMat G = CMat::Zero(d, d);
    for (Eigen::Index col = 0; col < d; ++col) {
        for (int i = 0; i < M; ++i) {
            for (int j = 0; j < M; ++j) {
                if (h(i, j) == cplx(0.0)) continue;
                std::vector<int> occ = basis[static_cast<size_t>(col)].occupations;
                double f = apply_ladder({j, false}, occ, photons);
                if (f == 0.0) continue;
                f *= apply_ladder({i, true}, occ, photons);
                if (f == 0.0) continue;
                G(where.at(PhotonPattern(occ)), col) += h(i, j) * f;
            }
        }
    }
    return (cplx(0.0, 1.0) * G).exp();
}

CMat single_mode_operator(double u, cplx v, int cutoff) {
    CMat U(1, 1), V(1, 1);
    U(0, 0) = u;
    V(0, 0) = v;
    const auto H = hamiltonian_coeffs(SymplecticGaussian(U, V));
    return truncated_unitary(H, FockBasis{1, cutoff}).matrix;
}

namespace {

// Per-mode cutoff for which the squeezed tail beyond it is below ~1e-14.
int squeezer_cutoff(double u, cplx v, int need) {
    const double t = std::abs(v) / u;
    if (t < 1e-12) return need + 4;
    const int extra = static_cast<int>(std::ceil(2.0 * std::log(1e-15) / std::log(t)));
    return std::min(need + std::max(extra, 8), 400);
}

struct Factorization {
    BlochMessiahFactors bm;
    std::vector<CMat> squeezers;
    double tail = 0.0;
    int cutoff = 0;
};

Factorization factorize(const SymplecticGaussian &T, int need, int cutoff, int top_rows) {
    Factorization f;
    f.bm = bloch_messiah(T);
    const int M = T.mode_count;
    for (int i = 0; i < M; ++i) {
        const double u = f.bm.sigma_u(i);
        const cplx v = f.bm.sigma_v(i);
        const int c = cutoff >= 0 ? std::max(cutoff, need) : squeezer_cutoff(u, v, need);
        f.cutoff = std::max(f.cutoff, c);
        CMat S = single_mode_operator(u, v, c);
        double top = 0.0;
        for (int j = 0; j <= std::min(need, c); ++j) {
            double m = 0.0;
            for (int k = std::max(0, c - top_rows + 1); k <= c; ++k) m += std::norm(S(k, j));
            top = std::max(top, m);
        }
        f.tail = std::max(f.tail, top);
        f.squeezers.push_back(std::move(S));
    }
    return f;
}

std::map<PhotonPattern, Eigen::Index> sector_index(const std::vector<PhotonPattern> &basis) {
    std::map<PhotonPattern, Eigen::Index> where;
    for (size_t i = 0; i < basis.size(); ++i) where[basis[i]] = static_cast<Eigen::Index>(i);
    return where;
}

}  // namespace

OracleAmplitude oracle_amplitude(const SymplecticGaussian &T, const PhotonPattern &input,
                                 const PhotonPattern &output, int cutoff) {
    const int M = T.mode_count;
    if (input.modes() != M || output.modes() != M) throw ShapeError("oracle: pattern length mismatch");
    const int Nin = input.total(), Nout = output.total();
    const int need = std::max(Nin, Nout);
    const Factorization f = factorize(T, need, cutoff, 4);

    const auto in_basis = patterns_with_total(M, Nin);
    const auto out_basis = patterns_with_total(M, Nout);
    const CMat Rsec = interferometer_sector(f.bm.R, Nin);
    const CMat Lsec = interferometer_sector(f.bm.L, Nout);
    const Eigen::Index n_idx = sector_index(in_basis).at(input);
    const Eigen::Index m_idx = sector_index(out_basis).at(output);

    cplx amp = 0.0;
    for (size_t kk = 0; kk < out_basis.size(); ++kk) {
        const cplx lk = Lsec(m_idx, static_cast<Eigen::Index>(kk));
        if (lk == cplx(0.0)) continue;
        const auto &k = out_basis[kk];
        cplx inner = 0.0;
        for (size_t jj = 0; jj < in_basis.size(); ++jj) {
            const cplx rj = Rsec(static_cast<Eigen::Index>(jj), n_idx);
            if (rj == cplx(0.0)) continue;
            const auto &j = in_basis[jj];
            cplx prod = rj;
            for (int i = 0; i < M && prod != cplx(0.0); ++i) prod *= f.squeezers[static_cast<size_t>(i)](k[i], j[i]);
            inner += prod;
        }
        amp += lk * inner;
    }
    return {amp, f.tail, f.cutoff};
}

OracleResult oracle_probability(const SymplecticGaussian &T, const PhotonPattern &input,
                                const PhotonPattern &output, int cutoff) {
    const OracleAmplitude a = oracle_amplitude(T, input, output, cutoff);
    return {std::norm(a.value), a.tail_bound, a.cutoff};
}

OracleMoment oracle_moment(const SymplecticGaussian &T, const PhotonPattern &input, const PhotonPattern &k,
                           const PhotonPattern &l, int cutoff) {
    const int M = T.mode_count;
    if (input.modes() != M || k.modes() != M || l.modes() != M) throw ShapeError("oracle_moment: pattern length mismatch");
    const int ops = k.total() + l.total();
    const int Nin = input.total();

    const BlochMessiahFactors bm = bloch_messiah(T);
    int cm = cutoff;
    if (cm < 0) {
        cm = Nin + ops;
        for (int i = 0; i < M; ++i) cm = std::max(cm, squeezer_cutoff(bm.sigma_u(i), bm.sigma_v(i), Nin + ops));
    }
    std::size_t dim = 1;
    for (int i = 0; i < M; ++i) dim *= static_cast<std::size_t>(cm + 1);
    if (dim > (std::size_t{1} << 22)) throw ResourceError("oracle_moment: box too large; lower the cutoff");

    std::vector<CMat> S;
    for (int i = 0; i < M; ++i) S.push_back(single_mode_operator(bm.sigma_u(i), bm.sigma_v(i), cm + 20));

    std::vector<std::size_t> stride(static_cast<size_t>(M), 1);
    for (int i = M - 2; i >= 0; --i) stride[static_cast<size_t>(i)] = stride[static_cast<size_t>(i + 1)] * static_cast<std::size_t>(cm + 1);

    const auto in_basis = patterns_with_total(M, Nin);
    const CMat Rsec = interferometer_sector(bm.R, Nin);
    const Eigen::Index n_idx = sector_index(in_basis).at(input);

    CVec phi = CVec::Zero(static_cast<Eigen::Index>(dim));
    std::vector<int> occ(static_cast<size_t>(M));
    for (std::size_t s = 0; s < dim; ++s) {
        std::size_t rem = s;
        for (int i = 0; i < M; ++i) {
            occ[static_cast<size_t>(i)] = static_cast<int>(rem / stride[static_cast<size_t>(i)]);
            rem %= stride[static_cast<size_t>(i)];
        }
        cplx v = 0.0;
        for (size_t jj = 0; jj < in_basis.size(); ++jj) {
            const cplx rj = Rsec(static_cast<Eigen::Index>(jj), n_idx);
            if (rj == cplx(0.0)) continue;
            cplx prod = rj;
            for (int i = 0; i < M && prod != cplx(0.0); ++i) {
                prod *= S[static_cast<size_t>(i)](occ[static_cast<size_t>(i)], in_basis[jj][i]);
            }
            v += prod;
        }
        phi(static_cast<Eigen::Index>(s)) = v;
    }

    double tail = 0.0;
    for (std::size_t s = 0; s < dim; ++s) {
        std::size_t rem = s;
        int mx = 0;
        for (int i = 0; i < M; ++i) {
            mx = std::max(mx, static_cast<int>(rem / stride[static_cast<size_t>(i)]));
            rem %= stride[static_cast<size_t>(i)];
        }
        if (mx > cm - std::max(ops, 2)) tail += std::norm(phi(static_cast<Eigen::Index>(s)));
    }
    tail *= std::pow(static_cast<double>(cm + 1), ops);

    // L^dag a_i L^ = sum_j L_ij a_j, so a^dag_i picks up conj(L_ij) a^dag_j.
    auto raise = [&](const CVec &v, int mode) {
        CVec out = CVec::Zero(v.size());
        for (int j = 0; j < M; ++j) {
            const cplx c = std::conj(bm.L(mode, j));
            if (c == cplx(0.0)) continue;
            const std::size_t st = stride[static_cast<size_t>(j)];
            for (std::size_t s = 0; s < dim; ++s) {
                const int nj = static_cast<int>((s / st) % static_cast<std::size_t>(cm + 1));
                if (nj == cm) continue;
                out(static_cast<Eigen::Index>(s + st)) += c * std::sqrt(nj + 1.0) * v(static_cast<Eigen::Index>(s));
            }
        }
        return out;
    };
    auto apply = [&](const PhotonPattern &p) {
        CVec v = phi;
        for (int i = 0; i < M; ++i)
            for (int t = 0; t < p[i]; ++t) v = raise(v, i);
        return v;
    };
    const CVec left = apply(k);
    const CVec right = apply(l);
    return {left.dot(right), tail, cm};
}

}  // namespace ubs
