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

#include "ubs/entanglement.hpp"

#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Eigenvalues>

#include "ubs/combinatorics.hpp"
#include "ubs/errors.hpp"
#include "ubs/generating.hpp"
#include "ubs/parallel.hpp"
#include "ubs/taylor.hpp"

namespace ubs {

double FiniteDifferenceConfig::step(int n) const {
    const double scale = n <= 4 ? h_scale_low : h_scale_high;
    return std::pow(float_precision, 1.0 / (2.0 + n)) * scale;
}

namespace {

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

cplx central_stencil(const RealPointField &f, const std::vector<int> &orders, double h) {
    const auto k = orders.size();
    std::vector<int> j(k, 0);
    RVec point = RVec::Zero(static_cast<Eigen::Index>(k));
    cplx acc = 0.0;
    while (true) {
        double w = 1.0;
        for (size_t i = 0; i < k; ++i) {
            w *= binomial(orders[i], j[i]) * (((orders[i] - j[i]) % 2) ? -1.0 : 1.0);
            point(static_cast<Eigen::Index>(i)) = (2 * j[i] - orders[i]) * h;
        }
        acc += w * f(point);
        size_t i = 0;
        for (; i < k; ++i) {
            if (++j[i] <= orders[i]) break;
            j[i] = 0;
        }
        if (i == k) break;
    }
    int n = 0;
    for (int o : orders) n += o;
    return acc / std::pow(2.0 * h, n);
}

}  // namespace

cplx finite_difference_derivative(const RealPointField &f, const std::vector<int> &multi_index,
                                  const FiniteDifferenceConfig &config) {
    int n = 0;
    for (int o : multi_index) {
        if (o < 0) throw DomainError("finite difference: negative order");
        n += o;
    }
    if (n > kMaxFiniteDifferenceOrder) throw UnsupportedPatternError("finite difference: order above 8");
    if (config.richardson_order != 0 && config.richardson_order != 2) {
        throw DomainError("finite difference: richardson_order must be 0 or 2");
    }
    if (n == 0) return f(RVec::Zero(static_cast<Eigen::Index>(multi_index.size())));
    const double h = config.step(n);
    const cplx fine = central_stencil(f, multi_index, h);
    if (config.richardson_order == 0) return fine;
    return (4.0 * fine - central_stencil(f, multi_index, 2.0 * h)) / 3.0;
}

double fd_absolute_error(int n) {
    switch (n) {
    case 2: return 1e-8;
    case 4: return 1e-6;
    case 6: return 1e-5;
    case 8: return 1e-4;
    default: throw DomainError("error budget defined for 2, 4, 6 or 8 derivatives");
    }
}

MomentBackend parse_moment_backend(const std::string &name) {
    if (name == "fd" || name == "finite-difference") return MomentBackend::FiniteDifference;
    if (name == "taylor") return MomentBackend::Taylor;
    throw DomainError("unknown moment backend '" + name + "'");
}

std::string moment_backend_name(MomentBackend b) { return b == MomentBackend::Taylor ? "taylor" : "fd"; }

namespace {

void check_moment_shapes(const SymplecticGaussian &T, const PhotonPattern &input, const PhotonPattern &k,
                         const PhotonPattern &l) {
    const int M = T.mode_count;
    if (input.modes() != M || k.modes() != M || l.modes() != M) throw ShapeError("moment: pattern length mismatch");
}

CMat block_swap_negated(const CMat &G) {
    const auto M = G.rows() / 2;
    CMat out(G.rows(), G.cols());
    out.topRows(M) = -G.bottomRows(M);
    out.bottomRows(M) = -G.topRows(M);
    return out;
}

// Finite-difference evaluation of one moment; kernels are cached per x point.
class FiniteDifferenceMoment {
public:
    FiniteDifferenceMoment(const SymplecticGaussian &T, const PhotonPattern &input, bool normal)
        : T_(T), M_(T.mode_count), normal_(normal) {
        for (int j = 0; j < M_; ++j)
            if (input[j] > 0) x_modes_.push_back(j);
        for (int j : x_modes_) x_orders_.push_back(input[j]);
        const Kernel base = evaluate(RVec::Zero(M_), true);
        base_sqrt_ = base.sqrt_det;
    }

    cplx operator()(const PhotonPattern &input, const PhotonPattern &k, const PhotonPattern &l,
                    const FiniteDifferenceConfig &config) {
        std::vector<int> orders = x_orders_;
        std::vector<int> u_modes, w_modes;
        for (int j = 0; j < M_; ++j) {
            if (k[j] > 0) {
                u_modes.push_back(j);
                orders.push_back(k[j]);
            }
        }
        for (int j = 0; j < M_; ++j) {
            if (l[j] > 0) {
                w_modes.push_back(j);
                orders.push_back(l[j]);
            }
        }
        const auto nx = x_modes_.size();
        const auto field = [&](const RVec &p) -> cplx {
            RVec x = RVec::Zero(M_);
            for (size_t i = 0; i < nx; ++i) x(x_modes_[i]) = p(static_cast<Eigen::Index>(i));
            const Kernel &kern = cached(x);
            CVec v = CVec::Zero(2 * M_);
            size_t idx = nx;
            for (int j : u_modes) v(j) = -p(static_cast<Eigen::Index>(idx++));
            for (int j : w_modes) v(M_ + j) = p(static_cast<Eigen::Index>(idx++));
            cplx quad = -0.5 * (v.transpose() * kern.Ginv * v)(0, 0);
            if (normal_) quad -= (v.head(M_).transpose() * v.tail(M_))(0, 0);
            return kern.factor * std::exp(quad);
        };
        const cplx d = finite_difference_derivative(field, orders, config);
        int ksum = k.total();
        return (ksum % 2 ? -1.0 : 1.0) * d / input.factorial();
    }

private:
    struct Kernel {
        CMat Ginv;
        cplx factor;
        cplx sqrt_det;
    };

    Kernel evaluate(const RVec &x, bool principal) const {
        const GeneratingKernel g = kernel_extended(T_, x);
        const CMat G = g.G();
        Eigen::PartialPivLU<CMat> lu(G);
        const cplx det = block_swap_negated(G).determinant();
        cplx s = std::sqrt(det);
        // keep the branch continuous with the value at the origin
        if (!principal && std::abs(s + base_sqrt_) < std::abs(s - base_sqrt_)) s = -s;
        return {lu.inverse(), g.prefactor / s, s};
    }

    const Kernel &cached(const RVec &x) {
        std::vector<double> key(x.data(), x.data() + x.size());
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(std::move(key), evaluate(x, false)).first;
        return it->second;
    }

    const SymplecticGaussian &T_;
    int M_;
    bool normal_;
    std::vector<int> x_modes_;
    std::vector<int> x_orders_;
    cplx base_sqrt_ = 1.0;
    std::map<std::vector<double>, Kernel> cache_;
};

// Exact series for all moments of one (T, input): factor(x) and -G(x)^{-1}.
class TaylorMoment {
public:
    TaylorMoment(const SymplecticGaussian &T, const PhotonPattern &input, bool normal) : M_(T.mode_count) {
        const TaylorKernel tk = kernel_taylor(T, input, std::max(kDefaultTaylorOrderLimit, input.total()));
        const TaylorMatrix G = tk.G();
        const int n = 2 * M_;
        TaylorMatrix negPG(n, n, tk.prefactor.zero_like());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) negPG(i, j) = -G((i + M_) % n, j);
        const TaylorScalar det = TaylorLU(negPG).determinant();
        factor_ = tk.prefactor * pow(det, -0.5);
        neg_inv_ = TaylorLU(G).inverse();
        for (auto &e : neg_inv_.a) e *= cplx(-1.0);
        if (normal) {
            for (int j = 0; j < M_; ++j) {
                neg_inv_(j, j + M_) += cplx(-1.0);
                neg_inv_(j + M_, j) += cplx(-1.0);
            }
        }
    }

    cplx operator()(const PhotonPattern &k, const PhotonPattern &l) const {
        std::vector<int> sel;
        for (int j = 0; j < M_; ++j)
            for (int r = 0; r < k[j]; ++r) sel.push_back(j);
        for (int j = 0; j < M_; ++j)
            for (int r = 0; r < l[j]; ++r) sel.push_back(j + M_);
        const TaylorScalar zero = factor_.zero_like();
        const TaylorScalar haf = hafnian_generic<TaylorScalar>(
            static_cast<int>(sel.size()),
            [&](int i, int j) -> const TaylorScalar & { return neg_inv_(sel[static_cast<size_t>(i)], sel[static_cast<size_t>(j)]); },
            zero, factor_.constant_like(1.0));
        return (factor_ * haf).top_coefficient();
    }

private:
    int M_;
    TaylorScalar factor_;
    TaylorMatrix neg_inv_;
};

bool odd_order(const PhotonPattern &k, const PhotonPattern &l) { return (k.total() + l.total()) % 2 != 0; }

}  // namespace

namespace {

cplx ordered_moment(const SymplecticGaussian &T, const PhotonPattern &input, const PhotonPattern &k,
                    const PhotonPattern &l, bool normal, MomentBackend backend, const FiniteDifferenceConfig &config) {
    check_moment_shapes(T, input, k, l);
    if (odd_order(k, l)) return 0.0;
    if (backend == MomentBackend::Taylor) return TaylorMoment(T, input, normal)(k, l);
    FiniteDifferenceMoment fd(T, input, normal);
    return fd(input, k, l, config);
}

}  // namespace

cplx moment(const SymplecticGaussian &T, const PhotonPattern &input, const PhotonPattern &k, const PhotonPattern &l,
            MomentBackend backend, const FiniteDifferenceConfig &config) {
    return ordered_moment(T, input, k, l, false, backend, config);
}

cplx normal_moment(const SymplecticGaussian &T, const PhotonPattern &input, const PhotonPattern &l,
                   const PhotonPattern &k, MomentBackend backend, const FiniteDifferenceConfig &config) {
    return ordered_moment(T, input, k, l, true, backend, config);
}

int moments_matrix_dimension(int d) { return 2 * d * d + d + 1; }

std::vector<PhotonPattern> moments_monomials(int modes) {
    std::vector<PhotonPattern> out;
    out.push_back(PhotonPattern::zeros(modes));
    for (int i = 0; i < modes; ++i) {
        PhotonPattern p = PhotonPattern::zeros(modes);
        p.occupations[static_cast<size_t>(i)] = 1;
        out.push_back(p);
    }
    for (int i = 0; i < modes; ++i) {
        for (int j = i + 1; j < modes; ++j) {
            PhotonPattern p = PhotonPattern::zeros(modes);
            p.occupations[static_cast<size_t>(i)] = 1;
            p.occupations[static_cast<size_t>(j)] = 1;
            out.push_back(p);
        }
    }
    return out;
}

MomentsMatrix build_moments_matrix(const SymplecticGaussian &T, const PhotonPattern &input, const Bipartition &part,
                                   bool transpose_party_one, const MomentsOptions &options) {
    if (part.d < 1) throw DomainError("bipartition: d must be positive");
    if (T.mode_count != part.modes()) throw ShapeError("moments matrix: circuit must have 2d modes");
    if (input.modes() != T.mode_count) throw ShapeError("moments matrix: input pattern length mismatch");

    MomentsMatrix m;
    m.d = part.d;
    m.transposed = transpose_party_one;
    m.monomials = moments_monomials(part.modes());
    const int dim = static_cast<int>(m.monomials.size());
    m.entries = CMat::Zero(dim, dim);
    m.zero_block.assign(static_cast<size_t>(dim * dim), 0);

    struct Job {
        int i, j;
        PhotonPattern k, l;
    };
    std::vector<Job> jobs;
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const PhotonPattern &ei = m.monomials[static_cast<size_t>(i)];
            const PhotonPattern &ej = m.monomials[static_cast<size_t>(j)];
            if ((ei.total() + ej.total()) % 2 != 0) {
                m.zero_block[static_cast<size_t>(i * dim + j)] = 1;
                continue;
            }
            PhotonPattern l = ei, k = ej;
            if (transpose_party_one) {
                for (int mode = 0; mode < part.d; ++mode) {
                    std::swap(k.occupations[static_cast<size_t>(mode)], l.occupations[static_cast<size_t>(mode)]);
                }
            }
            m.derivative_order = std::max(m.derivative_order, input.total() + k.total() + l.total());
            jobs.push_back({i, j, std::move(k), std::move(l)});
        }
    }
    m.computed_entries = static_cast<int>(jobs.size());

    std::vector<cplx> values(jobs.size());
    if (options.backend == MomentBackend::Taylor) {
        const TaylorMoment engine(T, input, true);
        parallel_for(jobs.size(), [&](std::size_t idx) { values[idx] = engine(jobs[idx].k, jobs[idx].l); },
                     options.threads);
    } else {
        if (m.derivative_order > kMaxFiniteDifferenceOrder) {
            throw UnsupportedPatternError("moments matrix: " + std::to_string(m.derivative_order) +
                                          " derivatives exceed the finite-difference budget; use the taylor backend");
        }
        parallel_for(
            jobs.size(),
            [&](std::size_t idx) {
                FiniteDifferenceMoment fd(T, input, true);
                values[idx] = fd(input, jobs[idx].k, jobs[idx].l, options.fd);
            },
            options.threads);
    }
    for (size_t idx = 0; idx < jobs.size(); ++idx) m.entries(jobs[idx].i, jobs[idx].j) = values[idx];

    m.asymmetry = (m.entries - m.entries.adjoint()).cwiseAbs().maxCoeff();
    const int n_even = m.derivative_order + m.derivative_order % 2;
    const double eps = options.backend == MomentBackend::Taylor ? kTaylorMomentError
                                                                 : fd_absolute_error(std::max(2, n_even));
    if (m.asymmetry > 10.0 * eps) {
        throw IntegrityError("moments matrix: asymmetry " + std::to_string(m.asymmetry) + " exceeds 10 eps_abs");
    }
    return m;
}

NegativityResult log_negativity(const CMat &m, double eps_lambda) {
    const CMat h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
    NegativityResult r;
    r.eigenvalues = es.eigenvalues();
    for (Eigen::Index i = 0; i < r.eigenvalues.size(); ++i) {
        if (r.eigenvalues(i) < -eps_lambda) {
            ++r.negative_count;
            r.negative_sum += r.eigenvalues(i);
        }
    }
    r.log_negativity = std::log2(2.0 * std::abs(r.negative_sum) + 1.0);
    return r;
}

NegativityResult log_negativity(const MomentsMatrix &m, double eps_lambda) { return log_negativity(m.entries, eps_lambda); }

ErrorReport error_estimate_for_abs(double eps_abs, int d, int negative_eigs, double neg_sum) {
    ErrorReport e;
    e.eps_abs = eps_abs;
    e.eps_lambda = eps_abs * moments_matrix_dimension(d);
    e.eps_mean_photon = eps_abs * 2 * d;
    if (negative_eigs == 0) {
        e.eps_log_negativity = 0.0;
    } else if (std::abs(neg_sum) <= e.eps_lambda) {
        e.eps_log_negativity = std::numeric_limits<double>::infinity();
        e.reliable = false;
    } else {
        e.eps_log_negativity = e.eps_lambda * std::sqrt(static_cast<double>(negative_eigs)) / std::abs(neg_sum);
    }
    return e;
}

ErrorReport error_estimate(int n_derivatives, int d, int negative_eigs, double neg_sum) {
    ErrorReport e = error_estimate_for_abs(fd_absolute_error(n_derivatives), d, negative_eigs, neg_sum);
    e.n_derivatives = n_derivatives;
    return e;
}

EntanglementReport analyze_entanglement(const SymplecticGaussian &T, const PhotonPattern &input,
                                        const Bipartition &part, const MomentsOptions &options) {
    // The grade-one diagonal <a^dag_j a_j> is unchanged by the partial transpose,
    // so the transposed matrix alone also yields the mean photon number.
    const MomentsMatrix pt = build_moments_matrix(T, input, part, true, options);
    EntanglementReport rep;
    rep.derivative_order = pt.derivative_order;
    for (int j = 0; j < part.modes(); ++j) rep.mean_photon_number += pt.entries(1 + j, 1 + j).real();

    const int n_even = std::max(2, pt.derivative_order + pt.derivative_order % 2);
    const double eps_abs = options.backend == MomentBackend::Taylor ? kTaylorMomentError : fd_absolute_error(n_even);
    const double eps_lambda = error_estimate_for_abs(eps_abs, part.d, 0, 0.0).eps_lambda;
    rep.negativity = log_negativity(pt, eps_lambda);
    rep.errors = error_estimate_for_abs(eps_abs, part.d, rep.negativity.negative_count, rep.negativity.negative_sum);
    rep.errors.n_derivatives = pt.derivative_order;
    return rep;
}

}  // namespace ubs
