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

#include "ubs/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>

#include "ubs/combinatorics.hpp"
#include "ubs/errors.hpp"
#include "ubs/fock_oracle.hpp"
#include "ubs/liealg_rep.hpp"
#include "ubs/parallel.hpp"

namespace ubs {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

namespace {

std::uint64_t tag(std::uint64_t t, std::uint64_t v) { return splitmix64((t << 56) + v); }

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, int M, int zeta_index, int run) {
    return splitmix64(master ^ tag(1, static_cast<std::uint64_t>(M)) ^ tag(2, static_cast<std::uint64_t>(zeta_index)) ^
                      tag(3, static_cast<std::uint64_t>(run)));
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return v;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// k distinct modes out of M by a partial Fisher-Yates pass.
PhotonPattern random_subset(int M, int k, std::mt19937_64 &rng) {
    std::vector<int> idx(static_cast<size_t>(M));
    std::iota(idx.begin(), idx.end(), 0);
    PhotonPattern p = PhotonPattern::zeros(M);
    for (int i = 0; i < k; ++i) {
        const auto j = i + static_cast<int>(rng() % static_cast<std::uint64_t>(M - i));
        std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
        p.occupations[static_cast<size_t>(idx[static_cast<size_t>(i)])] = 1;
    }
    return p;
}

SymplecticGaussian squeezed_interferometer(const CMat &W, int squeezed, double zeta_db) {
    const auto M = static_cast<int>(W.rows());
    RVec r = RVec::Zero(M);
    for (int i = 0; i < squeezed; ++i) r(i) = zeta_db * kDbToR;
    return compose(SymplecticGaussian::squeezers(r), SymplecticGaussian::interferometer(W));
}

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};

MeanSd mean_sd(const std::vector<double> &v) {
    MeanSd m;
    if (v.empty()) return m;
    for (double x : v) m.mean += x;
    m.mean /= static_cast<double>(v.size());
    if (v.size() > 1) {
        double s = 0.0;
        for (double x : v) s += (x - m.mean) * (x - m.mean);
        m.sd = std::sqrt(s / static_cast<double>(v.size() - 1));
    }
    return m;
}

}  // namespace

// ---------------------------------------------------------------- sweep

void SweepConfig::validate() const {
    if (m_min < 1 || m_max < m_min) throw DomainError("sweep: invalid mode range");
    if (m_max > 6) throw ResourceError("sweep: desk-scale limit is M <= 6");
    if (runs < 1) throw DomainError("sweep: runs must be >= 1");
    if (zeta_db.empty()) throw DomainError("sweep: empty squeezing grid");
    for (size_t i = 0; i < zeta_db.size(); ++i) {
        if (zeta_db[i] < 0.0) throw DomainError("sweep: negative squeezing");
        if (i > 0 && zeta_db[i] < zeta_db[i - 1]) throw DomainError("sweep: squeezing grid must be sorted");
    }
    scenario_shape(scenario, m_min);
    if (backend != "taylor" && backend != "hafnian") throw DomainError("sweep: backend must be taylor or hafnian");
}

void to_json(nlohmann::json &j, const SweepConfig &c) {
    j = {{"m_min", c.m_min},       {"m_max", c.m_max},           {"scenario", c.scenario},
         {"zeta_db", c.zeta_db},   {"runs", c.runs},             {"master_seed", c.master_seed},
         {"backend", c.backend},   {"average_outputs", c.average_outputs}};
}

void from_json(const nlohmann::json &j, SweepConfig &c) {
    const SweepConfig d;
    c.m_min = j.value("m_min", d.m_min);
    c.m_max = j.value("m_max", d.m_max);
    if (j.contains("modes")) {
        const auto modes = j.at("modes").get<std::vector<int>>();
        if (modes.size() != 2) throw DomainError("sweep config: modes must be [min, max]");
        c.m_min = modes[0];
        c.m_max = modes[1];
    }
    c.scenario = j.value("scenario", d.scenario);
    c.zeta_db = j.value("zeta_db", d.zeta_db);
    c.runs = j.value("runs", d.runs);
    c.master_seed = j.value("master_seed", d.master_seed);
    c.average_outputs = j.value("average_outputs", d.average_outputs);
    c.backend = j.value("backend", d.backend);
    c.threads = j.value("threads", d.threads);
}

SweepConfig load_sweep_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open sweep config '" + path + "'");
    SweepConfig c = nlohmann::json::parse(in).get<SweepConfig>();
    c.validate();
    return c;
}

ScenarioShape scenario_shape(const std::string &scenario, int M) {
    const int half = (M + 1) / 2;
    if (scenario == "saturated") return {M, half};
    if (scenario == "dilute") return {half, half};
    throw DomainError("unknown scenario '" + scenario + "' (saturated | dilute)");
}

SweepResult run_distance_sweep(const SweepConfig &config) {
    config.validate();
    struct Cell {
        int M, zi, run;
    };
    struct Outcome {
        double d_P = 0.0, d_H = 0.0, seconds = 0.0;
        std::string error;
    };
    std::vector<Cell> cells;
    for (int M = config.m_min; M <= config.m_max; ++M)
        for (int zi = 0; zi < static_cast<int>(config.zeta_db.size()); ++zi)
            for (int run = 0; run < config.runs; ++run) cells.push_back({M, zi, run});

    std::vector<Outcome> out(cells.size());
    parallel_for(
        cells.size(),
        [&](std::size_t idx) {
            const Cell &c = cells[idx];
            Outcome &o = out[idx];
            try {
                std::mt19937_64 rng(derive_seed(config.master_seed, c.M, c.zi, c.run));
                const ScenarioShape shape = scenario_shape(config.scenario, c.M);
                const CMat W = haar_unitary(c.M, rng());
                const PhotonPattern input = random_subset(c.M, shape.photons, rng);
                std::vector<PhotonPattern> outputs;
                if (config.average_outputs) {
                    for (const auto &p : patterns_with_total(c.M, shape.photons))
                        if (p.single_photon()) outputs.push_back(p);
                } else {
                    outputs.push_back(random_subset(c.M, shape.photons, rng));
                }
                const SymplecticGaussian T =
                    squeezed_interferometer(W, shape.squeezed_modes, config.zeta_db[static_cast<size_t>(c.zi)]);
                const auto t0 = std::chrono::steady_clock::now();
                for (const auto &output : outputs) {
                    const double p_ubs = config.backend == "hafnian" ? ubs_probability_hafnian({T, input, output})
                                                                     : ubs_probability({T, input, output});
                    const double p_sbs = sbs_probability(W, input, output);
                    const double p_gbs = gbs_probability(T, output);
                    o.d_P += std::abs(p_ubs - p_sbs);
                    o.d_H += std::abs(p_ubs - p_gbs);
                }
                o.seconds = seconds_since(t0);
                o.d_P /= static_cast<double>(outputs.size());
                o.d_H /= static_cast<double>(outputs.size());
            } catch (const std::exception &e) {
                o.error = e.what();
            }
        },
        config.threads);

    SweepResult result;
    size_t idx = 0;
    for (int M = config.m_min; M <= config.m_max; ++M) {
        const ScenarioShape shape = scenario_shape(config.scenario, M);
        for (int zi = 0; zi < static_cast<int>(config.zeta_db.size()); ++zi) {
            std::vector<double> dp, dh, ts;
            ResultRow row;
            row.scenario = config.scenario;
            row.M = M;
            row.squeezed_modes = shape.squeezed_modes;
            row.photons = shape.photons;
            row.zeta_index = zi;
            row.zeta_db = config.zeta_db[static_cast<size_t>(zi)];
            for (int run = 0; run < config.runs; ++run, ++idx) {
                const Outcome &o = out[idx];
                if (!o.error.empty()) {
                    ++row.failed_runs;
                    result.errors.push_back("M=" + std::to_string(M) + " zeta_index=" + std::to_string(zi) +
                                            " run=" + std::to_string(run) + ": " + o.error);
                    continue;
                }
                dp.push_back(o.d_P);
                dh.push_back(o.d_H);
                ts.push_back(o.seconds);
            }
            row.runs = static_cast<int>(dp.size());
            const MeanSd a = mean_sd(dp), b = mean_sd(dh), t = mean_sd(ts);
            const double root = std::sqrt(std::max<double>(1.0, static_cast<double>(dp.size())));
            row.mean_d_P = a.mean;
            row.se_d_P = a.sd / root;
            row.mean_d_H = b.mean;
            row.se_d_H = b.sd / root;
            row.time_mean_s = t.mean;
            row.time_sd_s = t.sd;
            result.rows.push_back(row);
        }
    }
    return result;
}

void write_sweep_csv(std::ostream &out, const SweepResult &result, const SweepConfig &config) {
    out << "# " << kSweepCsvVersion << " scenario=" << config.scenario << " master_seed=" << config.master_seed
        << " runs=" << config.runs << " backend=" << config.backend
        << " average_outputs=" << (config.average_outputs ? "true" : "false")
        << " seed_rule=splitmix64(master^tag1(M)^tag2(zeta_index)^tag3(run)) imag_tolerance=1e-8"
        << " standard_error=sd/sqrt(runs)\n";
    out << "scenario,M,K,N,zeta_index,zeta_db,runs,failed_runs,mean_d_P,se_d_P,mean_d_H,se_d_H,master_seed,backend,"
           "time_mean_s,time_sd_s\n";
    for (const auto &r : result.rows) {
        out << r.scenario << ',' << r.M << ',' << r.squeezed_modes << ',' << r.photons << ',' << r.zeta_index << ','
            << fmt(r.zeta_db) << ',' << r.runs << ',' << r.failed_runs << ',' << fmt(r.mean_d_P) << ','
            << fmt(r.se_d_P) << ',' << fmt(r.mean_d_H) << ',' << fmt(r.se_d_H) << ',' << config.master_seed << ','
            << config.backend << ',' << fmt(r.time_mean_s) << ',' << fmt(r.time_sd_s) << '\n';
    }
}

namespace {

std::vector<double> ranks(const std::vector<double> &v) {
    std::vector<size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (size_t i = 0; i < order.size();) {
        size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (size_t k = i; k <= j; ++k) r[order[k]] = avg;
        i = j + 1;
    }
    return r;
}

}  // namespace

double spearman(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("spearman: need two equal-length samples");
    const std::vector<double> rx = ranks(x), ry = ranks(y);
    const MeanSd mx = mean_sd(rx), my = mean_sd(ry);
    double cov = 0.0;
    for (size_t i = 0; i < rx.size(); ++i) cov += (rx[i] - mx.mean) * (ry[i] - my.mean);
    cov /= static_cast<double>(rx.size() - 1);
    if (mx.sd == 0.0 || my.sd == 0.0) return 0.0;
    return cov / (mx.sd * my.sd);
}

std::vector<double> distance_crossings(const std::vector<ResultRow> &rows) {
    std::vector<double> out;
    // Sign changes of d_P - d_H; a run of exact zeros counts once, at its first point.
    int last = -1;
    for (size_t i = 0; i < rows.size(); ++i) {
        const double b = rows[i].mean_d_P - rows[i].mean_d_H;
        if (b == 0.0) continue;
        if (last >= 0) {
            const auto j = static_cast<size_t>(last);
            const double a = rows[j].mean_d_P - rows[j].mean_d_H;
            if ((a < 0.0) != (b < 0.0)) {
                if (i - j > 1) {
                    out.push_back(rows[j + 1].zeta_db);
                } else {
                    out.push_back(rows[j].zeta_db + a / (a - b) * (rows[i].zeta_db - rows[j].zeta_db));
                }
            }
        }
        last = static_cast<int>(i);
    }
    return out;
}

// ---------------------------------------------------------------- timing

void BenchConfig::validate() const {
    if (max_photons < 1 || max_photons > 6) throw DomainError("bench: photon counts must lie in 1..6");
    if (modes < max_photons) throw DomainError("bench: need at least max_photons modes");
    if (repetitions < 1) throw DomainError("bench: repetitions must be >= 1");
    if (compare_in < 1 || compare_out < 1 || compare_in > modes || compare_out > modes) {
        throw DomainError("bench: comparison cell out of range");
    }
}

void to_json(nlohmann::json &j, const BenchConfig &c) {
    j = {{"modes", c.modes},
         {"max_photons", c.max_photons},
         {"zeta_db", c.zeta_db},
         {"compare_zeta_db", c.compare_zeta_db},
         {"compare_in", c.compare_in},
         {"compare_out", c.compare_out},
         {"repetitions", c.repetitions},
         {"min_sample_seconds", c.min_sample_seconds},
         {"master_seed", c.master_seed},
         {"hafnian", c.hafnian}};
}

void from_json(const nlohmann::json &j, BenchConfig &c) {
    const BenchConfig d;
    c.modes = j.value("modes", d.modes);
    c.max_photons = j.value("max_photons", d.max_photons);
    c.zeta_db = j.value("zeta_db", d.zeta_db);
    c.compare_zeta_db = j.value("compare_zeta_db", d.compare_zeta_db);
    c.compare_in = j.value("compare_in", d.compare_in);
    c.compare_out = j.value("compare_out", d.compare_out);
    c.repetitions = j.value("repetitions", d.repetitions);
    c.min_sample_seconds = j.value("min_sample_seconds", d.min_sample_seconds);
    c.master_seed = j.value("master_seed", d.master_seed);
    c.hafnian = j.value("hafnian", d.hafnian);
}

namespace {

template <class F>
double time_per_call(F &&f, double min_seconds) {
    int calls = 0;
    const auto t0 = std::chrono::steady_clock::now();
    double elapsed = 0.0;
    do {
        f();
        ++calls;
        elapsed = seconds_since(t0);
    } while (elapsed < min_seconds);
    return elapsed / calls;
}

BenchCell bench_cell(const BenchConfig &c, const std::string &kind, int cell_index, int n_in, int n_out, double zeta) {
    BenchCell cell;
    cell.kind = kind;
    cell.n_in = n_in;
    cell.n_out = n_out;
    cell.zeta_db = zeta;
    std::vector<double> logs, times, hlogs;
    ProbabilityOptions opt;
    opt.parity_shortcut = false;
    try {
        for (int rep = 0; rep < c.repetitions; ++rep) {
            std::mt19937_64 rng(derive_seed(c.master_seed, c.modes, cell_index, rep));
            const CMat W = haar_unitary(c.modes, rng());
            const TransitionSpec spec{squeezed_interferometer(W, c.modes, zeta), random_subset(c.modes, n_in, rng),
                                      random_subset(c.modes, n_out, rng)};
            volatile double sink = 0.0;
            const double t = time_per_call([&] { sink = sink + ubs_probability(spec, opt); }, c.min_sample_seconds);
            logs.push_back(std::log10(t));
            times.push_back(t);
            if (c.hafnian) {
                HafnianBackendStats stats;
                ubs_probability_hafnian(spec, &stats, false);
                cell.partitions = std::max(cell.partitions, stats.partitions);
                cell.prefactor_terms = std::max(cell.prefactor_terms, stats.prefactor_terms);
                const double th = time_per_call([&] { sink = sink + ubs_probability_hafnian(spec, nullptr, false); },
                                                c.min_sample_seconds);
                hlogs.push_back(std::log10(th));
            }
        }
    } catch (const std::exception &e) {
        cell.status = std::string("incomplete: ") + e.what();
    }
    cell.repetitions = static_cast<int>(logs.size());
    const MeanSd l = mean_sd(logs);
    cell.mean_log10_time = l.mean;
    cell.sd_log10_time = l.sd;
    cell.mean_time_s = mean_sd(times).mean;
    cell.hafnian_mean_log10_time = mean_sd(hlogs).mean;
    return cell;
}

}  // namespace

std::vector<BenchCell> run_timing_bench(const BenchConfig &config) {
    config.validate();
    std::vector<BenchCell> cells;
    int index = 0;
    for (int n_in = 1; n_in <= config.max_photons; ++n_in)
        for (int n_out = 1; n_out <= config.max_photons; ++n_out)
            cells.push_back(bench_cell(config, "grid", index++, n_in, n_out, config.zeta_db));
    for (double z : config.compare_zeta_db)
        cells.push_back(bench_cell(config, "zeta", index++, config.compare_in, config.compare_out, z));
    return cells;
}

void write_bench_csv(std::ostream &out, const std::vector<BenchCell> &cells, const BenchConfig &config) {
    out << "# " << kBenchCsvVersion << " modes=" << config.modes << " repetitions=" << config.repetitions
        << " master_seed=" << config.master_seed << " min_sample_seconds=" << config.min_sample_seconds
        << " timed=probability-evaluation-only parity_shortcut=off\n";
    out << "kind,N_in,N_out,zeta_db,repetitions,mean_log10_time_s,sd_log10_time_s,mean_time_s,"
           "hafnian_mean_log10_time_s,hafnian_partitions,hafnian_prefactor_terms,status\n";
    for (const auto &c : cells) {
        out << c.kind << ',' << c.n_in << ',' << c.n_out << ',' << fmt(c.zeta_db) << ',' << c.repetitions << ','
            << fmt(c.mean_log10_time) << ',' << fmt(c.sd_log10_time) << ',' << fmt(c.mean_time_s) << ','
            << fmt(c.hafnian_mean_log10_time) << ',' << c.partitions << ',' << c.prefactor_terms << ',' << c.status
            << '\n';
    }
}

// ---------------------------------------------------------------- entanglement

void EntanglementScanConfig::validate() const {
    if (d < 1 || d > 6) throw DomainError("entanglement scan: d must lie in 1..6");
    for (int n : photons) {
        if (n < 0 || n % 2 != 0) throw DomainError("entanglement scan: N_in must be even and nonnegative");
    }
    if (zeta_db.empty()) throw DomainError("entanglement scan: empty squeezing grid");
    if (moment_backend != "auto") parse_moment_backend(moment_backend);
}

void to_json(nlohmann::json &j, const EntanglementScanConfig &c) {
    j = {{"d", c.d},
         {"photons", c.photons},
         {"zeta_db", c.zeta_db},
         {"squeeze_party_one_only", c.squeeze_party_one_only},
         {"moment_backend", c.moment_backend}};
}

void from_json(const nlohmann::json &j, EntanglementScanConfig &c) {
    const EntanglementScanConfig d;
    c.d = j.value("d", d.d);
    c.photons = j.value("photons", d.photons);
    c.zeta_db = j.value("zeta_db", d.zeta_db);
    c.squeeze_party_one_only = j.value("squeeze_party_one_only", d.squeeze_party_one_only);
    c.moment_backend = j.value("moment_backend", d.moment_backend);
    c.threads = j.value("threads", d.threads);
}

SymplecticGaussian entanglement_circuit(int d, double zeta_db, bool squeeze_party_one_only) {
    const int M = 2 * d;
    CMat W = CMat::Zero(M, M);
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i) {
        W(i, i) = W(i + d, i + d) = s;
        W(i, i + d) = W(i + d, i) = cplx(0.0, s);
    }
    RVec r = RVec::Zero(M);
    for (int i = 0; i < (squeeze_party_one_only ? d : M); ++i) r(i) = zeta_db * kDbToR;
    return compose(SymplecticGaussian::squeezers(r), SymplecticGaussian::interferometer(W));
}

PhotonPattern entanglement_input(int d, int n_in) {
    if (n_in < 0 || n_in % 2 != 0) throw DomainError("entanglement input: N_in must be even");
    PhotonPattern p = PhotonPattern::zeros(2 * d);
    for (int k = 0; k < n_in / 2; ++k) {
        p.occupations[static_cast<size_t>(k % d)]++;
        p.occupations[static_cast<size_t>(d + k % d)]++;
    }
    return p;
}

std::vector<EntanglementRow> run_entanglement_scan(const EntanglementScanConfig &config) {
    config.validate();
    std::vector<EntanglementRow> rows;
    for (int n_in : config.photons) {
        std::vector<EntanglementRow> curve;
        for (double z : config.zeta_db) {
            const SymplecticGaussian T = entanglement_circuit(config.d, z, config.squeeze_party_one_only);
            const PhotonPattern input = entanglement_input(config.d, n_in);
            MomentsOptions opt;
            opt.fd = config.fd;
            opt.threads = config.threads;
            if (config.moment_backend == "auto") {
                opt.backend = n_in + 4 <= kMaxFiniteDifferenceOrder ? MomentBackend::FiniteDifference
                                                                     : MomentBackend::Taylor;
            } else {
                opt.backend = parse_moment_backend(config.moment_backend);
            }
            const EntanglementReport rep = analyze_entanglement(T, input, Bipartition{config.d}, opt);
            EntanglementRow row;
            row.d = config.d;
            row.n_in = n_in;
            row.zeta_db = z;
            row.mean_photon_number = rep.mean_photon_number;
            row.log_negativity = rep.negativity.log_negativity;
            row.eps_mean_photon = rep.errors.eps_mean_photon;
            row.eps_log_negativity = rep.errors.eps_log_negativity;
            row.eps_lambda = rep.errors.eps_lambda;
            row.negative_count = rep.negativity.negative_count;
            row.derivative_order = rep.derivative_order;
            row.reliable = rep.errors.reliable;
            row.backend = moment_backend_name(opt.backend);
            curve.push_back(row);
        }
        std::stable_sort(curve.begin(), curve.end(), [](const EntanglementRow &a, const EntanglementRow &b) {
            return a.mean_photon_number < b.mean_photon_number;
        });
        rows.insert(rows.end(), curve.begin(), curve.end());
    }
    return rows;
}

void write_entanglement_csv(std::ostream &out, const std::vector<EntanglementRow> &rows,
                            const EntanglementScanConfig &config) {
    out << "# " << kEntanglementCsvVersion << " d=" << config.d
        << " squeeze_party_one_only=" << (config.squeeze_party_one_only ? "true" : "false")
        << " moment_backend=" << config.moment_backend << " unitary=(1/sqrt2)[[1;i1];[i1;1]]\n";
    out << "d,N_in,zeta_db,mean_photon_number,log_negativity,eps_mean_photon,eps_log_negativity,eps_lambda,"
           "negative_eigenvalues,derivative_order,reliable,backend\n";
    for (const auto &r : rows) {
        out << r.d << ',' << r.n_in << ',' << fmt(r.zeta_db) << ',' << fmt(r.mean_photon_number) << ','
            << fmt(r.log_negativity) << ',' << fmt(r.eps_mean_photon) << ',' << fmt(r.eps_log_negativity) << ','
            << fmt(r.eps_lambda) << ',' << r.negative_count << ',' << r.derivative_order << ','
            << (r.reliable ? "true" : "false") << ',' << r.backend << '\n';
    }
}

nlohmann::json entanglement_report_json(const EntanglementReport &rep, MomentBackend backend) {
    const auto finite = [](double v) -> nlohmann::json {
        if (std::isfinite(v)) return v;
        return nullptr;
    };
    return {{"mean_photon_number", rep.mean_photon_number},
            {"log_negativity", rep.negativity.log_negativity},
            {"negative_eigenvalue_count", rep.negativity.negative_count},
            {"error_bars",
             {{"mean_photon_number", rep.errors.eps_mean_photon},
              {"log_negativity", finite(rep.errors.eps_log_negativity)},
              {"eigenvalue", rep.errors.eps_lambda},
              {"reliable", rep.errors.reliable}}},
            {"derivative_order", rep.derivative_order},
            {"moment_backend", moment_backend_name(backend)}};
}

// ---------------------------------------------------------------- validation

bool SuiteReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck &c) { return c.pass; });
}

namespace {

CMat random_symmetric(int n, std::mt19937_64 &rng, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    CMat S(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) S(i, j) = S(j, i) = cplx(g(rng), g(rng));
    return S;
}

CMat random_complex(int n, std::mt19937_64 &rng, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    CMat S(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) S(i, j) = cplx(g(rng), g(rng));
    return S;
}

SymplecticGaussian random_circuit(int M, std::mt19937_64 &rng, double max_db) {
    std::uniform_real_distribution<double> u(0.0, max_db);
    RVec r(M);
    for (int i = 0; i < M; ++i) r(i) = u(rng) * kDbToR;
    const CMat W1 = haar_unitary(M, rng());
    const CMat W2 = haar_unitary(M, rng());
    return compose(compose(SymplecticGaussian::interferometer(W1), SymplecticGaussian::squeezers(r)),
                   SymplecticGaussian::interferometer(W2));
}

template <class Body>
SuiteCheck run_check(const std::string &name, double tolerance, Body &&body) {
    SuiteCheck c;
    c.name = name;
    c.tolerance = tolerance;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
        c.pass = c.worst < tolerance;
    } catch (const std::exception &e) {
        c.pass = false;
        c.note = e.what();
    }
    c.seconds = seconds_since(t0);
    return c;
}

}  // namespace

SuiteReport run_validate(bool quick, std::uint64_t seed) {
    const int many = quick ? 20 : 100;
    const int few = quick ? 6 : 30;
    SuiteReport report;
    std::mt19937_64 master(seed);
    const auto stream = [&] { return std::mt19937_64(master()); };

    report.checks.push_back(run_check("symplectic_circuits", 1e-10, [&](SuiteCheck &c) {
        auto rng = stream();
        for (int i = 0; i < many; ++i, ++c.instances) {
            const auto T = random_circuit(2 + i % 4, rng, 8.0);
            const auto v = validate_symplectic(T.U, T.V);
            c.worst = std::max({c.worst, v.residual_norm, v.residual_symmetry});
        }
    }));

    for (const auto &[label, kind] : {std::pair{"reordering_a", ReorderingKind::A},
                                      std::pair{"reordering_b", ReorderingKind::B},
                                      std::pair{"reordering_c", ReorderingKind::C}}) {
        report.checks.push_back(run_check(label, 1e-10, [&, kind = kind](SuiteCheck &c) {
            auto rng = stream();
            int fock = 0;
            for (int i = 0; i < many; ++i, ++c.instances) {
                const int M = 1 + i % 3;
                const CMat A = random_symmetric(M, rng, 0.2);
                const CMat second = kind == ReorderingKind::A || kind == ReorderingKind::B ? random_complex(M, rng, 0.3)
                                                                                           : random_symmetric(M, rng, 0.2);
                const CMat first = kind == ReorderingKind::B ? random_symmetric(M, rng, 0.3) : A;
                const ReorderingResidual r = check_reordering_identity(kind, first, second);
                c.worst = std::max(c.worst, r.representation);
                if (r.fock >= 0.0) {
                    ++fock;
                    // Fock residuals are held to 1e-8; scale onto the check tolerance.
                    c.worst = std::max(c.worst, r.fock * 1e-2);
                }
            }
            if (kind == ReorderingKind::C) c.note = std::to_string(fock) + " instances Fock-verified";
        }));
    }

    report.checks.push_back(run_check("hafnian_identity", 1e-9, [&](SuiteCheck &c) {
        auto rng = stream();
        for (int i = 0; i < many; ++i, ++c.instances) {
            const int size = 2 + 2 * (i % 3);
            const CMat S = random_symmetric(6, rng, 0.4), R = random_symmetric(6, rng, 0.4);
            std::vector<int> beta;
            for (int j = 0; j < size; ++j) beta.push_back(j);
            c.worst = std::max(c.worst, verify_hafnian_identity(S, R, beta));
        }
    }));

    report.checks.push_back(run_check("linear_optics_limit", 1e-10, [&](SuiteCheck &c) {
        auto rng = stream();
        for (int i = 0; i < many; ++i, ++c.instances) {
            const int M = 2 + i % 4;
            const int N = 1 + i % 3;
            const CMat W = haar_unitary(M, rng());
            const auto in = random_subset(M, std::min(N, M), rng), out = random_subset(M, std::min(N, M), rng);
            const double p = ubs_probability({SymplecticGaussian::interferometer(W), in, out});
            c.worst = std::max(c.worst, std::abs(p - sbs_probability(W, in, out)));
        }
    }));

    report.checks.push_back(run_check("zero_input_limit", 1e-12, [&](SuiteCheck &c) {
        auto rng = stream();
        for (int i = 0; i < many; ++i, ++c.instances) {
            const int M = 2 + i % 3;
            const auto T = random_circuit(M, rng, 6.0);
            const auto out = random_subset(M, 2 * (1 + i % 2) <= M ? 2 * (1 + i % 2) : 2, rng);
            const double p = ubs_probability({T, PhotonPattern::zeros(M), out});
            c.worst = std::max(c.worst, std::abs(p - gbs_probability(T, out)));
        }
    }));

    report.checks.push_back(run_check("backend_triangle", 5e-7, [&](SuiteCheck &c) {
        auto rng = stream();
        double haf = 0.0;
        for (int i = 0; i < few; ++i, ++c.instances) {
            const int M = 2 + i % 3;
            const int n = 1 + i % 3 <= M ? 1 + i % 3 : M;
            const int m = (n % 2 == 0) ? 2 : 1;
            const auto T = random_circuit(M, rng, 6.0);
            const TransitionSpec spec{T, random_subset(M, n, rng), random_subset(M, std::min(m + (i % 2) * 2, M), rng)};
            const double pt = ubs_probability(spec);
            const double ph = ubs_probability_hafnian(spec);
            const OracleResult po = oracle_probability(T, spec.input, spec.output);
            haf = std::max(haf, std::abs(pt - ph));
            c.worst = std::max({c.worst, std::abs(pt - po.value), std::abs(ph - po.value)});
        }
        if (haf >= 1e-8) c.worst = std::max(c.worst, 1.0);
        c.note = "max |taylor - hafnian| = " + fmt(haf);
    }));

    report.checks.push_back(run_check("moments_vs_oracle", 1e-8, [&](SuiteCheck &c) {
        auto rng = stream();
        double fd_ratio = 0.0;
        for (int i = 0; i < few; ++i, ++c.instances) {
            const int M = 1 + i % 3;
            const auto T = random_circuit(M, rng, 6.0);
            std::uniform_int_distribution<int> mode(0, M - 1);
            PhotonPattern in = PhotonPattern::zeros(M), k = in, l = in;
            in.occupations[static_cast<size_t>(mode(rng))] += i % 2;
            for (int j = 0; j < 2 + 2 * (i % 2); ++j) (rng() % 2 ? k : l).occupations[static_cast<size_t>(mode(rng))]++;
            const int cutoff = M == 1 ? 120 : (M == 2 ? 90 : 60);
            const OracleMoment o = oracle_moment(T, in, k, l, cutoff);
            const cplx exact = moment(T, in, k, l, MomentBackend::Taylor);
            c.worst = std::max(c.worst, std::abs(exact - o.value) / std::max(1.0, std::abs(o.value)));
            const int n = in.total() + k.total() + l.total();
            const cplx fd = moment(T, in, k, l);
            fd_ratio = std::max(fd_ratio, std::abs(fd - exact) / fd_absolute_error(n + n % 2));
        }
        if (fd_ratio > 20.0) c.worst = std::max(c.worst, 1.0);
        c.note = "max finite-difference error / eps_abs(n) = " + fmt(fd_ratio);
    }));

    report.checks.push_back(run_check("product_state_negativity", 1e-300, [&](SuiteCheck &c) {
        for (int d = 1; d <= 2; ++d, ++c.instances) {
            const auto rep =
                analyze_entanglement(entanglement_circuit(d, 0.0, false), PhotonPattern::zeros(2 * d), Bipartition{d});
            c.worst = std::max(c.worst, rep.negativity.log_negativity);
        }
    }));
    return report;
}

nlohmann::json to_json(const SuiteReport &r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto &c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"instances", c.instances},
                          {"worst", c.worst},
                          {"tolerance", c.tolerance},
                          {"seconds", c.seconds},
                          {"note", c.note}});
    }
    return {{"pass", r.all_pass()}, {"checks", checks}};
}

}  // namespace ubs
