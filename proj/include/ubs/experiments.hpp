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
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "ubs/entanglement.hpp"
#include "ubs/probability.hpp"

namespace ubs {

std::uint64_t splitmix64(std::uint64_t x);

/**
 * @brief Per-run seed of a sweep cell.
 *
 * splitmix64(master ^ tag(1, M) ^ tag(2, zeta_index) ^ tag(3, run)) with
 * tag(t, v) = splitmix64((t << 56) + v).
 */
std::uint64_t derive_seed(std::uint64_t master, int M, int zeta_index, int run);

/// n evenly spaced values on [lo, hi].
std::vector<double> linspace(double lo, double hi, int n);

// ---------------------------------------------------------------- sweep

struct SweepConfig {
    int m_min = 2;
    int m_max = 4;
    std::string scenario = "saturated";  // saturated: K = M; dilute: K = ceil(M/2); N = ceil(M/2)
    std::vector<double> zeta_db = linspace(0.0, 8.0, 12);
    int runs = 50;
    std::uint64_t master_seed = 2021;
    bool average_outputs = false;  // mean over every single-photon output instead of one random output
    std::string backend = "taylor";  // taylor | hafnian
    unsigned threads = 0;

    void validate() const;
};

void to_json(nlohmann::json &j, const SweepConfig &c);
void from_json(const nlohmann::json &j, SweepConfig &c);
SweepConfig load_sweep_config(const std::string &path);

struct ScenarioShape {
    int squeezed_modes;
    int photons;
};
ScenarioShape scenario_shape(const std::string &scenario, int M);

struct ResultRow {
    std::string scenario;
    int M = 0;
    int squeezed_modes = 0;
    int photons = 0;
    int zeta_index = 0;
    double zeta_db = 0.0;
    int runs = 0;
    int failed_runs = 0;
    double mean_d_P = 0.0;
    double se_d_P = 0.0;
    double mean_d_H = 0.0;
    double se_d_H = 0.0;
    double time_mean_s = 0.0;
    double time_sd_s = 0.0;
};

struct SweepResult {
    std::vector<ResultRow> rows;      // ordered by (M, zeta_index)
    std::vector<std::string> errors;  // manifest of failed runs
};

/// One ResultRow per (M, zeta); standard errors are sigma / sqrt(runs).
SweepResult run_distance_sweep(const SweepConfig &config);

constexpr const char *kSweepCsvVersion = "ubs-sweep-v1";
/// Timing columns come last so that they can be stripped for reproducibility checks.
void write_sweep_csv(std::ostream &out, const SweepResult &result, const SweepConfig &config);

/// Spearman rank correlation (average ranks for ties).
double spearman(const std::vector<double> &x, const std::vector<double> &y);

/// zeta values where d_P - d_H changes sign, linearly interpolated between grid points.
std::vector<double> distance_crossings(const std::vector<ResultRow> &rows_for_one_M);

// ---------------------------------------------------------------- timing

struct BenchConfig {
    int modes = 8;
    int max_photons = 4;  // grid over (N_in, N_out) in {1..max}^2
    double zeta_db = 3.0;
    std::vector<double> compare_zeta_db{1.0, 6.0};
    int compare_in = 3;
    int compare_out = 3;
    int repetitions = 10;
    double min_sample_seconds = 2e-3;  // each repetition loops the evaluation at least this long
    std::uint64_t master_seed = 7;
    bool hafnian = true;  // also time the hafnian backend and record its partition counts

    void validate() const;
};

void to_json(nlohmann::json &j, const BenchConfig &c);
void from_json(const nlohmann::json &j, BenchConfig &c);

struct BenchCell {
    std::string kind;  // "grid" or "zeta"
    int n_in = 0;
    int n_out = 0;
    double zeta_db = 0.0;
    int repetitions = 0;
    double mean_log10_time = 0.0;
    double sd_log10_time = 0.0;
    double mean_time_s = 0.0;
    double hafnian_mean_log10_time = 0.0;
    std::uint64_t partitions = 0;       // hafnian backend, per evaluation
    std::uint64_t prefactor_terms = 0;
    std::string status = "ok";
};

/// Wall time around probability evaluation only; forbidden-parity cells are evaluated in full.
std::vector<BenchCell> run_timing_bench(const BenchConfig &config);

constexpr const char *kBenchCsvVersion = "ubs-bench-v1";
void write_bench_csv(std::ostream &out, const std::vector<BenchCell> &cells, const BenchConfig &config);

// ---------------------------------------------------------------- entanglement

struct EntanglementScanConfig {
    int d = 6;
    std::vector<int> photons{2, 4, 6, 8};  // N_in, split equally between the parties
    std::vector<double> zeta_db = linspace(0.0, 10.0, 6);
    bool squeeze_party_one_only = false;
    std::string moment_backend = "auto";  // fd | taylor | auto (fd while at most 8 derivatives)
    FiniteDifferenceConfig fd;
    unsigned threads = 0;

    void validate() const;
};

void to_json(nlohmann::json &j, const EntanglementScanConfig &c);
void from_json(const nlohmann::json &j, EntanglementScanConfig &c);

/// Squeezers on all 2d modes (or party one only), then (1/sqrt 2)[[1, i1], [i1, 1]].
SymplecticGaussian entanglement_circuit(int d, double zeta_db, bool squeeze_party_one_only);

/// N_in / 2 photons per party, filling each party's modes in order.
PhotonPattern entanglement_input(int d, int n_in);

struct EntanglementRow {
    int d = 0;
    int n_in = 0;
    double zeta_db = 0.0;
    double mean_photon_number = 0.0;
    double log_negativity = 0.0;
    double eps_mean_photon = 0.0;
    double eps_log_negativity = 0.0;
    double eps_lambda = 0.0;
    int negative_count = 0;
    int derivative_order = 0;
    bool reliable = true;
    std::string backend;
};

/// Rows grouped by N_in; within a curve sorted by mean photon number.
std::vector<EntanglementRow> run_entanglement_scan(const EntanglementScanConfig &config);

constexpr const char *kEntanglementCsvVersion = "ubs-entanglement-v1";
void write_entanglement_csv(std::ostream &out, const std::vector<EntanglementRow> &rows,
                            const EntanglementScanConfig &config);

nlohmann::json entanglement_report_json(const EntanglementReport &rep, MomentBackend backend);

// ---------------------------------------------------------------- validation

struct SuiteCheck {
    std::string name;
    bool pass = false;
    int instances = 0;
    double worst = 0.0;
    double tolerance = 0.0;
    double seconds = 0.0;
    std::string note;
};

struct SuiteReport {
    std::vector<SuiteCheck> checks;
    bool all_pass() const;
};

/// Invariant suite: reordering identities, hafnian identity, limiting cases, backend triangle, moments.
SuiteReport run_validate(bool quick, std::uint64_t seed = 2021);

nlohmann::json to_json(const SuiteReport &r);

}  // namespace ubs
