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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ubs/errors.hpp"
#include "ubs/experiments.hpp"
#include "ubs/fock_oracle.hpp"
#include "ubs/probability.hpp"
#include "ubs/symplectic.hpp"

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

template <class T>
T load_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ubs::DomainError("cannot open '" + path + "'");
    return nlohmann::json::parse(in).get<T>();
}

// Writes to `path`, or stdout when it is empty or "-".
template <class F>
void emit(const std::string &path, F &&write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw ubs::DomainError("cannot write '" + path + "'");
    write(out);
}

struct Residual {
    bool ok = false;
    double value = 0.0;
    std::string error;
};

Residual try_backend(const ubs::TransitionSpec &spec, ubs::Backend b) {
    Residual r;
    try {
        r.value = ubs::transition_probability(spec, b);
        r.ok = true;
    } catch (const std::exception &e) {
        r.error = e.what();
    }
    return r;
}

int cmd_prob(const std::string &circuit, const std::string &in, const std::string &out, const std::string &backend) {
    const ubs::CircuitSpec spec = ubs::load_circuit_spec(circuit);
    const ubs::TransitionSpec t{ubs::build_circuit_transform(spec), ubs::PhotonPattern::parse(in),
                                ubs::PhotonPattern::parse(out)};
    const ubs::Backend chosen = ubs::parse_backend(backend);
    const double p = ubs::transition_probability(t, chosen);
    std::cout << "probability " << num(p) << "\n";

    const Residual ta = try_backend(t, ubs::Backend::Taylor);
    const Residual ha = try_backend(t, ubs::Backend::Hafnian);
    const Residual orc = try_backend(t, ubs::Backend::Oracle);
    const auto diff = [](const Residual &a, const Residual &b) {
        return a.ok && b.ok ? num(std::abs(a.value - b.value)) : std::string("n/a");
    };
    std::cout << "residual taylor-hafnian " << diff(ta, ha) << "\n";
    std::cout << "residual taylor-oracle " << diff(ta, orc) << "\n";
    std::cout << "residual hafnian-oracle " << diff(ha, orc) << "\n";
    for (const auto *r : {&ta, &ha, &orc})
        if (!r->ok) std::cerr << "note: " << r->error << "\n";
    return 0;
}

int cmd_sweep(const std::string &config_path, const std::string &out) {
    const ubs::SweepConfig config = config_path.empty() ? ubs::SweepConfig{} : ubs::load_sweep_config(config_path);
    const ubs::SweepResult result = ubs::run_distance_sweep(config);
    emit(out, [&](std::ostream &os) { ubs::write_sweep_csv(os, result, config); });
    for (const auto &e : result.errors) std::cerr << "failed run: " << e << "\n";
    return result.errors.empty() ? 0 : 3;
}

int cmd_bench(const std::string &config_path, const std::string &out) {
    const ubs::BenchConfig config = config_path.empty() ? ubs::BenchConfig{} : load_json<ubs::BenchConfig>(config_path);
    const auto cells = ubs::run_timing_bench(config);
    emit(out, [&](std::ostream &os) { ubs::write_bench_csv(os, cells, config); });
    for (const auto &c : cells)
        if (c.status != "ok") return 3;
    return 0;
}

ubs::MomentsOptions moments_options(const std::string &backend, int derivative_order) {
    ubs::MomentsOptions opt;
    if (backend == "auto") {
        opt.backend = derivative_order <= ubs::kMaxFiniteDifferenceOrder ? ubs::MomentBackend::FiniteDifference
                                                                         : ubs::MomentBackend::Taylor;
    } else {
        opt.backend = ubs::parse_moment_backend(backend);
    }
    return opt;
}

int cmd_entanglement(const std::string &circuit, int per_party, int party_size, const std::string &backend,
                     const std::string &scan_config, bool full, const std::string &out) {
    if (!circuit.empty()) {
        const ubs::CircuitSpec spec = ubs::load_circuit_spec(circuit);
        if (spec.mode_count != 2 * party_size) {
            throw ubs::ShapeError("circuit has " + std::to_string(spec.mode_count) + " modes, expected 2 x party size");
        }
        const auto input = ubs::entanglement_input(party_size, 2 * per_party);
        const auto opt = moments_options(backend, input.total() + 4);
        const auto rep =
            ubs::analyze_entanglement(ubs::build_circuit_transform(spec), input, ubs::Bipartition{party_size}, opt);
        emit(out, [&](std::ostream &os) { os << ubs::entanglement_report_json(rep, opt.backend).dump(2) << "\n"; });
        return 0;
    }
    ubs::EntanglementScanConfig config;
    if (!scan_config.empty()) {
        config = load_json<ubs::EntanglementScanConfig>(scan_config);
    } else if (!full) {
        config.d = 2;
        config.photons = {2, 4};
    }
    config.moment_backend = backend;
    if (config.d > 3 && !full) throw ubs::ResourceError("party size above 3 takes hours; pass --full to run it");
    const auto rows = ubs::run_entanglement_scan(config);
    emit(out, [&](std::ostream &os) { ubs::write_entanglement_csv(os, rows, config); });
    return 0;
}

int cmd_validate(bool quick, std::uint64_t seed) {
    const ubs::SuiteReport report = ubs::run_validate(quick, seed);
    std::cout << ubs::to_json(report).dump(2) << "\n";
    return report.all_pass() ? 0 : 1;
}

int cmd_sample(const std::string &circuit, const std::string &in, int photons, int shots, std::uint64_t seed,
               const std::string &backend) {
    const ubs::CircuitSpec spec = ubs::load_circuit_spec(circuit);
    const auto input = ubs::PhotonPattern::parse(in);
    const auto dist =
        ubs::enumerate_distribution(ubs::build_circuit_transform(spec), input, photons, ubs::parse_backend(backend));
    std::vector<double> weights;
    double sector = 0.0;
    for (const auto &[pattern, p] : dist) {
        weights.push_back(p);
        sector += p;
    }
    if (sector <= 0.0) throw ubs::DomainError("the requested photon-number sector has zero probability");
    std::mt19937_64 rng(seed);
    std::discrete_distribution<size_t> pick(weights.begin(), weights.end());
    std::map<size_t, int> counts;
    for (int s = 0; s < shots; ++s) counts[pick(rng)]++;
    std::cout << "# sector_probability " << num(sector) << " seed " << seed << "\n";
    std::cout << "pattern,probability,conditional,count\n";
    for (size_t i = 0; i < dist.size(); ++i) {
        const auto it = counts.find(i);
        std::cout << '"' << dist[i].first.str() << "\"," << num(dist[i].second) << ',' << num(dist[i].second / sector)
                  << ',' << (it == counts.end() ? 0 : it->second) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"ubs: transition probabilities, moments and entanglement of Gaussian-transformed Fock states"};
    app.require_subcommand(1);
    int status = 0;

    std::string circuit, in, out, backend = "taylor";
    auto *prob = app.add_subcommand("prob", "Transition probability <out| T |in>");
    prob->add_option("--circuit", circuit, "Circuit JSON")->required();
    prob->add_option("--in", in, "Input occupations, e.g. 1,0,1")->required();
    prob->add_option("--out", out, "Output occupations")->required();
    prob->add_option("--backend", backend, "taylor | hafnian | oracle");
    prob->callback([&] { status = cmd_prob(circuit, in, out, backend); });

    std::string config, out_path;
    auto *sweep = app.add_subcommand("sweep", "L1 distances to the scattershot and Gaussian limits");
    sweep->add_option("--config", config, "Sweep JSON");
    sweep->add_option("--out", out_path, "CSV path (stdout if omitted)");
    sweep->callback([&] { status = cmd_sweep(config, out_path); });

    auto *bench = app.add_subcommand("bench", "Wall-time grid over input and output photon numbers");
    bench->add_option("--config", config, "Bench JSON");
    bench->add_option("--out", out_path, "CSV path (stdout if omitted)");
    bench->callback([&] { status = cmd_bench(config, out_path); });

    int per_party = 1, party_size = 2;
    std::string moments = "auto";
    bool full = false;
    auto *ent = app.add_subcommand("entanglement", "Log-negativity of the second-order moments matrix");
    ent->add_option("--circuit", circuit, "Circuit JSON on 2 x party-size modes (single report)");
    ent->add_option("--photons-per-party", per_party, "Photons injected into each party");
    ent->add_option("--party-size", party_size, "Modes per party");
    ent->add_option("--moments", moments, "fd | taylor | auto");
    ent->add_option("--config", config, "Scan JSON (without --circuit)");
    ent->add_flag("--full", full, "Allow party sizes above 3");
    ent->add_option("--out", out_path, "Output path (stdout if omitted)");
    ent->callback([&] { status = cmd_entanglement(circuit, per_party, party_size, moments, config, full, out_path); });

    bool quick = false;
    std::uint64_t seed = 2021;
    auto *val = app.add_subcommand("validate", "Run the invariant suite");
    val->add_flag("--quick", quick, "Reduced instance counts");
    val->add_option("--seed", seed, "Master seed");
    val->callback([&] { status = cmd_validate(quick, seed); });

    int photons = 0, shots = 1000;
    auto *sample = app.add_subcommand("sample", "Draw outputs from the exact distribution of one photon-number sector");
    sample->add_option("--circuit", circuit, "Circuit JSON")->required();
    sample->add_option("--in", in, "Input occupations")->required();
    sample->add_option("--photons", photons, "Output photon number")->required();
    sample->add_option("--shots", shots, "Number of draws");
    sample->add_option("--seed", seed, "RNG seed");
    sample->add_option("--backend", backend, "taylor | hafnian | oracle");
    sample->callback([&] { status = cmd_sample(circuit, in, photons, shots, seed, backend); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    } catch (const ubs::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return status;
}
