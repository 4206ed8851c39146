// Copyright 2026 The qsdc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Batch experiment runner: exposes the library operations as subcommands
// and writes reproducible CSV/JSON artifacts.
//
// Exit codes: 0 success, 2 malformed input, 3 invariant violation,
// 4 solver failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qsdc/programs.hpp"
#include "qsdc/protocol.hpp"
#include "qsdc/seesaw.hpp"
#include "qsdc/serialize.hpp"
#include "qsdc/states.hpp"
#include "qsdc/witness.hpp"

namespace {

using nlohmann::json;
using namespace qsdc;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitSolver = 4;

json policy_json(const NumericPolicy& policy) {
    return json{{"symmetry_tol", policy.symmetry_tol},
                {"psd_tol", policy.psd_tol},
                {"trace_tol", policy.trace_tol},
                {"zero_tol", policy.zero_tol},
                {"completeness_tol", policy.completeness_tol},
                {"max_dim", policy.max_dim}};
}

json meta_json(const OutputMeta& meta) {
    return json{{"tool", meta.tool},
                {"version", meta.version},
                {"seed", meta.seed},
                {"input_hash", meta.input_hash},
                {"policy", policy_json(meta.policy)}};
}

void emit(const std::string& content, const std::string& output) {
    if (output.empty())
        std::cout << content;
    else
        write_file(output, content);
}

struct StateSpec {
    std::string file;
    std::string family;
    int d = 2;
    double chi = 1.0;
    double alpha = 1.0;

    DensityOperator build(const NumericPolicy& policy) const {
        if (!file.empty()) return density_from_json(read_file(file), policy);
        if (family.empty())
            throw std::invalid_argument("provide --state FILE or --family NAME");
        if (family == "isotropic") return isotropic(d, chi, policy);
        if (family == "werner") return werner(d, alpha, policy);
        if (family == "max_entangled") return pure_to_density(max_entangled(d, policy));
        throw std::invalid_argument("unknown state family: " + family);
    }

    std::string hash() const {
        if (!file.empty()) return hash_of_string(read_file(file));
        std::ostringstream key;
        key << "family=" << family << ";d=" << d;
        if (family == "isotropic") key << ";chi=" << format_double(chi);
        if (family == "werner") key << ";alpha=" << format_double(alpha);
        return hash_of_string(key.str());
    }

    void add_options(CLI::App* cmd, bool file_allowed = true) {
        if (file_allowed) cmd->add_option("--state", file, "state JSON file");
        cmd->add_option("--family", family,
                        "named family: isotropic | werner | max_entangled");
        cmd->add_option("--d", d, "local dimension of the named family");
        cmd->add_option("--chi", chi, "isotropic visibility");
        cmd->add_option("--alpha", alpha, "werner parameter");
    }
};

int upper_schmidt_number(const DensityOperator& shared, const NumericPolicy& policy) {
    // Pure shared states carry their exact Schmidt rank; for mixed states
    // fall back to the dimension bound min(d_a, d_b).
    const HermitianEig eig = herm_eig(shared.matrix, policy);
    if (eig.eigenvalues(0) >= 1.0 - 1e-9) {
        PureState psi{eig.eigenvectors.col(0), shared.d_a, shared.d_b};
        return schmidt_rank(psi, policy);
    }
    return std::min(shared.d_a, shared.d_b);
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const std::string& protocol_path, const std::string& output,
                 std::uint64_t seed, const NumericPolicy& policy) {
    const std::string text = read_file(protocol_path);
    const ProtocolDocument doc = protocol_from_json(text, policy);

    OutputMeta meta;
    meta.seed = seed;
    meta.policy = policy;
    meta.input_hash = hash_of_string(text);

    const Behavior b = behavior(doc.family, doc.povms, policy);
    const ScenarioShape& shape = b.shape();
    const int n = shape.n_preparations;
    const int d_a = doc.family.shared_state.d_a;
    const int s_cap = upper_schmidt_number(doc.family.shared_state, policy);

    json summary;
    summary["meta"] = meta_json(meta);
    summary["shape"] = {{"n_preparations", n},
                        {"n_settings", shape.n_settings},
                        {"n_outcomes", shape.n_outcomes}};
    summary["d_a"] = d_a;
    summary["d_b"] = doc.family.shared_state.d_b;
    summary["schmidt_number_cap"] = s_cap;
    if (shape.n_settings == 1 && shape.n_outcomes == n) {
        const double value = p_suc(b);
        summary["kind"] = "success_probability";
        summary["p_suc"] = round_sig(value);
        summary["bound"] = round_sig(psuc_bound(d_a, s_cap, n));
        summary["classical_bound"] = round_sig(psuc_bound(d_a, 1, n));
        summary["schmidt_number_lower_bound"] = schmidt_number_lower_bound(value, d_a, n);
        if (n == d_a * d_a) {
            const CertificationVerdict verdict =
                selftest_check(doc.family, doc.povms.front(), 1e-6, 1e-4, policy);
            summary["selftest"] = json::parse(verdict_to_json(
                verdict, hash_of_family(doc.family), hash_of_povm(doc.povms.front())));
        }
    } else if (shape.n_outcomes == 2 && shape.n_settings == n * (n - 1) / 2) {
        const double value = v_n(b);
        summary["kind"] = "pair_witness";
        summary["v_n"] = round_sig(value);
        summary["bound"] = round_sig(vn_bound(d_a, s_cap, n));
        summary["classical_bound"] = round_sig(vn_bound(d_a, 1, n));
    } else {
        summary["kind"] = "behavior_only";
    }

    const std::string prefix = output.empty() ? "simulate" : output;
    write_file(prefix + ".behavior.csv", behavior_to_csv(b, meta));
    write_file(prefix + ".summary.json", summary.dump(2) + "\n");
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// seesaw

json seesaw_result_json(const SeesawResult& result, const DensityOperator& shared, int n,
                        const SeesawConfig& config, const OutputMeta& meta) {
    json j;
    j["meta"] = meta_json(meta);
    j["d_a"] = shared.d_a;
    j["d_b"] = shared.d_b;
    j["n_preparations"] = n;
    j["restarts"] = config.restarts;
    j["tol"] = config.tol;
    j["max_rounds"] = config.max_rounds;
    j["best_value"] = round_sig(result.best_value);
    j["best_restart"] = result.best_restart;
    j["rounds_used"] = result.rounds_used;
    j["classical_bound"] = round_sig(psuc_bound(shared.d_a, 1, n));
    const int s_cap = std::min(shared.d_a, shared.d_b);
    j["bound_cap"] = round_sig(psuc_bound(shared.d_a, s_cap, n));
    j["schmidt_number_lower_bound"] =
        schmidt_number_lower_bound(std::min(result.best_value, 1.0), shared.d_a, n);
    j["entangled"] = schmidt_number_lower_bound(std::min(result.best_value, 1.0),
                                                shared.d_a, n) >= 2;
    int failed = 0;
    for (const RestartTrace& t : result.traces) failed += t.failed ? 1 : 0;
    j["failed_restarts"] = failed;
    return j;
}

int cmd_seesaw(const StateSpec& spec, int n, int restarts, std::uint64_t seed, double tol,
               int max_rounds, const std::string& output, bool verbose,
               const NumericPolicy& policy) {
    const DensityOperator shared = spec.build(policy);

    SeesawConfig config;
    config.n_preparations = n > 0 ? n : shared.d_a * shared.d_a;
    config.restarts = restarts > 0 ? restarts : (shared.d_a <= 3 ? 10 : 20);
    config.seed = seed;
    config.tol = tol;
    config.max_rounds = max_rounds;
    if (verbose) config.sdp.iteration_log = &std::cerr;

    const SeesawResult result = seesaw_psuc(shared, config, nullptr, policy);

    OutputMeta meta;
    meta.seed = seed;
    meta.policy = policy;
    meta.input_hash = spec.hash();

    const json j = seesaw_result_json(result, shared, config.n_preparations, config, meta);
    const std::string prefix = output.empty() ? "seesaw" : output;
    write_file(prefix + ".result.json", j.dump(2) + "\n");
    write_file(prefix + ".trace.csv", seesaw_trace_to_csv(result, meta));

    ProtocolDocument doc;
    doc.family.shared_state = shared;
    for (const ChoiOperator& choi : result.best_encodings)
        doc.family.encodings.push_back(Encoding::choi(choi.matrix));
    doc.povms.push_back(result.best_povm);
    write_file(prefix + ".protocol.json", protocol_to_json(doc, &meta));

    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepRow {
    double param = 0.0;
    double value = 0.0;
    int schmidt_lower = 1;
    bool ok = false;
};

int cmd_sweep(const std::string& family, int d, double param_min, double param_max,
              double param_step, int n, int restarts, std::uint64_t seed, double tol,
              int max_rounds, int threads, const std::string& output,
              const NumericPolicy& policy) {
    if (family != "isotropic" && family != "werner")
        throw std::invalid_argument("sweep: family must be isotropic or werner");
    if (param_step <= 0.0) throw std::invalid_argument("sweep: step must be positive");

    const int n_points =
        static_cast<int>(std::floor((param_max - param_min) / param_step + 1e-9)) + 1;
    if (n_points < 1) throw std::invalid_argument("sweep: empty parameter grid");
    std::vector<double> grid;
    grid.reserve(n_points);
    for (int i = 0; i < n_points; ++i) grid.push_back(round_sig(param_min + i * param_step));

    const int n_prep = n > 0 ? n : d * d;
    std::ostringstream key;
    key << "sweep;family=" << family << ";d=" << d << ";min=" << format_double(param_min)
        << ";max=" << format_double(param_max) << ";step=" << format_double(param_step)
        << ";n=" << n_prep << ";restarts=" << restarts << ";threads=" << threads;

    OutputMeta meta;
    meta.seed = seed;
    meta.policy = policy;
    meta.input_hash = hash_of_string(key.str());

    std::vector<SweepRow> rows(grid.size());

    // Points are processed from the top of the grid downwards so each point
    // can warm-start from its upper neighbour, where the optimum is easier
    // to find; rows are emitted in grid order regardless.  With multiple
    // workers the grid is split into contiguous chunks, one descending chain
    // per worker.
    const int n_workers = std::max(1, threads);
    auto run_chunk = [&](std::size_t begin, std::size_t end) {
        Povm warm;
        bool have_warm = false;
        for (std::size_t idx = end; idx-- > begin;) {
            SweepRow& row = rows[idx];
            row.param = grid[idx];
            try {
                const DensityOperator shared = family == "isotropic"
                                                   ? isotropic(d, grid[idx], policy)
                                                   : werner(d, grid[idx], policy);
                SeesawConfig config;
                config.n_preparations = n_prep;
                config.restarts = restarts;
                config.seed = seed;
                config.tol = tol;
                config.max_rounds = max_rounds;
                const SeesawResult result =
                    seesaw_psuc(shared, config, have_warm ? &warm : nullptr, policy);
                row.value = result.best_value;
                row.schmidt_lower = schmidt_number_lower_bound(
                    std::min(result.best_value, 1.0), d, n_prep);
                row.ok = true;
                warm = result.best_povm;
                have_warm = true;
            } catch (const SolverFailure&) {
                row.ok = false;
                have_warm = false;
            }
        }
    };

    if (n_workers == 1 || grid.size() < 2) {
        run_chunk(0, grid.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (grid.size() + n_workers - 1) / n_workers;
        for (int w = 0; w < n_workers; ++w) {
            const std::size_t begin = std::min(grid.size(), w * chunk);
            const std::size_t end = std::min(grid.size(), begin + chunk);
            if (begin < end) pool.emplace_back(run_chunk, begin, end);
        }
        for (std::thread& t : pool) t.join();
    }

    const double classical = psuc_bound(d, 1, n_prep);
    std::ostringstream csv;
    csv << meta_comment_lines(meta);
    csv << "# family=" << family << " d=" << d << " n=" << n_prep
        << " restarts=" << restarts << "\n";
    csv << "param,p_suc,p_suc_rescaled,classical_bound,schmidt_number_lower_bound,"
           "entangled,status\n";
    for (const SweepRow& row : rows) {
        csv << format_double(row.param) << ',';
        if (row.ok) {
            csv << format_double(round_sig(row.value)) << ','
                << format_double(round_sig(d * row.value)) << ','
                << format_double(classical) << ',' << row.schmidt_lower << ','
                << (row.schmidt_lower >= 2 ? 1 : 0) << ",ok\n";
        } else {
            csv << ",,," << format_double(classical) << ",,,solver_failure\n";
        }
    }
    emit(csv.str(), output);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// witness

int cmd_witness(int d, int s, int n, const std::string& output, const std::string& format,
                std::uint64_t seed, const NumericPolicy& policy) {
    const int s_eff = s > 0 ? s : d;
    const int n_eff = n > 0 ? n : d * d;
    std::ostringstream key;
    key << "witness;d=" << d << ";s=" << s_eff << ";n=" << n_eff;

    OutputMeta meta;
    meta.seed = seed;
    meta.policy = policy;
    meta.input_hash = hash_of_string(key.str());

    const ComparisonConstants constants = comparison_constants(d);
    const double p_bound = psuc_bound(d, s_eff, n_eff);
    const double v_bound = vn_bound(d, s_eff, n_eff);
    std::optional<double> classical;
    if (n_eff <= 9 && d <= 3) classical = classical_optimum_bruteforce(n_eff, d);

    if (format == "csv") {
        std::ostringstream csv;
        csv << meta_comment_lines(meta);
        csv << "quantity,value\n";
        csv << "d," << d << "\n";
        csv << "s," << s_eff << "\n";
        csv << "n," << n_eff << "\n";
        csv << "psuc_bound," << format_double(p_bound) << "\n";
        csv << "vn_bound," << format_double(v_bound) << "\n";
        if (classical) csv << "classical_optimum," << format_double(*classical) << "\n";
        csv << "chi_crit_sdc_isotropic," << format_double(constants.sdc_isotropic) << "\n";
        csv << "chi_crit_steering_isotropic," << format_double(constants.steering_isotropic)
            << "\n";
        csv << "alpha_crit_steering_werner," << format_double(constants.steering_werner)
            << "\n";
        csv << "alpha_crit_sdc_werner_observed,"
            << format_double(constants.werner_sdc_observed) << "\n";
        emit(csv.str(), output);
        return kExitOk;
    }

    json j;
    j["meta"] = meta_json(meta);
    j["d"] = d;
    j["s"] = s_eff;
    j["n"] = n_eff;
    j["psuc_bound"] = round_sig(p_bound);
    j["vn_bound"] = round_sig(v_bound);
    if (classical) j["classical_optimum"] = round_sig(*classical);
    j["constants"] = {{"chi_crit_sdc_isotropic", round_sig(constants.sdc_isotropic)},
                      {"chi_crit_steering_isotropic",
                       round_sig(constants.steering_isotropic)},
                      {"alpha_crit_steering_werner", round_sig(constants.steering_werner)},
                      {"alpha_crit_sdc_werner_observed",
                       round_sig(constants.werner_sdc_observed)}};
    emit(j.dump(2) + "\n", output);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// vn

int cmd_vn(int d, int n, const std::string& output, std::uint64_t seed,
           const NumericPolicy& policy) {
    std::ostringstream key;
    key << "vn;d=" << d << ";n=" << n;
    OutputMeta meta;
    meta.seed = seed;
    meta.policy = policy;
    meta.input_hash = hash_of_string(key.str());

    const PreparationFamily family = vn_weyl_preparations(d, n);
    const std::vector<Povm> povms = pairwise_helstrom_povms(family, policy);
    const double value = v_n(behavior(family, povms, policy));
    const double purity = preparation_purity(family, policy);
    const double bound = vn_bound(d, d, n);

    const int c = n / (d * d);
    const int leftover = n % (d * d);

    json j;
    j["meta"] = meta_json(meta);
    j["d"] = d;
    j["n"] = n;
    j["v_n"] = round_sig(value);
    j["bound"] = round_sig(bound);
    j["saturated"] = std::abs(value - bound) <= 1e-8;
    j["purity"] = round_sig(purity);
    if (c * leftover == 0)
        j["purity_formula"] =
            round_sig(static_cast<double>(leftover + c * n) / (static_cast<double>(n) * n));
    emit(j.dump(2) + "\n", output);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"superdense-coding simulation and certification toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    NumericPolicy policy;
    std::uint64_t seed = 0;
    double tol = 1e-7;
    int restarts = 0;  // 0 = per-command default
    bool verbose = false;
    std::string output;
    std::string format = "json";

    app.add_option("--seed", seed, "RNG seed, echoed into outputs");
    app.add_option("--tol", tol, "convergence tolerance for iterative optimizers");
    app.add_option("--restarts", restarts, "restart count for iterative optimizers");
    app.add_option("--output", output, "output path (or prefix for multi-file commands)");
    app.add_option("--format", format, "output format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--verbose", verbose, "log solver iterations to stderr");

    auto* sim = app.add_subcommand("simulate", "simulate a protocol file");
    std::string protocol_path;
    sim->add_option("--protocol", protocol_path, "protocol JSON file")->required();

    auto* see = app.add_subcommand("seesaw", "alternating lower bound on the success");
    StateSpec see_spec;
    see_spec.add_options(see);
    int see_n = 0, see_rounds = 60;
    see->add_option("--n", see_n, "number of preparations (default d_a^2)");
    see->add_option("--max-rounds", see_rounds, "cap on alternation rounds");

    auto* sweep = app.add_subcommand("sweep", "seesaw over a parameter grid");
    std::string sweep_family = "werner";
    int sweep_d = 2, sweep_n = 0, sweep_rounds = 60, sweep_threads = 1;
    double sweep_min = 0.0, sweep_max = 1.0, sweep_step = 0.05;
    sweep->add_option("--family", sweep_family, "isotropic | werner");
    sweep->add_option("--d", sweep_d, "local dimension");
    sweep->add_option("--param-min", sweep_min, "grid start");
    sweep->add_option("--param-max", sweep_max, "grid end (inclusive)");
    sweep->add_option("--param-step", sweep_step, "grid step");
    sweep->add_option("--n", sweep_n, "number of preparations (default d^2)");
    sweep->add_option("--max-rounds", sweep_rounds, "cap on alternation rounds");
    sweep->add_option("--threads", sweep_threads, "worker pool size");

    auto* wit = app.add_subcommand("witness", "print bounds and reference constants");
    int wit_d = 2, wit_s = 0, wit_n = 0;
    wit->add_option("--d", wit_d, "local dimension");
    wit->add_option("--s", wit_s, "Schmidt number (default d)");
    wit->add_option("--n", wit_n, "number of preparations (default d^2)");

    auto* vn_cmd = app.add_subcommand("vn", "pair-witness construction and its value");
    int vn_d = 2, vn_n = 4;
    vn_cmd->add_option("--d", vn_d, "local dimension");
    vn_cmd->add_option("--n", vn_n, "number of preparations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (sim->parsed()) return cmd_simulate(protocol_path, output, seed, policy);
        if (see->parsed())
            return cmd_seesaw(see_spec, see_n, restarts, seed, tol, see_rounds, output,
                              verbose, policy);
        if (sweep->parsed())
            return cmd_sweep(sweep_family, sweep_d, sweep_min, sweep_max, sweep_step,
                             sweep_n, restarts > 0 ? restarts : 4, seed, tol, sweep_rounds,
                             sweep_threads, output, policy);
        if (wit->parsed()) return cmd_witness(wit_d, wit_s, wit_n, output, format, seed, policy);
        if (vn_cmd->parsed()) return cmd_vn(vn_d, vn_n, output, seed, policy);
    } catch (const SolverFailure& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitInput;
}
