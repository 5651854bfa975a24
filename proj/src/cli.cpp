// Copyright 2026 The pvqa Authors.

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "pvqa/cli.hpp"

#include "pvqa/experiment.hpp"
#include "pvqa/json_io.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>

namespace pvqa::cli {

namespace {

// Largest mesh the factor command will simulate (modes = Hamiltonian dim).
constexpr std::size_t kMaxMeshModes = 64;

struct FactorOptions {
    std::optional<std::uint64_t> n;
    std::optional<std::size_t> reps;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> shots;
    bool exact = false;
    bool poisson = false;
    std::optional<double> h;
    std::optional<double> eta;
    std::optional<double> epsilon;
    std::optional<std::size_t> max_iters;
    std::optional<std::string> out;
    std::optional<std::size_t> threads;
    std::string config;
    bool force = false;
};

struct LandscapeOptions {
    std::string family;
    std::uint64_t n = 35;
    std::size_t grid = 101;
    std::string out;
};

struct DecomposeOptions {
    std::string in;
    std::string out;
};

struct HamiltonianOptions {
    std::uint64_t n = 0;
    bool general = false;
};

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

template <class T>
void take(const nlohmann::json &j, const char *key, T &dst) {
    if (j.contains(key) && !j.at(key).is_null()) {
        dst = j.at(key).get<T>();
    }
}

// Config file values first, then VQA_SEED, then flags on top.
experiment::ExperimentConfig resolve(const FactorOptions &o) {
    experiment::ExperimentConfig cfg;
    cfg.optimizer.shots = optimizer::ShotSettings{};
    std::optional<std::uint64_t> seed;

    if (!o.config.empty()) {
        const auto j = io::read_json_file(o.config);
        static const std::set<std::string> known{
            "n",       "repetitions", "seed",      "shots",   "exact",
            "shot_model", "h",       "eta",       "epsilon", "max_iters",
            "output_dir", "threads"};
        for (const auto &[key, value] : j.items()) {
            if (!known.contains(key)) {
                throw UsageError("unknown config key '" + key + "'");
            }
        }
        try {
            take(j, "n", cfg.n);
            take(j, "repetitions", cfg.repetitions);
            if (j.contains("seed")) {
                seed = j.at("seed").get<std::uint64_t>();
            }
            take(j, "h", cfg.optimizer.h);
            take(j, "eta", cfg.optimizer.eta);
            take(j, "epsilon", cfg.optimizer.epsilon);
            take(j, "max_iters", cfg.optimizer.max_iters);
            take(j, "threads", cfg.threads);
            if (j.contains("output_dir")) {
                cfg.output_dir = j.at("output_dir").get<std::string>();
            }
            if (j.contains("shots")) {
                if (j.at("shots").is_null()) {
                    cfg.optimizer.shots.reset();
                } else {
                    cfg.optimizer.shots = optimizer::ShotSettings{
                        j.at("shots").get<std::uint64_t>(), {}};
                }
            }
            if (j.value("exact", false)) {
                cfg.optimizer.shots.reset();
            }
            if (j.contains("shot_model") && cfg.optimizer.shots) {
                const auto m = j.at("shot_model").get<std::string>();
                if (m == "poisson") {
                    cfg.optimizer.shots->model = photonics::ShotModel::poisson;
                } else if (m != "multinomial") {
                    throw UsageError("shot_model must be multinomial or poisson");
                }
            }
        } catch (const nlohmann::json::exception &e) {
            throw UsageError(std::string("bad config value: ") + e.what());
        }
    }

    if (!seed) {
        if (const char *env = std::getenv("VQA_SEED"); env != nullptr) {
            try {
                seed = std::stoull(env);
            } catch (const std::exception &) {
                throw UsageError(std::string("VQA_SEED is not an integer: ") + env);
            }
        }
    }
    if (o.seed) {
        seed = o.seed;
    }
    if (seed) {
        cfg.master_seed = *seed;
    }

    if (o.n) {
        cfg.n = *o.n;
    }
    if (o.reps) {
        cfg.repetitions = *o.reps;
    }
    if (o.exact) {
        cfg.optimizer.shots.reset();
    }
    if (o.shots) {
        cfg.optimizer.shots = optimizer::ShotSettings{*o.shots, {}};
    }
    if (o.poisson) {
        if (!cfg.optimizer.shots) {
            throw UsageError("--poisson needs shot sampling, not --exact");
        }
        cfg.optimizer.shots->model = photonics::ShotModel::poisson;
    }
    if (o.h) {
        cfg.optimizer.h = *o.h;
    }
    if (o.eta) {
        cfg.optimizer.eta = *o.eta;
    }
    if (o.epsilon) {
        cfg.optimizer.epsilon = *o.epsilon;
    }
    if (o.max_iters) {
        cfg.optimizer.max_iters = *o.max_iters;
    }
    if (o.out) {
        cfg.output_dir = *o.out;
    }
    if (o.threads) {
        cfg.threads = *o.threads;
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    return cfg;
}

int cmd_factor(const FactorOptions &o, std::ostream &out, std::ostream &err) {
    const auto cfg = resolve(o);

    experiment::Problem problem = [&] {
        try {
            return experiment::prepare_problem(cfg.n);
        } catch (const factoring::InvalidInstance &e) {
            throw UsageError(e.what());
        } catch (const std::length_error &e) {
            throw UsageError(e.what());
        }
    }();
    if (problem.hamiltonian.dim() > kMaxMeshModes) {
        throw UsageError("N = " + std::to_string(cfg.n) + " needs a " +
                         std::to_string(problem.hamiltonian.dim()) +
                         "-mode mesh; the simulator is limited to " +
                         std::to_string(kMaxMeshModes));
    }

    for (const char *name : {"convergence.csv", "distribution.csv", "summary.json"}) {
        if (std::filesystem::exists(cfg.output_dir / name) && !o.force) {
            throw UsageError((cfg.output_dir / name).string() +
                             " exists; pass --force to overwrite");
        }
    }

    const auto &bits = problem.bits;
    out << "N = " << cfg.n << ": n_x = " << bits.nx << ", n_y = " << bits.ny
        << " ("
        << (bits.rule == factoring::BitRule::successive ? "successive-prime"
                                                        : "general")
        << " rule), " << bits.free_bits() << " unknown bits, "
        << problem.mesh.modes() << "-mode mesh with " << problem.mesh.size()
        << " MZIs\n";
    out << "runs: " << cfg.repetitions << ", seed " << cfg.master_seed << ", "
        << (cfg.optimizer.shots
                ? std::to_string(cfg.optimizer.shots->shots) + " shots/eval"
                : std::string("exact"))
        << '\n';

    const auto results = experiment::run_repetitions(cfg, problem);
    std::optional<experiment::AggregateStats> stats;
    try {
        stats = experiment::aggregate(results, problem.hamiltonian);
    } catch (const std::invalid_argument &e) {
        err << "warning: " << e.what() << '\n';
    }
    experiment::export_results(stats, results, problem.hamiltonian,
                               cfg.output_dir);

    std::size_t converged = 0;
    for (const auto &r : results) {
        converged += r.converged ? 1 : 0;
    }
    out << "converged: " << converged << "/" << results.size() << '\n';

    // Report the most probable basis state of the averaged distribution.
    photonics::OutputDistribution mean;
    if (stats) {
        mean = stats->mean_distribution;
    } else {
        mean.probs.assign(problem.hamiltonian.dim(), 0.0);
        for (const auto &r : results) {
            for (std::size_t k = 0; k < mean.size(); ++k) {
                mean.probs[k] += r.final_distribution.probs[k] /
                                 static_cast<double>(results.size());
            }
        }
    }
    const std::size_t best = mean.argmax();
    const auto pair = factoring::decode_solution(best, bits, cfg.n);
    if (stats) {
        out << "excluded: " << stats->excluded << ", valid decodings: "
            << stats->valid_fraction * 100.0 << "%\n";
        out << "fidelity to ground-state superposition: "
            << stats->fidelity_equal_superposition << '\n';
    }
    out << "most probable state |"
        << factoring::basis_label(best, bits.free_bits()) << "> (p = "
        << mean.probs[best] << ")\n";
    out << "factors: " << cfg.n << " = " << pair.x << " x " << pair.y << " ("
        << (pair.valid ? "valid" : "invalid") << ")\n";
    out << "results written to " << cfg.output_dir.string() << '\n';
    return pair.valid ? kOk : kNoFactorization;
}

int cmd_landscape(const LandscapeOptions &o, std::ostream &out) {
    experiment::LandscapeFamily family;
    std::optional<experiment::Problem> problem;
    try {
        family = experiment::parse_family(o.family);
        problem = experiment::prepare_problem(o.n);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    experiment::LandscapeGrid grid;
    try {
        grid = experiment::landscape_sweep(family, problem->hamiltonian, o.grid);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    if (o.out.empty()) {
        experiment::write_landscape_csv(grid, out);
    } else {
        experiment::write_landscape_csv(grid, std::filesystem::path(o.out));
    }
    return kOk;
}

int cmd_decompose(const DecomposeOptions &o, std::ostream &out,
                  std::ostream &err) {
    CMatrix m;
    try {
        m = io::matrix_from_json(io::read_json_file(o.in));
    } catch (const io::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    std::optional<mesh::UnitaryMatrix> u;
    try {
        u = mesh::UnitaryMatrix::checked(std::move(m));
    } catch (const mesh::NonUnitaryError &e) {
        err << "error: " << e.what() << '\n';
        return kNonUnitary;
    }
    const auto layout = mesh::MeshLayout::rectangular(u->modes());
    const auto d = mesh::decompose_unitary(*u, layout);
    const double fidelity =
        amplitude_fidelity(u->matrix(), d.recompose(layout));
    auto j = io::decomposition_to_json(layout, d);
    j["fidelity"] = fidelity;
    if (o.out.empty()) {
        out << j.dump(2) << '\n';
    } else {
        io::write_json_file(o.out, j);
    }
    out << "round-trip fidelity: " << fidelity << '\n';
    return kOk;
}

int cmd_hamiltonian(const HamiltonianOptions &o, std::ostream &out) {
    try {
        const factoring::SemiprimeInstance inst(o.n, !o.general);
        const auto bits = factoring::bit_lengths(inst);
        out << io::hamiltonian_to_json(factoring::build_hamiltonian(bits, o.n))
                   .dump()
            << '\n';
    } catch (const factoring::InvalidInstance &e) {
        throw UsageError(e.what());
    } catch (const std::length_error &e) {
        throw UsageError(e.what());
    }
    return kOk;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
    CLI::App app{"Photonic variational factoring: mesh simulation, "
                 "finite-difference descent and reporting"};
    app.require_subcommand(1);
    // -h is not a help alias: factor takes --h for the finite-difference step.
    app.set_help_flag("--help", "Print this help message and exit");

    FactorOptions fo;
    auto *factor = app.add_subcommand("factor", "Factor N with repeated "
                                                "variational runs");
    factor->add_option("N", fo.n, "Odd integer >= 9 to factor");
    factor->add_option("--reps", fo.reps, "Repetitions (default 117)");
    factor->add_option("--seed", fo.seed, "Master seed (fallback: VQA_SEED)");
    auto *shots_opt =
        factor->add_option("--shots", fo.shots, "Shots per evaluation (default 10000)");
    auto *exact_opt =
        factor->add_flag("--exact", fo.exact, "Exact probabilities (infinite shots)");
    shots_opt->excludes(exact_opt);
    factor->add_flag("--poisson", fo.poisson,
                     "Poisson counts instead of multinomial");
    factor->add_option("--h", fo.h, "Finite-difference spacing (default 0.01)");
    factor->add_option("--eta", fo.eta, "Learning rate (default 0.03)");
    factor->add_option("--epsilon", fo.epsilon,
                       "Energy-change threshold (default 1e-4)");
    factor->add_option("--max-iters", fo.max_iters, "Iteration cap (default 500)");
    factor->add_option("--out", fo.out, "Output directory (default ./out)");
    factor->add_option("--threads", fo.threads, "Worker threads (0 = all cores)");
    factor->add_option("--config", fo.config, "JSON config file");
    factor->add_flag("--force", fo.force, "Overwrite existing outputs");

    LandscapeOptions lo;
    auto *landscape =
        app.add_subcommand("landscape", "Energy landscape over a state family");
    landscape->add_option("--family", lo.family, "a, b or c")->required();
    landscape->add_option("--n", lo.n, "N (default 35)");
    landscape->add_option("--grid", lo.grid, "Points per axis (default 101)");
    landscape->add_option("--out", lo.out, "CSV file (default stdout)");

    DecomposeOptions dopt;
    auto *decompose = app.add_subcommand(
        "decompose", "Decompose a unitary into rectangular-mesh phases");
    decompose->add_option("--in", dopt.in, "Matrix JSON")->required();
    decompose->add_option("--out", dopt.out, "Phases JSON (default stdout)");

    HamiltonianOptions ho;
    auto *hamiltonian =
        app.add_subcommand("hamiltonian", "Print the problem Hamiltonian as JSON");
    hamiltonian->add_option("N", ho.n, "Odd integer >= 9")->required();
    hamiltonian->add_flag("--general", ho.general,
                          "Use the general bit-length rule");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) {
        rev.pop_back();
    }
    try {
        app.parse(std::move(rev));
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*factor) {
            if (!fo.n && fo.config.empty()) {
                throw UsageError("factor needs N or --config");
            }
            return cmd_factor(fo, out, err);
        }
        if (*landscape) {
            return cmd_landscape(lo, out);
        }
        if (*decompose) {
            return cmd_decompose(dopt, out, err);
        }
        if (*hamiltonian) {
            return cmd_hamiltonian(ho, out);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const io::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

} // namespace pvqa::cli
