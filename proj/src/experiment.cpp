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
#include "pvqa/experiment.hpp"

#include "pvqa/seeding.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace pvqa::experiment {

namespace {

using optimizer::RunResult;
using photonics::cplx;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_for_write(const std::filesystem::path &file) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + file.string() + " for writing");
    }
    return out;
}

void close_checked(std::ofstream &out, const std::filesystem::path &file) {
    out.close();
    if (!out) {
        throw std::runtime_error("failed writing " + file.string());
    }
}

bool is_excluded(const RunResult &r) {
    const auto &last = r.final_record();
    return last.energy_shifted >= 0.0 && last.energy_raw > 0.0;
}

unsigned label_width(const factoring::DiagonalHamiltonian &h) {
    return h.layout().free_bits();
}

std::string gap_key(double gap) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.0e", gap);
    // "1e-02" -> "1e-2"
    std::string s(buf);
    const auto e = s.find("e-0");
    if (e != std::string::npos) {
        s.erase(e + 2, 1);
    }
    return s;
}

} // namespace

void ExperimentConfig::validate() const {
    if (repetitions == 0) {
        throw std::invalid_argument("repetitions must be at least 1");
    }
    optimizer.validate();
}

Problem prepare_problem(std::uint64_t n) {
    const factoring::SemiprimeInstance instance(n, true);
    auto bits = factoring::bit_lengths(instance);
    auto h = factoring::build_hamiltonian(bits, n);
    auto layout = mesh::MeshLayout::rectangular(h.dim());
    return Problem{bits, std::move(h), std::move(layout)};
}

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t index) {
    return derive_seed(master_seed, index);
}

std::vector<RunResult> run_repetitions(const ExperimentConfig &cfg,
                                       const Problem &problem) {
    cfg.validate();
    std::vector<RunResult> results(cfg.repetitions);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cfg.repetitions; i = next++) {
            const std::uint64_t seed = run_seed(cfg.master_seed, i);
            const auto init = mesh::random_phases(problem.mesh, seed);
            results[i] = optimizer::run_optimization(
                problem.hamiltonian, problem.mesh, init, cfg.optimizer, seed);
        }
    };
    std::size_t threads = cfg.threads != 0
                              ? cfg.threads
                              : std::max(1U, std::thread::hardware_concurrency());
    threads = std::min(threads, cfg.repetitions);
    if (threads <= 1) {
        worker();
        return results;
    }
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    pool.clear();
    return results;
}

std::vector<RunResult> run_repetitions(const ExperimentConfig &cfg) {
    return run_repetitions(cfg, prepare_problem(cfg.n));
}

std::optional<std::size_t> steps_to_threshold(std::span<const double> trace,
                                              double ground, double gap) {
    if (ground == 0.0) {
        throw std::invalid_argument(
            "steps_to_threshold needs a non-zero ground energy");
    }
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (std::abs(trace[i] - ground) <= gap * std::abs(ground)) {
            return i;
        }
    }
    return std::nullopt;
}

AggregateStats aggregate(std::span<const RunResult> results,
                         const factoring::DiagonalHamiltonian &h) {
    if (results.empty()) {
        throw std::invalid_argument("aggregate: no runs");
    }
    AggregateStats s;
    s.repetitions = results.size();
    s.ground_energy_shifted = h.ground_energy_shifted();
    s.evals_per_iteration = results.front().final_record().phases.parameter_count() + 1;

    std::vector<const RunResult *> included;
    for (const auto &r : results) {
        if (is_excluded(r)) {
            ++s.excluded;
        } else {
            included.push_back(&r);
        }
    }
    if (included.empty()) {
        throw std::invalid_argument("aggregate: all " +
                                    std::to_string(results.size()) +
                                    " runs excluded");
    }

    std::size_t length = 0;
    for (const auto *r : included) {
        length = std::max(length, r->trace.size());
    }
    s.mean_energy_raw.assign(length, 0.0);
    for (const auto *r : included) {
        for (std::size_t i = 0; i < length; ++i) {
            const auto &rec = i < r->trace.size() ? r->trace[i] : r->trace.back();
            s.mean_energy_raw[i] += rec.energy_raw;
        }
    }
    s.mean_energy_shifted.resize(length);
    for (std::size_t i = 0; i < length; ++i) {
        s.mean_energy_raw[i] /= static_cast<double>(included.size());
        s.mean_energy_shifted[i] = s.mean_energy_raw[i] - h.shift();
    }

    if (s.ground_energy_shifted != 0.0) {
        for (std::size_t g = 0; g < kGaps.size(); ++g) {
            s.steps_to_gap[g] = steps_to_threshold(
                s.mean_energy_shifted, s.ground_energy_shifted, kGaps[g]);
        }
    }

    s.mean_distribution.kind = results.front().final_distribution.kind;
    s.mean_distribution.probs.assign(h.dim(), 0.0);
    std::size_t valid = 0;
    for (const auto &r : results) {
        for (std::size_t k = 0; k < h.dim(); ++k) {
            s.mean_distribution.probs[k] += r.final_distribution.probs[k];
        }
        valid += r.decoded.valid ? 1 : 0;
    }
    for (auto &p : s.mean_distribution.probs) {
        p /= static_cast<double>(results.size());
    }
    s.valid_fraction =
        static_cast<double>(valid) / static_cast<double>(results.size());

    s.ground_states = factoring::ground_states_bruteforce(h);
    std::vector<cplx> superposition(h.dim());
    const double amp = 1.0 / std::sqrt(static_cast<double>(s.ground_states.size()));
    for (const auto g : s.ground_states) {
        superposition[g] = amp;
    }
    s.fidelity_equal_superposition =
        photonics::state_fidelity(s.mean_distribution, superposition);
    s.fidelity_first = photonics::state_fidelity(
        s.mean_distribution, photonics::basis_state(h.dim(), s.ground_states[0]));
    if (s.ground_states.size() >= 2) {
        s.fidelity_second = photonics::state_fidelity(
            s.mean_distribution,
            photonics::basis_state(h.dim(), s.ground_states[1]));
    }
    return s;
}

LandscapeFamily parse_family(const std::string &s) {
    if (s == "a") {
        return LandscapeFamily::a;
    }
    if (s == "b") {
        return LandscapeFamily::b;
    }
    if (s == "c") {
        return LandscapeFamily::c;
    }
    throw std::invalid_argument("unknown landscape family '" + s +
                                "' (expected a, b or c)");
}

char family_name(LandscapeFamily f) {
    switch (f) {
    case LandscapeFamily::a:
        return 'a';
    case LandscapeFamily::b:
        return 'b';
    case LandscapeFamily::c:
        return 'c';
    }
    return '?';
}

double LandscapeAxis::value(std::size_t i) const {
    if (steps < 2) {
        return lo;
    }
    // Pin the end point exactly.
    if (i + 1 == steps) {
        return hi;
    }
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

LandscapeGrid landscape_sweep(LandscapeFamily family,
                              const factoring::DiagonalHamiltonian &h,
                              std::size_t grid_steps) {
    if (h.dim() != 4) {
        throw std::invalid_argument(
            "landscapes are defined for two-qubit Hamiltonians, got dimension " +
            std::to_string(h.dim()));
    }
    if (grid_steps < 2) {
        throw std::invalid_argument("landscape grid needs at least 2 steps");
    }
    const LandscapeAxis unit_alpha{"alpha", 0.0, 1.0, grid_steps};
    const LandscapeAxis unit_beta{"beta", 0.0, 1.0, grid_steps};
    const LandscapeAxis phase{"phi", 0.0, 2.0 * std::numbers::pi, grid_steps};

    LandscapeGrid grid;
    grid.family = family;
    switch (family) {
    case LandscapeFamily::a:
        grid.first = unit_alpha;
        grid.second = phase;
        break;
    case LandscapeFamily::b:
        grid.first = unit_beta;
        grid.second = phase;
        break;
    case LandscapeFamily::c:
        grid.first = unit_beta;
        grid.second = unit_alpha;
        break;
    }
    grid.energies.resize(grid_steps * grid_steps);
    std::vector<cplx> amps(4);
    for (std::size_t i = 0; i < grid_steps; ++i) {
        const double u = grid.first.value(i);
        for (std::size_t j = 0; j < grid_steps; ++j) {
            const double v = grid.second.value(j);
            std::fill(amps.begin(), amps.end(), cplx{});
            switch (family) {
            case LandscapeFamily::a:
                amps[1] = std::sqrt(u);
                amps[2] = std::polar(std::sqrt(1.0 - u), -v);
                break;
            case LandscapeFamily::b:
                amps[0] = std::sqrt(u);
                amps[1] = std::polar(std::sqrt(1.0 - u), -v);
                break;
            case LandscapeFamily::c:
                amps[0] = std::sqrt(u);
                amps[1] = std::sqrt(1.0 - u) * std::sqrt(v);
                amps[2] = std::sqrt(1.0 - u) * std::sqrt(1.0 - v);
                break;
            }
            grid.energies[i * grid_steps + j] = photonics::energy_expectation(
                photonics::exact_probabilities(amps), h);
        }
    }
    return grid;
}

void write_landscape_csv(const LandscapeGrid &grid, std::ostream &out) {
    out << grid.first.name << ',' << grid.second.name << ",energy\n";
    for (std::size_t i = 0; i < grid.first.steps; ++i) {
        for (std::size_t j = 0; j < grid.second.steps; ++j) {
            out << num(grid.first.value(i)) << ',' << num(grid.second.value(j))
                << ',' << num(grid.at(i, j)) << '\n';
        }
    }
}

void write_landscape_csv(const LandscapeGrid &grid,
                         const std::filesystem::path &file) {
    auto out = open_for_write(file);
    write_landscape_csv(grid, out);
    close_checked(out, file);
}

void export_results(const std::optional<AggregateStats> &stats,
                    std::span<const RunResult> results,
                    const factoring::DiagonalHamiltonian &h,
                    const std::filesystem::path &dir,
                    std::size_t landscape_steps) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create " + dir.string() + ": " +
                                 ec.message());
    }

    {
        const auto file = dir / "convergence.csv";
        auto out = open_for_write(file);
        out << "run_id,iteration,n_evals,energy_raw,energy_shifted\n";
        for (std::size_t r = 0; r < results.size(); ++r) {
            for (const auto &rec : results[r].trace) {
                out << r << ',' << rec.iter << ',' << rec.n_evals << ','
                    << num(rec.energy_raw) << ',' << num(rec.energy_shifted)
                    << '\n';
            }
        }
        close_checked(out, file);
    }

    {
        const auto file = dir / "distribution.csv";
        auto out = open_for_write(file);
        out << "run_id";
        for (std::size_t k = 0; k < h.dim(); ++k) {
            out << ",p" << factoring::basis_label(k, label_width(h));
        }
        out << '\n';
        auto row = [&](const std::string &id, const std::vector<double> &p) {
            out << id;
            for (const double v : p) {
                out << ',' << num(v);
            }
            out << '\n';
        };
        for (std::size_t r = 0; r < results.size(); ++r) {
            row(std::to_string(r), results[r].final_distribution.probs);
        }
        if (stats) {
            row("MEAN", stats->mean_distribution.probs);
        }
        close_checked(out, file);
    }

    if (h.dim() == 4) {
        for (const auto family :
             {LandscapeFamily::a, LandscapeFamily::b, LandscapeFamily::c}) {
            write_landscape_csv(
                landscape_sweep(family, h, landscape_steps),
                dir / (std::string("landscape_") + family_name(family) + ".csv"));
        }
    }

    nlohmann::ordered_json summary;
    summary["n"] = h.n();
    summary["nx"] = h.layout().nx;
    summary["ny"] = h.layout().ny;
    summary["dim"] = h.dim();
    summary["shift"] = h.shift();
    summary["repetitions"] = results.size();
    summary["ground_energy_shifted"] = h.ground_energy_shifted();
    nlohmann::ordered_json steps = nlohmann::ordered_json::object();
    nlohmann::ordered_json evals = nlohmann::ordered_json::object();
    for (std::size_t g = 0; g < kGaps.size(); ++g) {
        const auto key = gap_key(kGaps[g]);
        steps[key] = nullptr;
        evals[key] = nullptr;
        if (stats && stats->steps_to_gap[g]) {
            steps[key] = *stats->steps_to_gap[g];
            evals[key] = 1 + *stats->steps_to_gap[g] * stats->evals_per_iteration;
        }
    }
    if (stats) {
        const auto &s = *stats;
        const auto p = [&](std::size_t which) -> nlohmann::ordered_json {
            if (which < s.ground_states.size()) {
                return s.mean_distribution.probs[s.ground_states[which]];
            }
            return nullptr;
        };
        summary["excluded"] = s.excluded;
        summary["steps_to_gap"] = steps;
        summary["evals_to_gap"] = evals;
        summary["fidelity_equal_superposition"] = s.fidelity_equal_superposition;
        summary["fidelity_01"] = s.fidelity_first
                                     ? nlohmann::ordered_json(*s.fidelity_first)
                                     : nlohmann::ordered_json(nullptr);
        summary["fidelity_10"] = s.fidelity_second
                                     ? nlohmann::ordered_json(*s.fidelity_second)
                                     : nlohmann::ordered_json(nullptr);
        summary["mean_p01"] = p(0);
        summary["mean_p10"] = p(1);
        summary["valid_fraction"] = s.valid_fraction;
    } else {
        std::size_t excluded = 0;
        for (const auto &r : results) {
            excluded += is_excluded(r) ? 1 : 0;
        }
        summary["excluded"] = excluded;
        summary["steps_to_gap"] = steps;
        summary["evals_to_gap"] = evals;
        summary["fidelity_equal_superposition"] = nullptr;
        summary["fidelity_01"] = nullptr;
        summary["fidelity_10"] = nullptr;
        summary["mean_p01"] = nullptr;
        summary["mean_p10"] = nullptr;
        summary["valid_fraction"] = nullptr;
    }

    const auto file = dir / "summary.json";
    auto out = open_for_write(file);
    out << summary.dump(2) << '\n';
    close_checked(out, file);
}

} // namespace pvqa::experiment
