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
#pragma once

#include "pvqa/factoring.hpp"
#include "pvqa/mesh.hpp"
#include "pvqa/optimizer.hpp"
#include "pvqa/photonics.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pvqa::experiment {

/// Relative gaps reported for steps-to-threshold: 1%, 0.1%, 0.01%.
inline constexpr std::array<double, 3> kGaps{1e-2, 1e-3, 1e-4};

struct ExperimentConfig {
    std::uint64_t n = 35;
    std::size_t repetitions = 117;
    optimizer::OptimizerConfig optimizer;
    std::uint64_t master_seed = 7;
    std::filesystem::path output_dir = "out";
    /// 0 picks std::thread::hardware_concurrency().
    std::size_t threads = 0;

    void validate() const;
};

/// Factoring instance, Hamiltonian and a mesh with one mode per basis state.
struct Problem {
    factoring::BitLayout bits;
    factoring::DiagonalHamiltonian hamiltonian;
    mesh::MeshLayout mesh;
};

/// Successive-prime bit lengths with general-rule fallback.
Problem prepare_problem(std::uint64_t n);

/// Seed of repetition `index`.
std::uint64_t run_seed(std::uint64_t master_seed, std::size_t index);

/// Runs cfg.repetitions optimisations from random initial phases. Results are
/// ordered by repetition index and independent of the thread schedule.
std::vector<optimizer::RunResult> run_repetitions(const ExperimentConfig &cfg,
                                                  const Problem &problem);
std::vector<optimizer::RunResult> run_repetitions(const ExperimentConfig &cfg);

struct AggregateStats {
    std::size_t repetitions = 0;
    /// Runs whose final shifted energy is >= 0.
    std::size_t excluded = 0;
    double ground_energy_shifted = 0.0;
    /// Per-iteration mean over included runs; finished runs are padded with
    /// their final energy.
    std::vector<double> mean_energy_raw;
    std::vector<double> mean_energy_shifted;
    /// Average of all final distributions.
    photonics::OutputDistribution mean_distribution;
    /// First mean-trace iteration within each of kGaps of the ground energy.
    std::array<std::optional<std::size_t>, kGaps.size()> steps_to_gap;
    /// Ground-state indices (ascending) used as the two fidelity targets.
    std::vector<std::size_t> ground_states;
    double fidelity_equal_superposition = 0.0;
    std::optional<double> fidelity_first;
    std::optional<double> fidelity_second;
    /// Fraction of runs whose decoded state is a valid factorisation.
    double valid_fraction = 0.0;
    /// Evaluations per iteration, 2L + 1.
    std::size_t evals_per_iteration = 0;
};

/// Throws std::invalid_argument when results is empty or every run is
/// excluded.
AggregateStats aggregate(std::span<const optimizer::RunResult> results,
                         const factoring::DiagonalHamiltonian &h);

/// First index i with |trace[i] - ground| <= gap * |ground|.
/// Throws std::invalid_argument when ground == 0.
std::optional<std::size_t> steps_to_threshold(std::span<const double> trace,
                                              double ground, double gap);

enum class LandscapeFamily { a, b, c };

LandscapeFamily parse_family(const std::string &s);
char family_name(LandscapeFamily f);

struct LandscapeAxis {
    std::string name;
    double lo = 0.0;
    double hi = 1.0;
    std::size_t steps = 101;

    [[nodiscard]] double value(std::size_t i) const;
};

/// Energies over a 2-D family of two-qubit states:
///   a: sqrt(alpha)|01> + e^{-i phi} sqrt(1-alpha)|10>          (alpha, phi)
///   b: sqrt(beta)|00>  + e^{-i phi} sqrt(1-beta)|01>            (beta, phi)
///   c: sqrt(beta)|00>  + sqrt(1-beta)(sqrt(alpha)|01> + sqrt(1-alpha)|10>)
///                                                                (beta, alpha)
struct LandscapeGrid {
    LandscapeFamily family = LandscapeFamily::a;
    LandscapeAxis first;
    LandscapeAxis second;
    /// energies[i * second.steps + j] at (first.value(i), second.value(j)).
    std::vector<double> energies;

    [[nodiscard]] double at(std::size_t i, std::size_t j) const {
        return energies[i * second.steps + j];
    }
};

/// Raw energies. Throws std::invalid_argument unless h.dim() == 4 and
/// grid_steps >= 2.
LandscapeGrid landscape_sweep(LandscapeFamily family,
                              const factoring::DiagonalHamiltonian &h,
                              std::size_t grid_steps = 101);

/// Writes convergence.csv, distribution.csv, summary.json and, for
/// two-qubit Hamiltonians, landscape_{a,b,c}.csv into dir. `stats` may be
/// empty when there is nothing to aggregate. Throws std::runtime_error
/// naming the file on I/O failure.
void export_results(const std::optional<AggregateStats> &stats,
                    std::span<const optimizer::RunResult> results,
                    const factoring::DiagonalHamiltonian &h,
                    const std::filesystem::path &dir,
                    std::size_t landscape_steps = 101);

/// One landscape grid as CSV with a header naming both axes.
void write_landscape_csv(const LandscapeGrid &grid, std::ostream &out);
void write_landscape_csv(const LandscapeGrid &grid,
                         const std::filesystem::path &file);

} // namespace pvqa::experiment
