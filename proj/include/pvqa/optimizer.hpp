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
#include "pvqa/photonics.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

/// Forward-finite-difference gradient descent over the 2L mesh phases.
namespace pvqa::optimizer {

struct ShotSettings {
    std::uint64_t shots = 10'000;
    photonics::ShotModel model = photonics::ShotModel::multinomial;
};

struct OptimizerConfig {
    double h = 0.01;
    double eta = 0.03;
    /// Stop once |E_i - E_{i-1}| < epsilon.
    double epsilon = 1e-4;
    std::size_t max_iters = 500;
    /// Nullopt evaluates energies exactly (infinite shots).
    std::optional<ShotSettings> shots = ShotSettings{};

    /// Throws std::invalid_argument on non-positive h, eta, epsilon or
    /// max_iters == 0.
    void validate() const;
};

struct IterationRecord {
    std::size_t iter = 0;
    /// Cost evaluations spent up to and including this record. Record 0 is
    /// the initial measurement; every later record adds exactly 2L + 1.
    std::size_t n_evals = 0;
    double energy_raw = 0.0;
    double energy_shifted = 0.0;
    mesh::PhaseConfig phases;
};

struct RunResult {
    std::vector<IterationRecord> trace;
    bool converged = false;
    photonics::OutputDistribution final_distribution;
    /// Decoded argmax-probability basis state of the final distribution.
    std::size_t decoded_index = 0;
    factoring::FactorPair decoded;

    /// Gradient steps taken (trace length minus the initial record).
    [[nodiscard]] std::size_t iterations() const {
        return trace.empty() ? 0 : trace.size() - 1;
    }
    [[nodiscard]] const IterationRecord &final_record() const {
        return trace.back();
    }
};

using CostFunction = std::function<double(const mesh::PhaseConfig &)>;

struct Gradient {
    /// Length 2L: theta components first, then phi.
    std::vector<double> components;
    double baseline = 0.0;
    /// Cost calls made, including the baseline when it was not supplied.
    std::size_t evaluations = 0;
};

/// dE/dp_k ~ (E(p_k + h) - E(p)) / h for every parameter. A theta step that
/// would exceed pi/2 is clamped and divided by the effective step; when the
/// effective step falls below h/2 a backward step of h is used instead.
Gradient forward_gradient(const mesh::PhaseConfig &phases,
                          const CostFunction &cost, const OptimizerConfig &cfg,
                          std::optional<double> baseline = std::nullopt);

/// p <- p - eta * grad, then theta clamped to [0, pi/2] and phi wrapped into
/// [0, 2 pi).
mesh::PhaseConfig step(const mesh::PhaseConfig &phases,
                       std::span<const double> gradient,
                       const OptimizerConfig &cfg);

/// Energy of the mesh output for a photon entering `input`, evaluated either
/// exactly or from a sampled shot record. `stream` selects the sampler seed
/// and is ignored in exact mode.
class EnergyObjective {
  public:
    EnergyObjective(const factoring::DiagonalHamiltonian &h,
                    mesh::MeshLayout layout,
                    std::optional<ShotSettings> shots = std::nullopt,
                    std::uint64_t seed = 0, photonics::FockInput input = {});

    [[nodiscard]] photonics::OutputDistribution
    distribution(const mesh::PhaseConfig &phases, std::uint64_t stream) const;

    [[nodiscard]] double energy(const mesh::PhaseConfig &phases,
                                std::uint64_t stream) const;

    [[nodiscard]] const mesh::MeshLayout &layout() const { return layout_; }
    [[nodiscard]] const factoring::DiagonalHamiltonian &hamiltonian() const {
        return *h_;
    }

  private:
    const factoring::DiagonalHamiltonian *h_;
    mesh::MeshLayout layout_;
    std::optional<ShotSettings> shots_;
    std::uint64_t seed_;
    photonics::FockInput input_;
};

/// Iterates gradient + step until two consecutive energies differ by less
/// than epsilon or max_iters steps have been taken.
///
/// Under shot noise the 2L perturbed evaluations of one iteration share the
/// sampler stream of the baseline measurement they are compared against.
RunResult run_optimization(const factoring::DiagonalHamiltonian &h,
                           const mesh::MeshLayout &layout,
                           const mesh::PhaseConfig &init,
                           const OptimizerConfig &cfg,
                           std::uint64_t run_seed = 0);

/// Phases that route a photon entering mode 0 straight to output `target`
/// using only swaps (theta = 0) and reflections (theta = pi/2). Requires a
/// rectangular layout.
mesh::PhaseConfig routing_phases(const mesh::MeshLayout &layout,
                                 std::size_t target);

} // namespace pvqa::optimizer
