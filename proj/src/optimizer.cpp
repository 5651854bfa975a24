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
#include "pvqa/optimizer.hpp"

#include "pvqa/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pvqa::optimizer {

using mesh::kHalfPi;
using mesh::PhaseConfig;

void OptimizerConfig::validate() const {
    if (!(h > 0.0) || !(eta > 0.0) || !(epsilon > 0.0)) {
        throw std::invalid_argument("h, eta and epsilon must be positive");
    }
    if (max_iters == 0) {
        throw std::invalid_argument("max_iters must be at least 1");
    }
    if (shots && shots->shots == 0) {
        throw std::invalid_argument("shot count must be at least 1");
    }
}

Gradient forward_gradient(const PhaseConfig &phases, const CostFunction &cost,
                          const OptimizerConfig &cfg,
                          std::optional<double> baseline) {
    Gradient g;
    if (baseline) {
        g.baseline = *baseline;
    } else {
        g.baseline = cost(phases);
        ++g.evaluations;
    }
    const std::size_t count = phases.parameter_count();
    const std::size_t l = phases.size();
    g.components.resize(count);
    PhaseConfig probe = phases;
    for (std::size_t k = 0; k < count; ++k) {
        double &p = probe.parameter(k);
        const double original = p;
        if (k < l) {
            const double effective = std::min(original + cfg.h, kHalfPi) - original;
            if (effective >= 0.5 * cfg.h) {
                p = original + effective;
                g.components[k] = (cost(probe) - g.baseline) / effective;
            } else {
                p = original - cfg.h;
                g.components[k] = (g.baseline - cost(probe)) / cfg.h;
            }
        } else {
            p = original + cfg.h;
            g.components[k] = (cost(probe) - g.baseline) / cfg.h;
        }
        ++g.evaluations;
        p = original;
    }
    return g;
}

PhaseConfig step(const PhaseConfig &phases, std::span<const double> gradient,
                 const OptimizerConfig &cfg) {
    if (gradient.size() != phases.parameter_count()) {
        throw std::invalid_argument("gradient has " +
                                    std::to_string(gradient.size()) +
                                    " components, expected " +
                                    std::to_string(phases.parameter_count()));
    }
    PhaseConfig next = phases;
    const std::size_t l = phases.size();
    for (std::size_t k = 0; k < l; ++k) {
        next.thetas[k] =
            std::clamp(phases.thetas[k] - cfg.eta * gradient[k], 0.0, kHalfPi);
        next.phis[k] = mesh::wrap_phase(phases.phis[k] - cfg.eta * gradient[l + k]);
    }
    return next;
}

EnergyObjective::EnergyObjective(const factoring::DiagonalHamiltonian &h,
                                 mesh::MeshLayout layout,
                                 std::optional<ShotSettings> shots,
                                 std::uint64_t seed, photonics::FockInput input)
    : h_(&h), layout_(std::move(layout)), shots_(shots), seed_(seed),
      input_(input) {
    if (layout_.modes() != h.dim()) {
        throw std::invalid_argument(
            "mesh has " + std::to_string(layout_.modes()) +
            " modes but the Hamiltonian has dimension " + std::to_string(h.dim()));
    }
}

photonics::OutputDistribution
EnergyObjective::distribution(const PhaseConfig &phases,
                              std::uint64_t stream) const {
    auto exact = photonics::exact_probabilities(
        photonics::evolve_single_photon(layout_, phases, input_));
    if (!shots_) {
        return exact;
    }
    const auto record = photonics::sample_counts(
        exact, shots_->shots, derive_seed(seed_, stream), shots_->model);
    return photonics::estimate(record);
}

double EnergyObjective::energy(const PhaseConfig &phases,
                               std::uint64_t stream) const {
    return photonics::energy_expectation(distribution(phases, stream), *h_);
}

RunResult run_optimization(const factoring::DiagonalHamiltonian &h,
                           const mesh::MeshLayout &layout,
                           const PhaseConfig &init, const OptimizerConfig &cfg,
                           std::uint64_t run_seed) {
    cfg.validate();
    mesh::validate(layout, init);
    const EnergyObjective objective(h, layout, cfg.shots, run_seed);
    const std::size_t per_iteration = init.parameter_count() + 1;

    RunResult result;
    PhaseConfig phases = init;
    std::uint64_t stream = 0;
    double energy = objective.energy(phases, stream);
    result.trace.push_back({0, 1, energy, energy - h.shift(), phases});

    for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
        const std::uint64_t current = stream;
        const CostFunction cost = [&](const PhaseConfig &p) {
            return objective.energy(p, current);
        };
        const Gradient grad = forward_gradient(phases, cost, cfg, energy);
        phases = step(phases, grad.components, cfg);
        ++stream;
        const double next = objective.energy(phases, stream);
        result.trace.push_back({it, result.trace.back().n_evals + per_iteration,
                                next, next - h.shift(), phases});
        const bool settled = std::abs(next - energy) < cfg.epsilon;
        energy = next;
        if (settled) {
            result.converged = true;
            break;
        }
    }

    result.final_distribution = objective.distribution(phases, stream);
    result.decoded_index = result.final_distribution.argmax();
    result.decoded =
        factoring::decode_solution(result.decoded_index, h.layout(), h.n());
    return result;
}

PhaseConfig routing_phases(const mesh::MeshLayout &layout, std::size_t target) {
    if (target >= layout.modes()) {
        throw std::out_of_range("routing target outside the mesh");
    }
    PhaseConfig cfg = PhaseConfig::uniform(layout.size(), kHalfPi, 0.0);
    std::size_t at = 0;
    const auto slots = layout.slots();
    for (std::size_t s = 0; s < slots.size() && at < target; ++s) {
        if (slots[s] == at) {
            cfg.thetas[s] = 0.0;
            ++at;
        }
    }
    if (at != target) {
        throw std::invalid_argument("layout cannot route mode 0 to the target");
    }
    return cfg;
}

} // namespace pvqa::optimizer
