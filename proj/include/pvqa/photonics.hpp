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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

/// Single-photon evolution through a mesh and the measurement statistics the
/// variational loop consumes. Mode k at the output is basis state k of the
/// problem Hamiltonian, so the energy only needs |amplitude|^2 per mode.
namespace pvqa::photonics {

using pvqa::cplx;

/// One photon in `mode`, vacuum elsewhere.
struct FockInput {
    std::size_t mode = 0;
};

enum class DistributionKind { exact, sampled };

struct OutputDistribution {
    std::vector<double> probs;
    std::optional<std::uint64_t> total_counts;
    DistributionKind kind = DistributionKind::exact;

    [[nodiscard]] std::size_t size() const { return probs.size(); }
    /// Lowest index among the maxima.
    [[nodiscard]] std::size_t argmax() const;
};

enum class ShotModel { multinomial, poisson };

struct ShotRecord {
    std::vector<std::uint64_t> counts;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    ShotModel model = ShotModel::multinomial;
};

/// Column `in.mode` of U.
std::vector<cplx> evolve_single_photon(const mesh::UnitaryMatrix &u,
                                       FockInput in);

/// Same amplitudes, propagated slot by slot without forming U.
std::vector<cplx> evolve_single_photon(const mesh::MeshLayout &layout,
                                       const mesh::PhaseConfig &cfg,
                                       FockInput in);

OutputDistribution exact_probabilities(std::span<const cplx> amplitudes);

/// multinomial: counts ~ Multinomial(shots, probs).
/// poisson: counts_i ~ Poisson(shots * probs_i), independently.
/// Throws std::invalid_argument when shots == 0.
ShotRecord sample_counts(const OutputDistribution &dist, std::uint64_t shots,
                         std::uint64_t seed,
                         ShotModel model = ShotModel::multinomial);

/// Relative frequencies of a shot record. A Poisson record with zero total
/// counts carries no information and yields the uniform distribution.
OutputDistribution estimate(const ShotRecord &record);

/// sum_i probs_i * E_i, minus Tr(H)/dim when shifted.
double energy_expectation(const OutputDistribution &dist,
                          const factoring::DiagonalHamiltonian &h,
                          bool shifted = false);

/// sum_i sqrt(probs_i) |target_i|, clamped to [0, 1]: the overlap of the
/// root-probability vector with a pure target state.
double state_fidelity(const OutputDistribution &dist,
                      std::span<const cplx> target);

/// |k> as an amplitude vector of length dim.
std::vector<cplx> basis_state(std::size_t dim, std::size_t k);

} // namespace pvqa::photonics
