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
#include "pvqa/photonics.hpp"

#include "pvqa/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace pvqa::photonics {

std::size_t OutputDistribution::argmax() const {
    if (probs.empty()) {
        throw std::logic_error("argmax of an empty distribution");
    }
    return static_cast<std::size_t>(
        std::max_element(probs.begin(), probs.end()) - probs.begin());
}

std::vector<cplx> evolve_single_photon(const mesh::UnitaryMatrix &u,
                                       FockInput in) {
    if (in.mode >= u.modes()) {
        throw std::invalid_argument("input mode " + std::to_string(in.mode) +
                                    " outside " + std::to_string(u.modes()) +
                                    "-mode unitary");
    }
    return u.matrix().column(in.mode);
}

std::vector<cplx> evolve_single_photon(const mesh::MeshLayout &layout,
                                       const mesh::PhaseConfig &cfg,
                                       FockInput in) {
    if (in.mode >= layout.modes()) {
        throw std::invalid_argument("input mode " + std::to_string(in.mode) +
                                    " outside " +
                                    std::to_string(layout.modes()) +
                                    "-mode mesh");
    }
    std::vector<cplx> state(layout.modes());
    state[in.mode] = 1.0;
    mesh::propagate(layout, cfg, state);
    return state;
}

OutputDistribution exact_probabilities(std::span<const cplx> amplitudes) {
    OutputDistribution d;
    d.probs.resize(amplitudes.size());
    kernels::abs2(amplitudes, d.probs);
    d.kind = DistributionKind::exact;
    return d;
}

ShotRecord sample_counts(const OutputDistribution &dist, std::uint64_t shots,
                         std::uint64_t seed, ShotModel model) {
    if (shots == 0) {
        throw std::invalid_argument("shot count must be at least 1");
    }
    std::mt19937_64 rng(seed);
    ShotRecord rec;
    rec.shots = shots;
    rec.seed = seed;
    rec.model = model;
    rec.counts.assign(dist.size(), 0);

    if (model == ShotModel::poisson) {
        for (std::size_t i = 0; i < dist.size(); ++i) {
            const double mean = static_cast<double>(shots) * dist.probs[i];
            if (mean > 0.0) {
                std::poisson_distribution<std::uint64_t> pois(mean);
                rec.counts[i] = pois(rng);
            }
        }
        return rec;
    }

    // Multinomial as a chain of conditional binomials.
    std::uint64_t remaining = shots;
    double mass_left = 1.0;
    for (std::size_t i = 0; i + 1 < dist.size() && remaining > 0; ++i) {
        const double p = dist.probs[i];
        if (p <= 0.0) {
            mass_left -= std::max(p, 0.0);
            continue;
        }
        const double conditional = mass_left > 0.0 ? std::min(1.0, p / mass_left) : 1.0;
        std::binomial_distribution<std::uint64_t> binom(remaining, conditional);
        const std::uint64_t k = binom(rng);
        rec.counts[i] = k;
        remaining -= k;
        mass_left -= p;
    }
    if (!rec.counts.empty()) {
        rec.counts.back() += remaining;
    }
    return rec;
}

OutputDistribution estimate(const ShotRecord &record) {
    OutputDistribution d;
    d.kind = DistributionKind::sampled;
    std::uint64_t total = 0;
    for (const auto c : record.counts) {
        total += c;
    }
    d.total_counts = total;
    d.probs.resize(record.counts.size());
    if (total == 0) {
        std::fill(d.probs.begin(), d.probs.end(),
                  1.0 / static_cast<double>(d.probs.size()));
        return d;
    }
    for (std::size_t i = 0; i < d.probs.size(); ++i) {
        d.probs[i] =
            static_cast<double>(record.counts[i]) / static_cast<double>(total);
    }
    return d;
}

double energy_expectation(const OutputDistribution &dist,
                          const factoring::DiagonalHamiltonian &h,
                          bool shifted) {
    if (dist.size() != h.dim()) {
        throw std::invalid_argument("distribution over " +
                                    std::to_string(dist.size()) +
                                    " outcomes, Hamiltonian dimension " +
                                    std::to_string(h.dim()));
    }
    const double e = kernels::dot(dist.probs, h.energies_f64());
    return shifted ? e - h.shift() : e;
}

double state_fidelity(const OutputDistribution &dist,
                      std::span<const cplx> target) {
    if (dist.size() != target.size()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    double f = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) {
        f += std::sqrt(std::max(dist.probs[i], 0.0)) * std::abs(target[i]);
    }
    return std::clamp(f, 0.0, 1.0);
}

std::vector<cplx> basis_state(std::size_t dim, std::size_t k) {
    if (k >= dim) {
        throw std::out_of_range("basis index outside dimension");
    }
    std::vector<cplx> v(dim);
    v[k] = 1.0;
    return v;
}

} // namespace pvqa::photonics
