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
#include "pvqa/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>

namespace pvqa::mesh {

namespace {

// Elements this small are treated as already nulled during decomposition.
constexpr double kNullTolerance = 1e-14;

std::string defect_message(double defect) {
    std::ostringstream os;
    os << "matrix is not unitary: max |U^dagger U - I| = " << defect
       << " exceeds " << kUnitaryTolerance;
    return os.str();
}

// Exact trig at the reflection setting so reflections stay diagonal.
std::pair<double, double> sin_cos(double theta) {
    if (theta == kHalfPi) {
        return {1.0, 0.0};
    }
    if (theta == 0.0) {
        return {0.0, 1.0};
    }
    return {std::sin(theta), std::cos(theta)};
}

kernels::Block2 block_for(double theta, double phi) {
    const auto [s, c] = sin_cos(theta);
    const cplx global = cplx(0.0, 1.0) * std::polar(1.0, theta);
    const cplx ext = std::polar(1.0, phi);
    return {global * ext * s, global * c, global * ext * c, -global * s};
}

void apply_block(const kernels::Block2 &t, cplx &a, cplx &b) {
    const cplx x = a;
    const cplx y = b;
    a = t.t00 * x + t.t01 * y;
    b = t.t10 * x + t.t11 * y;
}

struct Placed {
    std::size_t mode;
    double theta;
    double phi;
};

// (mode, occurrence) -> slot index. Two rectangular meshes that differ only
// by reordering commuting MZIs agree on this key.
std::map<std::pair<std::size_t, std::size_t>, std::size_t>
slot_keys(std::span<const std::size_t> modes) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> keys;
    std::map<std::size_t, std::size_t> seen;
    for (std::size_t s = 0; s < modes.size(); ++s) {
        keys.emplace(std::pair{modes[s], seen[modes[s]]++}, s);
    }
    return keys;
}

} // namespace

NonUnitaryError::NonUnitaryError(double defect)
    : std::domain_error(defect_message(defect)), defect_(defect) {}

double wrap_phase(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) {
        w += kTwoPi;
    }
    if (w >= kTwoPi) {
        w = 0.0;
    }
    return w;
}

MziSpec::MziSpec(std::size_t mode, double theta, double phi)
    : mode_(mode), theta_(theta), phi_(wrap_phase(phi)) {
    if (!(theta >= 0.0 && theta <= kHalfPi)) {
        throw std::invalid_argument("MZI theta must lie in [0, pi/2], got " +
                                    std::to_string(theta));
    }
}

kernels::Block2 MziSpec::block() const { return block_for(theta_, phi_); }

MeshLayout MeshLayout::rectangular(std::size_t modes) {
    std::vector<std::size_t> slots;
    slots.reserve(modes > 0 ? modes * (modes - 1) / 2 : 0);
    for (std::size_t column = 0; column < modes; ++column) {
        for (std::size_t j = column % 2; j + 1 < modes; j += 2) {
            slots.push_back(j);
        }
    }
    return MeshLayout(modes, std::move(slots));
}

MeshLayout::MeshLayout(std::size_t modes, std::vector<std::size_t> slot_modes)
    : modes_(modes), slots_(std::move(slot_modes)) {
    if (modes_ == 0) {
        throw std::invalid_argument("mesh needs at least one mode");
    }
    for (const auto j : slots_) {
        if (j + 1 >= modes_) {
            throw std::out_of_range("MZI slot on modes (" + std::to_string(j) +
                                    ", " + std::to_string(j + 1) +
                                    ") exceeds mesh of " +
                                    std::to_string(modes_) + " modes");
        }
    }
}

PhaseConfig::PhaseConfig(std::vector<double> t, std::vector<double> p)
    : thetas(std::move(t)), phis(std::move(p)) {
    if (thetas.size() != phis.size()) {
        throw std::invalid_argument("PhaseConfig: theta/phi length mismatch");
    }
}

PhaseConfig PhaseConfig::uniform(std::size_t count, double theta, double phi) {
    return {std::vector<double>(count, theta), std::vector<double>(count, phi)};
}

double PhaseConfig::parameter(std::size_t k) const {
    return k < size() ? thetas.at(k) : phis.at(k - size());
}

double &PhaseConfig::parameter(std::size_t k) {
    return k < size() ? thetas.at(k) : phis.at(k - size());
}

void validate(const MeshLayout &layout, const PhaseConfig &cfg) {
    if (cfg.thetas.size() != layout.size() || cfg.phis.size() != layout.size()) {
        throw std::invalid_argument(
            "phase configuration has " + std::to_string(cfg.thetas.size()) +
            "/" + std::to_string(cfg.phis.size()) +
            " entries, layout expects " + std::to_string(layout.size()));
    }
    for (const double t : cfg.thetas) {
        if (!(t >= 0.0 && t <= kHalfPi)) {
            throw std::invalid_argument("theta outside [0, pi/2]: " +
                                        std::to_string(t));
        }
    }
}

UnitaryMatrix UnitaryMatrix::checked(CMatrix m, double tolerance) {
    if (!m.square() || m.rows() == 0) {
        throw std::invalid_argument("unitary matrix must be square and non-empty");
    }
    const double defect = unitarity_defect(m);
    if (!(defect <= tolerance)) {
        throw NonUnitaryError(defect);
    }
    return UnitaryMatrix(std::move(m));
}

UnitaryMatrix mzi_matrix(const MziSpec &spec, std::size_t modes) {
    if (spec.mode() + 1 >= modes) {
        throw std::out_of_range("MZI on modes (" + std::to_string(spec.mode()) +
                                ", " + std::to_string(spec.mode() + 1) +
                                ") does not fit " + std::to_string(modes) +
                                " modes");
    }
    CMatrix m = CMatrix::identity(modes);
    const auto t = spec.block();
    const std::size_t j = spec.mode();
    m(j, j) = t.t00;
    m(j, j + 1) = t.t01;
    m(j + 1, j) = t.t10;
    m(j + 1, j + 1) = t.t11;
    return UnitaryMatrix::checked(std::move(m));
}

UnitaryMatrix compose_mesh(const MeshLayout &layout, const PhaseConfig &cfg) {
    validate(layout, cfg);
    CMatrix u = CMatrix::identity(layout.modes());
    const auto slots = layout.slots();
    for (std::size_t s = 0; s < slots.size(); ++s) {
        const std::size_t j = slots[s];
        kernels::rotate_rows(u.row(j), u.row(j + 1),
                             block_for(cfg.thetas[s], cfg.phis[s]));
    }
    return UnitaryMatrix::checked(std::move(u));
}

void propagate(const MeshLayout &layout, const PhaseConfig &cfg,
               std::span<cplx> state) {
    validate(layout, cfg);
    if (state.size() != layout.modes()) {
        throw std::invalid_argument("state has " + std::to_string(state.size()) +
                                    " modes, mesh has " +
                                    std::to_string(layout.modes()));
    }
    const auto slots = layout.slots();
    for (std::size_t s = 0; s < slots.size(); ++s) {
        const std::size_t j = slots[s];
        apply_block(block_for(cfg.thetas[s], cfg.phis[s]), state[j],
                    state[j + 1]);
    }
}

CMatrix Decomposition::recompose(const MeshLayout &layout) const {
    CMatrix u = compose_mesh(layout, phases).matrix();
    for (std::size_t r = 0; r < u.rows(); ++r) {
        for (auto &x : u.row(r)) {
            x *= diagonal.at(r);
        }
    }
    return u;
}

Decomposition decompose_unitary(const UnitaryMatrix &u,
                                const MeshLayout &layout) {
    const std::size_t n = u.modes();
    if (layout.modes() != n) {
        throw std::invalid_argument("decompose: layout has " +
                                    std::to_string(layout.modes()) +
                                    " modes, matrix has " + std::to_string(n));
    }
    CMatrix w = u.matrix();
    std::vector<Placed> right_ops;
    std::vector<Placed> left_ops;

    for (std::size_t i = 1; i < n; ++i) {
        if (i % 2 == 1) {
            // w <- w T^{-1} on columns (m, m+1), nulling w(row, m).
            for (std::size_t j = 0; j < i; ++j) {
                const std::size_t row = n - 1 - j;
                const std::size_t m = i - j - 1;
                const cplx um = w(row, m);
                const cplx un = w(row, m + 1);
                double theta = kHalfPi;
                double phi = 0.0;
                if (std::abs(um) > kNullTolerance) {
                    theta = std::atan2(std::abs(un), std::abs(um));
                    phi = std::abs(un) > 0.0
                              ? wrap_phase(std::arg(-um * std::conj(un)))
                              : 0.0;
                }
                const auto t = block_for(theta, phi);
                // Entries of T^dagger.
                const cplx a00 = std::conj(t.t00);
                const cplx a01 = std::conj(t.t10);
                const cplx a10 = std::conj(t.t01);
                const cplx a11 = std::conj(t.t11);
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx x = w(r, m);
                    const cplx y = w(r, m + 1);
                    w(r, m) = x * a00 + y * a10;
                    w(r, m + 1) = x * a01 + y * a11;
                }
                w(row, m) = 0.0;
                right_ops.push_back({m, theta, phi});
            }
        } else {
            // w <- T w on rows (m, m+1), nulling w(m+1, col).
            for (std::size_t j = 1; j <= i; ++j) {
                const std::size_t m = n + j - i - 2;
                const std::size_t col = j - 1;
                const cplx vm = w(m, col);
                const cplx vn = w(m + 1, col);
                double theta = kHalfPi;
                double phi = 0.0;
                if (std::abs(vn) > kNullTolerance) {
                    theta = std::atan2(std::abs(vm), std::abs(vn));
                    phi = std::abs(vm) > 0.0
                              ? wrap_phase(std::arg(vn * std::conj(vm)))
                              : 0.0;
                }
                kernels::rotate_rows(w.row(m), w.row(m + 1),
                                     block_for(theta, phi));
                w(m + 1, col) = 0.0;
                left_ops.push_back({m, theta, phi});
            }
        }
    }

    std::vector<cplx> diag(n);
    for (std::size_t k = 0; k < n; ++k) {
        diag[k] = w(k, k);
    }

    // U = L_1^-1 ... L_k^-1 D R_p ... R_1. Each T^-1 D is rewritten as
    // D' T(theta, arg(d1/d2)) with d1' = -e^{-2i theta - i phi} d2 and
    // d2' = -e^{-2i theta} d2.
    std::vector<Placed> sequence = right_ops;
    for (auto it = left_ops.rbegin(); it != left_ops.rend(); ++it) {
        const std::size_t m = it->mode;
        const cplx d1 = diag[m];
        const cplx d2 = diag[m + 1];
        const cplx e2 = std::polar(1.0, -2.0 * it->theta);
        diag[m] = -e2 * std::polar(1.0, -it->phi) * d2;
        diag[m + 1] = -e2 * d2;
        sequence.push_back({m, it->theta, wrap_phase(std::arg(d1 / d2))});
    }

    std::vector<std::size_t> seq_modes;
    seq_modes.reserve(sequence.size());
    for (const auto &p : sequence) {
        seq_modes.push_back(p.mode);
    }
    const auto target = slot_keys(layout.slots());
    const auto produced = slot_keys(seq_modes);
    if (target.size() != produced.size()) {
        throw std::invalid_argument(
            "decompose: layout is not a rectangular mesh of matching size");
    }
    Decomposition out;
    out.phases = PhaseConfig::uniform(layout.size(), kHalfPi, 0.0);
    for (const auto &[key, seq_index] : produced) {
        const auto found = target.find(key);
        if (found == target.end()) {
            throw std::invalid_argument(
                "decompose: layout is not a rectangular mesh of matching size");
        }
        out.phases.thetas[found->second] = sequence[seq_index].theta;
        out.phases.phis[found->second] = sequence[seq_index].phi;
    }
    out.diagonal = std::move(diag);
    return out;
}

PhaseConfig EmbeddedMesh::expand(const PhaseConfig &inner_cfg) const {
    validate(inner, inner_cfg);
    // theta = pi/2, phi = pi is exactly the identity block.
    PhaseConfig out = PhaseConfig::uniform(outer.size(), kHalfPi, std::numbers::pi);
    for (std::size_t s = 0; s < inner_slot.size(); ++s) {
        if (const auto k = inner_slot[s]) {
            out.thetas[s] = inner_cfg.thetas[*k];
            out.phis[s] = inner_cfg.phis[*k];
        }
    }
    return out;
}

EmbeddedMesh embed_isolated(const MeshLayout &inner, std::size_t outer_modes) {
    if (inner.modes() > outer_modes) {
        throw std::invalid_argument("embed: inner mesh has " +
                                    std::to_string(inner.modes()) +
                                    " modes, outer only " +
                                    std::to_string(outer_modes));
    }
    EmbeddedMesh e{inner, MeshLayout::rectangular(outer_modes), {}};
    e.inner_slot.assign(e.outer.size(), std::nullopt);
    const auto outer_keys = slot_keys(e.outer.slots());
    for (const auto &[key, inner_index] : slot_keys(inner.slots())) {
        const auto found = outer_keys.find(key);
        if (found == outer_keys.end()) {
            throw std::invalid_argument(
                "embed: inner slot has no counterpart in the outer mesh");
        }
        e.inner_slot[found->second] = inner_index;
    }
    return e;
}

PhaseConfig random_phases(const MeshLayout &layout, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> theta_dist(0.0, kHalfPi);
    std::uniform_real_distribution<double> phi_dist(0.0, kTwoPi);
    PhaseConfig cfg;
    cfg.thetas.resize(layout.size());
    cfg.phis.resize(layout.size());
    for (auto &t : cfg.thetas) {
        t = theta_dist(rng);
    }
    for (auto &p : cfg.phis) {
        p = wrap_phase(phi_dist(rng));
    }
    return cfg;
}

UnitaryMatrix haar_random_unitary(std::size_t modes, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix g(modes, modes);
    for (std::size_t r = 0; r < modes; ++r) {
        for (auto &x : g.row(r)) {
            x = cplx(gauss(rng), gauss(rng));
        }
    }
    // Modified Gram-Schmidt over columns: the Q factor of a QR with positive
    // diagonal R, which is Haar-distributed for a Ginibre input.
    for (std::size_t c = 0; c < modes; ++c) {
        for (std::size_t prev = 0; prev < c; ++prev) {
            cplx proj = 0.0;
            for (std::size_t r = 0; r < modes; ++r) {
                proj += std::conj(g(r, prev)) * g(r, c);
            }
            for (std::size_t r = 0; r < modes; ++r) {
                g(r, c) -= proj * g(r, prev);
            }
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < modes; ++r) {
            norm += std::norm(g(r, c));
        }
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < modes; ++r) {
            g(r, c) /= norm;
        }
    }
    return UnitaryMatrix::checked(std::move(g));
}

} // namespace pvqa::mesh
