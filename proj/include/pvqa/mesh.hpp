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

#include "pvqa/cmatrix.hpp"
#include "pvqa/kernels.hpp"

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

/// Programmable multiport interferometers built from Mach-Zehnder blocks.
///
/// A mesh of M modes is a rectangular arrangement of M(M-1)/2 MZIs. Each MZI
/// acts on adjacent modes (j, j+1) with the 2x2 block
///
///     i e^{i theta} [[e^{i phi} sin theta,  cos theta],
///                    [e^{i phi} cos theta, -sin theta]]
///
/// so theta = pi/2 leaves the two modes unmixed (reflection) and theta = 0
/// swaps them. Composition uses an identity output diagonal.
namespace pvqa::mesh {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kUnitaryTolerance = 1e-10;

class NonUnitaryError : public std::domain_error {
  public:
    explicit NonUnitaryError(double defect);
    [[nodiscard]] double defect() const { return defect_; }

  private:
    double defect_;
};

/// Wrap into [0, 2 pi).
double wrap_phase(double phi);

/// One MZI placed on modes (mode, mode + 1).
class MziSpec {
  public:
    /// Throws std::invalid_argument when theta lies outside [0, pi/2].
    /// phi is wrapped into [0, 2 pi).
    MziSpec(std::size_t mode, double theta, double phi);

    [[nodiscard]] std::size_t mode() const { return mode_; }
    [[nodiscard]] double theta() const { return theta_; }
    [[nodiscard]] double phi() const { return phi_; }

    [[nodiscard]] kernels::Block2 block() const;

  private:
    std::size_t mode_;
    double theta_;
    double phi_;
};

/// The fixed slot structure of a mesh: mode count plus, for each MZI slot in
/// application order (first applied first), the lower mode it acts on.
class MeshLayout {
  public:
    /// Rectangular mesh: M columns, column c holding the MZIs on pairs
    /// j = c mod 2, c mod 2 + 2, ... For M = 4 this is
    /// T12, T34, T23, T12, T34, T23.
    static MeshLayout rectangular(std::size_t modes);

    /// Arbitrary slot list; each entry must satisfy mode + 1 < modes.
    MeshLayout(std::size_t modes, std::vector<std::size_t> slot_modes);

    [[nodiscard]] std::size_t modes() const { return modes_; }
    [[nodiscard]] std::size_t size() const { return slots_.size(); }
    [[nodiscard]] std::span<const std::size_t> slots() const { return slots_; }

    bool operator==(const MeshLayout &) const = default;

  private:
    std::size_t modes_;
    std::vector<std::size_t> slots_;
};

/// The 2L trainable phases of a mesh. Parameter k < L addresses theta_k,
/// k >= L addresses phi_{k-L}.
struct PhaseConfig {
    std::vector<double> thetas;
    std::vector<double> phis;

    PhaseConfig() = default;
    PhaseConfig(std::vector<double> t, std::vector<double> p);
    static PhaseConfig uniform(std::size_t count, double theta, double phi);

    [[nodiscard]] std::size_t size() const { return thetas.size(); }
    [[nodiscard]] std::size_t parameter_count() const { return 2 * size(); }

    [[nodiscard]] double parameter(std::size_t k) const;
    double &parameter(std::size_t k);

    bool operator==(const PhaseConfig &) const = default;
};

/// Throws std::invalid_argument if cfg does not fit layout or any theta is
/// outside [0, pi/2].
void validate(const MeshLayout &layout, const PhaseConfig &cfg);

/// A square matrix known to be unitary to kUnitaryTolerance.
class UnitaryMatrix {
  public:
    /// Throws NonUnitaryError when the defect exceeds tolerance, and
    /// std::invalid_argument when the matrix is not square.
    static UnitaryMatrix checked(CMatrix m,
                                 double tolerance = kUnitaryTolerance);

    [[nodiscard]] std::size_t modes() const { return m_.rows(); }
    [[nodiscard]] const CMatrix &matrix() const { return m_; }
    const cplx &operator()(std::size_t r, std::size_t c) const {
        return m_(r, c);
    }

  private:
    explicit UnitaryMatrix(CMatrix m) : m_(std::move(m)) {}
    CMatrix m_;
};

/// The full M x M matrix of one MZI. Throws std::out_of_range if
/// spec.mode() + 1 >= modes.
UnitaryMatrix mzi_matrix(const MziSpec &spec, std::size_t modes);

/// U = T_L ... T_2 T_1 for the layout's slots in application order.
UnitaryMatrix compose_mesh(const MeshLayout &layout, const PhaseConfig &cfg);

/// Applies the mesh to a state vector in place (single-photon amplitudes).
/// Equivalent to compose_mesh(layout, cfg) * state, without forming U.
void propagate(const MeshLayout &layout, const PhaseConfig &cfg,
               std::span<cplx> state);

struct Decomposition {
    PhaseConfig phases;
    /// Output phases D with U = diag(D) * compose_mesh(layout, phases).
    std::vector<cplx> diagonal;

    [[nodiscard]] CMatrix recompose(const MeshLayout &layout) const;
};

/// Nulls U element by element with MZIs applied alternately from the right
/// (as inverses) and from the left, then pushes the left factors through the
/// residual diagonal. Requires a rectangular layout of U's dimension.
Decomposition decompose_unitary(const UnitaryMatrix &u,
                                const MeshLayout &layout);

/// An inner mesh placed on the first `inner.modes()` modes of a larger
/// rectangular mesh. Outer slots that are not mapped to an inner slot are
/// pinned to reflection (theta = pi/2, phi = pi), which is the identity.
struct EmbeddedMesh {
    MeshLayout inner;
    MeshLayout outer;
    /// For each outer slot, the inner slot driving it (if any).
    std::vector<std::optional<std::size_t>> inner_slot;

    /// Outer phase configuration realising `inner_cfg` on the inner modes.
    [[nodiscard]] PhaseConfig expand(const PhaseConfig &inner_cfg) const;
};

EmbeddedMesh embed_isolated(const MeshLayout &inner, std::size_t outer_modes);

/// theta ~ U[0, pi/2], phi ~ U[0, 2 pi), reproducible from seed.
PhaseConfig random_phases(const MeshLayout &layout, std::uint64_t seed);

/// Haar-distributed unitary from Gram-Schmidt on a complex Gaussian matrix.
UnitaryMatrix haar_random_unitary(std::size_t modes, std::uint64_t seed);

} // namespace pvqa::mesh
