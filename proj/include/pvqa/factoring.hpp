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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

/// Classical preprocessing of a semiprime N into a diagonal problem
/// Hamiltonian H = (N - x y)^2 over the unknown bits of x and y.
///
/// Odd factors have their lowest bit fixed to 1, and a factor of bit-length n
/// has its top bit fixed to 1, leaving n - 2 unknown bits each. Basis index
/// layout: x bits high, y bits low, each group most-significant-first, so for
/// N = 35 the state |x1 y1> = |01> is index 1.
namespace pvqa::factoring {

/// Largest number of unknown bits a Hamiltonian may span.
inline constexpr unsigned kMaxFreeBits = 20;

class InvalidInstance : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by the successive-prime rule when F^2 - N is not a perfect square.
class NotSuccessivePrimes : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// N odd, N >= 9. Throws InvalidInstance otherwise.
struct SemiprimeInstance {
    std::uint64_t n;
    bool successive_prime_hint = true;

    explicit SemiprimeInstance(std::uint64_t value, bool successive = true);
};

enum class BitRule { general, successive };

struct BitLayout {
    unsigned nx = 0;
    unsigned ny = 0;
    unsigned free_x = 0;
    unsigned free_y = 0;
    /// ceil(sqrt(N)).
    std::uint64_t ceil_sqrt = 0;
    /// sqrt(F^2 - N) under the successive rule, 0 under the general rule.
    std::uint64_t delta_n = 0;
    BitRule rule = BitRule::general;

    [[nodiscard]] unsigned free_bits() const { return free_x + free_y; }
    [[nodiscard]] std::size_t dim() const { return std::size_t{1} << free_bits(); }

    bool operator==(const BitLayout &) const = default;
};

/// Smallest number of bits that represents b (0 for b = 0).
unsigned bit_length(std::uint64_t b);

/// floor(sqrt(v)), exact for all 64-bit inputs.
std::uint64_t isqrt(std::uint64_t v);

/// n_x = m(largest odd <= sqrt N), n_y = m(floor(N / 3)).
BitLayout bit_lengths_general(std::uint64_t n);

/// F = ceil(sqrt N), dN = sqrt(F^2 - N), n_x = m(F - dN), n_y = m(F + dN).
/// Throws NotSuccessivePrimes when F^2 - N is not a perfect square.
BitLayout bit_lengths_successive(std::uint64_t n);

/// Successive-prime rule when hinted, falling back to the general rule.
BitLayout bit_lengths(const SemiprimeInstance &instance);

class DiagonalHamiltonian {
  public:
    [[nodiscard]] std::uint64_t n() const { return n_; }
    [[nodiscard]] const BitLayout &layout() const { return layout_; }
    [[nodiscard]] std::size_t dim() const { return energies_.size(); }

    /// Exact diagonal entries (N - x y)^2.
    [[nodiscard]] const std::vector<std::uint64_t> &energies() const {
        return energies_;
    }
    /// The same entries as doubles (exact below 2^53), for the kernels.
    [[nodiscard]] const std::vector<double> &energies_f64() const {
        return energies_f64_;
    }
    /// Tr(H) / dim.
    [[nodiscard]] double shift() const { return shift_; }

    [[nodiscard]] std::uint64_t min_energy() const;
    [[nodiscard]] double ground_energy_shifted() const {
        return static_cast<double>(min_energy()) - shift_;
    }

    friend DiagonalHamiltonian build_hamiltonian(const BitLayout &layout,
                                                 std::uint64_t n);

  private:
    std::uint64_t n_ = 0;
    BitLayout layout_;
    std::vector<std::uint64_t> energies_;
    std::vector<double> energies_f64_;
    double shift_ = 0.0;
};

/// Throws std::length_error when layout.free_bits() > kMaxFreeBits.
DiagonalHamiltonian build_hamiltonian(const BitLayout &layout, std::uint64_t n);

/// Indices attaining the minimum energy, ascending.
std::vector<std::size_t> ground_states_bruteforce(const DiagonalHamiltonian &h);

struct FactorPair {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    /// x * y == N.
    bool valid = false;
};

/// x = 2^{n_x - 1} + 2 * (x bits) + 1, likewise y. Throws std::out_of_range
/// when index >= layout.dim().
FactorPair decode_solution(std::size_t index, const BitLayout &layout,
                           std::uint64_t n);

/// Binary label of a basis index, e.g. "01" for N = 35 index 1.
std::string basis_label(std::size_t index, unsigned width);

} // namespace pvqa::factoring
