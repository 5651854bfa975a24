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
#include "pvqa/factoring.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace pvqa::factoring {

namespace {

__extension__ typedef unsigned __int128 u128;

unsigned unknown_bits(unsigned length) {
    return length >= 2 ? length - 2 : 0;
}

BitLayout finish(unsigned nx, unsigned ny, std::uint64_t f, std::uint64_t dn,
                 BitRule rule) {
    if (nx < 2 || ny < 2) {
        throw InvalidInstance("factor bit-lengths below 2 cannot hold an odd "
                              "factor >= 3");
    }
    return BitLayout{nx, ny, unknown_bits(nx), unknown_bits(ny), f, dn, rule};
}

std::uint64_t ceil_sqrt(std::uint64_t n) {
    const std::uint64_t r = isqrt(n);
    return r * r == n ? r : r + 1;
}

void require_valid(std::uint64_t n) {
    if (n < 9 || n % 2 == 0) {
        throw InvalidInstance("N must be an odd integer >= 9, got " +
                              std::to_string(n));
    }
    // F^2 must fit in 64 bits.
    if (n > (std::uint64_t{1} << 62)) {
        throw InvalidInstance("N too large: " + std::to_string(n));
    }
}

} // namespace

SemiprimeInstance::SemiprimeInstance(std::uint64_t value, bool successive)
    : n(value), successive_prime_hint(successive) {
    require_valid(value);
}

unsigned bit_length(std::uint64_t b) {
    return static_cast<unsigned>(std::bit_width(b));
}

std::uint64_t isqrt(std::uint64_t v) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
    // The double estimate can be off by one either way near 2^64.
    while (r > 0 && (r > v / r)) {
        --r;
    }
    while ((r + 1) <= v / (r + 1)) {
        ++r;
    }
    return r;
}

BitLayout bit_lengths_general(std::uint64_t n) {
    require_valid(n);
    std::uint64_t x_max = isqrt(n);
    if (x_max % 2 == 0) {
        --x_max;
    }
    return finish(bit_length(x_max), bit_length(n / 3), ceil_sqrt(n), 0,
                  BitRule::general);
}

BitLayout bit_lengths_successive(std::uint64_t n) {
    require_valid(n);
    const std::uint64_t f = ceil_sqrt(n);
    const std::uint64_t gap = f * f - n;
    const std::uint64_t dn = isqrt(gap);
    if (dn * dn != gap) {
        throw NotSuccessivePrimes(
            "F^2 - N = " + std::to_string(gap) + " is not a perfect square (F = " +
            std::to_string(f) + "); N is not a product of successive primes");
    }
    return finish(bit_length(f - dn), bit_length(f + dn), f, dn,
                  BitRule::successive);
}

BitLayout bit_lengths(const SemiprimeInstance &instance) {
    if (instance.successive_prime_hint) {
        try {
            return bit_lengths_successive(instance.n);
        } catch (const NotSuccessivePrimes &) {
        }
    }
    return bit_lengths_general(instance.n);
}

std::uint64_t DiagonalHamiltonian::min_energy() const {
    return *std::min_element(energies_.begin(), energies_.end());
}

DiagonalHamiltonian build_hamiltonian(const BitLayout &layout, std::uint64_t n) {
    if (layout.free_bits() > kMaxFreeBits) {
        throw std::length_error(
            "Hamiltonian needs " + std::to_string(layout.free_bits()) +
            " unknown bits, the cap is " + std::to_string(kMaxFreeBits));
    }
    DiagonalHamiltonian h;
    h.n_ = n;
    h.layout_ = layout;
    const std::size_t dim = layout.dim();
    h.energies_.resize(dim);
    h.energies_f64_.resize(dim);
    long double total = 0.0L;
    for (std::size_t index = 0; index < dim; ++index) {
        const FactorPair p = decode_solution(index, layout, n);
        const u128 prod =
            static_cast<u128>(p.x) * p.y;
        const u128 diff = prod > n ? prod - n : n - prod;
        const u128 e = diff * diff;
        if (e > std::numeric_limits<std::uint64_t>::max()) {
            throw std::overflow_error("energy exceeds 64 bits");
        }
        h.energies_[index] = static_cast<std::uint64_t>(e);
        h.energies_f64_[index] = static_cast<double>(h.energies_[index]);
        total += static_cast<long double>(h.energies_[index]);
    }
    h.shift_ = static_cast<double>(total / static_cast<long double>(dim));
    return h;
}

std::vector<std::size_t> ground_states_bruteforce(const DiagonalHamiltonian &h) {
    const std::uint64_t lowest = h.min_energy();
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < h.dim(); ++i) {
        if (h.energies()[i] == lowest) {
            out.push_back(i);
        }
    }
    return out;
}

FactorPair decode_solution(std::size_t index, const BitLayout &layout,
                           std::uint64_t n) {
    if (index >= layout.dim()) {
        throw std::out_of_range("basis index " + std::to_string(index) +
                                " outside dimension " +
                                std::to_string(layout.dim()));
    }
    const std::uint64_t x_bits = index >> layout.free_y;
    const std::uint64_t y_bits = index & ((std::uint64_t{1} << layout.free_y) - 1);
    FactorPair p;
    p.x = (std::uint64_t{1} << (layout.nx - 1)) + 2 * x_bits + 1;
    p.y = (std::uint64_t{1} << (layout.ny - 1)) + 2 * y_bits + 1;
    p.valid = static_cast<u128>(p.x) * p.y == n;
    return p;
}

std::string basis_label(std::size_t index, unsigned width) {
    std::string s(width, '0');
    for (unsigned b = 0; b < width; ++b) {
        if ((index >> b) & 1U) {
            s[width - 1 - b] = '1';
        }
    }
    return s;
}

} // namespace pvqa::factoring
