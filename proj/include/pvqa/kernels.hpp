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

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

/// Data-parallel inner loops used by the mesh and photonics modules.
///
/// Every kernel exists as a portable scalar reference and, where the target
/// supports it, an AVX2+FMA (x86-64) or NEON (AArch64) variant. The variant is
/// picked once at runtime; `PVQA_KERNELS=scalar` in the environment forces the
/// reference path.
namespace pvqa::kernels {

using cplx = std::complex<double>;

/// 2x2 complex block [[t00, t01], [t10, t11]].
struct Block2 {
    cplx t00, t01, t10, t11;
};

struct KernelTable {
    std::string_view name;

    /// out[i] = |in[i]|^2
    void (*abs2)(const cplx *in, double *out, std::size_t n);

    /// sum_i a[i] * b[i]
    double (*dot)(const double *a, const double *b, std::size_t n);

    /// (a, b) <- (t00 a + t01 b, t10 a + t11 b), elementwise over n entries.
    /// Left-multiplies a 2x2 block onto two contiguous matrix rows.
    void (*rotate_rows)(cplx *a, cplx *b, std::size_t n, const Block2 &t);

    /// y[i] += alpha * x[i]
    void (*axpy)(cplx alpha, const cplx *x, cplx *y, std::size_t n);
};

const KernelTable &scalar_table();

/// Nullopt when the binary was built without the variant or the CPU lacks
/// the instructions.
std::optional<KernelTable> avx2_table();
std::optional<KernelTable> neon_table();

/// The table selected for this process.
const KernelTable &active();

// Convenience wrappers over active().

inline void abs2(std::span<const cplx> in, std::span<double> out) {
    active().abs2(in.data(), out.data(), in.size());
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    return active().dot(a.data(), b.data(), a.size());
}

inline void rotate_rows(std::span<cplx> a, std::span<cplx> b,
                        const Block2 &t) {
    active().rotate_rows(a.data(), b.data(), a.size(), t);
}

inline void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    active().axpy(alpha, x.data(), y.data(), x.size());
}

} // namespace pvqa::kernels
