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
// AArch64 only; Advanced SIMD is part of the base ISA there.

#include "pvqa/kernels.hpp"

#include <arm_neon.h>

namespace pvqa::kernels {
namespace {

inline const double *raw(const cplx *p) {
    return reinterpret_cast<const double *>(p);
}
inline double *raw(cplx *p) { return reinterpret_cast<double *>(p); }

// One complex number (re, im) times the scalar t. `flipped` holds (-t.im, t.im).
inline float64x2_t cmul(float64x2_t re, float64x2_t flipped, float64x2_t x) {
    const float64x2_t swapped = vextq_f64(x, x, 1);
    return vfmaq_f64(vmulq_f64(re, x), flipped, swapped);
}

void abs2_neon(const cplx *in, double *out, std::size_t n) {
    const double *src = raw(in);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t a = vld1q_f64(src + 2 * i);
        const float64x2_t b = vld1q_f64(src + 2 * i + 2);
        vst1q_f64(out + i, vpaddq_f64(vmulq_f64(a, a), vmulq_f64(b, b)));
    }
    for (; i < n; ++i) {
        out[i] = std::norm(in[i]);
    }
}

double dot_neon(const double *a, const double *b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double total = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) {
        total += a[i] * b[i];
    }
    return total;
}

void rotate_rows_neon(cplx *a, cplx *b, std::size_t n, const Block2 &t) {
    const float64x2_t r00 = vdupq_n_f64(t.t00.real());
    const float64x2_t f00 = {-t.t00.imag(), t.t00.imag()};
    const float64x2_t r01 = vdupq_n_f64(t.t01.real());
    const float64x2_t f01 = {-t.t01.imag(), t.t01.imag()};
    const float64x2_t r10 = vdupq_n_f64(t.t10.real());
    const float64x2_t f10 = {-t.t10.imag(), t.t10.imag()};
    const float64x2_t r11 = vdupq_n_f64(t.t11.real());
    const float64x2_t f11 = {-t.t11.imag(), t.t11.imag()};
    double *pa = raw(a);
    double *pb = raw(b);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t x = vld1q_f64(pa + 2 * i);
        const float64x2_t y = vld1q_f64(pb + 2 * i);
        vst1q_f64(pa + 2 * i,
                  vaddq_f64(cmul(r00, f00, x), cmul(r01, f01, y)));
        vst1q_f64(pb + 2 * i,
                  vaddq_f64(cmul(r10, f10, x), cmul(r11, f11, y)));
    }
}

void axpy_neon(cplx alpha, const cplx *x, cplx *y, std::size_t n) {
    const float64x2_t re = vdupq_n_f64(alpha.real());
    const float64x2_t flipped = {-alpha.imag(), alpha.imag()};
    const double *px = raw(x);
    double *py = raw(y);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t v = vld1q_f64(px + 2 * i);
        vst1q_f64(py + 2 * i,
                  vaddq_f64(vld1q_f64(py + 2 * i), cmul(re, flipped, v)));
    }
}

} // namespace

KernelTable make_neon_table() {
    return KernelTable{"neon", abs2_neon, dot_neon, rotate_rows_neon,
                       axpy_neon};
}

} // namespace pvqa::kernels
