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
// Built with -mavx2 -mfma. Nothing in this file may run before
// avx2_table() has confirmed CPU support.

#include "pvqa/kernels.hpp"

#include <immintrin.h>

namespace pvqa::kernels {
namespace {

// std::complex<double> is layout-compatible with double[2].
inline const double *raw(const cplx *p) {
    return reinterpret_cast<const double *>(p);
}
inline double *raw(cplx *p) { return reinterpret_cast<double *>(p); }

// Two interleaved complex numbers times the broadcast scalar (re, im).
inline __m256d cmul(__m256d re, __m256d im, __m256d x) {
    const __m256d swapped = _mm256_permute_pd(x, 0b0101);
    return _mm256_fmaddsub_pd(re, x, _mm256_mul_pd(im, swapped));
}

void abs2_avx2(const cplx *in, double *out, std::size_t n) {
    const double *src = raw(in);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d lo = _mm256_loadu_pd(src + 2 * i);
        const __m256d hi = _mm256_loadu_pd(src + 2 * i + 4);
        // hadd -> |c0|^2, |c2|^2, |c1|^2, |c3|^2
        const __m256d sums =
            _mm256_hadd_pd(_mm256_mul_pd(lo, lo), _mm256_mul_pd(hi, hi));
        _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(sums, 0b11011000));
    }
    for (; i < n; ++i) {
        out[i] = std::norm(in[i]);
    }
}

double dot_avx2(const double *a, const double *b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i),
                               acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                               _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i),
                               acc0);
    }
    const __m256d acc = _mm256_add_pd(acc0, acc1);
    const __m128d pair = _mm_add_pd(_mm256_castpd256_pd128(acc),
                                    _mm256_extractf128_pd(acc, 1));
    double total = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
    for (; i < n; ++i) {
        total += a[i] * b[i];
    }
    return total;
}

void rotate_rows_avx2(cplx *a, cplx *b, std::size_t n, const Block2 &t) {
    const __m256d r00 = _mm256_set1_pd(t.t00.real());
    const __m256d i00 = _mm256_set1_pd(t.t00.imag());
    const __m256d r01 = _mm256_set1_pd(t.t01.real());
    const __m256d i01 = _mm256_set1_pd(t.t01.imag());
    const __m256d r10 = _mm256_set1_pd(t.t10.real());
    const __m256d i10 = _mm256_set1_pd(t.t10.imag());
    const __m256d r11 = _mm256_set1_pd(t.t11.real());
    const __m256d i11 = _mm256_set1_pd(t.t11.imag());
    double *pa = raw(a);
    double *pb = raw(b);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d x = _mm256_loadu_pd(pa + 2 * i);
        const __m256d y = _mm256_loadu_pd(pb + 2 * i);
        const __m256d nx =
            _mm256_add_pd(cmul(r00, i00, x), cmul(r01, i01, y));
        const __m256d ny =
            _mm256_add_pd(cmul(r10, i10, x), cmul(r11, i11, y));
        _mm256_storeu_pd(pa + 2 * i, nx);
        _mm256_storeu_pd(pb + 2 * i, ny);
    }
    for (; i < n; ++i) {
        const cplx x = a[i];
        const cplx y = b[i];
        a[i] = t.t00 * x + t.t01 * y;
        b[i] = t.t10 * x + t.t11 * y;
    }
}

void axpy_avx2(cplx alpha, const cplx *x, cplx *y, std::size_t n) {
    const __m256d re = _mm256_set1_pd(alpha.real());
    const __m256d im = _mm256_set1_pd(alpha.imag());
    const double *px = raw(x);
    double *py = raw(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(px + 2 * i);
        const __m256d acc = _mm256_loadu_pd(py + 2 * i);
        _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(acc, cmul(re, im, v)));
    }
    for (; i < n; ++i) {
        y[i] += alpha * x[i];
    }
}

} // namespace

KernelTable make_avx2_table() {
    return KernelTable{"avx2", abs2_avx2, dot_avx2, rotate_rows_avx2,
                       axpy_avx2};
}

} // namespace pvqa::kernels
