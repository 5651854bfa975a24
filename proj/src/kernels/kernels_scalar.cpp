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
#include "pvqa/kernels.hpp"

namespace pvqa::kernels {
namespace {

void abs2_scalar(const cplx *in, double *out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::norm(in[i]);
    }
}

double dot_scalar(const double *a, const double *b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

void rotate_rows_scalar(cplx *a, cplx *b, std::size_t n, const Block2 &t) {
    for (std::size_t i = 0; i < n; ++i) {
        const cplx x = a[i];
        const cplx y = b[i];
        a[i] = t.t00 * x + t.t01 * y;
        b[i] = t.t10 * x + t.t11 * y;
    }
}

void axpy_scalar(cplx alpha, const cplx *x, cplx *y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        y[i] += alpha * x[i];
    }
}

} // namespace

const KernelTable &scalar_table() {
    static const KernelTable table{"scalar", abs2_scalar, dot_scalar,
                                   rotate_rows_scalar, axpy_scalar};
    return table;
}

} // namespace pvqa::kernels
