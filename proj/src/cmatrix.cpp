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
#include "pvqa/cmatrix.hpp"

#include "pvqa/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pvqa {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

std::vector<cplx> CMatrix::column(std::size_t c) const {
    if (c >= cols_) {
        throw std::out_of_range("column index out of range");
    }
    std::vector<cplx> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        out[r] = (*this)(r, c);
    }
    return out;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

CMatrix operator*(const CMatrix &a, const CMatrix &b) {
    if (a.cols_ != b.rows_) {
        throw std::invalid_argument("matrix product: dimension mismatch");
    }
    CMatrix out(a.rows_, b.cols_);
    // Row i of the product accumulates a(i,k) * row k of b.
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            kernels::axpy(a(i, k), b.row(k), out.row(i));
        }
    }
    return out;
}

std::vector<cplx> operator*(const CMatrix &a, std::span<const cplx> v) {
    if (a.cols_ != v.size()) {
        throw std::invalid_argument("matrix-vector product: dimension mismatch");
    }
    std::vector<cplx> out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < a.cols_; ++k) {
            acc += a(i, k) * v[k];
        }
        out[i] = acc;
    }
    return out;
}

double unitarity_defect(const CMatrix &a) {
    if (!a.square()) {
        return std::numeric_limits<double>::infinity();
    }
    const std::size_t n = a.rows();
    // Gram = sum_k conj(row_k)^T row_k, accumulated row by row.
    CMatrix gram(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto rk = a.row(k);
        for (std::size_t i = 0; i < n; ++i) {
            kernels::axpy(std::conj(rk[i]), rk, gram.row(i));
        }
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const cplx target = i == j ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(gram(i, j) - target));
        }
    }
    return worst;
}

double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    }
    double worst = 0.0;
    const auto da = a.data();
    const auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) {
        worst = std::max(worst, std::abs(da[i] - db[i]));
    }
    return worst;
}

double amplitude_fidelity(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || !a.square()) {
        throw std::invalid_argument("amplitude_fidelity: dimension mismatch");
    }
    cplx trace = 0.0;
    const auto da = a.data();
    const auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) {
        trace += std::conj(da[i]) * db[i];
    }
    return std::abs(trace) / static_cast<double>(a.rows());
}

} // namespace pvqa
