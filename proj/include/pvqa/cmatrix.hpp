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
#include <span>
#include <vector>

namespace pvqa {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Small (mode-count sized) by construction.
class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool square() const { return rows_ == cols_; }

    cplx &operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    const cplx &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    std::span<cplx> row(std::size_t r) {
        return {data_.data() + r * cols_, cols_};
    }
    [[nodiscard]] std::span<const cplx> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }

    [[nodiscard]] std::vector<cplx> column(std::size_t c) const;

    [[nodiscard]] std::span<const cplx> data() const { return data_; }

    [[nodiscard]] CMatrix adjoint() const;

    friend CMatrix operator*(const CMatrix &a, const CMatrix &b);
    friend std::vector<cplx> operator*(const CMatrix &a,
                                       std::span<const cplx> v);

    bool operator==(const CMatrix &) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// max_ij |(A^dagger A - I)_ij|
double unitarity_defect(const CMatrix &a);

/// max_ij |A_ij - B_ij|
double max_abs_diff(const CMatrix &a, const CMatrix &b);

/// (1/M) |Tr(A^dagger B)|, the amplitude fidelity between two MxM unitaries.
double amplitude_fidelity(const CMatrix &a, const CMatrix &b);

} // namespace pvqa
