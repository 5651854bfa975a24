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

#include <gtest/gtest.h>

#include <random>
#include <vector>

namespace {

using pvqa::kernels::Block2;
using pvqa::kernels::cplx;
using pvqa::kernels::KernelTable;

std::vector<cplx> random_vec(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<cplx> v(n);
    for (auto &z : v)
        z = {g(rng), g(rng)};
    return v;
}

std::vector<KernelTable> simd_tables() {
    std::vector<KernelTable> out;
    if (auto t = pvqa::kernels::avx2_table())
        out.push_back(*t);
    if (auto t = pvqa::kernels::neon_table())
        out.push_back(*t);
    return out;
}

// Odd lengths exercise the scalar tails of the vector loops.
constexpr std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 16, 17, 63, 1000};

} // namespace

TEST(Kernels, ScalarReference) {
    const auto &s = pvqa::kernels::scalar_table();
    std::vector<cplx> v{{3, 4}, {0, 1}, {-1, 0}};
    std::vector<double> p(3);
    s.abs2(v.data(), p.data(), 3);
    EXPECT_EQ(p, (std::vector<double>{25, 1, 1}));

    std::vector<double> a{1, 2, 3}, b{4, 5, 6};
    EXPECT_EQ(s.dot(a.data(), b.data(), 3), 32.0);

    std::vector<cplx> r0{{1, 0}, {0, 0}}, r1{{0, 0}, {1, 0}};
    Block2 swap{{0, 0}, {1, 0}, {1, 0}, {0, 0}};
    s.rotate_rows(r0.data(), r1.data(), 2, swap);
    EXPECT_EQ(r0[1], cplx(1, 0));
    EXPECT_EQ(r1[0], cplx(1, 0));

    std::vector<cplx> y{{1, 1}};
    std::vector<cplx> x{{2, 0}};
    s.axpy({0, 1}, x.data(), y.data(), 1);
    EXPECT_EQ(y[0], cplx(1, 3));
}

TEST(Kernels, ActiveTableIsKnown) {
    const auto name = pvqa::kernels::active().name;
    EXPECT_TRUE(name == "scalar" || name == "avx2" || name == "neon") << name;
}

TEST(Kernels, SimdMatchesScalar) {
    const auto &ref = pvqa::kernels::scalar_table();
    const auto tables = simd_tables();
    if (tables.empty())
        GTEST_SKIP() << "no SIMD variant on this host";

    for (const auto &t : tables) {
        for (std::size_t n : kLengths) {
            SCOPED_TRACE(std::string(t.name) + " n=" + std::to_string(n));
            auto x = random_vec(n, 11 + n);
            auto y = random_vec(n, 97 + n);

            std::vector<double> p_ref(n), p_simd(n);
            ref.abs2(x.data(), p_ref.data(), n);
            t.abs2(x.data(), p_simd.data(), n);
            for (std::size_t i = 0; i < n; ++i)
                EXPECT_NEAR(p_ref[i], p_simd[i], 1e-14 * (1 + p_ref[i]));

            std::vector<double> da(n), db(n);
            for (std::size_t i = 0; i < n; ++i) {
                da[i] = x[i].real();
                db[i] = y[i].imag();
            }
            double d_ref = ref.dot(da.data(), db.data(), n);
            double d_simd = t.dot(da.data(), db.data(), n);
            EXPECT_NEAR(d_ref, d_simd, 1e-12 * (1 + static_cast<double>(n)));

            Block2 blk{{0.3, -0.2}, {0.1, 0.9}, {-0.7, 0.4}, {0.25, 0.5}};
            auto a1 = x, b1 = y, a2 = x, b2 = y;
            ref.rotate_rows(a1.data(), b1.data(), n, blk);
            t.rotate_rows(a2.data(), b2.data(), n, blk);
            for (std::size_t i = 0; i < n; ++i) {
                EXPECT_LT(std::abs(a1[i] - a2[i]), 1e-14);
                EXPECT_LT(std::abs(b1[i] - b2[i]), 1e-14);
            }

            auto y1 = y, y2 = y;
            ref.axpy({0.5, -1.5}, x.data(), y1.data(), n);
            t.axpy({0.5, -1.5}, x.data(), y2.data(), n);
            for (std::size_t i = 0; i < n; ++i)
                EXPECT_LT(std::abs(y1[i] - y2[i]), 1e-14);
        }
    }
}

TEST(Kernels, RotateRowsMatchesExplicitProduct) {
    auto x = random_vec(9, 5);
    auto y = random_vec(9, 6);
    Block2 blk{{0.6, 0}, {0, 0.8}, {0, 0.8}, {0.6, 0}};
    auto a = x, b = y;
    pvqa::kernels::rotate_rows(a, b, blk);
    for (std::size_t i = 0; i < x.size(); ++i) {
        EXPECT_LT(std::abs(a[i] - (blk.t00 * x[i] + blk.t01 * y[i])), 1e-14);
        EXPECT_LT(std::abs(b[i] - (blk.t10 * x[i] + blk.t11 * y[i])), 1e-14);
    }
}
