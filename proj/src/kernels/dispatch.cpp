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

#include <cstdlib>
#include <string>

namespace pvqa::kernels {

#ifdef PVQA_BUILD_AVX2
KernelTable make_avx2_table();
#endif
#ifdef PVQA_BUILD_NEON
KernelTable make_neon_table();
#endif

std::optional<KernelTable> avx2_table() {
#ifdef PVQA_BUILD_AVX2
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return make_avx2_table();
    }
#endif
    return std::nullopt;
}

std::optional<KernelTable> neon_table() {
#ifdef PVQA_BUILD_NEON
    return make_neon_table();
#else
    return std::nullopt;
#endif
}

namespace {

KernelTable select() {
    if (const char *forced = std::getenv("PVQA_KERNELS");
        forced != nullptr && std::string(forced) == "scalar") {
        return scalar_table();
    }
    if (auto t = avx2_table()) {
        return *t;
    }
    if (auto t = neon_table()) {
        return *t;
    }
    return scalar_table();
}

} // namespace

const KernelTable &active() {
    static const KernelTable table = select();
    return table;
}

} // namespace pvqa::kernels
