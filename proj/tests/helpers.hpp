// Copyright 2026 The clip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "clipmul/clipmul.hpp"

namespace testutil {

using clipmul::digit_nat;
using clipmul::index_t;
using clipmul::shifted_poly;

inline shifted_poly<long long> random_poly(std::mt19937_64& rng, index_t max_prec,
                                           long long max_abs, bool allow_zero = true) {
    std::uniform_int_distribution<index_t> len(allow_zero ? 0 : 1, max_prec);
    std::uniform_int_distribution<long long> val(-max_abs, max_abs);
    const index_t n = len(rng);
    std::vector<long long> c;
    c.reserve(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i) c.push_back(val(rng));
    return shifted_poly<long long>(0, std::move(c));
}

// Every coefficient strictly positive: no zero sub-piece and no cancellation
// anywhere in a split-and-add recursion, so operation counts are purely
// structural.
inline shifted_poly<long long> random_dense_poly(std::mt19937_64& rng, index_t prec_n,
                                                 long long max_abs) {
    std::uniform_int_distribution<long long> val(1, max_abs);
    std::vector<long long> c;
    for (index_t i = 0; i < prec_n; ++i) c.push_back(val(rng));
    return shifted_poly<long long>(0, std::move(c));
}

inline digit_nat random_digits(std::mt19937_64& rng, std::uint64_t base, index_t max_prec) {
    std::uniform_int_distribution<index_t> len(0, max_prec);
    std::uniform_int_distribution<std::uint64_t> digit(0, base - 1);
    const index_t n = len(rng);
    std::vector<std::uint64_t> d;
    for (index_t i = 0; i < n; ++i) d.push_back(digit(rng));
    return digit_nat(base, std::move(d));
}

inline std::uint64_t value_u64(const digit_nat& n) {
    std::uint64_t v = 0;
    for (auto it = n.digits().rbegin(); it != n.digits().rend(); ++it) v = v * n.base() + *it;
    return v;
}

}  // namespace testutil
