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

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "clipmul/clipped_poly.hpp"
#include "clipmul/digits.hpp"
#include "clipmul/range.hpp"

namespace clipmul {

enum class guard_mode {
    exact,    // guard all the way down to position 0; result equals the oracle
    theorem,  // carry-bound guard count; correct to within 1 unit in position a
};

struct guard_policy {
    guard_mode mode = guard_mode::exact;
};

/// Counters and carry instrumentation for the integer methods.
struct int_op_stats {
    std::uint64_t mul = 0;
    std::uint64_t add = 0;
    uint128_t max_carry = 0;
};

/// Smallest e with B^e >= n, by integer iteration. Float logs misbehave at
/// boundaries like n = B^e.
inline index_t ceil_log(std::uint64_t base, std::uint64_t n) {
    if (base < 2) throw std::invalid_argument("ceil_log: base must be >= 2");
    index_t e = 0;
    uint128_t p = 1;
    while (p < n) {
        p *= base;
        ++e;
    }
    return e;
}

/// Guard digits needed below position a so the carry into the clip range is
/// correct to within one unit: min(a, ceil(log_B prec g) + 1).
inline index_t guard_digits(index_t a, index_t prec_g, std::uint64_t base) {
    if (a < 0 || prec_g < 1) throw std::invalid_argument("guard_digits: bad arguments");
    return std::min<index_t>(a, ceil_log(base, static_cast<std::uint64_t>(prec_g)) + 1);
}

/// Classical clipped integer product into a caller-owned result, reusing its
/// digit storage. Sums tableau columns [a-G..b] with a running carry; the
/// guard columns contribute only their carry and digits below a are dropped.
inline void classical_clipped_int_into(const digit_nat& f0, const digit_nat& g0, clip_range r,
                                       guard_policy policy, digit_nat& out,
                                       int_op_stats* stats = nullptr) {
    if (f0.base() != g0.base() || f0.base() != out.base())
        throw std::domain_error("classical_clipped_int: base mismatch");
    if (!r.empty() && r.lo < 0)
        throw std::invalid_argument("classical_clipped_int: range start must be nonnegative");
    out.digits_.clear();
    if (r.empty() || f0.is_zero() || g0.is_zero()) return;

    const digit_nat* f = &f0;
    const digit_nat* g = &g0;
    if (iprec(*g) > iprec(*f)) std::swap(f, g);
    const index_t pf = iprec(*f), pg = iprec(*g);
    const std::uint64_t base = f->base();
    const index_t guard =
        policy.mode == guard_mode::exact ? r.lo : guard_digits(r.lo, pg, base);

    const std::uint64_t* fd = f->digits().data();
    const std::uint64_t* gd = g->digits().data();
    auto& digits = out.digits_;
    digits.assign(static_cast<std::size_t>(r.lo), 0);  // positioned value

    uint128_t carry = 0;
    const index_t last = std::min<index_t>(r.hi, pf + pg - 1);
    for (index_t k = r.lo - guard; k <= last; ++k) {
        uint128_t t = carry;
        const index_t i0 = std::max<index_t>(0, k - (pg - 1));
        const index_t i1 = std::min<index_t>(k, pf - 1);
        for (index_t i = i0; i <= i1; ++i)
            t += static_cast<uint128_t>(fd[i]) * gd[k - i];
        if (stats) {
            const std::uint64_t terms = i1 >= i0 ? static_cast<std::uint64_t>(i1 - i0 + 1) : 0;
            stats->mul += terms;
            stats->add += terms > 0 ? terms - 1 + (carry != 0 ? 1 : 0) : 0;
        }
        carry = t / base;
        if (stats) stats->max_carry = std::max(stats->max_carry, carry);
        if (k >= r.lo) digits.push_back(static_cast<std::uint64_t>(t % base));
    }
    while (!digits.empty() && digits.back() == 0) digits.pop_back();
}

inline digit_nat classical_clipped_int(const digit_nat& f, const digit_nat& g, clip_range r,
                                       guard_policy policy = {}, int_op_stats* stats = nullptr) {
    digit_nat out(f.base());
    classical_clipped_int_into(f, g, r, policy, out, stats);
    return out;
}

/// Exact low part [0..b]: drop operand digits above b, multiply, clip.
/// Carries out of the range never flow back down, so no guard is needed.
inline digit_nat bottom_clipped_int(const digit_nat& f, const digit_nat& g, index_t b,
                                    int_op_stats* stats = nullptr) {
    if (b < 0) throw std::invalid_argument("bottom_clipped_int: b must be nonnegative");
    const auto fc = iclip(f, {0, b});
    const auto gc = iclip(g, {0, b});
    return classical_clipped_int(fc, gc, {0, b}, {guard_mode::exact}, stats);
}

inline digit_nat clipped_int_from_bottom(const digit_nat& f, const digit_nat& g, clip_range r,
                                         int_op_stats* stats = nullptr) {
    if (r.empty()) return digit_nat(f.base());
    return iclip(bottom_clipped_int(f, g, r.hi, stats), r);
}

namespace detail {

inline shifted_poly<int128_t> digits_as_poly(const digit_nat& n) {
    std::vector<int128_t> coeffs(n.digits().begin(), n.digits().end());
    return shifted_poly<int128_t>(0, std::move(coeffs));
}

// Karatsuba intermediates grow by a factor <= 2 per split level, so column
// sums are bounded by min_prec * (2^depth * (base-1))^2. Keep that inside a
// signed 128-bit value with headroom.
inline void check_int128_headroom(index_t pf, index_t pg, std::uint64_t base) {
    const index_t depth = ceil_log(2, static_cast<std::uint64_t>(std::max(pf, pg)));
    const index_t bits = 2 * (depth + ceil_log(2, base)) + ceil_log(2, static_cast<std::uint64_t>(std::min(pf, pg)));
    if (bits > 120)
        throw std::overflow_error("karatsuba_clipped_int: operands too large for 128-bit columns");
}

}  // namespace detail

/// Clipped integer product through the polynomial engine: digit vectors are
/// integer-coefficient polynomials, the guarded column range is computed by
/// clipped Karatsuba (column sums come out exact), and a single carry pass
/// normalizes from the guard columns upward.
inline digit_nat karatsuba_clipped_int(const digit_nat& f, const digit_nat& g, clip_range r,
                                       guard_policy policy = {}, const karatsuba_config& kcfg = {},
                                       int_op_stats* stats = nullptr) {
    if (f.base() != g.base()) throw std::domain_error("karatsuba_clipped_int: base mismatch");
    if (!r.empty() && r.lo < 0)
        throw std::invalid_argument("karatsuba_clipped_int: range start must be nonnegative");
    if (r.empty() || f.is_zero() || g.is_zero()) return digit_nat(f.base());
    detail::check_int128_headroom(iprec(f), iprec(g), f.base());

    const index_t guard = policy.mode == guard_mode::exact
                              ? r.lo
                              : guard_digits(r.lo, std::min(iprec(f), iprec(g)), f.base());
    const index_t col_lo = r.lo - guard;

    basic_int_ring<int128_t> base_ring;
    shifted_poly<int128_t> cols;
    if (stats) {
        auto counted = counting_wrap(base_ring);
        cols = karatsuba_clipped(detail::digits_as_poly(f), detail::digits_as_poly(g),
                                 {col_lo, r.hi}, counted, kcfg);
        const op_count c = counted.snapshot();
        stats->mul += c.mul;
        stats->add += c.add;
    } else {
        cols = karatsuba_clipped(detail::digits_as_poly(f), detail::digits_as_poly(g),
                                 {col_lo, r.hi}, base_ring, kcfg);
    }

    unnormalized_columns columns;
    columns.base = f.base();
    columns.offset = col_lo;
    if (!cols.is_zero()) {
        columns.sums.assign(static_cast<std::size_t>(r.hi - col_lo + 1), 0);
        for (index_t k = cols.offset(); k <= cols.degree(); ++k)
            columns.sums[static_cast<std::size_t>(k - col_lo)] = coeff(cols, k);
    }
    digit_nat full = normalize(columns);

    // Guard columns only determine the carry into position r.lo.
    std::vector<std::uint64_t> digits(full.digits().begin(), full.digits().end());
    for (index_t i = 0; i < std::min<index_t>(r.lo, iprec(full)); ++i)
        digits[static_cast<std::size_t>(i)] = 0;
    if (static_cast<index_t>(digits.size()) > r.hi + 1)
        digits.resize(static_cast<std::size_t>(r.hi + 1));  // drop the outgoing carry
    return digit_nat(f.base(), std::move(digits));
}

/// Exact full integer product through the classical engine (ring-counted
/// column sums plus one carry pass); used by the integer method router.
inline digit_nat full_int_product(const digit_nat& f, const digit_nat& g,
                                  int_op_stats* stats = nullptr) {
    if (f.base() != g.base()) throw std::domain_error("full_int_product: base mismatch");
    if (f.is_zero() || g.is_zero()) return digit_nat(f.base());
    return classical_clipped_int(f, g, {0, iprec(f) + iprec(g) - 1}, {guard_mode::exact}, stats);
}

}  // namespace clipmul
