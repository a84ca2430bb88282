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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "clipmul/poly.hpp"
#include "clipmul/range.hpp"

namespace clipmul {

using int128_t = __int128;
using uint128_t = unsigned __int128;

/// Largest supported digit base. Keeps every digit product in native
/// double-width range; carries stay well inside 128 bits.
inline constexpr std::uint64_t max_base = std::uint64_t(1) << 32;

struct int_op_stats;  // clipped_int.hpp

/// Nonnegative integer as a base-B digit sequence, least significant digit
/// first. Invariants: 2 <= base <= 2^32, every digit in [0, base), no
/// most-significant zero digit; zero is the empty sequence. Immutable in
/// ordinary use and safe to share.
class digit_nat {
public:
    explicit digit_nat(std::uint64_t base) : base_(base) { check_base(base); }

    digit_nat(std::uint64_t base, std::vector<std::uint64_t> digits)
        : base_(base), digits_(std::move(digits)) {
        check_base(base);
        for (std::uint64_t d : digits_)
            if (d >= base_) throw std::domain_error("digit out of range for base");
        trim();
    }

    static digit_nat from_value(std::uint64_t base, std::uint64_t value) {
        digit_nat n(base);
        while (value != 0) {
            n.digits_.push_back(value % base);
            value /= base;
        }
        return n;
    }

    std::uint64_t base() const { return base_; }
    bool is_zero() const { return digits_.empty(); }
    const std::vector<std::uint64_t>& digits() const { return digits_; }

    friend bool operator==(const digit_nat&, const digit_nat&) = default;

private:
    static void check_base(std::uint64_t base) {
        if (base < 2 || base > max_base) throw std::invalid_argument("base must be in [2, 2^32]");
    }
    void trim() {
        while (!digits_.empty() && digits_.back() == 0) digits_.pop_back();
    }

    friend void classical_clipped_int_into(const digit_nat&, const digit_nat&, clip_range,
                                           struct guard_policy, digit_nat&, int_op_stats*);

    std::uint64_t base_;
    std::vector<std::uint64_t> digits_;
};

/// Number of base-B digits; 0 for zero.
inline index_t iprec(const digit_nat& n) { return static_cast<index_t>(n.digits().size()); }

/// Digit i, zero outside the stored range.
inline std::uint64_t icoeff(const digit_nat& n, index_t i) {
    if (i < 0 || i >= iprec(n)) return 0;
    return n.digits()[static_cast<std::size_t>(i)];
}

/// Positioned clip: keeps digits a..b at their original positions (low
/// positions come back as zero digits, as in 4132230000).
inline digit_nat iclip(const digit_nat& n, clip_range r) {
    if (r.empty() || n.is_zero()) return digit_nat(n.base());
    const index_t hi = std::min<index_t>(r.hi, iprec(n) - 1);
    if (r.lo > hi) return digit_nat(n.base());
    std::vector<std::uint64_t> out(static_cast<std::size_t>(hi + 1), 0);
    for (index_t i = std::max<index_t>(r.lo, 0); i <= hi; ++i)
        out[static_cast<std::size_t>(i)] = icoeff(n, i);
    return digit_nat(n.base(), std::move(out));
}

/// Clip with the result shifted down to position 0 (test convenience).
inline digit_nat iclip_shifted(const digit_nat& n, clip_range r) {
    if (r.empty() || n.is_zero()) return digit_nat(n.base());
    const index_t hi = std::min<index_t>(r.hi, iprec(n) - 1);
    std::vector<std::uint64_t> out;
    for (index_t i = std::max<index_t>(r.lo, 0); i <= hi; ++i) out.push_back(icoeff(n, i));
    return digit_nat(n.base(), std::move(out));
}

/// Column sums of a multiplication tableau before carry propagation.
/// sums[i] holds the (possibly signed) sum destined for position offset+i.
/// Single-owner builder; magnitudes must stay within 128 bits.
struct unnormalized_columns {
    std::uint64_t base = 10;
    index_t offset = 0;
    std::vector<int128_t> sums;
};

/// Carry propagation from the lowest column upward. Handles signed column
/// sums by floor division; the overall value must be nonnegative.
/// Result value = incoming_carry*B^offset + sum_i sums[i]*B^(offset+i).
inline digit_nat normalize(const unnormalized_columns& c, std::uint64_t incoming_carry = 0) {
    if (c.offset < 0) throw std::invalid_argument("normalize: negative offset");
    const int128_t base = static_cast<int128_t>(c.base);
    std::vector<std::uint64_t> out(static_cast<std::size_t>(c.offset), 0);
    int128_t carry = static_cast<int128_t>(incoming_carry);
    for (int128_t s : c.sums) {
        const int128_t total = s + carry;
        int128_t digit = total % base;
        if (digit < 0) digit += base;
        carry = (total - digit) / base;
        out.push_back(static_cast<std::uint64_t>(digit));
    }
    if (carry < 0) throw std::domain_error("normalize: negative value");
    while (carry > 0) {
        out.push_back(static_cast<std::uint64_t>(carry % base));
        carry /= base;
    }
    return digit_nat(c.base, std::move(out));
}

// ---------------------------------------------------------------------------
// GMP bridges. mpz_class supplies the exact big-integer arithmetic for the
// oracle and for decimal conversion; the clipped algorithms never touch it.
// ---------------------------------------------------------------------------

inline mpz_class to_mpz(const digit_nat& n) {
    mpz_class acc = 0;
    const mpz_class base = static_cast<unsigned long>(n.base());
    for (auto it = n.digits().rbegin(); it != n.digits().rend(); ++it)
        acc = acc * base + static_cast<unsigned long>(*it);
    return acc;
}

inline digit_nat from_mpz(mpz_class v, std::uint64_t base) {
    if (v < 0) throw std::domain_error("digit_nat: value must be nonnegative");
    std::vector<std::uint64_t> digits;
    const mpz_class b = static_cast<unsigned long>(base);
    mpz_class q, r;
    while (v != 0) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v.get_mpz_t(), b.get_mpz_t());
        digits.push_back(r.get_ui());
        v = q;
    }
    return digit_nat(base, std::move(digits));
}

/// Exact full product; the ground truth every clipped integer method is
/// checked against.
inline digit_nat oracle_int_product(const digit_nat& f, const digit_nat& g) {
    if (f.base() != g.base()) throw std::domain_error("oracle_int_product: base mismatch");
    return from_mpz(to_mpz(f) * to_mpz(g), f.base());
}

inline digit_nat from_decimal(const std::string& s, std::uint64_t base) {
    if (s.empty()) throw std::invalid_argument("empty numeral");
    for (char ch : s)
        if (ch < '0' || ch > '9') throw std::invalid_argument("bad decimal numeral: " + s);
    return from_mpz(mpz_class(s, 10), base);
}

inline std::string to_decimal(const digit_nat& n) { return to_mpz(n).get_str(10); }

template <>
struct coeff_io<mpz_class> {
    static mpz_class parse(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("empty coefficient");
        const std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) throw std::invalid_argument("bad coefficient: " + s);
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad coefficient: " + s);
        return mpz_class(s, 10);
    }
    static std::string print(const mpz_class& v) { return v.get_str(10); }
};

}  // namespace clipmul
