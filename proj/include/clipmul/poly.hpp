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

#include <cassert>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clipmul/range.hpp"
#include "clipmul/ring.hpp"

namespace clipmul {

/// Dense univariate polynomial with an explicit lowest represented exponent:
/// coeffs[i] is the coefficient of x^(offset+i).
///
/// Values are kept in canonical form: if nonzero, the first and last stored
/// coefficients are nonzero; the zero polynomial is offset 0 with no
/// coefficients. Instances are immutable after construction and safe to share
/// across threads.
template <typename T>
class shifted_poly {
public:
    shifted_poly() = default;

    shifted_poly(index_t offset, std::vector<T> coeffs)
        : offset_(offset), coeffs_(std::move(coeffs)) {
        canonicalize();
        if (!coeffs_.empty() && offset_ < 0)
            throw std::domain_error("shifted_poly: negative exponent");
    }

    static shifted_poly monomial(index_t e, T c) {
        std::vector<T> v;
        v.push_back(std::move(c));
        return shifted_poly(e, std::move(v));
    }

    bool is_zero() const { return coeffs_.empty(); }
    index_t offset() const { return offset_; }

    /// Degree of a nonzero polynomial.
    index_t degree() const {
        assert(!is_zero());
        return offset_ + static_cast<index_t>(coeffs_.size()) - 1;
    }

    const std::vector<T>& raw_coeffs() const { return coeffs_; }

    friend bool operator==(const shifted_poly&, const shifted_poly&) = default;

private:
    void canonicalize() {
        std::size_t lead = coeffs_.size();
        while (lead > 0 && coeffs_[lead - 1] == T{}) --lead;
        coeffs_.resize(lead);
        std::size_t skip = 0;
        while (skip < coeffs_.size() && coeffs_[skip] == T{}) ++skip;
        if (skip > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(skip));
            offset_ += static_cast<index_t>(skip);
        }
        if (coeffs_.empty()) offset_ = 0;
    }

    index_t offset_ = 0;
    std::vector<T> coeffs_;
};

/// Number of coefficients counted from exponent zero: deg+1, or 0 for zero.
template <typename T>
index_t prec(const shifted_poly<T>& p) {
    return p.is_zero() ? 0 : p.degree() + 1;
}

/// Coefficient of x^k; zero outside the stored span.
template <typename T>
T coeff(const shifted_poly<T>& p, index_t k) {
    const index_t i = k - p.offset();
    if (p.is_zero() || i < 0 || i >= static_cast<index_t>(p.raw_coeffs().size())) return T{};
    return p.raw_coeffs()[static_cast<std::size_t>(i)];
}

template <typename T>
shifted_poly<T> clip(const shifted_poly<T>& p, clip_range r) {
    if (p.is_zero() || r.empty()) return {};
    const index_t lo = std::max(r.lo, p.offset());
    const index_t hi = std::min(r.hi, p.degree());
    if (lo > hi) return {};
    const auto& c = p.raw_coeffs();
    std::vector<T> out(c.begin() + (lo - p.offset()), c.begin() + (hi - p.offset()) + 1);
    return shifted_poly<T>(lo, std::move(out));
}

/// Multiplication by x^k as pure offset arithmetic; no ring operations.
template <typename T>
shifted_poly<T> shift(const shifted_poly<T>& p, index_t k) {
    if (p.is_zero()) return {};
    if (p.offset() + k < 0) throw std::domain_error("shift: result exponent below zero");
    return shifted_poly<T>(p.offset() + k, p.raw_coeffs());
}

/// x^deg(p) * p(1/x). The offset is folded into the reversal.
template <typename T>
shifted_poly<T> reverse(const shifted_poly<T>& p) {
    if (p.is_zero()) throw std::domain_error("reverse: zero polynomial has no degree");
    std::vector<T> c(p.raw_coeffs().rbegin(), p.raw_coeffs().rend());
    return shifted_poly<T>(0, std::move(c));
}

/// Reversal relative to a stated degree n >= deg(p): coefficient k moves to
/// position n-k. Needed when the top coefficient of a clipped value may have
/// cancelled, so deg(p) alone would misalign the flip.
template <typename T>
shifted_poly<T> reverse_relative(const shifted_poly<T>& p, index_t n) {
    if (p.is_zero()) return {};
    if (n < p.degree()) throw std::domain_error("reverse_relative: degree bound too small");
    std::vector<T> c(p.raw_coeffs().rbegin(), p.raw_coeffs().rend());
    return shifted_poly<T>(n - p.degree(), std::move(c));
}

/// Elementwise sum through the ring. Positions present in only one operand
/// are copied; an addition is counted only where both coefficients exist.
template <coefficient_ring R>
shifted_poly<typename R::value_type> add(const shifted_poly<typename R::value_type>& p,
                                         const shifted_poly<typename R::value_type>& q, R& ring) {
    using T = typename R::value_type;
    if (p.is_zero()) return q;
    if (q.is_zero()) return p;
    const index_t lo = std::min(p.offset(), q.offset());
    const index_t hi = std::max(p.degree(), q.degree());
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (index_t k = lo; k <= hi; ++k) {
        const bool in_p = k >= p.offset() && k <= p.degree();
        const bool in_q = k >= q.offset() && k <= q.degree();
        if (in_p && in_q)
            out.push_back(ring.add(coeff(p, k), coeff(q, k)));
        else if (in_p)
            out.push_back(coeff(p, k));
        else if (in_q)
            out.push_back(coeff(q, k));
        else
            out.push_back(T{});
    }
    return shifted_poly<T>(lo, std::move(out));
}

template <coefficient_ring R>
shifted_poly<typename R::value_type> sub(const shifted_poly<typename R::value_type>& p,
                                         const shifted_poly<typename R::value_type>& q, R& ring) {
    using T = typename R::value_type;
    if (q.is_zero()) return p;
    const index_t lo = p.is_zero() ? q.offset() : std::min(p.offset(), q.offset());
    const index_t hi = p.is_zero() ? q.degree() : std::max(p.degree(), q.degree());
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (index_t k = lo; k <= hi; ++k) {
        const bool in_p = !p.is_zero() && k >= p.offset() && k <= p.degree();
        const bool in_q = k >= q.offset() && k <= q.degree();
        if (in_p && in_q)
            out.push_back(ring.sub(coeff(p, k), coeff(q, k)));
        else if (in_p)
            out.push_back(coeff(p, k));
        else if (in_q)
            out.push_back(ring.neg(coeff(q, k)));
        else
            out.push_back(T{});
    }
    return shifted_poly<T>(lo, std::move(out));
}

/// Ground truth for every clipped method: plain schoolbook convolution using
/// the element type's own arithmetic. Deliberately independent of the ring
/// plumbing and of every algorithm in clipped_poly.hpp.
template <typename T>
shifted_poly<T> oracle_full_product(const shifted_poly<T>& f, const shifted_poly<T>& g) {
    if (f.is_zero() || g.is_zero()) return {};
    const auto& fc = f.raw_coeffs();
    const auto& gc = g.raw_coeffs();
    std::vector<T> out(fc.size() + gc.size() - 1, T{});
    for (std::size_t i = 0; i < fc.size(); ++i)
        for (std::size_t j = 0; j < gc.size(); ++j) out[i + j] = out[i + j] + fc[i] * gc[j];
    return shifted_poly<T>(f.offset() + g.offset(), std::move(out));
}

// ---------------------------------------------------------------------------
// Text format: "e1:c1,e2:c2,..." with strictly increasing exponents and
// signed decimal coefficients; the zero polynomial is the literal "0".
// ---------------------------------------------------------------------------

template <typename T>
struct coeff_io;  // specialize per coefficient type

template <>
struct coeff_io<long long> {
    static long long parse(const std::string& s) {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size() || s.empty()) throw std::invalid_argument("bad coefficient: " + s);
        return v;
    }
    static std::string print(long long v) { return std::to_string(v); }
};

template <typename T>
shifted_poly<T> parse_poly(std::string_view text) {
    if (text == "0") return {};
    if (text.empty()) throw std::invalid_argument("empty polynomial text");
    std::vector<std::pair<index_t, T>> terms;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        const std::string_view term = text.substr(pos, comma - pos);
        auto colon = term.find(':');
        if (colon == std::string_view::npos)
            throw std::invalid_argument("polynomial term must be exp:coeff, got: " + std::string(term));
        const std::string se(term.substr(0, colon)), sc(term.substr(colon + 1));
        std::size_t used = 0;
        index_t e = 0;
        try {
            e = std::stoll(se, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad exponent: " + se);
        }
        if (used != se.size() || se.empty() || e < 0)
            throw std::invalid_argument("bad exponent: " + se);
        if (!terms.empty() && e <= terms.back().first)
            throw std::invalid_argument("exponents must be strictly increasing");
        terms.emplace_back(e, coeff_io<T>::parse(sc));
        if (comma == text.size()) break;
        pos = comma + 1;
    }
    if (terms.empty()) throw std::invalid_argument("empty polynomial text");
    const index_t lo = terms.front().first;
    const index_t hi = terms.back().first;
    std::vector<T> coeffs(static_cast<std::size_t>(hi - lo + 1), T{});
    for (auto& [e, c] : terms) coeffs[static_cast<std::size_t>(e - lo)] = std::move(c);
    return shifted_poly<T>(lo, std::move(coeffs));
}

template <typename T>
std::string format_poly(const shifted_poly<T>& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (index_t k = p.offset(); k <= p.degree(); ++k) {
        const T c = coeff(p, k);
        if (c == T{}) continue;
        if (!out.empty()) out += ',';
        out += std::to_string(k);
        out += ':';
        out += coeff_io<T>::print(c);
    }
    return out;
}

}  // namespace clipmul
