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
#include <stdexcept>
#include <vector>

#include "clipmul/poly.hpp"
#include "clipmul/range.hpp"
#include "clipmul/ring.hpp"

namespace clipmul {

struct karatsuba_config {
    /// At or below this operand size (stored coefficients) the recursion
    /// switches to classical clipped multiplication.
    index_t cutover_prec = 32;
    /// Descend to single coefficients regardless of cutover, so
    /// multiplication counts match the closed-form analysis.
    bool count_mode = false;

    index_t effective_cutover() const { return count_mode ? 1 : cutover_prec; }
};

struct mulders_config {
    // Size of the full sub-multiply as a fraction of N, in (1/2, 1].
    index_t fraction_num = 7;
    index_t fraction_den = 10;

    void validate() const {
        if (fraction_den < 1 || fraction_num > fraction_den || 2 * fraction_num <= fraction_den)
            throw std::invalid_argument("mulders fraction must be in (1/2, 1]");
    }
};

enum class short_end { bottom, top };

namespace detail {

/// Dense accumulation window [lo..hi] with per-position first-write
/// tracking: the initial write to a position is free, later ones go through
/// the ring and are counted.
template <coefficient_ring R>
class span_accumulator {
public:
    using V = typename R::value_type;

    span_accumulator(index_t lo, index_t hi, R& ring)
        : lo_(lo),
          hi_(hi),
          ring_(&ring),
          vals_(static_cast<std::size_t>(hi - lo + 1), V{}),
          written_(vals_.size(), 0) {}

    void accumulate(const shifted_poly<V>& p, bool negate = false) {
        if (p.is_zero()) return;
        const index_t from = std::max(lo_, p.offset());
        const index_t to = std::min(hi_, p.degree());
        for (index_t k = from; k <= to; ++k) {
            const V& c = p.raw_coeffs()[static_cast<std::size_t>(k - p.offset())];
            const auto idx = static_cast<std::size_t>(k - lo_);
            if (!written_[idx]) {
                vals_[idx] = negate ? ring_->neg(c) : c;
                written_[idx] = 1;
            } else {
                vals_[idx] = negate ? ring_->sub(vals_[idx], c) : ring_->add(vals_[idx], c);
            }
        }
    }

    shifted_poly<V> take() { return shifted_poly<V>(lo_, std::move(vals_)); }

private:
    index_t lo_, hi_;
    R* ring_;
    std::vector<V> vals_;
    std::vector<char> written_;
};

}  // namespace detail

/// Column sums over exactly the requested range: for each k in r the
/// convolution window i in [max(off f, k-deg g) .. min(deg f, k-off g)],
/// so no out-of-span coefficient is ever touched or counted.
template <coefficient_ring R>
shifted_poly<typename R::value_type> classical_clipped(
    const shifted_poly<typename R::value_type>& f, const shifted_poly<typename R::value_type>& g,
    clip_range r, R& ring) {
    using V = typename R::value_type;
    if (f.is_zero() || g.is_zero() || r.empty()) return {};
    const index_t df = f.degree(), dg = g.degree();
    const index_t fo = f.offset(), go = g.offset();
    const index_t lo = std::max(r.lo, fo + go), hi = std::min(r.hi, df + dg);
    if (lo > hi) return {};
    std::vector<V> out;
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (index_t k = lo; k <= hi; ++k) {
        const index_t i0 = std::max(fo, k - dg), i1 = std::min(df, k - go);
        V t{};
        for (index_t i = i0; i <= i1; ++i) {
            V term = ring.mul(f.raw_coeffs()[static_cast<std::size_t>(i - fo)],
                              g.raw_coeffs()[static_cast<std::size_t>(k - i - go)]);
            t = (i == i0) ? std::move(term) : ring.add(t, term);
        }
        out.push_back(std::move(t));
    }
    return shifted_poly<V>(lo, std::move(out));
}

namespace detail {

// Clipped Karatsuba on exponent-zero-anchored operands. The range lower
// bound may be negative here; restrict() clamps it away.
template <coefficient_ring R>
shifted_poly<typename R::value_type> karatsuba_rec(
    const shifted_poly<typename R::value_type>& f, const shifted_poly<typename R::value_type>& g,
    index_t a, index_t b, R& ring, const karatsuba_config& cfg) {
    using V = typename R::value_type;
    if (f.is_zero() || g.is_zero()) return {};
    const index_t df = f.degree(), dg = g.degree();
    if (a > df + dg) return {};
    if (a > b) return {};
    if (b == 0) return shifted_poly<V>::monomial(0, ring.mul(coeff(f, 0), coeff(g, 0)));
    if (!cfg.count_mode &&
        std::min(f.raw_coeffs().size(), g.raw_coeffs().size()) <=
            static_cast<std::size_t>(cfg.cutover_prec))
        return classical_clipped(f, g, {std::max<index_t>(a, 0), b}, ring);

    index_t p = std::max(df, dg) + 1;
    p += p & 1;  // make even

    if (b < p / 2) {
        return karatsuba_rec(clip(f, {0, p / 2 - 1}), clip(g, {0, p / 2 - 1}), a, b, ring, cfg);
    }
    const auto high = [p](const shifted_poly<V>& u) { return shift(clip(u, {p / 2, p - 1}), -p / 2); };
    if (a > 3 * p / 2 - 2) {
        auto z = karatsuba_rec(high(f), high(g), a - p, b - p, ring, cfg);
        return z.is_zero() ? z : shift(z, p);
    }

    const auto fh = high(f), fl = clip(f, {0, p / 2 - 1});
    const auto gh = high(g), gl = clip(g, {0, p / 2 - 1});
    const auto fm = add(fh, fl, ring), gm = add(gh, gl, ring);

    const auto restrict_to = [p](index_t i) { return std::clamp<index_t>(i, 0, p - 2); };
    index_t zha = restrict_to(a - p), zhb = restrict_to(b - p);
    const index_t zma = restrict_to(a - p / 2), zmb = restrict_to(b - p / 2);
    index_t zla = restrict_to(a), zlb = restrict_to(b);
    // Widen the high and low ranges so both covers are valid over zm's range.
    zha = std::min(zha, zma);
    zhb = std::max(zhb, zmb);
    zla = std::min(zla, zma);
    zlb = std::max(zlb, zmb);

    const auto zh = karatsuba_rec(fh, gh, zha, zhb, ring, cfg);
    const auto zl = karatsuba_rec(fl, gl, zla, zlb, ring, cfg);
    const clip_range zm_range{zma, zmb};
    const auto zm = sub(sub(karatsuba_rec(fm, gm, zma, zmb, ring, cfg), clip(zh, zm_range), ring),
                        clip(zl, zm_range), ring);

    auto total = add(add(shift(zh, p), shift(zm, p / 2), ring), zl, ring);
    return clip(total, {std::max<index_t>(a, 0), b});
}

}  // namespace detail

/// Clipped Karatsuba product: the clipping range is pushed down onto the
/// three half-size sub-products so out-of-range work is pruned.
template <coefficient_ring R>
shifted_poly<typename R::value_type> karatsuba_clipped(
    const shifted_poly<typename R::value_type>& f, const shifted_poly<typename R::value_type>& g,
    clip_range r, R& ring, const karatsuba_config& cfg = {}) {
    if (f.is_zero() || g.is_zero() || r.empty()) return {};
    if (cfg.cutover_prec < 1) throw std::invalid_argument("cutover_prec must be >= 1");
    const index_t base = f.offset() + g.offset();
    if (base > 0) {
        if (r.hi < base) return {};
        auto z = detail::karatsuba_rec(shift(f, -f.offset()), shift(g, -g.offset()), r.lo - base,
                                       r.hi - base, ring, cfg);
        return z.is_zero() ? z : shift(z, base);
    }
    return detail::karatsuba_rec(f, g, r.lo, r.hi, ring, cfg);
}

/// Full product over the ring (Karatsuba above the cutover, classical below),
/// the building block of the straightforward methods.
template <coefficient_ring R>
shifted_poly<typename R::value_type> full_product(const shifted_poly<typename R::value_type>& f,
                                                  const shifted_poly<typename R::value_type>& g,
                                                  R& ring, const karatsuba_config& cfg = {}) {
    if (f.is_zero() || g.is_zero()) return {};
    return karatsuba_clipped(f, g, {f.offset() + g.offset(), f.degree() + g.degree()}, ring, cfg);
}

/// Whole product, then extract the requested part.
template <coefficient_ring R>
shifted_poly<typename R::value_type> direct_clipped(const shifted_poly<typename R::value_type>& f,
                                                    const shifted_poly<typename R::value_type>& g,
                                                    clip_range r, R& ring,
                                                    const karatsuba_config& cfg = {}) {
    if (r.empty()) return {};
    return clip(full_product(f, g, ring, cfg), r);
}

/// Low part [0..b]: coefficients of the operands above b cannot influence
/// the result, so both operands are clipped before the multiply.
template <coefficient_ring R>
shifted_poly<typename R::value_type> bottom_clipped(const shifted_poly<typename R::value_type>& f,
                                                    const shifted_poly<typename R::value_type>& g,
                                                    index_t b, R& ring,
                                                    const karatsuba_config& cfg = {}) {
    if (b < 0) throw std::invalid_argument("bottom_clipped: b must be nonnegative");
    if (f.is_zero() || g.is_zero()) return {};
    const auto fc = clip(f, {0, std::min(b, prec(f) - 1)});
    const auto gc = clip(g, {0, std::min(b, prec(g) - 1)});
    return clip(full_product(fc, gc, ring, cfg), {0, b});
}

template <coefficient_ring R>
shifted_poly<typename R::value_type> clipped_from_bottom(
    const shifted_poly<typename R::value_type>& f, const shifted_poly<typename R::value_type>& g,
    clip_range r, R& ring, const karatsuba_config& cfg = {}) {
    if (r.empty() || r.hi < 0) return {};
    return clip(bottom_clipped(f, g, r.hi, ring, cfg), r);
}

/// Top part [a..deg f+deg g] via reversal: reverse both operands, take the
/// bottom deg f+deg g-a part of their product, flip it back. The flip is
/// relative to deg f+deg g-a, not the computed degree, so a cancelled top
/// coefficient in the bottom product cannot misalign the result.
template <coefficient_ring R>
shifted_poly<typename R::value_type> top_clipped_via_reverse(
    const shifted_poly<typename R::value_type>& f, const shifted_poly<typename R::value_type>& g,
    index_t a, R& ring, const karatsuba_config& cfg = {}) {
    if (f.is_zero() || g.is_zero())
        throw std::domain_error("top_clipped_via_reverse: zero operand");
    if (a < 0) throw std::invalid_argument("top_clipped_via_reverse: a must be nonnegative");
    const index_t dsum = f.degree() + g.degree();
    if (a > dsum) return {};
    const index_t m = dsum - a;
    const auto p = bottom_clipped(reverse(f), reverse(g), m, ring, cfg);
    if (p.is_zero()) return {};
    return shift(reverse_relative(p, m), a);
}

namespace detail {

template <coefficient_ring R>
shifted_poly<typename R::value_type> mulders_bottom(const shifted_poly<typename R::value_type>& f,
                                                    const shifted_poly<typename R::value_type>& g,
                                                    index_t n_terms, R& ring,
                                                    const mulders_config& mcfg,
                                                    const karatsuba_config& kcfg) {
    using V = typename R::value_type;
    if (f.is_zero() || g.is_zero()) return {};
    if (n_terms <= kcfg.effective_cutover())
        return classical_clipped(f, g, {0, n_terms - 1}, ring);
    const index_t k =
        (mcfg.fraction_num * n_terms + mcfg.fraction_den - 1) / mcfg.fraction_den;  // ceil
    if (k >= n_terms)
        return clip(karatsuba_clipped(f, g, {0, 2 * n_terms - 2}, ring, kcfg), {0, n_terms - 1});

    // One k x k full product covers every term with both indices below k.
    shifted_poly<V> acc;
    const auto fl = clip(f, {0, k - 1}), gl = clip(g, {0, k - 1});
    if (!fl.is_zero() && !gl.is_zero())
        acc = clip(karatsuba_clipped(fl, gl, {0, 2 * k - 2}, ring, kcfg), {0, n_terms - 1});

    // The remaining terms are two (N-k) x (N-k) short products.
    const index_t rem = n_terms - k;
    const auto fh = clip(f, {k, n_terms - 1});
    if (!fh.is_zero()) {
        auto t = mulders_bottom(shift(fh, -k), clip(g, {0, rem - 1}), rem, ring, mcfg, kcfg);
        if (!t.is_zero()) acc = add(acc, shift(t, k), ring);
    }
    const auto gh = clip(g, {k, n_terms - 1});
    if (!gh.is_zero()) {
        auto t = mulders_bottom(shift(gh, -k), clip(f, {0, rem - 1}), rem, ring, mcfg, kcfg);
        if (!t.is_zero()) acc = add(acc, shift(t, k), ring);
    }
    return acc;
}

}  // namespace detail

/// Short product after Mulders: the bottom (or top) N terms of a product of
/// two series of at most N terms, via one ceil(fraction*N) full multiply and
/// two recursive short products.
template <coefficient_ring R>
shifted_poly<typename R::value_type> mulders_short(const shifted_poly<typename R::value_type>& f,
                                                   const shifted_poly<typename R::value_type>& g,
                                                   index_t n_terms, short_end which, R& ring,
                                                   const mulders_config& mcfg = {},
                                                   const karatsuba_config& kcfg = {}) {
    if (n_terms < 1) throw std::invalid_argument("mulders_short: N must be >= 1");
    if (prec(f) > n_terms || prec(g) > n_terms)
        throw std::invalid_argument("mulders_short: operand precision exceeds N");
    mcfg.validate();
    if (f.is_zero() || g.is_zero()) return {};
    if (which == short_end::top) {
        // Top N terms are the bottom N terms of the product of the
        // N-term-relative reversals, flipped back onto [N-1..2N-2].
        auto rb = detail::mulders_bottom(reverse_relative(f, n_terms - 1),
                                         reverse_relative(g, n_terms - 1), n_terms, ring, mcfg,
                                         kcfg);
        if (rb.is_zero()) return {};
        return shift(reverse_relative(rb, n_terms - 1), n_terms - 1);
    }
    return detail::mulders_bottom(f, g, n_terms, ring, mcfg, kcfg);
}

/// Middle band by tiling: h x h full sub-products (h = width of r) marched
/// along the diagonal strip at step ceil(h/2), the double-counted overlap
/// squares subtracted, and the residual strip edges and end caps summed
/// classically. Falls back to clipped Karatsuba when no square fits.
template <coefficient_ring R>
shifted_poly<typename R::value_type> band_tiled(const shifted_poly<typename R::value_type>& f,
                                                const shifted_poly<typename R::value_type>& g,
                                                clip_range r, R& ring,
                                                const karatsuba_config& kcfg = {}) {
    using V = typename R::value_type;
    if (f.is_zero() || g.is_zero() || r.empty()) return {};
    const index_t base = f.offset() + g.offset();
    const auto f0 = shift(f, -f.offset());
    const auto g0 = shift(g, -g.offset());
    const index_t df = f0.degree(), dg = g0.degree();
    const index_t a = std::max(r.lo - base, index_t{0});
    const index_t b = std::min(r.hi - base, df + dg);
    if (a > b) return {};

    const index_t h = b - a + 1;
    const index_t q = (h - 1) / 2;  // band sits this far below each square's top diagonal
    const index_t s = (h + 1) / 2;  // step; gapless coverage at both strip edges
    const index_t i_first = std::max<index_t>(0, a - q - dg + h - 1);
    const index_t i_cap = std::min(df - h + 1, a - q);
    if (i_first > i_cap)
        return shift(karatsuba_clipped(f0, g0, {a, b}, ring, kcfg), base);

    std::vector<index_t> starts;
    for (index_t i = i_first; i <= i_cap; i += s) starts.push_back(i);
    const index_t i_last = starts.back();
    const index_t j_first = a - q - i_first;  // highest square's g-range start
    const index_t j_last = a - q - i_last;

    detail::span_accumulator<R> acc(a, b, ring);
    const auto tile = [&](index_t fi, index_t gj, index_t size, bool negate) {
        const auto fp = clip(f0, {fi, fi + size - 1});
        const auto gp = clip(g0, {gj, gj + size - 1});
        if (fp.is_zero() || gp.is_zero()) return;
        auto prod = karatsuba_clipped(shift(fp, -fi), shift(gp, -gj), {0, 2 * size - 2}, ring, kcfg);
        if (!prod.is_zero()) acc.accumulate(shift(prod, fi + gj), negate);
    };
    for (index_t i : starts) tile(i, a - q - i, h, false);
    if (h - s > 0) {
        for (std::size_t t = 0; t + 1 < starts.size(); ++t) {
            const index_t i_next = starts[t + 1];
            const index_t j_cur = a - q - starts[t];
            tile(i_next, j_cur, h - s, true);  // double-counted overlap square
        }
    }
    const auto cap = [&](const shifted_poly<V>& fp, const shifted_poly<V>& gp) {
        if (fp.is_zero() || gp.is_zero()) return;
        acc.accumulate(classical_clipped(fp, gp, {a, b}, ring));
    };
    cap(f0, clip(g0, {j_first + h, dg}));                            // strip edge, high g
    cap(f0, clip(g0, {0, j_last - 1}));                              // strip edge, low g
    cap(clip(f0, {0, i_first - 1}), clip(g0, {j_last, j_first + h - 1}));   // end cap, low f
    cap(clip(f0, {i_last + h, df}), clip(g0, {j_last, j_first + h - 1}));   // end cap, high f

    auto out = acc.take();
    return out.is_zero() ? out : shift(out, base);
}

}  // namespace clipmul
