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

#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "clipmul/clipped_int.hpp"
#include "clipmul/clipped_poly.hpp"
#include "clipmul/digits.hpp"
#include "clipmul/poly.hpp"
#include "clipmul/range.hpp"

namespace clipmul {

enum class method_choice {
    direct,
    bottom,
    from_bottom,
    top_via_reverse,
    classical,
    karatsuba,
    mulders,
    band_tiled,
};

inline constexpr std::array<std::string_view, 8> method_names = {
    "direct", "bottom", "from_bottom", "top_via_reverse",
    "classical", "karatsuba", "mulders", "band_tiled"};

inline std::string_view to_string(method_choice m) {
    return method_names[static_cast<std::size_t>(m)];
}

inline method_choice parse_method(std::string_view name) {
    for (std::size_t i = 0; i < method_names.size(); ++i)
        if (method_names[i] == name) return static_cast<method_choice>(i);
    throw std::invalid_argument("unknown method: " + std::string(name));
}

enum class operand_kind { poly, integer };

/// Multiplication-count model used for routing. Only relative ordering
/// matters; the O(width) clip terms are charged at one unit per coefficient.
struct cost_model {
    index_t classical_to_karatsuba = 32;
    index_t mulders_fraction_num = 7;
    index_t mulders_fraction_den = 10;
};

namespace detail {

inline double kara_full_cost(double n, double m, double thr) {
    if (n < 1 || m < 1) return 0;
    const double p = std::max(n, m);
    if (std::min(n, m) <= thr || p <= thr) return n * m;
    constexpr double log2_3 = 1.5849625007211562;
    const double balanced = thr * thr * std::pow(p / thr, log2_3);
    return balanced * (n * m) / (p * p);
}

// Exact classical count: sum of convolution window sizes over r.
inline std::int64_t classical_mult_count(index_t n, index_t m, clip_range r) {
    if (r.empty() || n < 1 || m < 1) return 0;
    const index_t df = n - 1, dg = m - 1;
    const index_t dmin = std::min(df, dg), dmax = std::max(df, dg);
    const index_t lo = std::max<index_t>(r.lo, 0), hi = std::min(r.hi, df + dg);
    if (lo > hi) return 0;
    std::int64_t total = 0;
    // ramp up: k in [0..dmin-1], window k+1
    {
        const index_t x = lo, y = std::min(hi, dmin - 1);
        if (x <= y) total += (y + 1) * (y + 2) / 2 - x * (x + 1) / 2;
    }
    // plateau: k in [dmin..dmax], window dmin+1
    {
        const index_t x = std::max(lo, dmin), y = std::min(hi, dmax);
        if (x <= y) total += (y - x + 1) * (dmin + 1);
    }
    // ramp down: k in [dmax+1..df+dg], window df+dg-k+1
    {
        const index_t x = std::max(lo, dmax + 1), y = hi;
        if (x <= y) {
            const index_t wx = df + dg - x + 1, wy = df + dg - y + 1;
            total += (wx + wy) * (y - x + 1) / 2;
        }
    }
    return total;
}

inline double kara_clipped_cost(double n, double m, clip_range r, double thr) {
    // A prefix or suffix of width w costs about a full product of size w;
    // ranges touching the center save nothing.
    const double p = std::max(n, m);
    const double center = p - 1;
    double w;
    if (static_cast<double>(r.hi) < center)
        w = static_cast<double>(r.hi) + 1;
    else if (static_cast<double>(r.lo) > center)
        w = (n + m - 1) - static_cast<double>(r.lo);
    else
        return kara_full_cost(n, m, thr);
    w = std::min(w, p);
    return kara_full_cost(std::min(n, w), std::min(m, w), thr);
}

inline double mulders_cost(double n_terms, double thr, double frac) {
    if (n_terms <= thr) return n_terms * (n_terms + 1) / 2;  // classical prefix
    const double k = std::ceil(frac * n_terms);
    if (k >= n_terms) return kara_full_cost(n_terms, n_terms, thr);
    return kara_full_cost(k, k, thr) + 2 * mulders_cost(n_terms - k, thr, frac);
}

inline double band_cost(double n, double m, clip_range r, double thr) {
    const double h = static_cast<double>(r.width());
    const double shorter = std::min(n, m);
    const double fallback = kara_clipped_cost(n, m, r, thr);
    if (h >= shorter) return fallback;
    // Smooth tile count (step h/2) keeps the estimate monotone in h; the
    // Karatsuba cost caps it across the fallback boundary.
    const double tiles = 2.0 * shorter / h;
    const double tiled =
        tiles * (kara_full_cost(h, h, thr) + kara_full_cost(h / 2, h / 2, thr)) + h * h;
    return std::min(tiled, fallback);
}

}  // namespace detail

/// Estimated coefficient multiplications for running `method` on operands of
/// prec n and m over range r. The classical estimate is exact; the others are
/// routing-grade.
inline std::int64_t estimate(const cost_model& model, method_choice method, index_t n, index_t m,
                             clip_range r) {
    if (n < 1 || m < 1) throw std::invalid_argument("estimate: operand precs must be >= 1");
    const clip_range eff = r.intersect({0, n + m - 2});
    if (eff.empty()) return 0;
    const double thr = static_cast<double>(model.classical_to_karatsuba);
    const double dn = static_cast<double>(n), dm = static_cast<double>(m);
    const double frac = static_cast<double>(model.mulders_fraction_num) /
                        static_cast<double>(model.mulders_fraction_den);
    const auto wide = static_cast<double>(eff.width());
    double cost = 0;
    switch (method) {
        case method_choice::direct:
            cost = detail::kara_full_cost(dn, dm, thr) + wide;
            break;
        case method_choice::bottom:
        case method_choice::from_bottom: {
            const double nb = std::min<double>(dn, static_cast<double>(eff.hi) + 1);
            const double mb = std::min<double>(dm, static_cast<double>(eff.hi) + 1);
            cost = detail::kara_full_cost(nb, mb, thr) + wide;
            break;
        }
        case method_choice::top_via_reverse: {
            const double bb = dn + dm - 2 - static_cast<double>(eff.lo);
            cost = detail::kara_full_cost(std::min(dn, bb + 1), std::min(dm, bb + 1), thr) + wide;
            break;
        }
        case method_choice::classical:
            return detail::classical_mult_count(n, m, r);
        case method_choice::karatsuba:
            cost = detail::kara_clipped_cost(dn, dm, eff, thr);
            break;
        case method_choice::mulders: {
            const double n_terms = eff.lo == 0
                                       ? std::max({dn, dm, static_cast<double>(eff.hi) + 1})
                                       : std::max(dn, dm);
            cost = detail::mulders_cost(n_terms, thr, frac) + wide;
            break;
        }
        case method_choice::band_tiled:
            cost = detail::band_cost(dn, dm, eff, thr);
            break;
        default:
            throw std::invalid_argument("estimate: unknown method");
    }
    return static_cast<std::int64_t>(std::llround(cost));
}

inline bool method_applicable(method_choice method, operand_kind kind, index_t n, index_t m,
                              clip_range r) {
    switch (method) {
        case method_choice::direct:
        case method_choice::from_bottom:
        case method_choice::classical:
        case method_choice::karatsuba:
            return true;
        case method_choice::bottom:
            return r.lo == 0;
        case method_choice::top_via_reverse:
            return kind == operand_kind::poly && r.hi >= n + m - 2;
        case method_choice::mulders:
            return kind == operand_kind::poly &&
                   (r.lo == 0 || r.lo >= std::max(n, m) - 1);
        case method_choice::band_tiled:
            return kind == operand_kind::poly;
    }
    return false;
}

/// Cheapest applicable method; ties break toward the earlier enumerator.
inline method_choice choose(const cost_model& model, index_t n, index_t m, clip_range r,
                            operand_kind kind = operand_kind::poly) {
    method_choice best = method_choice::direct;
    std::int64_t best_cost = estimate(model, method_choice::direct, n, m, r);
    for (std::size_t i = 1; i < method_names.size(); ++i) {
        const auto method = static_cast<method_choice>(i);
        if (!method_applicable(method, kind, n, m, r)) continue;
        const std::int64_t cost = estimate(model, method, n, m, r);
        if (cost < best_cost) {
            best = method;
            best_cost = cost;
        }
    }
    return best;
}

struct dispatch_config {
    cost_model model;
    karatsuba_config kara;
    mulders_config mulders;
    guard_policy guard;
    std::uint64_t default_base = 10;
};

/// Runs one named polynomial method. Throws std::invalid_argument when the
/// method cannot produce the requested range.
template <coefficient_ring R>
shifted_poly<typename R::value_type> run_poly_method(
    method_choice method, const shifted_poly<typename R::value_type>& f,
    const shifted_poly<typename R::value_type>& g, clip_range r, R& ring,
    const dispatch_config& cfg = {}) {
    if (r.empty() || f.is_zero() || g.is_zero()) return {};
    const index_t n = prec(f), m = prec(g);
    if (!method_applicable(method, operand_kind::poly, n, m, r))
        throw std::invalid_argument("method " + std::string(to_string(method)) +
                                    " is not applicable to this range");
    switch (method) {
        case method_choice::direct:
            return direct_clipped(f, g, r, ring, cfg.kara);
        case method_choice::bottom:
            return bottom_clipped(f, g, r.hi, ring, cfg.kara);
        case method_choice::from_bottom:
            return clipped_from_bottom(f, g, r, ring, cfg.kara);
        case method_choice::top_via_reverse:
            return top_clipped_via_reverse(f, g, r.lo, ring, cfg.kara);
        case method_choice::classical:
            return classical_clipped(f, g, r, ring);
        case method_choice::karatsuba:
            return karatsuba_clipped(f, g, r, ring, cfg.kara);
        case method_choice::mulders: {
            const index_t n_terms =
                r.lo == 0 ? std::max({n, m, r.hi + 1}) : std::max(n, m);
            const short_end which = r.lo == 0 ? short_end::bottom : short_end::top;
            return clip(mulders_short(f, g, n_terms, which, ring, cfg.mulders, cfg.kara), r);
        }
        case method_choice::band_tiled:
            return band_tiled(f, g, r, ring, cfg.kara);
    }
    throw std::invalid_argument("run_poly_method: unknown method");
}

/// Runs one named integer method under the configured guard policy.
inline digit_nat run_int_method(method_choice method, const digit_nat& f, const digit_nat& g,
                                clip_range r, const dispatch_config& cfg = {},
                                int_op_stats* stats = nullptr) {
    if (r.empty() || f.is_zero() || g.is_zero()) return digit_nat(f.base());
    const index_t n = iprec(f), m = iprec(g);
    if (!method_applicable(method, operand_kind::integer, n, m, r))
        throw std::invalid_argument("method " + std::string(to_string(method)) +
                                    " is not applicable to integer operands");
    switch (method) {
        case method_choice::direct:
            return iclip(full_int_product(f, g, stats), r);
        case method_choice::bottom:
            return bottom_clipped_int(f, g, r.hi, stats);
        case method_choice::from_bottom:
            return clipped_int_from_bottom(f, g, r, stats);
        case method_choice::classical:
            return classical_clipped_int(f, g, r, cfg.guard, stats);
        case method_choice::karatsuba:
            return karatsuba_clipped_int(f, g, r, cfg.guard, cfg.kara, stats);
        default:
            throw std::invalid_argument("run_int_method: unknown method");
    }
}

/// Routed clipped polynomial product.
template <coefficient_ring R>
shifted_poly<typename R::value_type> clipped_product(const shifted_poly<typename R::value_type>& f,
                                                     const shifted_poly<typename R::value_type>& g,
                                                     clip_range r, R& ring,
                                                     const dispatch_config& cfg = {}) {
    if (r.empty() || f.is_zero() || g.is_zero()) return {};
    const method_choice m = choose(cfg.model, prec(f), prec(g), r, operand_kind::poly);
    return run_poly_method(m, f, g, r, ring, cfg);
}

/// Routed clipped integer product.
inline digit_nat clipped_product(const digit_nat& f, const digit_nat& g, clip_range r,
                                 const dispatch_config& cfg = {}, int_op_stats* stats = nullptr) {
    if (f.base() != g.base()) throw std::domain_error("clipped_product: base mismatch");
    if (r.empty() || f.is_zero() || g.is_zero()) return digit_nat(f.base());
    const method_choice m =
        choose(cfg.model, iprec(f), iprec(g), r, operand_kind::integer);
    return run_int_method(m, f, g, r, cfg, stats);
}

// ---------------------------------------------------------------------------
// Config file: one key=value per line, '#' starts a comment.
// Keys: classical_to_karatsuba, mulders_fraction (decimal or num/den),
// guard_mode (exact|theorem), base.
// ---------------------------------------------------------------------------

namespace detail {

inline void parse_fraction(const std::string& text, index_t& num, index_t& den) {
    if (auto slash = text.find('/'); slash != std::string::npos) {
        num = std::stoll(text.substr(0, slash));
        den = std::stoll(text.substr(slash + 1));
        return;
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        num = std::stoll(text);
        den = 1;
        return;
    }
    const std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 9) throw std::invalid_argument("bad fraction: " + text);
    den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    num = (whole.empty() ? 0 : std::stoll(whole)) * den + std::stoll(frac);
}

}  // namespace detail

inline dispatch_config parse_config(std::istream& in) {
    dispatch_config cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r");
        const std::string entry = line.substr(begin, end - begin + 1);
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key=value");
        const auto strip = [](std::string s) {
            const auto from = s.find_first_not_of(" \t");
            const auto to = s.find_last_not_of(" \t");
            return from == std::string::npos ? std::string()
                                             : s.substr(from, to - from + 1);
        };
        const std::string key = strip(entry.substr(0, eq)), value = strip(entry.substr(eq + 1));
        try {
            if (key == "classical_to_karatsuba") {
                const index_t v = std::stoll(value);
                if (v < 1) throw std::invalid_argument("threshold must be >= 1");
                cfg.model.classical_to_karatsuba = v;
                cfg.kara.cutover_prec = v;
            } else if (key == "mulders_fraction") {
                detail::parse_fraction(value, cfg.mulders.fraction_num, cfg.mulders.fraction_den);
                cfg.mulders.validate();
                cfg.model.mulders_fraction_num = cfg.mulders.fraction_num;
                cfg.model.mulders_fraction_den = cfg.mulders.fraction_den;
            } else if (key == "guard_mode") {
                if (value == "exact")
                    cfg.guard.mode = guard_mode::exact;
                else if (value == "theorem")
                    cfg.guard.mode = guard_mode::theorem;
                else
                    throw std::invalid_argument("guard_mode must be exact or theorem");
            } else if (key == "base") {
                const long long v = std::stoll(value);
                if (v < 2 || static_cast<std::uint64_t>(v) > max_base)
                    throw std::invalid_argument("base out of range");
                cfg.default_base = static_cast<std::uint64_t>(v);
            } else {
                throw std::invalid_argument("unknown key: " + key);
            }
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": bad value");
        }
    }
    return cfg;
}

inline dispatch_config parse_config_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

}  // namespace clipmul
