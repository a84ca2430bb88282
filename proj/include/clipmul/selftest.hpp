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
#include <functional>
#include <string>
#include <vector>

#include "clipmul/dispatch.hpp"

namespace clipmul {

struct selftest_result {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

/// Inputs used for the multiplication-count table: positive pseudo-random
/// coefficients (no cancellation anywhere in the recursion), and unless
/// `dense` the f operand has a zero coefficient at degree prec-3. That zero
/// is part of the table's definition: the recursion prunes sub-products that
/// collapse to zero, which lowers a handful of cells by one.
inline shifted_poly<long long> table_operand(index_t prec_n, bool dense, int salt = 0) {
    std::vector<long long> c;
    for (index_t i = 0; i < prec_n; ++i)
        c.push_back((i * 37 + 11 * (salt + 1)) % 89 + 1);
    if (!dense && prec_n >= 4) c[static_cast<std::size_t>(prec_n - 3)] = 0;
    return shifted_poly<long long>(0, std::move(c));
}

/// Multiplications used by clipped Karatsuba over [a..b] on the table inputs.
inline std::uint64_t table_count(const shifted_poly<long long>& f, const shifted_poly<long long>& g,
                                 index_t a, index_t b) {
    int_ring ring;
    auto counted = counting_wrap(ring);
    karatsuba_clipped(f, g, {a, b}, counted, karatsuba_config{1, true});
    return counted.snapshot().mul;
}

}  // namespace detail

/// Fixed checks over the library's documented example values. Exercised by
/// the CLI selftest command; every check names what it verifies.
inline std::vector<selftest_result> run_selftest() {
    std::vector<selftest_result> results;
    const auto check = [&results](const std::string& name, bool ok, std::string detail = "") {
        results.push_back({name, ok, std::move(detail)});
    };
    const auto expect_poly = [&](const std::string& name, const shifted_poly<long long>& got,
                                 const std::string& want) {
        const std::string s = format_poly(got);
        check(name, s == want, s == want ? "" : "got " + s + ", want " + want);
    };

    int_ring ring;
    const auto f = parse_poly<long long>("0:-62,1:10,2:83,3:4");
    const auto g = parse_poly<long long>("0:75,1:17,2:-71,3:44,4:-80,5:82");
    const std::string full = "0:-4650,1:-304,2:10797,3:-1727,4:-425,5:-2516,6:-5644,7:6486,8:328";
    const std::string middle = "2:10797,3:-1727";

    // prec / coeff / clip / reverse primitives
    check("prec_of_six_coefficients", prec(parse_poly<long long>("0:1,1:2,2:3,3:4,4:5,5:6")) == 6);
    check("coeff_pick", coeff(f, 2) == 83);
    expect_poly("clip_terms_2_to_3",
                clip(parse_poly<long long>("0:1,1:2,2:3,3:4,4:5,5:6"), {2, 3}), "2:3,3:4");
    expect_poly("reverse_cubic", reverse(f), "0:4,1:83,2:10,3:-62");

    // full product and the clipped value [2..3], by every applicable method
    expect_poly("full_product_oracle", oracle_full_product(f, g), full);
    expect_poly("full_product_ring", full_product(f, g, ring), full);
    for (auto m : {method_choice::direct, method_choice::from_bottom, method_choice::classical,
                   method_choice::karatsuba, method_choice::band_tiled})
        expect_poly("clip_2_3_" + std::string(to_string(m)),
                    run_poly_method(m, f, g, {2, 3}, ring), middle);
    expect_poly("clip_2_3_routed", clipped_product(f, g, {2, 3}, ring), middle);

    // bottom clip b=3: the product of the clipped operands, then the result
    expect_poly("bottom_clip_inner_product",
                full_product(clip(f, {0, 3}), clip(g, {0, 3}), ring),
                "0:-4650,1:-304,2:10797,3:-1727,4:-5385,5:3368,6:176");
    expect_poly("bottom_clip_b3", bottom_clipped(f, g, 3, ring),
                "0:-4650,1:-304,2:10797,3:-1727");

    // top clip via reversal, a=6
    expect_poly("top_clip_reversed_inner", bottom_clipped(reverse(f), reverse(g), 2, ring),
                "0:328,1:6486,2:-5644");
    expect_poly("top_clip_a6", top_clipped_via_reverse(f, g, 6, ring), "6:-5644,7:6486,8:328");

    // classical operation counts: deg f=7, deg g=4, range [5..7]
    {
        const auto f8 = detail::table_operand(8, true);
        const auto g5 = detail::table_operand(5, true, 1);
        auto counted = counting_wrap(ring);
        classical_clipped(f8, g5, {5, 7}, counted);
        const op_count c = counted.snapshot();
        check("classical_count_15_12", c.mul == 15 && c.add == 12,
              "mul=" + std::to_string(c.mul) + " add=" + std::to_string(c.add));
        counted.reset();
        clipped_from_bottom(f8, g5, {5, 7}, counted);
        const op_count d = counted.snapshot();
        check("from_bottom_count_40_28", d.mul == 40 && d.add == 28,
              "mul=" + std::to_string(d.mul) + " add=" + std::to_string(d.add));
    }

    // balanced full Karatsuba count, recursion down to single coefficients
    {
        const auto f16 = detail::table_operand(16, true);
        const auto g16 = detail::table_operand(16, true, 1);
        check("karatsuba_full_count_81", detail::table_count(f16, g16, 0, 30) == 81);
    }

    // count-table cells on the table inputs (f with the degree-13 zero)
    {
        const auto tf = detail::table_operand(16, false);
        const auto tg = detail::table_operand(16, true, 1);
        const auto cell = [&](index_t a, index_t b) { return detail::table_count(tf, tg, a, b); };
        check("table_cell_0_0", cell(0, 0) == 1, std::to_string(cell(0, 0)));
        check("table_cell_0_7", cell(0, 7) == 27, std::to_string(cell(0, 7)));
        check("table_cell_0_15", cell(0, 15) == 80, std::to_string(cell(0, 15)));
        check("table_cell_16_30", cell(16, 30) == 64, std::to_string(cell(16, 30)));
        check("table_cell_24_30", cell(24, 30) == 18, std::to_string(cell(24, 30)));
        const std::uint64_t suffix[15] = {64, 56, 48, 44, 36, 32, 28, 26, 18, 14, 10, 8, 4, 3, 1};
        bool ok = true;
        std::string got;
        for (index_t a = 16; a <= 30; ++a) {
            const std::uint64_t c = cell(a, 30);
            got += (a > 16 ? "," : "") + std::to_string(c);
            ok = ok && c == suffix[a - 16];
        }
        check("table_suffix_column", ok, got);
    }

    // integer primitives on 504132231405 in base 100
    {
        const auto n = from_decimal("504132231405", 100);
        check("iprec_base100", iprec(n) == 6, std::to_string(iprec(n)));
        check("iclip_positioned", to_decimal(iclip(n, {2, 4})) == "4132230000",
              to_decimal(iclip(n, {2, 4})));
        const auto one = from_decimal("1", 100);
        check("int_clip_via_product_with_one",
              to_decimal(clipped_product(n, one, {2, 4})) == "4132230000");
    }

    // clipped integer product, digits 3..6 of 123456789*987654321
    {
        const auto a = from_decimal("123456789", 10), b = from_decimal("987654321", 10);
        const std::string want = "2635000";
        check("int_clip_3_6_classical",
              to_decimal(classical_clipped_int(a, b, {3, 6}, {guard_mode::exact})) == want);
        check("int_clip_3_6_karatsuba",
              to_decimal(karatsuba_clipped_int(a, b, {3, 6}, {guard_mode::exact})) == want);
        check("int_clip_3_6_from_bottom",
              to_decimal(clipped_int_from_bottom(a, b, {3, 6})) == want);
    }

    // guard digit counts
    check("guard_zero_at_a0", guard_digits(0, 100, 10) == 0);
    check("guard_two_for_wide_base", guard_digits(10, 100, std::uint64_t(1) << 32) == 2);
    check("guard_three_base10_prec100", guard_digits(10, 100, 10) == 3);

    // small exhaustive sweep of the one-unit carry contract, base 10
    {
        bool ok = true;
        std::string fail;
        std::uint64_t pow10[7] = {1, 10, 100, 1000, 10000, 100000, 1000000};
        digit_nat out(10);
        for (std::uint64_t fv = 0; fv <= 99 && ok; ++fv)
            for (std::uint64_t gv = fv; gv <= 99 && ok; ++gv) {
                const auto fd = digit_nat::from_value(10, fv);
                const auto gd = digit_nat::from_value(10, gv);
                const std::uint64_t prod = fv * gv;
                for (index_t a = 0; a <= 4 && ok; ++a)
                    for (index_t b = a; b <= 4 && ok; ++b) {
                        const std::uint64_t expect =
                            prod % pow10[b + 1] - prod % pow10[a];
                        classical_clipped_int_into(fd, gd, {a, b}, {guard_mode::theorem}, out);
                        std::uint64_t v = 0;
                        for (index_t i = iprec(out) - 1; i >= 0; --i)
                            v = v * 10 + icoeff(out, i);
                        const std::uint64_t deficit = expect - v;
                        if (deficit != 0 && deficit != pow10[a]) {
                            ok = false;
                            fail = std::to_string(fv) + "*" + std::to_string(gv);
                        }
                        classical_clipped_int_into(fd, gd, {a, b}, {guard_mode::exact}, out);
                        v = 0;
                        for (index_t i = iprec(out) - 1; i >= 0; --i)
                            v = v * 10 + icoeff(out, i);
                        if (v != expect) {
                            ok = false;
                            fail = std::to_string(fv) + "*" + std::to_string(gv) + " exact";
                        }
                    }
            }
        check("theorem_contract_small_sweep", ok, fail);
    }

    // cross-method agreement on a middle range of asymmetric operands
    {
        const auto wf = detail::table_operand(24, true, 2);
        const auto wg = detail::table_operand(12, true, 3);
        const auto want = clip(oracle_full_product(wf, wg), {14, 19});
        bool ok = true;
        for (auto m : {method_choice::direct, method_choice::from_bottom, method_choice::classical,
                       method_choice::karatsuba, method_choice::band_tiled})
            ok = ok && run_poly_method(m, wf, wg, {14, 19}, ring) == want;
        check("middle_range_cross_method", ok);
    }

    return results;
}

}  // namespace clipmul
