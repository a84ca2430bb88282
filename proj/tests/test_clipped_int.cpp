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

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"

using namespace clipmul;

namespace {

digit_nat oracle_clip_int(const digit_nat& f, const digit_nat& g, clip_range r) {
    return iclip(oracle_int_product(f, g), r);
}

// (E - v) must be 0 or B^a modulo B^(b+1); returns the deficit in units of B^a.
int deficit_units(const digit_nat& expect, const digit_nat& got, std::uint64_t base, index_t a,
                  index_t b) {
    mpz_class mod = 1;
    for (index_t i = 0; i <= b; ++i) mod *= static_cast<unsigned long>(base);
    mpz_class unit = 1;
    for (index_t i = 0; i < a; ++i) unit *= static_cast<unsigned long>(base);
    const mpz_class d = ((to_mpz(expect) - to_mpz(got)) % mod + mod) % mod;
    if (d == 0) return 0;
    if (d == unit) return 1;
    return -1;  // contract violated
}

}  // namespace

TEST_CASE("guard digit counts") {
    CHECK(guard_digits(0, 100, 10) == 0);
    CHECK(guard_digits(10, 100, std::uint64_t(1) << 32) == 2);
    CHECK(guard_digits(10, 100, 10) == 3);
    CHECK(guard_digits(1, 100, 10) == 1);
    CHECK(guard_digits(10, 1, 10) == 1);
    CHECK(ceil_log(10, 1) == 0);
    CHECK(ceil_log(10, 10) == 1);
    CHECK(ceil_log(10, 11) == 2);
    CHECK(ceil_log(2, 1024) == 10);
}

TEST_CASE("classical clipped integer product") {
    const auto a = from_decimal("123456789", 10);
    const auto b = from_decimal("987654321", 10);
    SECTION("digits 3..6, exact mode") {
        CHECK(to_decimal(classical_clipped_int(a, b, {3, 6}, {guard_mode::exact})) == "2635000");
    }
    SECTION("full range is the full product") {
        const auto full = classical_clipped_int(a, b, {0, iprec(a) + iprec(b) - 1});
        CHECK(full == oracle_int_product(a, b));
        CHECK(full_int_product(a, b) == oracle_int_product(a, b));
    }
    SECTION("base mismatch and bad range") {
        CHECK_THROWS_AS(classical_clipped_int(a, from_decimal("3", 16), {0, 1}),
                        std::domain_error);
        CHECK_THROWS_AS(classical_clipped_int(a, b, {-1, 2}), std::invalid_argument);
    }
    SECTION("operand order does not matter") {
        std::mt19937_64 rng(73);
        for (int i = 0; i < 100; ++i) {
            const auto f = testutil::random_digits(rng, 10, 30);
            const auto g = testutil::random_digits(rng, 10, 12);
            std::uniform_int_distribution<index_t> pos(0, 45);
            index_t lo = pos(rng), hi = pos(rng);
            if (lo > hi) std::swap(lo, hi);
            for (auto mode : {guard_mode::exact, guard_mode::theorem})
                CHECK(classical_clipped_int(f, g, {lo, hi}, {mode}) ==
                      classical_clipped_int(g, f, {lo, hi}, {mode}));
        }
    }
    SECTION("raising b only appends digits") {
        std::mt19937_64 rng(79);
        for (int i = 0; i < 100; ++i) {
            const auto f = testutil::random_digits(rng, 10, 20);
            const auto g = testutil::random_digits(rng, 10, 20);
            std::uniform_int_distribution<index_t> pos(0, 40);
            index_t lo = pos(rng), hi = pos(rng);
            if (lo > hi) std::swap(lo, hi);
            const auto wide = classical_clipped_int(f, g, {lo, 41}, {guard_mode::theorem});
            const auto narrow = classical_clipped_int(f, g, {lo, hi}, {guard_mode::theorem});
            CHECK(narrow == iclip(wide, {lo, hi}));
        }
    }
}

TEST_CASE("exhaustive small sweep: one-unit contract, exactness, carry bound") {
    std::uint64_t deficits = 0, cases = 0;
    for (std::uint64_t fv = 0; fv <= 999; fv += 7)
        for (std::uint64_t gv = fv; gv <= 999; gv += 3) {
            const auto f = digit_nat::from_value(10, fv);
            const auto g = digit_nat::from_value(10, gv);
            const auto full = oracle_int_product(f, g);
            const index_t pg = std::min(iprec(f), iprec(g));
            for (index_t a = 0; a <= 6; ++a)
                for (index_t b = a; b <= 6; ++b) {
                    const auto expect = iclip(full, {a, b});
                    int_op_stats stats;
                    const auto got =
                        classical_clipped_int(f, g, {a, b}, {guard_mode::theorem}, &stats);
                    const int units = deficit_units(expect, got, 10, a, b);
                    REQUIRE(units >= 0);
                    deficits += units == 1;
                    ++cases;
                    REQUIRE(stats.max_carry <= static_cast<uint128_t>(pg > 0 ? pg : 0) * 9);
                    REQUIRE(classical_clipped_int(f, g, {a, b}, {guard_mode::exact}) == expect);
                }
        }
    INFO("one-unit deficits seen: " << deficits << " of " << cases);
    CHECK(cases > 0);
}

TEST_CASE("bottom clipped integer product is exact") {
    SECTION("worked examples") {
        const auto n99 = from_decimal("99", 10);
        CHECK(to_decimal(bottom_clipped_int(n99, n99, 1)) == "1");  // 9801 mod 100
        const auto a = from_decimal("123456789", 10);
        const auto b = from_decimal("987654321", 10);
        CHECK(bottom_clipped_int(a, b, 40) == oracle_int_product(a, b));
        CHECK(to_decimal(clipped_int_from_bottom(a, b, {3, 6})) == "2635000");
        CHECK(clipped_int_from_bottom(a, b, {0, 5}) == bottom_clipped_int(a, b, 5));
    }
    SECTION("random operands over several bases") {
        std::mt19937_64 rng(83);
        for (std::uint64_t base : {std::uint64_t(10), std::uint64_t(1) << 16,
                                   std::uint64_t(1) << 32}) {
            for (int i = 0; i < 60; ++i) {
                const auto f = testutil::random_digits(rng, base, 64);
                const auto g = testutil::random_digits(rng, base, 64);
                std::uniform_int_distribution<index_t> pos(0, 130);
                const index_t b = pos(rng);
                CHECK(bottom_clipped_int(f, g, b) == oracle_clip_int(f, g, {0, b}));
            }
        }
    }
}

TEST_CASE("karatsuba clipped integer product") {
    const dispatch_config dcfg;
    SECTION("worked example") {
        const auto a = from_decimal("123456789", 10);
        const auto b = from_decimal("987654321", 10);
        CHECK(to_decimal(karatsuba_clipped_int(a, b, {3, 6}, {guard_mode::exact})) == "2635000");
        CHECK(karatsuba_clipped_int(a, b, {0, 40}, {guard_mode::exact}) ==
              oracle_int_product(a, b));
        CHECK_THROWS_AS(karatsuba_clipped_int(a, from_decimal("5", 16), {0, 2}),
                        std::domain_error);
    }
    SECTION("exact mode equals the oracle on long operands, all range shapes") {
        std::mt19937_64 rng(89);
        for (std::uint64_t base : {std::uint64_t(10), std::uint64_t(1) << 16,
                                   std::uint64_t(1) << 32}) {
            for (int i = 0; i < 25; ++i) {
                const auto f = testutil::random_digits(rng, base, 256);
                const auto g = testutil::random_digits(rng, base, 256);
                const index_t top = iprec(f) + iprec(g);
                std::uniform_int_distribution<index_t> pos(0, std::max<index_t>(top, 1));
                index_t lo = pos(rng), hi = pos(rng);
                if (lo > hi) std::swap(lo, hi);
                for (clip_range r : {clip_range{0, hi}, clip_range{lo, top}, clip_range{lo, hi}}) {
                    CHECK(karatsuba_clipped_int(f, g, r, {guard_mode::exact}) ==
                          oracle_clip_int(f, g, r));
                }
            }
        }
    }
    SECTION("theorem mode obeys the one-unit contract exhaustively") {
        for (std::uint64_t fv = 0; fv <= 500; fv += 3)
            for (std::uint64_t gv = fv; gv <= 500; gv += 7) {
                const auto f = digit_nat::from_value(10, fv);
                const auto g = digit_nat::from_value(10, gv);
                const auto full = oracle_int_product(f, g);
                for (index_t a = 0; a <= 5; ++a)
                    for (index_t b = a; b <= 5; ++b) {
                        const auto got =
                            karatsuba_clipped_int(f, g, {a, b}, {guard_mode::theorem});
                        REQUIRE(deficit_units(iclip(full, {a, b}), got, 10, a, b) >= 0);
                    }
            }
    }
    SECTION("counts flow through the ring") {
        const auto f = from_decimal("987654321987654321", 10);
        const auto g = from_decimal("123456789123456789", 10);
        int_op_stats stats;
        karatsuba_clipped_int(f, g, {0, 40}, {guard_mode::exact}, dcfg.kara, &stats);
        CHECK(stats.mul > 0);
    }
}
