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

#include <atomic>
#include <random>
#include <sstream>
#include <thread>

#include "helpers.hpp"

using namespace clipmul;
using poly = shifted_poly<long long>;

TEST_CASE("estimate") {
    const cost_model model;
    SECTION("classical estimate is the worked example count") {
        CHECK(estimate(model, method_choice::classical, 8, 5, {5, 7}) == 15);
    }
    SECTION("empty range estimates zero for every method") {
        for (std::size_t i = 0; i < method_names.size(); ++i)
            CHECK(estimate(model, static_cast<method_choice>(i), 8, 8, {5, 3}) == 0);
    }
    SECTION("preconditions") {
        CHECK_THROWS_AS(estimate(model, method_choice::direct, 0, 5, {0, 3}),
                        std::invalid_argument);
    }
    SECTION("classical estimate is exact inside the plateau and an upper bound outside") {
        int_ring ring;
        std::mt19937_64 rng(97);
        for (int i = 0; i < 100; ++i) {
            std::uniform_int_distribution<index_t> len(2, 20);
            const index_t n = len(rng), m = len(rng);
            const auto f = testutil::random_dense_poly(rng, n, 99);
            const auto g = testutil::random_dense_poly(rng, m, 99);
            std::uniform_int_distribution<index_t> pos(0, n + m - 2);
            index_t a = pos(rng), b = pos(rng);
            if (a > b) std::swap(a, b);
            auto counted = counting_wrap(ring);
            classical_clipped(f, g, {a, b}, counted);
            const auto measured = static_cast<std::int64_t>(counted.snapshot().mul);
            const auto est = estimate(model, method_choice::classical, n, m, {a, b});
            CHECK(est == measured);  // exact by construction over the true window
            const std::int64_t plateau_bound = (b - a + 1) * std::min(n, m);
            CHECK(measured <= plateau_bound);
        }
    }
    SECTION("estimates are nonnegative and monotone in range width") {
        for (const auto& [n, m] : {std::pair<index_t, index_t>{64, 48},
                                   std::pair<index_t, index_t>{128, 128},
                                   std::pair<index_t, index_t>{24, 7}}) {
            for (index_t a : {index_t{0}, index_t{10}}) {
                for (std::size_t mi = 0; mi < method_names.size(); ++mi) {
                    const auto mch = static_cast<method_choice>(mi);
                    std::int64_t prev = 0;
                    for (index_t b = a; b <= n + m; ++b) {
                        const auto est = estimate(model, mch, n, m, {a, b});
                        INFO(to_string(mch) << " n=" << n << " m=" << m << " a=" << a
                                            << " b=" << b);
                        REQUIRE(est >= 0);
                        REQUIRE(est >= prev);
                        prev = est;
                    }
                }
            }
        }
    }
    SECTION("karatsuba estimate within 2x of measured counts on a grid") {
        int_ring ring;
        std::mt19937_64 rng(101);
        cost_model m8;
        m8.classical_to_karatsuba = 8;
        const karatsuba_config cfg{8, false};
        for (index_t p : {16, 32, 64, 128}) {
            const auto f = testutil::random_dense_poly(rng, p, 99);
            const auto g = testutil::random_dense_poly(rng, p, 99);
            const index_t top = 2 * p - 2;
            for (clip_range r : {clip_range{0, top}, clip_range{0, p / 2}, clip_range{0, p - 1},
                                 clip_range{top - p / 2, top}, clip_range{p - 1, top}}) {
                auto counted = counting_wrap(ring);
                karatsuba_clipped(f, g, r, counted, cfg);
                const double measured = static_cast<double>(counted.snapshot().mul);
                const double est =
                    static_cast<double>(estimate(m8, method_choice::karatsuba, p, p, r));
                INFO("p=" << p << " r=[" << r.lo << ".." << r.hi << "] measured=" << measured
                          << " est=" << est);
                CHECK(est <= 2.0 * measured);
                CHECK(measured <= 2.0 * est);
            }
        }
    }
}

TEST_CASE("choose") {
    const cost_model model;
    SECTION("tiny operands always route to classical") {
        for (index_t a = 0; a <= 6; ++a)
            for (index_t b = a; b <= 6; ++b)
                CHECK(choose(model, 4, 4, {a, b}) == method_choice::classical);
    }
    SECTION("narrow middle band of huge operands avoids direct") {
        const auto got = choose(model, 4096, 4096, {4000, 4007});
        CHECK((got == method_choice::classical || got == method_choice::band_tiled));
    }
    SECTION("prefix of large balanced operands routes to a short-product method") {
        const auto got = choose(model, 1024, 1024, {0, 1023});
        CHECK((got == method_choice::mulders || got == method_choice::from_bottom));
    }
    SECTION("deterministic") {
        for (int i = 0; i < 5; ++i)
            CHECK(choose(model, 100, 60, {40, 80}) == choose(model, 100, 60, {40, 80}));
    }
    SECTION("integer kind excludes polynomial-only methods") {
        for (index_t n : {8, 64, 1024})
            for (clip_range r : {clip_range{0, n - 1}, clip_range{n, 2 * n - 2},
                                 clip_range{n - 4, n + 4}}) {
                const auto got = choose(model, n, n, r, operand_kind::integer);
                CHECK(got != method_choice::top_via_reverse);
                CHECK(got != method_choice::mulders);
                CHECK(got != method_choice::band_tiled);
            }
    }
}

TEST_CASE("cross-method agreement and the routed facade") {
    int_ring ring;
    std::mt19937_64 rng(103);
    const dispatch_config cfg;
    for (int i = 0; i < 150; ++i) {
        const auto f = testutil::random_poly(rng, 20, 999, false);
        const auto g = testutil::random_poly(rng, 20, 999, false);
        if (f.is_zero() || g.is_zero()) continue;
        std::uniform_int_distribution<index_t> pos(0, f.degree() + g.degree() + 2);
        index_t a = pos(rng), b = pos(rng);
        if (a > b) std::swap(a, b);
        const auto want = clip(oracle_full_product(f, g), {a, b});
        for (std::size_t mi = 0; mi < method_names.size(); ++mi) {
            const auto method = static_cast<method_choice>(mi);
            if (!method_applicable(method, operand_kind::poly, prec(f), prec(g), {a, b})) continue;
            INFO("method " << to_string(method) << " range [" << a << ".." << b << "]");
            CHECK(run_poly_method(method, f, g, {a, b}, ring, cfg) == want);
        }
        CHECK(clipped_product(f, g, {a, b}, ring, cfg) == want);
    }
}

TEST_CASE("the routed integer facade matches the oracle") {
    std::mt19937_64 rng(107);
    dispatch_config cfg;
    for (int i = 0; i < 100; ++i) {
        const auto f = testutil::random_digits(rng, 10, 40);
        const auto g = testutil::random_digits(rng, 10, 40);
        std::uniform_int_distribution<index_t> pos(0, 85);
        index_t lo = pos(rng), hi = pos(rng);
        if (lo > hi) std::swap(lo, hi);
        CHECK(clipped_product(f, g, {lo, hi}, cfg) ==
              iclip(oracle_int_product(f, g), {lo, hi}));
    }
    SECTION("worked example through the facade") {
        const auto a = from_decimal("123456789", 10);
        const auto b = from_decimal("987654321", 10);
        CHECK(to_decimal(clipped_product(a, b, {3, 6}, cfg)) == "2635000");
    }
    SECTION("method override validation") {
        const auto a = from_decimal("123", 10);
        CHECK_THROWS_AS(run_int_method(method_choice::bottom, a, a, {2, 4}, cfg),
                        std::invalid_argument);
        CHECK_THROWS_AS(run_int_method(method_choice::mulders, a, a, {0, 4}, cfg),
                        std::invalid_argument);
    }
}

TEST_CASE("shared operands are safe to use from several threads") {
    std::mt19937_64 rng(113);
    const auto f = testutil::random_dense_poly(rng, 48, 999);
    const auto g = testutil::random_dense_poly(rng, 40, 999);
    const auto oracle = oracle_full_product(f, g);
    std::vector<std::thread> workers;
    std::atomic<int> mismatches{0};
    for (int t = 0; t < 4; ++t) {
        workers.emplace_back([&, t] {
            int_ring ring;  // stateless; one per thread keeps the contract simple
            for (index_t a = t; a <= 80; a += 4)
                for (index_t b = a; b <= 86; b += 3) {
                    if (karatsuba_clipped(f, g, {a, b}, ring, {}) != clip(oracle, {a, b}))
                        ++mismatches;
                    if (band_tiled(f, g, {a, b}, ring, {}) != clip(oracle, {a, b}))
                        ++mismatches;
                }
        });
    }
    for (auto& w : workers) w.join();
    CHECK(mismatches.load() == 0);
}

TEST_CASE("config file parsing") {
    SECTION("full configuration") {
        std::istringstream in(
            "# routing\n"
            "classical_to_karatsuba = 48\n"
            "mulders_fraction = 0.75\n"
            "guard_mode = theorem\n"
            "base = 65536\n");
        const auto cfg = parse_config(in);
        CHECK(cfg.model.classical_to_karatsuba == 48);
        CHECK(cfg.kara.cutover_prec == 48);
        CHECK(cfg.mulders.fraction_num == 75);
        CHECK(cfg.mulders.fraction_den == 100);
        CHECK(cfg.guard.mode == guard_mode::theorem);
        CHECK(cfg.default_base == 65536);
    }
    SECTION("fraction as a ratio") {
        const auto cfg = parse_config_text("mulders_fraction=7/10\n");
        CHECK(cfg.mulders.fraction_num == 7);
        CHECK(cfg.mulders.fraction_den == 10);
    }
    SECTION("defaults on empty input") {
        const auto cfg = parse_config_text("\n# nothing\n");
        CHECK(cfg.model.classical_to_karatsuba == 32);
        CHECK(cfg.guard.mode == guard_mode::exact);
        CHECK(cfg.default_base == 10);
    }
    SECTION("rejects bad input") {
        CHECK_THROWS_AS(parse_config_text("nonsense\n"), std::invalid_argument);
        CHECK_THROWS_AS(parse_config_text("unknown_key=3\n"), std::invalid_argument);
        CHECK_THROWS_AS(parse_config_text("guard_mode=maybe\n"), std::invalid_argument);
        CHECK_THROWS_AS(parse_config_text("mulders_fraction=0.4\n"), std::invalid_argument);
        CHECK_THROWS_AS(parse_config_text("base=1\n"), std::invalid_argument);
        CHECK_THROWS_AS(parse_config_text("classical_to_karatsuba=0\n"), std::invalid_argument);
    }
}
