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

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "clipmul/dispatch.hpp"
#include "clipmul/selftest.hpp"

namespace clipmul::cli {

// Exit codes: 0 success, 1 verification failure, 2 usage error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_verify_failed = 1;
inline constexpr int exit_usage = 2;

namespace detail {

struct common_options {
    std::string config_path;
    std::string method;
    bool count = false;
};

inline dispatch_config load_config(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    return parse_config(in);
}

inline std::optional<method_choice> parse_method_opt(const std::string& name) {
    if (name.empty()) return std::nullopt;
    return parse_method(name);
}

inline nlohmann::json count_json(std::uint64_t mul, std::uint64_t add) {
    return nlohmann::json{{"mul", mul}, {"add", add}};
}

inline int cmd_int(const std::string& fs, const std::string& gs, const std::string& range_text,
                   std::optional<std::uint64_t> base_flag, const std::string& guard_flag,
                   const common_options& opts, std::ostream& out) {
    dispatch_config cfg = load_config(opts.config_path);
    if (base_flag) cfg.default_base = *base_flag;
    if (guard_flag == "exact")
        cfg.guard.mode = guard_mode::exact;
    else if (guard_flag == "theorem")
        cfg.guard.mode = guard_mode::theorem;
    else if (!guard_flag.empty())
        throw std::invalid_argument("guard must be exact or theorem");

    const clip_range r = parse_range(range_text);
    const digit_nat f = from_decimal(fs, cfg.default_base);
    const digit_nat g = from_decimal(gs, cfg.default_base);
    int_op_stats stats;
    digit_nat result(cfg.default_base);
    if (auto m = parse_method_opt(opts.method))
        result = run_int_method(*m, f, g, r, cfg, opts.count ? &stats : nullptr);
    else
        result = clipped_product(f, g, r, cfg, opts.count ? &stats : nullptr);
    out << to_decimal(result) << "\n";
    if (opts.count) out << count_json(stats.mul, stats.add).dump() << "\n";
    return exit_ok;
}

inline int cmd_poly(const std::string& fs, const std::string& gs, const std::string& range_text,
                    const common_options& opts, std::ostream& out) {
    const dispatch_config cfg = load_config(opts.config_path);
    const clip_range r = parse_range(range_text);
    const auto f = parse_poly<mpz_class>(fs);
    const auto g = parse_poly<mpz_class>(gs);
    basic_int_ring<mpz_class> ring;
    shifted_poly<mpz_class> result;
    op_count counts;
    const auto method = parse_method_opt(opts.method);
    if (opts.count) {
        auto counted = counting_wrap(ring);
        result = method ? run_poly_method(*method, f, g, r, counted, cfg)
                        : clipped_product(f, g, r, counted, cfg);
        counts = counted.snapshot();
    } else {
        result = method ? run_poly_method(*method, f, g, r, ring, cfg)
                        : clipped_product(f, g, r, ring, cfg);
    }
    out << format_poly(result) << "\n";
    if (opts.count) out << count_json(counts.mul, counts.add).dump() << "\n";
    return exit_ok;
}

inline int cmd_table(index_t prec_n, bool dense, std::ostream& out) {
    if (prec_n < 1) throw std::invalid_argument("prec must be >= 1");
    const auto f = clipmul::detail::table_operand(prec_n, dense);
    const auto g = clipmul::detail::table_operand(prec_n, true, 1);
    const index_t top = 2 * prec_n - 2;
    out << "a\\b";
    for (index_t b = 0; b <= top; ++b) out << "," << b;
    out << "\n";
    for (index_t a = 0; a <= top; ++a) {
        out << a;
        for (index_t b = 0; b <= top; ++b) {
            out << ",";
            if (b >= a) out << clipmul::detail::table_count(f, g, a, b);
        }
        out << "\n";
    }
    return exit_ok;
}

inline clip_range bench_range(const std::string& shape, index_t n, index_t m, index_t width) {
    const index_t top = n + m - 2;
    if (shape == "prefix") return {0, std::max(n, m) - 1};
    if (shape == "suffix") return {top - std::max(n, m) + 1, top};
    if (shape == "full") return {0, top};
    if (shape == "middle") {
        const index_t lo = std::max<index_t>(0, top / 2 - width / 2);
        return {lo, std::min(top, lo + width - 1)};
    }
    throw std::invalid_argument("unknown shape: " + shape +
                                " (expected prefix, suffix, middle or full)");
}

inline int cmd_bench(const std::vector<index_t>& sizes, const std::vector<std::string>& shapes,
                     index_t width, std::uint64_t seed, const common_options& opts,
                     std::ostream& out) {
    const dispatch_config cfg = load_config(opts.config_path);
    int_ring ring;
    out << "method,shape,n,m,a,b,mul,add,wall_ms\n";
    for (index_t n : sizes) {
        if (n < 1) throw std::invalid_argument("sizes must be >= 1");
        std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(n) * 0x9e3779b97f4a7c15ULL);
        std::uniform_int_distribution<long long> dist(-999, 999);
        std::uniform_int_distribution<long long> lead(1, 999);
        std::vector<long long> fc, gc;
        for (index_t i = 0; i + 1 < n; ++i) fc.push_back(dist(rng));
        for (index_t i = 0; i + 1 < n; ++i) gc.push_back(dist(rng));
        fc.push_back(lead(rng));
        gc.push_back(lead(rng));
        const shifted_poly<long long> f(0, std::move(fc)), g(0, std::move(gc));
        for (const std::string& shape : shapes) {
            const clip_range r = bench_range(shape, n, n, width);
            for (std::size_t i = 0; i < method_names.size(); ++i) {
                const auto method = static_cast<method_choice>(i);
                if (!method_applicable(method, operand_kind::poly, n, n, r)) continue;
                auto counted = counting_wrap(ring);
                const auto start = std::chrono::steady_clock::now();
                run_poly_method(method, f, g, r, counted, cfg);
                const auto stop = std::chrono::steady_clock::now();
                const double ms =
                    std::chrono::duration<double, std::milli>(stop - start).count();
                const op_count c = counted.snapshot();
                out << to_string(method) << "," << shape << "," << n << "," << n << "," << r.lo
                    << "," << r.hi << "," << c.mul << "," << c.add << "," << ms << "\n";
            }
        }
    }
    return exit_ok;
}

inline int cmd_selftest(bool as_json, std::ostream& out) {
    const auto results = run_selftest();
    std::size_t failures = 0;
    if (as_json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : results) {
            arr.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
            if (!r.pass) ++failures;
        }
        out << arr.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            out << (r.pass ? "PASS " : "FAIL ") << r.name;
            if (!r.pass && !r.detail.empty()) out << "  (" << r.detail << ")";
            out << "\n";
            if (!r.pass) ++failures;
        }
        out << results.size() - failures << "/" << results.size() << " checks passed\n";
    }
    return failures == 0 ? exit_ok : exit_verify_failed;
}

}  // namespace detail

/// Entry point shared by the binary and the tests.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"clipped products of polynomials and base-B integers", "clip"};
    app.require_subcommand(1);

    // int
    auto* c_int = app.add_subcommand("int", "clipped product of two nonnegative integers");
    std::string int_f, int_g, int_range, int_guard;
    std::uint64_t int_base = 0;
    detail::common_options int_opts;
    c_int->add_option("f", int_f, "first factor, decimal")->required();
    c_int->add_option("g", int_g, "second factor, decimal")->required();
    c_int->add_option("--range", int_range, "digit positions a..b, inclusive")->required();
    auto* base_opt = c_int->add_option("--base", int_base, "digit base (default 10)");
    c_int->add_option("--guard", int_guard, "guard policy: exact or theorem");
    c_int->add_option("--method", int_opts.method, "force a method");
    c_int->add_flag("--count", int_opts.count, "also print operation counts as JSON");
    c_int->add_option("--config", int_opts.config_path, "key=value config file");

    // poly
    auto* c_poly = app.add_subcommand("poly", "clipped product of two polynomials");
    std::string poly_f, poly_g, poly_range;
    detail::common_options poly_opts;
    c_poly->add_option("f", poly_f, "first factor, e1:c1,e2:c2,...")->required();
    c_poly->add_option("g", poly_g, "second factor")->required();
    c_poly->add_option("--range", poly_range, "degrees a..b, inclusive")->required();
    c_poly->add_option("--method", poly_opts.method, "force a method");
    c_poly->add_flag("--count", poly_opts.count, "also print operation counts as JSON");
    c_poly->add_option("--config", poly_opts.config_path, "key=value config file");

    // table
    auto* c_table = app.add_subcommand(
        "table", "CSV of clipped-Karatsuba multiplication counts for all ranges");
    index_t table_prec = 16;
    bool table_dense = false;
    c_table->add_option("--prec", table_prec, "operand precision (default 16)");
    c_table->add_flag("--dense", table_dense,
                      "use fully dense operands instead of the reference pattern");

    // bench
    auto* c_bench = app.add_subcommand("bench", "CSV of counts and timings over a size grid");
    std::vector<index_t> bench_sizes{256, 1024};
    std::vector<std::string> bench_shapes{"prefix", "suffix", "middle", "full"};
    index_t bench_width = 8;
    std::uint64_t bench_seed = 42;
    detail::common_options bench_opts;
    c_bench->add_option("--sizes", bench_sizes, "operand precisions")->delimiter(',');
    c_bench->add_option("--shapes", bench_shapes, "range shapes: prefix,suffix,middle,full")
        ->delimiter(',');
    c_bench->add_option("--width", bench_width, "middle-range width (default 8)");
    c_bench->add_option("--seed", bench_seed, "coefficient seed (default 42)");
    c_bench->add_option("--config", bench_opts.config_path, "key=value config file");

    // selftest
    auto* c_self = app.add_subcommand("selftest", "verify the documented example values");
    bool self_json = false;
    c_self->add_flag("--json", self_json, "machine-readable result list");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (c_int->parsed())
            return detail::cmd_int(int_f, int_g, int_range,
                                   base_opt->count() ? std::optional<std::uint64_t>(int_base)
                                                     : std::nullopt,
                                   int_guard, int_opts, out);
        if (c_poly->parsed()) return detail::cmd_poly(poly_f, poly_g, poly_range, poly_opts, out);
        if (c_table->parsed()) return detail::cmd_table(table_prec, table_dense, out);
        if (c_bench->parsed())
            return detail::cmd_bench(bench_sizes, bench_shapes, bench_width, bench_seed,
                                     bench_opts, out);
        if (c_self->parsed()) return detail::cmd_selftest(self_json, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    err << "no subcommand given\n";
    return exit_usage;
}

}  // namespace clipmul::cli
