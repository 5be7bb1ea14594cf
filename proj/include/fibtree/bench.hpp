#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "closed_form.hpp"

namespace fibtree {

struct BenchRecord {
    MethodId method;
    Index n = 0;
    std::uint64_t elapsed_ns = 0;  // median over repetitions
    Index repetitions = 0;
    Index digits = 0;
};

struct BenchSkip {
    MethodId method;
    Index n = 0;
    std::string reason;
};

struct BenchRun {
    std::vector<BenchRecord> records;
    std::vector<BenchSkip> skipped;
};

inline constexpr Index min_repetitions = 3;
inline constexpr const char* bench_csv_header = "method,n,elapsed_ns,repetitions,digits";

namespace detail {

inline std::uint64_t median(std::vector<std::uint64_t> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t mid = xs.size() / 2;
    if (xs.size() % 2 == 1) return xs[mid];
    return xs[mid - 1] + (xs[mid] - xs[mid - 1]) / 2;
}

}  // namespace detail

/// Times every in-domain (method, n) pair: one untimed warm-up, then the
/// median of `repetitions` runs on a steady clock. A result that disagrees
/// with fast doubling is skipped rather than reported.
inline BenchRun run_bench(const std::vector<Index>& n_values, const std::set<MethodId>& methods,
                          Index repetitions, Index height_cap = default_height_cap) {
    if (repetitions < min_repetitions) {
        throw std::invalid_argument("repetitions must be >= " + std::to_string(min_repetitions));
    }
    using clock = std::chrono::steady_clock;
    volatile unsigned sink = 0;
    BenchRun run;
    for (Index n : n_values) {
        const Natural expected = fib_fast_doubling(n);
        for (MethodId m : methods) {
            if (!in_domain(m, n, height_cap)) {
                run.skipped.push_back({m, n, "outside method domain"});
                continue;
            }
            const Natural warm = fib(m, n, height_cap);
            if (warm != expected) {
                run.skipped.push_back({m, n, "result differs from fast-doubling"});
                continue;
            }
            std::vector<std::uint64_t> samples;
            samples.reserve(repetitions);
            for (Index r = 0; r < repetitions; ++r) {
                const auto t0 = clock::now();
                const Natural v = fib(m, n, height_cap);
                const auto t1 = clock::now();
                sink = sink + static_cast<unsigned>(v.is_zero());
                samples.push_back(static_cast<std::uint64_t>(
                    std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()));
            }
            run.records.push_back({m, n, detail::median(std::move(samples)), repetitions, warm.digits()});
        }
    }
    return run;
}

inline void write_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
    os << bench_csv_header << '\n';
    for (const auto& r : records) {
        os << to_string(r.method) << ',' << r.n << ',' << r.elapsed_ns << ',' << r.repetitions << ','
           << r.digits << '\n';
    }
}

}  // namespace fibtree
