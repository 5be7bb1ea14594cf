#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "combinatorics.hpp"
#include "tree.hpp"

// Indexing throughout follows f(0) = f(1) = 1, f(n) = f(n-1) + f(n-2),
// i.e. f(n) = F(n+1) against the standard F(0) = 0, F(1) = 1.

namespace fibtree {

/// Largest n for which the double-precision Binet forms round to the exact
/// value. Both forms first go wrong at n = 70 (checked by the test suite).
inline constexpr Index float_domain_max = 69;

class invalid_level : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class out_of_domain : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Declared in lexicographic order of their tags.
enum class MethodId {
    binet_round,
    binet_subtract,
    closed_form,
    fast_doubling,
    recurrence,
    tree_count,
};

inline constexpr std::array<MethodId, 6> all_methods{
    MethodId::binet_round, MethodId::binet_subtract, MethodId::closed_form,
    MethodId::fast_doubling, MethodId::recurrence,    MethodId::tree_count,
};

inline constexpr std::string_view to_string(MethodId m) {
    switch (m) {
        case MethodId::binet_round: return "binet-round";
        case MethodId::binet_subtract: return "binet-subtract";
        case MethodId::closed_form: return "closed-form";
        case MethodId::fast_doubling: return "fast-doubling";
        case MethodId::recurrence: return "recurrence";
        case MethodId::tree_count: return "tree-count";
    }
    return "?";
}

inline std::optional<MethodId> parse_method(std::string_view tag) {
    for (MethodId m : all_methods) {
        if (to_string(m) == tag) return m;
    }
    return std::nullopt;
}

/// Largest n the method accepts, or nullopt when unbounded.
inline std::optional<Index> method_limit(MethodId m, Index height_cap = default_height_cap) {
    switch (m) {
        case MethodId::binet_round:
        case MethodId::binet_subtract: return float_domain_max;
        case MethodId::tree_count: return height_cap + 2;
        default: return std::nullopt;
    }
}

inline bool in_domain(MethodId m, Index n, Index height_cap = default_height_cap) {
    const auto limit = method_limit(m, height_cap);
    return !limit || n <= *limit;
}

/// Number of vertices at depth k of the Fibonacci tree of height h:
/// sum_{i=0}^{h-k} C(k, h-k-i). Terms with h-k-i > k vanish, so only the
/// first min(k, h-k) + 1 entries of row k are summed.
inline Natural level_count(std::int64_t h, std::int64_t k) {
    if (k < 0 || k > h) {
        throw invalid_level("level " + std::to_string(k) + " outside 0.." + std::to_string(h));
    }
    const auto kk = static_cast<Index>(k);
    const auto row = binomial_row(kk, std::min(kk, static_cast<Index>(h - k)));
    Natural sum;
    for (const auto& c : row) sum += c;
    return sum;
}

/// |V| of the Fibonacci tree of height h, as the sum of its level counts.
inline Natural vertex_count_formula(Index h) {
    Natural total;
    for (Index k = 0; k <= h; ++k) {
        total += level_count(static_cast<std::int64_t>(h), static_cast<std::int64_t>(k));
    }
    return total;
}

/// f(n) = 1 + |V(F_{n-2})| for n >= 2; the base values otherwise.
inline Natural fib_closed(Index n) {
    if (n < 2) return Natural{1};
    return Natural{1} + vertex_count_formula(n - 2);
}

inline Natural fib_recurrence(Index n) {
    Natural prev{1};
    Natural cur{1};
    for (Index i = 1; i < n; ++i) {
        Natural next = prev + cur;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// O(log n) doubling on standard-indexed pairs:
///   F(2m)   = F(m) * (2F(m+1) - F(m))
///   F(2m+1) = F(m)^2 + F(m+1)^2
/// returning F(n+1).
inline Natural fib_fast_doubling(Index n) {
    const Index target = n + 1;
    Natural a{0};  // F(m)
    Natural b{1};  // F(m+1)
    int top = 0;
    while (top < 63 && (Index{1} << (top + 1)) <= target) ++top;
    for (int bit = top; bit >= 0; --bit) {
        Natural even = a * (b + b - a);
        Natural odd = a * a + b * b;
        if ((target >> bit) & 1U) {
            a = odd;
            b = even + odd;
        } else {
            a = std::move(even);
            b = std::move(odd);
        }
    }
    return a;
}

namespace detail {

inline Natural round_to_natural(double x) {
    if (!(x >= 0.0)) throw out_of_domain("negative or NaN Binet value");
    return Natural{static_cast<std::uint64_t>(std::floor(x + 0.5))};
}

inline void require_float_domain(Index n) {
    if (n > float_domain_max) {
        throw out_of_domain("n = " + std::to_string(n) + " exceeds the double-precision limit " +
                            std::to_string(float_domain_max));
    }
}

}  // namespace detail

/// Unrounded double-precision values of the two Binet forms, without the
/// domain guard. Exposed for locating where rounding stops being exact.
inline double binet_subtract_value(Index n) {
    const double s5 = std::sqrt(5.0);
    const int m = static_cast<int>(n) + 1;
    return (std::pow(1.0 + s5, m) - std::pow(1.0 - s5, m)) / std::ldexp(s5, m);
}

inline double binet_round_value(Index n) {
    const double s5 = std::sqrt(5.0);
    return (5.0 + s5) / 10.0 * std::pow((1.0 + s5) / 2.0, static_cast<double>(n));
}

/// ((1+√5)^m - (1-√5)^m) / (2^m √5) with m = n + 1, which shifts the
/// standard-indexed formula onto f(0) = 1.
inline Natural binet_subtract(Index n) {
    detail::require_float_domain(n);
    return detail::round_to_natural(binet_subtract_value(n));
}

/// round((5+√5)/10 · ((1+√5)/2)^n), half away from zero.
inline Natural binet_round(Index n) {
    detail::require_float_domain(n);
    return detail::round_to_natural(binet_round_value(n));
}

/// 1 + vertex_count(build(n-2)) for n >= 2, else 1.
inline Natural fib_tree_count(Index n, Index height_cap = default_height_cap) {
    if (n < 2) return Natural{1};
    return Natural{1} + vertex_count(build(n - 2, height_cap));
}

inline Natural fib(MethodId method, Index n, Index height_cap = default_height_cap) {
    switch (method) {
        case MethodId::closed_form: return fib_closed(n);
        case MethodId::recurrence: return fib_recurrence(n);
        case MethodId::fast_doubling: return fib_fast_doubling(n);
        case MethodId::binet_subtract: return binet_subtract(n);
        case MethodId::binet_round: return binet_round(n);
        case MethodId::tree_count: return fib_tree_count(n, height_cap);
    }
    throw std::invalid_argument("unknown method");
}

}  // namespace fibtree
