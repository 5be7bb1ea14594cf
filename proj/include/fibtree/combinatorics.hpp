#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fibtree {

/// Subscript type for n, h, k and friends.
using Index = std::size_t;

/// Exact arbitrary-precision nonnegative integer.
///
/// Thin value wrapper over boost::multiprecision::cpp_int that keeps the
/// magnitude nonnegative: subtraction below zero throws std::underflow_error.
class Natural {
public:
    using storage_type = boost::multiprecision::cpp_int;

    Natural() = default;
    Natural(std::uint64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)

    /// Parses a decimal string of digits.
    static Natural from_string(const std::string& digits) {
        if (digits.empty() ||
            digits.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("not a decimal natural: '" + digits + "'");
        }
        // cpp_int would read a leading 0 as an octal prefix.
        const auto first = digits.find_first_not_of('0');
        Natural out;
        if (first != std::string::npos) out.value_ = storage_type(digits.substr(first));
        return out;
    }

    static Natural pow2(unsigned exponent) {
        Natural out;
        out.value_ = storage_type(1) << exponent;
        return out;
    }

    Natural& operator+=(const Natural& rhs) {
        value_ += rhs.value_;
        return *this;
    }

    Natural& operator-=(const Natural& rhs) {
        if (value_ < rhs.value_) throw std::underflow_error("Natural subtraction below zero");
        value_ -= rhs.value_;
        return *this;
    }

    Natural& operator*=(const Natural& rhs) {
        value_ *= rhs.value_;
        return *this;
    }

    /// Truncating division; throws std::domain_error on a zero divisor.
    Natural& operator/=(const Natural& rhs) {
        if (rhs.value_ == 0) throw std::domain_error("Natural division by zero");
        value_ /= rhs.value_;
        return *this;
    }

    friend Natural operator+(Natural a, const Natural& b) { return a += b; }
    friend Natural operator-(Natural a, const Natural& b) { return a -= b; }
    friend Natural operator*(Natural a, const Natural& b) { return a *= b; }
    friend Natural operator/(Natural a, const Natural& b) { return a /= b; }

    friend bool operator==(const Natural& a, const Natural& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
        const int c = a.value_.compare(b.value_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    bool is_zero() const { return value_.is_zero(); }

    /// Exact decimal rendering, never scientific.
    std::string to_string() const { return value_.str(); }

    /// Number of decimal digits (1 for zero).
    Index digits() const { return value_.str().size(); }

    const storage_type& raw() const { return value_; }

    friend std::ostream& operator<<(std::ostream& os, const Natural& n) {
        return os << n.to_string();
    }

private:
    storage_type value_{0};
};

/// C(n, r) with the conventions C(n, r) = 0 for r < 0, n < 0 or r > n.
inline Natural binomial(std::int64_t n, std::int64_t r) {
    if (n < 0 || r < 0 || r > n) return Natural{0};
    if (r > n - r) r = n - r;
    Natural acc{1};
    for (std::int64_t m = 1; m <= r; ++m) {
        // acc is C(n - r + m - 1, m - 1) here; the next step divides exactly.
        acc *= Natural{static_cast<std::uint64_t>(n - r + m)};
        acc /= Natural{static_cast<std::uint64_t>(m)};
    }
    return acc;
}

/// [C(k,0), ..., C(k,m_max)], built with C(k,m) = C(k,m-1) * (k-m+1) / m.
/// Entries past m = k are zero.
inline std::vector<Natural> binomial_row(Index k, Index m_max) {
    std::vector<Natural> row;
    row.reserve(m_max + 1);
    row.emplace_back(1);
    for (Index m = 1; m <= m_max; ++m) {
        if (m > k) {
            row.emplace_back(0);
            continue;
        }
        Natural next = row.back();
        next *= Natural{static_cast<std::uint64_t>(k - m + 1)};
        next /= Natural{static_cast<std::uint64_t>(m)};
        row.push_back(std::move(next));
    }
    return row;
}

}  // namespace fibtree
