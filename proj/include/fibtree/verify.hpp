#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "closed_form.hpp"
#include "tree.hpp"

namespace fibtree {

struct Check {
    std::string name;
    std::string domain;
    bool pass = true;
    std::optional<Index> first_failure;  // smallest failing index, iff !pass
    std::string detail;
};

struct VerifyReport {
    std::vector<Check> checks;
    bool overall = true;

    /// Sorts checks by (name, domain) and recomputes `overall`.
    void finalize() {
        std::sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) {
            return std::tie(a.name, a.domain) < std::tie(b.name, b.domain);
        });
        overall = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }

    void merge(const VerifyReport& other) {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
        finalize();
    }
};

inline nlohmann::ordered_json to_json(const VerifyReport& r) {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json j;
        j["name"] = c.name;
        j["domain"] = c.domain;
        j["pass"] = c.pass;
        j["first_failure"] = c.first_failure ? nlohmann::ordered_json(*c.first_failure) : nullptr;
        j["detail"] = c.detail;
        checks.push_back(std::move(j));
    }
    nlohmann::ordered_json out;
    out["overall"] = r.overall;
    out["checks"] = std::move(checks);
    return out;
}

namespace detail {

inline std::string range_text(const char* var, Index lo, Index hi) {
    return std::string(var) + "=" + std::to_string(lo) + ".." + std::to_string(hi);
}

}  // namespace detail

/// Exact cross-method comparison of fib(method, n) for n in 0..n_max.
///
/// The pivot is the lexicographically first method among those with the
/// widest domain; every other method is compared against it over its own
/// domain clipped to n_max. Clipping is noted in the check detail.
inline VerifyReport verify_methods(Index n_max, const std::set<MethodId>& methods,
                                   Index height_cap = default_height_cap) {
    VerifyReport report;
    if (methods.empty()) {
        report.finalize();
        return report;
    }

    auto reach = [&](MethodId m) { return std::min(n_max, method_limit(m, height_cap).value_or(n_max)); };
    auto wider = [&](MethodId a, MethodId b) {
        const auto la = method_limit(a, height_cap);
        const auto lb = method_limit(b, height_cap);
        if (!la) return lb.has_value();
        return lb && *la > *lb;
    };
    // std::set<MethodId> iterates in tag order, so the first widest wins ties.
    MethodId pivot = *methods.begin();
    for (MethodId m : methods) {
        if (wider(m, pivot)) pivot = m;
    }

    if (methods.size() == 1) {
        Check c{std::string(to_string(pivot)), detail::range_text("n", 0, reach(pivot)), true,
                std::nullopt, "single method, nothing to compare"};
        report.checks.push_back(std::move(c));
        report.finalize();
        return report;
    }

    for (MethodId m : methods) {
        if (m == pivot) continue;
        const Index hi = reach(m);
        Check c;
        c.name = std::string(to_string(m)) + " == " + std::string(to_string(pivot));
        c.domain = detail::range_text("n", 0, hi);
        for (Index n = 0; n <= hi; ++n) {
            if (fib(m, n, height_cap) != fib(pivot, n, height_cap)) {
                c.pass = false;
                c.first_failure = n;
                break;
            }
        }
        c.detail = c.pass ? "exact equality" : "mismatch at n=" + std::to_string(*c.first_failure);
        if (hi < n_max) {
            c.detail += "; clipped from n_max=" + std::to_string(n_max) + " to method domain";
        }
        report.checks.push_back(std::move(c));
    }
    report.finalize();
    return report;
}

/// Traversal counts of build(h) against level_count(h, k) for every level,
/// plus the recurrence N(h,k) = N(h-1,k-1) + N(h-2,k-1) on the formula side
/// (with N(h,h) = N(h-1,h-1) at the deepest level).
inline VerifyReport verify_level_profiles(Index h_max, Index height_cap = default_height_cap) {
    if (h_max > height_cap) throw height_limit_exceeded(h_max, height_cap);
    using I = std::int64_t;
    VerifyReport report;

    Check profile{"level-profile", detail::range_text("h", 0, h_max), true, std::nullopt, ""};
    for (Index h = 0; h <= h_max && profile.pass; ++h) {
        const auto measured = level_profile(build(h, height_cap));
        if (measured.counts.size() != h + 1) {
            profile.pass = false;
        } else {
            for (Index k = 0; k <= h; ++k) {
                if (measured.counts[k] != level_count(I(h), I(k))) {
                    profile.pass = false;
                    break;
                }
            }
        }
        if (!profile.pass) profile.first_failure = h;
    }
    profile.detail = profile.pass ? "traversal matches closed form at every level"
                                  : "traversal/closed-form mismatch at h=" +
                                        std::to_string(*profile.first_failure);
    report.checks.push_back(std::move(profile));

    if (h_max >= 2) {
        Check rec{"level-recurrence", detail::range_text("h", 2, h_max), true, std::nullopt, ""};
        for (Index h = 2; h <= h_max && rec.pass; ++h) {
            for (Index k = 1; k <= h; ++k) {
                Natural rhs = level_count(I(h) - 1, I(k) - 1);
                if (k < h) rhs += level_count(I(h) - 2, I(k) - 1);
                if (level_count(I(h), I(k)) != rhs) {
                    rec.pass = false;
                    rec.first_failure = h;
                    break;
                }
            }
        }
        rec.detail = rec.pass ? "N(h,k) = N(h-1,k-1) + N(h-2,k-1)"
                              : "recurrence fails at h=" + std::to_string(*rec.first_failure);
        report.checks.push_back(std::move(rec));
    }

    report.finalize();
    return report;
}

}  // namespace fibtree
