#pragma once

#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bench.hpp"
#include "closed_form.hpp"
#include "tree.hpp"
#include "verify.hpp"

namespace fibtree::cli {

enum class ExitCode : int { ok = 0, verification_failed = 1, usage = 2 };

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline MethodId method_from_flag(const std::string& tag) {
    if (auto m = parse_method(tag)) return *m;
    throw usage_error("unknown method '" + tag + "'");
}

inline std::set<MethodId> methods_from_flag(const std::vector<std::string>& tags) {
    std::set<MethodId> out;
    for (const auto& t : tags) out.insert(method_from_flag(t));
    if (out.empty()) throw usage_error("empty method list");
    return out;
}

namespace detail {

inline void print_compute(std::ostream& os, const std::string& format, Index n, MethodId m,
                          const Natural& value) {
    if (format == "json") {
        nlohmann::ordered_json j;
        j["n"] = n;
        j["method"] = std::string(to_string(m));
        j["value"] = value.to_string();
        os << j.dump() << '\n';
    } else if (format == "csv") {
        os << "n,method,value\n" << n << ',' << to_string(m) << ',' << value << '\n';
    } else {
        os << value << '\n';
    }
}

inline void print_profile(std::ostream& os, const std::string& format, Index h) {
    const auto hh = static_cast<std::int64_t>(h);
    if (format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (std::int64_t k = 0; k <= hh; ++k) {
            nlohmann::ordered_json row;
            row["k"] = k;
            row["count"] = level_count(hh, k).to_string();
            arr.push_back(std::move(row));
        }
        os << arr.dump() << '\n';
        return;
    }
    if (format == "csv") os << "k,count\n";
    const char sep = format == "csv" ? ',' : ' ';
    for (std::int64_t k = 0; k <= hh; ++k) os << k << sep << level_count(hh, k) << '\n';
}

inline void print_verify(std::ostream& os, const std::string& format, const VerifyReport& r) {
    if (format == "json") {
        os << to_json(r).dump(2) << '\n';
        return;
    }
    for (const auto& c : r.checks) {
        os << (c.pass ? "PASS " : "FAIL ") << c.name << " [" << c.domain << "] " << c.detail << '\n';
    }
    os << "overall: " << (r.overall ? "PASS" : "FAIL") << '\n';
}

inline void print_bench(std::ostream& os, const std::string& format, const BenchRun& run) {
    if (format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : run.records) {
            nlohmann::ordered_json j;
            j["method"] = std::string(to_string(r.method));
            j["n"] = r.n;
            j["elapsed_ns"] = r.elapsed_ns;
            j["repetitions"] = r.repetitions;
            j["digits"] = r.digits;
            arr.push_back(std::move(j));
        }
        os << arr.dump() << '\n';
        return;
    }
    write_csv(os, run.records);
}

}  // namespace detail

/// Entry point shared by the executable and the tests. Standard output is
/// buffered and only written when the exit code is not a usage error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fibonacci numbers from Fibonacci-tree level counts", "fibtree"};
    app.require_subcommand(1, 1);
    // "--h" is a height flag, so help is long-form only.
    app.set_help_flag("--help", "Print this help message and exit");

    Index height_cap = default_height_cap;
    std::string format = "plain";
    auto add_cap = [&](CLI::App* sub) {
        sub->add_option("--height-cap", height_cap, "Largest tree height to build")
            ->capture_default_str();
    };
    auto add_format = [&](CLI::App* sub, std::vector<std::string> allowed) {
        sub->add_option("--format", format, "Output format")
            ->check(CLI::IsMember(std::move(allowed)));
    };

    Index n = 0;
    std::string method = std::string(to_string(MethodId::closed_form));
    auto* compute = app.add_subcommand("compute", "Print f(n) by one method");
    compute->add_option("--n", n, "Sequence index (f(0) = f(1) = 1)")->required();
    compute->add_option("--method", method, "Evaluation method")->capture_default_str();
    add_format(compute, {"plain", "json", "csv"});
    add_cap(compute);

    Index h = 0;
    auto* profile = app.add_subcommand("profile", "Print vertex counts per level of the tree of height h");
    profile->add_option("--h", h, "Tree height")->required();
    add_format(profile, {"plain", "json", "csv"});

    auto* tree = app.add_subcommand("tree", "Print the tree of height h as Graphviz DOT");
    tree->add_option("--h", h, "Tree height")->required();
    add_cap(tree);

    Index n_max = 300;
    Index h_max = 22;
    std::vector<std::string> method_tags;
    auto* verify = app.add_subcommand("verify", "Cross-check all methods and level profiles");
    verify->add_option("--n-max", n_max, "Largest n for method agreement")->capture_default_str();
    verify->add_option("--h-max", h_max, "Largest tree height for profile checks")->capture_default_str();
    verify->add_option("--methods", method_tags, "Comma-separated methods (default: all)")
        ->delimiter(',');
    add_format(verify, {"plain", "json"});
    add_cap(verify);

    std::vector<Index> n_list;
    Index reps = 5;
    auto* bench = app.add_subcommand("bench", "Time methods and emit CSV");
    bench->add_option("--n-list", n_list, "Comma-separated indices")->required()->delimiter(',');
    bench->add_option("--methods", method_tags, "Comma-separated methods (default: all)")
        ->delimiter(',');
    bench->add_option("--reps", reps, "Timed repetitions per pair")->capture_default_str();
    add_format(bench, {"csv", "json"});
    add_cap(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return static_cast<int>(ExitCode::ok);
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return static_cast<int>(ExitCode::ok);
    } catch (const CLI::ParseError& e) {
        err << "fibtree: " << e.what() << '\n';
        return static_cast<int>(ExitCode::usage);
    }

    std::ostringstream buf;
    int code = static_cast<int>(ExitCode::ok);
    try {
        if (*compute) {
            const MethodId m = method_from_flag(method);
            detail::print_compute(buf, format, n, m, fib(m, n, height_cap));
        } else if (*profile) {
            detail::print_profile(buf, format, h);
        } else if (*tree) {
            buf << to_dot(build(h, height_cap));
        } else if (*verify) {
            if (n_max < 2) throw usage_error("--n-max must be >= 2");
            const auto methods = method_tags.empty()
                                     ? std::set<MethodId>(all_methods.begin(), all_methods.end())
                                     : methods_from_flag(method_tags);
            VerifyReport report = verify_methods(n_max, methods, height_cap);
            report.merge(verify_level_profiles(h_max, height_cap));
            detail::print_verify(buf, format, report);
            if (!report.overall) code = static_cast<int>(ExitCode::verification_failed);
        } else if (*bench) {
            if (format == "plain") format = "csv";
            const auto methods = method_tags.empty()
                                     ? std::set<MethodId>(all_methods.begin(), all_methods.end())
                                     : methods_from_flag(method_tags);
            const BenchRun run = run_bench(n_list, methods, reps, height_cap);
            detail::print_bench(buf, format, run);
            for (const auto& s : run.skipped) {
                err << "skipped " << to_string(s.method) << " n=" << s.n << ": " << s.reason << '\n';
            }
        }
    } catch (const usage_error& e) {
        err << "fibtree: " << e.what() << '\n';
        return static_cast<int>(ExitCode::usage);
    } catch (const std::invalid_argument& e) {
        err << "fibtree: " << e.what() << '\n';
        return static_cast<int>(ExitCode::usage);
    } catch (const std::out_of_range& e) {
        err << "fibtree: " << e.what() << '\n';
        return static_cast<int>(ExitCode::usage);
    } catch (const std::length_error& e) {
        err << "fibtree: " << e.what() << '\n';
        return static_cast<int>(ExitCode::usage);
    }
    out << buf.str();
    return code;
}

}  // namespace fibtree::cli
