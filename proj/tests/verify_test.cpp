#include <gtest/gtest.h>

#include <fibtree/verify.hpp>

using namespace fibtree;

namespace {

std::set<MethodId> every_method() { return {all_methods.begin(), all_methods.end()}; }

void expect_consistent(const VerifyReport& r) {
    bool all = true;
    for (const auto& c : r.checks) {
        EXPECT_EQ(c.pass, !c.first_failure.has_value()) << c.name;
        all = all && c.pass;
    }
    EXPECT_EQ(r.overall, all);
}

TEST(VerifyMethods, ExactMethodsTo300) {
    const auto r = verify_methods(
        300, {MethodId::closed_form, MethodId::recurrence, MethodId::fast_doubling});
    EXPECT_TRUE(r.overall);
    ASSERT_EQ(r.checks.size(), 2U);
    EXPECT_EQ(r.checks[0].name, "fast-doubling == closed-form");
    EXPECT_EQ(r.checks[0].domain, "n=0..300");
    EXPECT_EQ(r.checks[1].name, "recurrence == closed-form");
    expect_consistent(r);
}

TEST(VerifyMethods, FloatPair) {
    const auto r = verify_methods(69, {MethodId::binet_round, MethodId::recurrence});
    EXPECT_TRUE(r.overall);
    ASSERT_EQ(r.checks.size(), 1U);
    EXPECT_EQ(r.checks[0].name, "binet-round == recurrence");
    EXPECT_EQ(r.checks[0].domain, "n=0..69");
}

TEST(VerifyMethods, TreeCountAgainstClosedForm) {
    const auto r = verify_methods(10, {MethodId::tree_count, MethodId::closed_form});
    EXPECT_TRUE(r.overall);
    ASSERT_EQ(r.checks.size(), 1U);
    EXPECT_EQ(r.checks[0].name, "tree-count == closed-form");
}

TEST(VerifyMethods, ClippingIsRecorded) {
    const auto r = verify_methods(300, every_method());
    EXPECT_TRUE(r.overall);
    expect_consistent(r);
    ASSERT_EQ(r.checks.size(), 5U);
    for (const auto& c : r.checks) {
        if (c.name.rfind("binet", 0) == 0) {
            EXPECT_EQ(c.domain, "n=0..69");
            EXPECT_NE(c.detail.find("clipped"), std::string::npos);
        } else if (c.name.rfind("tree-count", 0) == 0) {
            EXPECT_EQ(c.domain, "n=0..32");
        } else {
            EXPECT_EQ(c.domain, "n=0..300");
            EXPECT_EQ(c.detail.find("clipped"), std::string::npos);
        }
    }
}

TEST(VerifyMethods, SingleMethod) {
    const auto r = verify_methods(10, {MethodId::recurrence});
    EXPECT_TRUE(r.overall);
    ASSERT_EQ(r.checks.size(), 1U);
}

TEST(VerifyMethods, BinetBeyondDomainIsNeverCompared) {
    // Asking for n_max past the float limit verifies the valid prefix only.
    const auto r = verify_methods(150, {MethodId::binet_subtract, MethodId::fast_doubling});
    EXPECT_TRUE(r.overall);
    EXPECT_EQ(r.checks.at(0).domain, "n=0..69");
}

TEST(VerifyLevelProfiles, Examples) {
    const auto r0 = verify_level_profiles(0);
    EXPECT_TRUE(r0.overall);
    EXPECT_EQ(r0.checks.size(), 1U);

    const auto r3 = verify_level_profiles(3);
    EXPECT_TRUE(r3.overall);
    EXPECT_EQ(r3.checks.size(), 2U);

    const auto r22 = verify_level_profiles(22);
    EXPECT_TRUE(r22.overall);
    expect_consistent(r22);
}

TEST(VerifyLevelProfiles, RespectsHeightCap) {
    EXPECT_THROW(verify_level_profiles(31), height_limit_exceeded);
    EXPECT_THROW(verify_level_profiles(10, 9), height_limit_exceeded);
}

TEST(VerifyReport, FinalizeSortsAndReportsFailures) {
    VerifyReport r;
    r.checks.push_back({"b", "n=0..3", true, std::nullopt, ""});
    r.checks.push_back({"a", "n=0..9", false, Index{4}, "mismatch"});
    r.checks.push_back({"a", "n=0..1", true, std::nullopt, ""});
    r.finalize();
    EXPECT_FALSE(r.overall);
    EXPECT_EQ(r.checks[0].domain, "n=0..1");
    EXPECT_EQ(r.checks[1].domain, "n=0..9");
    EXPECT_EQ(r.checks[2].name, "b");
    expect_consistent(r);
}

TEST(VerifyReport, JsonSchemaAndDeterminism) {
    auto build_report = [] {
        auto r = verify_methods(40, every_method());
        r.merge(verify_level_profiles(12));
        return r;
    };
    const auto a = to_json(build_report()).dump();
    const auto b = to_json(build_report()).dump();
    EXPECT_EQ(a, b);

    const auto j = nlohmann::json::parse(a);
    EXPECT_TRUE(j.at("overall").get<bool>());
    ASSERT_TRUE(j.at("checks").is_array());
    for (const auto& c : j.at("checks")) {
        EXPECT_EQ(c.size(), 5U);
        for (const char* key : {"name", "domain", "pass", "first_failure", "detail"}) {
            EXPECT_TRUE(c.contains(key)) << key;
        }
        EXPECT_TRUE(c.at("first_failure").is_null());
    }

    VerifyReport failing;
    failing.checks.push_back({"x", "n=0..9", false, Index{7}, "mismatch at n=7"});
    failing.finalize();
    const auto jf = to_json(failing);
    EXPECT_FALSE(jf.at("overall").get<bool>());
    EXPECT_EQ(jf.at("checks").at(0).at("first_failure").get<Index>(), 7U);
    EXPECT_EQ(jf.dump().find("\"overall\""), 1U);
}

}  // namespace
