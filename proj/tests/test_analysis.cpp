#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "pgrp/acceptance.hpp"
#include "pgrp/analysis.hpp"
#include "pgrp/error.hpp"
#include "pgrp/generators.hpp"
#include "support.hpp"

using namespace pgrp;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const CheckVerdict* find(const AnalysisReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("generator preconditions") {
    CHECK_THROWS_AS(heisenberg(2, 1), UnsupportedError);
    CHECK_THROWS_AS(heisenberg(4, 1), DomainError);
    CHECK_THROWS_AS(heisenberg(3, 0), DomainError);
    CHECK_THROWS_AS(heisenberg(3, 5), DomainError);
    CHECK_THROWS_AS(extraspecial_p3(9), DomainError);
    const PcPresentation h = heisenberg(3, 2);
    CHECK(h.ngens() == 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(h.power(i).empty());
    // The z-block is central.
    for (std::size_t j = 4; j < 6; ++j)
        for (std::size_t i = 0; i < j; ++i) CHECK(h.conjugate(j, i).empty());
    CHECK(heisenberg(5, 3) == heisenberg(5, 3));
}

TEST_CASE("class-two analysis of the generated groups") {
    for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::size_t>>{{3, 1}, {3, 2}, {5, 1}, {3, 3}}) {
        CAPTURE(p);
        CAPTURE(n);
        const auto r = analyze_text(serialize(heisenberg(p, n)), "mem", {});
        CHECK(r.consistent);
        CHECK(r.nilpotency_class == 2);
        CHECK(r.camina.camina);
        CHECK(r.special_class == "ultraspecial");
        REQUIRE(r.families.has_value());
        std::size_t q = 1;
        for (std::size_t i = 0; i < n; ++i) q *= p;
        CHECK(r.families->a_star == q + 1);
        CHECK(r.families->a == q + 1);
        CHECK_FALSE(r.any_failed());
        CHECK(r.count(CheckStatus::pass) == class_two_check_names().size());
    }
}

TEST_CASE("class-three analysis of the fixture groups") {
    const auto r = analyze_file(testing::data_path("group1.pc"), {.threads = 2});
    CHECK(r.consistent);
    CHECK(r.order_exponent == 13);
    CHECK(r.nilpotency_class == 3);
    CHECK(r.lcs_order_exponents == std::vector<std::size_t>{13, 5, 1, 0});
    CHECK(r.camina.camina);
    CHECK(r.camina.complete);
    CHECK(r.camina.linear_route == std::optional<bool>(true));
    CHECK(r.quotient_special_class == std::optional<std::string>("ultraspecial"));
    REQUIRE(r.families.has_value());
    CHECK(r.families->a == 3241);
    CHECK(r.families->a_star == 1);
    CHECK(r.families->c == std::optional<std::size_t>(1));
    CHECK(r.families->cgg_index_exponent == std::optional<std::size_t>(4));
    CHECK_FALSE(r.any_failed());
    // Every class-3 check appears exactly once, in the published order.
    const auto names = class_three_check_names();
    REQUIRE(r.checks.size() == names.size());
    for (std::size_t i = 0; i < names.size(); ++i) CHECK(r.checks[i].name == names[i]);
    // Vacuous hypotheses are reported, not passed.
    const auto* big = find(r, "large_g3_forces_equal_families");
    REQUIRE(big != nullptr);
    CHECK(big->status == CheckStatus::not_applicable);
    CHECK(find(r, "abelian_members_extraspecial")->status == CheckStatus::not_applicable);
    CHECK(find(r, "commutators_with_A_fill_g3")->status == CheckStatus::pass);
    CHECK(r.count(CheckStatus::pass) == 28);
}

TEST_CASE("fast mode agrees with the full run") {
    const auto text = read_file(testing::data_path("group1.pc"));
    const auto all = analyze_text(text, "g1", {.checks = CheckMode::all});
    const auto fast = analyze_text(text, "g1", {.checks = CheckMode::fast});
    CHECK(fast.camina.camina == all.camina.camina);
    CHECK(fast.camina.method == "linear");
    CHECK(fast.families->a == all.families->a);
    CHECK_FALSE(fast.any_failed());
}

TEST_CASE("reports do not depend on the thread count") {
    const auto text = read_file(testing::data_path("group1.pc"));
    const auto one = to_json(analyze_text(text, "g1", {.threads = 1}), false).dump();
    const auto four = to_json(analyze_text(text, "g1", {.threads = 4}), false).dump();
    CHECK(one == four);
    const auto h = serialize(heisenberg(3, 2));
    CHECK(to_json(analyze_text(h, "h", {.threads = 1}), false).dump() ==
          to_json(analyze_text(h, "h", {.threads = 7}), false).dump());
}

TEST_CASE("the seed changes samples but not verdicts") {
    const auto text = read_file(testing::data_path("group1.pc"));
    const auto a = analyze_text(text, "g1", {.checks = CheckMode::fast, .seed = 1});
    const auto b = analyze_text(text, "g1", {.checks = CheckMode::fast, .seed = 2});
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) CHECK(a.checks[i].status == b.checks[i].status);
    const auto a2 = analyze_text(text, "g1", {.checks = CheckMode::fast, .seed = 1});
    CHECK(to_json(a, false).dump() == to_json(a2, false).dump());
}

TEST_CASE("JSON layout") {
    const auto r = analyze_text(serialize(heisenberg(3, 1)), "h31.pc", {});
    const auto j = to_json(r, true);
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["input"]["path"] == "h31.pc");
    CHECK(j["input"]["fnv1a64"].get<std::string>().size() == 16);
    CHECK(j["consistency"]["consistent"] == true);
    CHECK(j["lower_central_series"] == nlohmann::json::array({3, 1, 0}));
    CHECK(j["families"]["A_star"] == 4);
    CHECK(j["summary"]["fail"] == 0);
    CHECK(j.contains("timings_ms"));
    CHECK_FALSE(to_json(r, false).contains("timings_ms"));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"schema_version", "input", "p", "ngens", "order_exponent", "consistency",
                                           "nilpotency_class", "lower_central_series", "strata", "camina",
                                           "special_class", "families", "checks", "summary", "timings_ms"});
    CHECK(fnv1a64_hex("") == "cbf29ce484222325");
    CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("inconsistent input stops after the consistency test") {
    const auto text = read_file(testing::data_path("group1.pc")) + "pow 1 : 2\n";
    const auto r = analyze_text(text, "bad", {});
    CHECK_FALSE(r.consistent);
    REQUIRE(r.consistency_failure.has_value());
    CHECK(r.checks.empty());
    const auto j = to_json(r, false);
    CHECK(j["consistency"]["consistent"] == false);
    CHECK_FALSE(j.contains("camina"));
}

TEST_CASE("non-camina class-three input") {
    const auto corpus = small_corpus();
    for (const auto& [name, pres] : corpus) {
        if (name != "maxclass(81)") continue;
        const auto r = analyze_text(serialize(pres), name, {});
        CHECK(r.nilpotency_class == 3);
        CHECK_FALSE(r.camina.camina);
        CHECK_FALSE(r.any_failed());
        for (const auto& c : r.checks) CHECK(c.status == CheckStatus::not_applicable);
    }
}

TEST_CASE("acceptance rejects a missing fixture directory") {
    CHECK_THROWS_AS(run_acceptance({.data_dir = "/nonexistent/fixtures"}), DomainError);
    CHECK_THROWS_AS(analyze_file("/nonexistent/x.pc", {}), DomainError);
}
