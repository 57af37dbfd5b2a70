#pragma once

// The end-to-end analysis of one presentation file and its report formats.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgrp/checks.hpp"

namespace pgrp {

inline constexpr int kSchemaVersion = 1;

struct AnalysisOptions {
    CheckMode checks = CheckMode::all;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::size_t budget = 1u << 14;
};

struct PhaseTiming {
    std::string phase;
    double ms;
};

struct FamilySummary {
    std::size_t projective_points = 0;
    std::size_t a = 0;
    std::size_t a_star = 0;
    std::optional<std::size_t> c;          // class 3 only
    std::optional<bool> cgg_equals_derived;  // class 3 only
    std::optional<std::size_t> cgg_index_exponent;  // log_p |C_G(G'):G'|
};

struct CaminaSummary {
    bool camina = false;
    std::optional<std::string> degenerate;
    bool complete = true;
    std::string method;
    std::size_t cosets = 0;
    std::optional<std::string> witness;
    std::optional<bool> linear_route;  // the linear criterion, when it applies
};

struct AnalysisReport {
    std::string path;
    std::string content_hash;  // FNV-1a 64, hex
    std::uint32_t p = 0;
    std::size_t ngens = 0;
    std::size_t order_exponent = 0;

    bool consistent = false;
    std::optional<std::string> consistency_failure;

    std::size_t nilpotency_class = 0;
    std::vector<std::size_t> lcs_order_exponents;
    std::optional<std::array<std::size_t, 3>> strata;
    CaminaSummary camina;
    std::string special_class;
    std::optional<std::string> quotient_special_class;  // G/G_3, class 3 only
    std::optional<FamilySummary> families;
    std::vector<CheckVerdict> checks;
    std::vector<PhaseTiming> timings;

    std::size_t count(CheckStatus s) const;
    bool any_failed() const { return count(CheckStatus::fail) > 0; }
};

std::string fnv1a64_hex(std::string_view data);

// ParseError / InvariantError from the parser propagate; an inconsistent
// presentation yields a report with consistent = false and nothing else.
AnalysisReport analyze_text(const std::string& text, const std::string& path, const AnalysisOptions& opts);
AnalysisReport analyze_file(const std::string& path, const AnalysisOptions& opts);

nlohmann::ordered_json to_json(const AnalysisReport& r, bool with_timings);
std::string to_text(const AnalysisReport& r);

}  // namespace pgrp
