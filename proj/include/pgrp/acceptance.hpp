#pragma once

// The reproduction suite over the two fixture groups, the Heisenberg corpus,
// the partition bounds and a set of small groups checked against brute force.

#include <string>
#include <utility>
#include <vector>

#include "pgrp/analysis.hpp"

namespace pgrp {

struct CriterionResult {
    std::string id;
    bool pass = false;
    std::string detail;
};

struct AcceptanceOptions {
    std::string data_dir = "data";
    unsigned threads = 1;
    std::uint64_t seed = 0;
};

struct AcceptanceRun {
    std::vector<CriterionResult> criteria;
    std::vector<AnalysisReport> reports;  // group1, group2
    bool all_passed() const;
    const CriterionResult* first_failure() const;
};

// DomainError when a fixture file is missing.
AcceptanceRun run_acceptance(const AcceptanceOptions& opts);

nlohmann::ordered_json to_json(const AcceptanceRun& run, bool with_timings);

// Small groups (order at most 3^6) used for the brute-force comparisons.
std::vector<std::pair<std::string, PcPresentation>> small_corpus();

}  // namespace pgrp
