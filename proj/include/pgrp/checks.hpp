#pragma once

// Instance-level verification of the structural statements known for Camina
// p-groups of class 2 and 3. Each statement becomes one named check; a check
// whose hypotheses the instance does not meet reports not_applicable.

#include <cstdint>
#include <string>
#include <vector>

#include "pgrp/camina.hpp"

namespace pgrp {

enum class CheckStatus { pass, fail, not_applicable };
std::string to_string(CheckStatus s);

struct CheckVerdict {
    std::string name;
    CheckStatus status = CheckStatus::not_applicable;
    std::string detail;
};

// Everything the class-3 checks share, computed once.
struct ClassThreeData {
    Stratification S;
    CommutatorForms F;
    Families families;
    Subgroup center;
    Subgroup second_center;
    Subgroup cgg;  // C_G(G') by the element-level centralizer
};

// ClassError / ShapeError when G is not of class 3 with the Camina shape.
ClassThreeData prepare_class_three(const PcGroup& G, unsigned threads);

struct TheoremOptions {
    unsigned threads = 1;
    std::uint64_t seed = 0;
    std::size_t samples = 100;        // sampled elements per sampled statement
    std::size_t member_samples = 64;  // family members for element-level passes
};

const std::vector<std::string>& class_three_check_names();
std::vector<CheckVerdict> verify_theorems(const ClassThreeData& D, const TheoremOptions& opts);

// class_two_check_names() order; G must be a Camina group of class 2.
const std::vector<std::string>& class_two_check_names();
std::vector<CheckVerdict> verify_class_two(const PcGroup& G, const TheoremOptions& opts);

std::vector<CheckVerdict> not_applicable_checks(const std::vector<std::string>& names, const std::string& reason);

// Every element has order dividing p. Uses generator powers when p is odd and
// the class is at most 2, full enumeration otherwise.
bool has_exponent_p(const PcGroup& G);

}  // namespace pgrp
