#pragma once

// Element-level reference implementations for small groups. Everything here
// enumerates the group outright and is meant for cross-checking the linear
// algorithms on groups of a few hundred elements.

#include <optional>
#include <unordered_set>
#include <vector>

#include "pgrp/subgroup.hpp"

namespace pgrp::oracle {

using ElementSet = std::unordered_set<Element, ElementHash>;

inline constexpr std::size_t kDefaultLimit = std::size_t{1} << 16;

std::vector<Element> all_elements(const PcGroup& G, std::size_t limit = kDefaultLimit);

// Closure of a generating set under multiplication.
ElementSet closure(const PcGroup& G, const std::vector<Element>& gens, std::size_t limit = kDefaultLimit);

Subgroup to_subgroup(const PcGroup& G, const ElementSet& set);

ElementSet center(const PcGroup& G, std::size_t limit = kDefaultLimit);
ElementSet center(const PcGroup& G, const ElementSet& H);
ElementSet centralizer(const PcGroup& G, const ElementSet& H, const Element& a);

// [X, Y] as a set: the closure of all commutators [x, y].
ElementSet commutator(const PcGroup& G, const ElementSet& X, const ElementSet& Y, std::size_t limit = kDefaultLimit);

// Orders of the lower central series terms G_1, G_2, ..., down to 1.
std::vector<std::size_t> lower_central_orders(const PcGroup& G, std::size_t limit = kDefaultLimit);

// Definition of a Camina group; nullopt when G is abelian or perfect.
std::optional<bool> is_camina(const PcGroup& G, std::size_t limit = kDefaultLimit);

// Every a in H outside Z(H) has its H-class equal to aH'.
bool is_vz(const PcGroup& G, const ElementSet& H);

struct CentralizerFamily {
    std::vector<Subgroup> members;  // distinct C_G(a), a outside G', sorted
    std::size_t abelian = 0;        // members that are abelian
};
// C_G(a) for all a outside G'; meant for class 2, where it coincides with
// {x : [a, x] in G_3}.
CentralizerFamily centralizer_family(const PcGroup& G, std::size_t limit = kDefaultLimit);

}  // namespace pgrp::oracle
