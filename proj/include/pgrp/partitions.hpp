#pragma once

// Partitions of GF(p)^n into subspaces, the dual covers obtained from them by
// annihilators, and an exact search for the minimum number of parts.

#include <cstdint>
#include <string>
#include <vector>

#include "pgrp/gfp.hpp"

namespace pgrp {

struct PartitionInstance {
    std::uint32_t p = 2;
    std::size_t n = 0;
    std::vector<gfp::Subspace> parts;
};

struct DualCoverInstance {
    std::uint32_t p = 2;
    std::size_t n = 0;
    std::vector<gfp::Subspace> subgroups;
};

// Lower bound on the number of parts: k >= p^l + 1 for n = 2l, and
// k > p^l + 1 for n = 2l + 1.
struct PartitionBound {
    std::size_t threshold;  // p^l + 1
    bool strict;
    bool admits(std::size_t k) const { return strict ? k > threshold : k >= threshold; }
};
PartitionBound partition_bound(std::uint32_t p, std::size_t n);

struct PartitionCheck {
    bool valid = false;
    std::size_t k = 0;
    bool bound_ok = false;
    // n even only: k = p^l + 1, and whether every part then has order p^l.
    bool equality_case = false;
    bool equality_parts_order_pl = false;
    std::string reason;  // first violated axiom when invalid
};
PartitionCheck verify_partition(const PartitionInstance& inst);

struct DualCoverCheck {
    bool vacuous = false;  // n <= 1: no proper nontrivial subgroups exist
    bool hypotheses_ok = false;
    std::size_t k = 0;
    bool bound_ok = false;
    std::string reason;
};
DualCoverCheck verify_dual_cover(const DualCoverInstance& inst);

DualCoverInstance dual_of(const PartitionInstance& inst);
PartitionInstance dual_of(const DualCoverInstance& inst);

struct MinPartition {
    std::size_t k_min = 0;
    PartitionInstance witness;
    std::size_t nodes = 0;
};
// Exact minimum over all partitions into proper nontrivial subspaces.
// DomainError when n < 2; ResourceError when p^n > 81 or after `budget` nodes.
MinPartition min_partition_size(std::uint32_t p, std::size_t n, std::size_t budget);

}  // namespace pgrp
