#include "pgrp/partitions.hpp"

#include <algorithm>
#include <bitset>
#include <functional>
#include <limits>

#include "pgrp/error.hpp"

namespace pgrp {

namespace {

constexpr std::size_t kSearchLimit = 81;
constexpr std::size_t kEnumerationLimit = std::size_t{1} << 20;
using Bits = std::bitset<128>;

std::size_t ipow(std::uint32_t p, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r *= p;
    return r;
}

// Base-p code with the first coordinate most significant, so numeric order is
// lexicographic order.
std::size_t encode(const gfp::Vector& v, std::uint32_t p) {
    std::size_t c = 0;
    for (auto x : v) c = c * p + x;
    return c;
}

bool structurally_proper(const gfp::Subspace& S, std::uint32_t p, std::size_t n, std::string& why,
                         std::size_t index) {
    if (S.prime() != p || S.ambient_dim() != n) {
        why = "part " + std::to_string(index) + " lives in the wrong space";
        return false;
    }
    if (S.dim() == 0 || S.dim() == n) {
        why = "part " + std::to_string(index) + (S.dim() == 0 ? " is trivial" : " is the whole space");
        return false;
    }
    return true;
}

}  // namespace

PartitionBound partition_bound(std::uint32_t p, std::size_t n) {
    return {ipow(p, n / 2) + 1, n % 2 == 1};
}

PartitionCheck verify_partition(const PartitionInstance& inst) {
    PartitionCheck out;
    const auto p = inst.p;
    const auto n = inst.n;
    out.k = inst.parts.size();
    for (std::size_t i = 0; i < inst.parts.size(); ++i)
        if (!structurally_proper(inst.parts[i], p, n, out.reason, i)) return out;
    if (inst.parts.empty()) {
        out.reason = "no parts";
        return out;
    }

    const std::size_t total = gfp::checked_power(p, n, std::numeric_limits<std::size_t>::max() / p);
    if (total <= kEnumerationLimit) {
        std::vector<std::uint32_t> hits(total, 0);
        for (const auto& S : inst.parts)
            for (const auto& v : S.vectors(kEnumerationLimit)) ++hits[encode(v, p)];
        for (std::size_t c = 1; c < total; ++c) {
            if (hits[c] == 0) {
                out.reason = "vector with code " + std::to_string(c) + " is not covered";
                return out;
            }
            if (hits[c] > 1) {
                out.reason = "vector with code " + std::to_string(c) + " lies in " + std::to_string(hits[c]) +
                             " parts";
                return out;
            }
        }
    } else {
        // Pairwise trivial intersections plus a full count of nonzero vectors.
        std::size_t covered = 0;
        for (std::size_t i = 0; i < inst.parts.size(); ++i) {
            covered += ipow(p, inst.parts[i].dim()) - 1;
            for (std::size_t j = i + 1; j < inst.parts.size(); ++j)
                if (!inst.parts[i].intersect(inst.parts[j]).is_zero()) {
                    out.reason = "parts " + std::to_string(i) + " and " + std::to_string(j) + " intersect";
                    return out;
                }
        }
        if (covered != total - 1) {
            out.reason = "parts do not cover the space";
            return out;
        }
    }
    out.valid = true;

    const auto bound = partition_bound(p, n);
    out.bound_ok = bound.admits(out.k);
    if (n % 2 == 0) {
        const std::size_t l = n / 2;
        out.equality_case = out.k == bound.threshold;
        out.equality_parts_order_pl =
            std::all_of(inst.parts.begin(), inst.parts.end(), [&](const auto& S) { return S.dim() == l; });
        if (out.equality_case != out.equality_parts_order_pl) out.bound_ok = false;
    }
    return out;
}

DualCoverCheck verify_dual_cover(const DualCoverInstance& inst) {
    DualCoverCheck out;
    const auto p = inst.p;
    const auto n = inst.n;
    out.k = inst.subgroups.size();
    if (n <= 1) {
        out.vacuous = true;
        out.reason = "GF(p)^" + std::to_string(n) + " has no proper nontrivial subgroups";
        return out;
    }
    for (std::size_t i = 0; i < inst.subgroups.size(); ++i)
        if (!structurally_proper(inst.subgroups[i], p, n, out.reason, i)) return out;
    if (inst.subgroups.empty()) {
        out.reason = "no subgroups";
        return out;
    }
    for (std::size_t i = 0; i < inst.subgroups.size(); ++i)
        for (std::size_t j = i + 1; j < inst.subgroups.size(); ++j)
            if (inst.subgroups[i].sum(inst.subgroups[j]).dim() != n) {
                out.reason = "subgroups " + std::to_string(i) + " and " + std::to_string(j) +
                             " do not generate the space";
                return out;
            }
    for (const auto& N : gfp::hyperplanes(p, n, kEnumerationLimit)) {
        const bool hit = std::any_of(inst.subgroups.begin(), inst.subgroups.end(),
                                     [&](const auto& M) { return N.contains(M); });
        if (!hit) {
            out.reason = "hyperplane " + N.to_string() + " contains none of the subgroups";
            return out;
        }
    }
    out.hypotheses_ok = true;
    out.bound_ok = partition_bound(p, n).admits(out.k);
    return out;
}

DualCoverInstance dual_of(const PartitionInstance& inst) {
    DualCoverInstance out{inst.p, inst.n, {}};
    for (const auto& S : inst.parts) out.subgroups.push_back(S.annihilator());
    return out;
}

PartitionInstance dual_of(const DualCoverInstance& inst) {
    PartitionInstance out{inst.p, inst.n, {}};
    for (const auto& S : inst.subgroups) out.parts.push_back(S.annihilator());
    return out;
}

MinPartition min_partition_size(std::uint32_t p, std::size_t n, std::size_t budget) {
    gfp::require_prime(p);
    if (n < 2) throw DomainError("GF(p)^n admits a partition into proper subspaces only for n >= 2");
    const std::size_t total = gfp::checked_power(p, n, kSearchLimit);

    std::vector<gfp::Subspace> seen;
    for (auto& S : gfp::all_subspaces(p, n, 1u << 16))
        if (S.dim() > 0 && S.dim() < n) seen.push_back(std::move(S));
    struct Candidate {
        gfp::Subspace space;
        Bits bits;
    };
    std::vector<Candidate> cands;
    for (const auto& S : seen) {
        Bits b;
        for (const auto& v : S.vectors(kSearchLimit)) b.set(encode(v, p));
        b.reset(0);
        cands.push_back({S, b});
    }
    // Larger parts first so good partitions are found early.
    std::stable_sort(cands.begin(), cands.end(),
                     [](const auto& a, const auto& b) { return a.space.dim() > b.space.dim(); });
    std::vector<std::vector<std::size_t>> through(total);
    for (std::size_t c = 0; c < cands.size(); ++c)
        for (std::size_t v = 1; v < total; ++v)
            if (cands[c].bits.test(v)) through[v].push_back(c);

    Bits all;
    for (std::size_t v = 1; v < total; ++v) all.set(v);
    const std::size_t half = n / 2;

    MinPartition out;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> chosen, best_choice;

    // Parts still to be added meet every chosen part trivially, so their
    // dimension is at most n - (largest chosen dimension); at most one of
    // them can exceed n/2.
    auto lower_bound = [&](std::size_t uncovered, std::size_t max_chosen_dim) -> std::size_t {
        if (uncovered == 0) return 0;
        const std::size_t dmax = std::min(n - 1, n - max_chosen_dim);
        const std::size_t big = ipow(p, dmax) - 1;
        const std::size_t small = ipow(p, std::min(dmax, half)) - 1;
        if (dmax > half) return uncovered <= big ? 1 : 1 + (uncovered - big + small - 1) / small;
        return (uncovered + small - 1) / small;
    };

    std::function<void(const Bits&, std::size_t)> search = [&](const Bits& covered, std::size_t max_dim) {
        if (++out.nodes > budget)
            throw ResourceError("partition search exceeded the budget of " + std::to_string(budget) + " nodes");
        if (covered == all) {
            if (chosen.size() < best) {
                best = chosen.size();
                best_choice = chosen;
            }
            return;
        }
        const std::size_t uncovered = (all & ~covered).count();
        if (chosen.size() + lower_bound(uncovered, max_dim) >= best) return;
        std::size_t v = 1;
        while (covered.test(v)) ++v;
        for (const auto c : through[v]) {
            if ((cands[c].bits & covered).any()) continue;
            chosen.push_back(c);
            search(covered | cands[c].bits, std::max(max_dim, cands[c].space.dim()));
            chosen.pop_back();
        }
    };
    search(Bits{}, 0);

    out.k_min = best;
    out.witness = {p, n, {}};
    for (const auto c : best_choice) out.witness.parts.push_back(cands[c].space);
    std::sort(out.witness.parts.begin(), out.witness.parts.end());
    return out;
}

}  // namespace pgrp
