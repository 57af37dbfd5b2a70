#include <doctest.h>

#include <bit>
#include <deque>
#include <set>
#include <unordered_map>

#include "pgrp/error.hpp"
#include "pgrp/partitions.hpp"

using namespace pgrp;

namespace {

// Brute-force reference: vectors of GF(p)^n are integers in base p, subspaces
// are bitmasks over the nonzero vectors, and the minimum is a breadth-first
// search over covered sets.
struct Space {
    std::uint32_t p;
    std::size_t n;
    std::size_t size;

    std::size_t add(std::size_t a, std::size_t b) const {
        std::size_t r = 0, scale = 1;
        for (std::size_t i = 0; i < n; ++i) {
            r += ((a % p + b % p) % p) * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        return r;
    }

    // Nonzero vectors of the closure, as a mask with bit v-1 for vector v.
    std::uint32_t close(std::vector<std::size_t> gens) const {
        std::set<std::size_t> s{0};
        bool grew = true;
        for (auto g : gens) s.insert(g);
        while (grew) {
            grew = false;
            std::vector<std::size_t> cur(s.begin(), s.end());
            for (auto a : cur)
                for (auto b : cur)
                    if (s.insert(add(a, b)).second) grew = true;
        }
        std::uint32_t mask = 0;
        for (auto v : s)
            if (v != 0) mask |= 1u << (v - 1);
        return mask;
    }

    std::vector<std::uint32_t> proper_subspaces() const {
        std::set<std::uint32_t> found;
        std::deque<std::uint32_t> queue{0};
        found.insert(0);
        const std::uint32_t full = size == 32 ? ~0u : (1u << (size - 1)) - 1;
        while (!queue.empty()) {
            const std::uint32_t m = queue.front();
            queue.pop_front();
            for (std::size_t v = 1; v < size; ++v) {
                if (m >> (v - 1) & 1) continue;
                std::vector<std::size_t> gens{v};
                for (std::size_t u = 1; u < size; ++u)
                    if (m >> (u - 1) & 1) gens.push_back(u);
                const std::uint32_t c = close(gens);
                if (c != full && found.insert(c).second) queue.push_back(c);
            }
        }
        found.erase(0);
        return {found.begin(), found.end()};
    }

    std::size_t min_parts() const {
        const auto subs = proper_subspaces();
        const std::uint32_t full = (1u << (size - 1)) - 1;
        std::unordered_map<std::uint32_t, std::size_t> dist{{0, 0}};
        std::deque<std::uint32_t> queue{0};
        while (!queue.empty()) {
            const std::uint32_t m = queue.front();
            queue.pop_front();
            if (m == full) return dist[m];
            const std::uint32_t low = ~m & (0u - ~m) & full;  // lowest uncovered vector
            for (auto s : subs) {
                if (!(s & low) || (s & m)) continue;
                if (dist.emplace(m | s, dist[m] + 1).second) queue.push_back(m | s);
            }
        }
        return 0;
    }
};

gfp::Subspace sub(std::uint32_t p, std::size_t n, std::vector<gfp::Vector> rows) {
    return gfp::Subspace::span(p, n, rows);
}

}  // namespace

TEST_CASE("bound thresholds") {
    auto b = partition_bound(3, 4);
    CHECK(b.threshold == 10);
    CHECK_FALSE(b.strict);
    CHECK(b.admits(10));
    CHECK_FALSE(b.admits(9));
    b = partition_bound(2, 3);
    CHECK(b.threshold == 3);
    CHECK(b.strict);
    CHECK_FALSE(b.admits(3));
    CHECK(b.admits(4));
}

TEST_CASE("exact minimum agrees with brute force") {
    for (auto [p, n, expected] : std::vector<std::tuple<std::uint32_t, std::size_t, std::size_t>>{
             {2, 2, 3}, {3, 2, 4}, {2, 3, 5}, {2, 4, 5}, {5, 2, 6}}) {
        CAPTURE(p);
        CAPTURE(n);
        std::size_t size = 1;
        for (std::size_t i = 0; i < n; ++i) size *= p;
        const Space space{p, n, size};
        const std::size_t brute = space.min_parts();
        CHECK(brute == expected);

        const MinPartition m = min_partition_size(p, n, 10'000'000);
        CHECK(m.k_min == brute);
        const PartitionCheck pc = verify_partition(m.witness);
        CHECK(pc.valid);
        CHECK(pc.k == m.k_min);
        CHECK(pc.bound_ok);
        if (n % 2 == 0) {
            CHECK(pc.equality_case);
            CHECK(pc.equality_parts_order_pl);
        }
        const DualCoverCheck dc = verify_dual_cover(dual_of(m.witness));
        CHECK(dc.hypotheses_ok);
        CHECK(dc.k == m.k_min);
        CHECK(dc.bound_ok);
        CHECK(dual_of(dual_of(m.witness)).parts == m.witness.parts);
    }
}

TEST_CASE("odd dimension over GF(3)") {
    const MinPartition m = min_partition_size(3, 3, 10'000'000);
    CHECK(m.k_min == 10);
    CHECK(verify_partition(m.witness).bound_ok);
    CHECK(partition_bound(3, 3).admits(m.k_min));
}

TEST_CASE("search limits") {
    CHECK_THROWS_AS(min_partition_size(3, 1, 1000), DomainError);
    CHECK_THROWS_AS(min_partition_size(3, 5, 1000), ResourceError);
    CHECK_THROWS_AS(min_partition_size(2, 4, 3), ResourceError);
}

TEST_CASE("invalid partitions are rejected") {
    const std::uint32_t p = 2;
    const std::size_t n = 2;
    // Overlapping parts.
    PartitionInstance overlap{p, n, {sub(p, n, {{1, 0}}), sub(p, n, {{1, 0}}), sub(p, n, {{0, 1}}), sub(p, n, {{1, 1}})}};
    CHECK_FALSE(verify_partition(overlap).valid);
    // Missing a vector.
    PartitionInstance gap{p, n, {sub(p, n, {{1, 0}}), sub(p, n, {{0, 1}})}};
    CHECK_FALSE(verify_partition(gap).valid);
    // A part equal to the whole space.
    PartitionInstance whole{p, n, {gfp::Subspace::full(p, n)}};
    CHECK_FALSE(verify_partition(whole).valid);
    // Trivial part.
    PartitionInstance trivial{p, n, {sub(p, n, {{1, 0}}), sub(p, n, {{0, 1}}), sub(p, n, {{1, 1}}), gfp::Subspace(p, n)}};
    CHECK_FALSE(verify_partition(trivial).valid);

    PartitionInstance good{p, n, {sub(p, n, {{1, 0}}), sub(p, n, {{0, 1}}), sub(p, n, {{1, 1}})}};
    CHECK(verify_partition(good).valid);
    CHECK(verify_partition(good).reason.empty());
    CHECK_FALSE(verify_partition(gap).reason.empty());
}

TEST_CASE("dual cover hypotheses") {
    const std::uint32_t p = 3;
    const std::size_t n = 2;
    // Two lines in GF(3)^2: sums are full, but not every hyperplane contains one.
    DualCoverInstance thin{p, n, {sub(p, n, {{1, 0}}), sub(p, n, {{0, 1}})}};
    CHECK_FALSE(verify_dual_cover(thin).hypotheses_ok);
    // All four lines form a dual cover.
    DualCoverInstance all{p, n, {sub(p, n, {{1, 0}}), sub(p, n, {{0, 1}}), sub(p, n, {{1, 1}}), sub(p, n, {{1, 2}})}};
    const auto dc = verify_dual_cover(all);
    CHECK(dc.hypotheses_ok);
    CHECK(dc.k == 4);
    CHECK(dc.bound_ok);
    // A repeated subgroup makes a pairwise sum proper.
    DualCoverInstance repeated{p, n, {sub(p, n, {{1, 0}}), sub(p, n, {{1, 0}}), sub(p, n, {{0, 1}}), sub(p, n, {{1, 1}}), sub(p, n, {{1, 2}})}};
    CHECK_FALSE(verify_dual_cover(repeated).hypotheses_ok);
    CHECK(verify_dual_cover(DualCoverInstance{p, 1, {}}).vacuous);
}
