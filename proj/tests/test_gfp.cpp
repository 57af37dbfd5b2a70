#include <doctest.h>

#include <random>
#include <set>

#include "pgrp/error.hpp"
#include "pgrp/gfp.hpp"

using namespace pgrp;
using namespace pgrp::gfp;

namespace {

// Number of d-dimensional subspaces of GF(p)^n from the q-binomial formula.
std::size_t gaussian_binomial(std::size_t p, std::size_t n, std::size_t d) {
    std::size_t num = 1, den = 1;
    auto pw = [&](std::size_t k) {
        std::size_t r = 1;
        for (std::size_t i = 0; i < k; ++i) r *= p;
        return r;
    };
    for (std::size_t i = 0; i < d; ++i) {
        num *= pw(n - i) - 1;
        den *= pw(i + 1) - 1;
    }
    return num / den;
}

Vector random_vector(std::uint32_t p, std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<unsigned> d(0, p - 1);
    Vector v(n);
    for (auto& x : v) x = static_cast<Residue>(d(rng));
    return v;
}

}  // namespace

TEST_CASE("prime field basics") {
    CHECK(is_prime(2));
    CHECK(is_prime(32749));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
    CHECK_THROWS_AS(require_prime(4), DomainError);
    CHECK_THROWS_AS(require_prime(65537), DomainError);
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 101u})
        for (Residue a = 1; a < p; ++a) CHECK(mul(a, inv(a, p), p) == 1);
    CHECK(reduce(-1, 5) == 4);
    CHECK(reduce(-10, 5) == 0);
    CHECK_THROWS_AS(checked_power(3, 40, 1u << 20), ResourceError);
    CHECK(checked_power(3, 4, 100) == 81);
}

TEST_CASE("rref and nullspace agree with direct evaluation") {
    std::mt19937_64 rng(7);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 30; ++trial) {
            const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 6;
            std::vector<Vector> rows;
            for (std::size_t i = 0; i < r; ++i) rows.push_back(random_vector(p, c, rng));
            const Matrix M = Matrix::from_rows(p, c, rows);
            const auto rn = rref_nullspace(M);
            CHECK(rn.rank + rn.nullspace.dim() == c);
            for (std::size_t i = 0; i < rn.nullspace.dim(); ++i) {
                const Vector image = M.apply(rn.nullspace.basis_vector(i));
                for (auto x : image) CHECK(x == 0);
            }
            CHECK(rref(M).rank == rn.rank);
            CHECK(Subspace::row_space(M).dim() == rn.rank);
        }
    }
}

TEST_CASE("subspace lattice operations") {
    std::mt19937_64 rng(11);
    const std::uint32_t p = 3;
    const std::size_t n = 5;
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Vector> a, b;
        for (std::size_t i = 0; i < 1 + rng() % 3; ++i) a.push_back(random_vector(p, n, rng));
        for (std::size_t i = 0; i < 1 + rng() % 3; ++i) b.push_back(random_vector(p, n, rng));
        const Subspace A = Subspace::span(p, n, a), B = Subspace::span(p, n, b);
        const Subspace S = A.sum(B), I = A.intersect(B);
        CHECK(S.dim() + I.dim() == A.dim() + B.dim());
        CHECK(S.contains(A));
        CHECK(A.contains(I));
        CHECK(B.contains(I));
        CHECK(A.annihilator().dim() == n - A.dim());
        CHECK(A.annihilator().annihilator() == A);
        // Membership by brute-force enumeration of the span.
        for (const auto& v : I.vectors(1000)) {
            CHECK(A.member(v));
            CHECK(B.member(v));
        }
        for (const auto& v : A.vectors(1000)) {
            const auto co = A.coordinates(v);
            REQUIRE(co.has_value());
            CHECK(A.combine(*co) == v);
        }
    }
    CHECK(Subspace::span(p, n, {{1, 2, 0, 0, 1}, {2, 1, 0, 0, 2}}) == Subspace::span(p, n, {{0, 0, 0, 0, 0}, {1, 2, 0, 0, 1}}));
    CHECK_THROWS(Subspace::full(3, 2).sum(Subspace::full(5, 2)));
}

TEST_CASE("projective points, hyperplanes and all subspaces are counted correctly") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (std::size_t d = 1; d <= 4; ++d) {
            if (p == 5 && d == 4) continue;
            const std::size_t pts = gaussian_binomial(p, d, 1);
            CHECK(projective_points(p, d, 1u << 20).size() == pts);
            const auto hs = hyperplanes(p, d, 1u << 20);
            CHECK(hs.size() == pts);
            for (const auto& H : hs) CHECK(H.dim() == d - 1);
            CHECK(std::set<Subspace>(hs.begin(), hs.end()).size() == hs.size());

            const auto all = all_subspaces(p, d, 1u << 20);
            std::size_t expected = 0;
            for (std::size_t k = 0; k <= d; ++k) expected += gaussian_binomial(p, d, k);
            CHECK(all.size() == expected);
            CHECK(std::is_sorted(all.begin(), all.end()));
        }
    }
    CHECK_THROWS_AS(projective_points(3, 30, 1000), ResourceError);
}

TEST_CASE("irreducibility matches a root search in low degree") {
    // A monic polynomial of degree 2 or 3 is irreducible iff it has no root.
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (std::size_t deg : {2u, 3u}) {
            std::size_t total = deg == 2 ? p * p : p * p * p;
            for (std::size_t code = 0; code < total; ++code) {
                Vector f(deg + 1);
                std::size_t c = code;
                for (std::size_t i = 0; i < deg; ++i) {
                    f[i] = static_cast<Residue>(c % p);
                    c /= p;
                }
                f[deg] = 1;
                bool root = false;
                for (std::uint32_t x = 0; x < p && !root; ++x) {
                    std::uint64_t acc = 0;
                    for (std::size_t i = deg + 1; i-- > 0;) acc = (acc * x + f[i]) % p;
                    root = acc == 0;
                }
                CHECK(is_irreducible(p, f) == !root);
            }
        }
    }
}

TEST_CASE("field extension arithmetic") {
    for (std::uint32_t p : {3u, 5u}) {
        for (std::size_t d = 1; d <= 4; ++d) {
            const FieldExt F = FieldExt::least_irreducible(p, d);
            CHECK(is_irreducible(p, F.modulus()));
            std::mt19937_64 rng(p * 10 + d);
            for (int t = 0; t < 50; ++t) {
                const auto a = random_vector(p, d, rng), b = random_vector(p, d, rng), c = random_vector(p, d, rng);
                CHECK(F.multiply(F.multiply(a, b), c) == F.multiply(a, F.multiply(b, c)));
                CHECK(F.multiply(a, F.add(b, c)) == F.add(F.multiply(a, b), F.multiply(a, c)));
                CHECK(F.multiply(a, F.one()) == a);
            }
            // No zero divisors: the multiplicative group has order p^d - 1.
            std::size_t q = 1;
            for (std::size_t i = 0; i < d; ++i) q *= p;
            if (q <= 125) {
                const Vector t = F.basis_element(d > 1 ? 1 : 0);
                Vector acc = F.one();
                for (std::size_t k = 0; k < q - 1; ++k) acc = F.multiply(acc, t);
                if (d > 1) CHECK(acc == F.one());
            }
        }
    }
}
