#include <doctest.h>

#include <set>

#include "pgrp/acceptance.hpp"
#include "pgrp/camina.hpp"
#include "pgrp/error.hpp"
#include "pgrp/generators.hpp"
#include "pgrp/oracle.hpp"
#include "pgrp/structure.hpp"
#include "support.hpp"

using namespace pgrp;

namespace {

struct QuotientCount {
    std::size_t distinct = 0;
    std::size_t abelian_mod_g3 = 0;
};

// A(a) as the preimage of C_{G/G_3}(a G_3), computed with the layered
// centralizer in the quotient group and no use of the commutator forms.
QuotientCount count_via_quotient(const PcGroup& G) {
    const auto lcs = lower_central_series(G);
    const Subgroup& g3 = lcs.terms[2];
    const CentralQuotient Q(G, g3);
    const PcGroup QG(Q.presentation());
    const Subgroup whole = Subgroup::whole(QG);
    const Section V(Subgroup::whole(G), lcs.terms[1]);
    std::set<Subgroup> seen;
    QuotientCount out;
    for (const auto& v : gfp::projective_points(G.prime(), V.dim(), 1u << 20)) {
        const Element a = Q.project(V.element(v));
        const Subgroup C = centralizer(whole, std::span<const Element>(&a, 1));
        if (!seen.insert(C).second) continue;
        ++out.distinct;
        if (derived_subgroup(C).is_trivial()) ++out.abelian_mod_g3;
    }
    return out;
}

}  // namespace

TEST_CASE("camina verdicts agree with the definition on the small corpus") {
    for (const auto& [name, pres] : small_corpus()) {
        CAPTURE(name);
        const PcGroup G(pres);
        const auto expected = oracle::is_camina(G);
        for (auto mode : {CheckMode::all, CheckMode::fast}) {
            for (unsigned threads : {1u, 3u}) {
                const auto v = is_camina(G, {.mode = mode, .threads = threads});
                if (!expected) {
                    CHECK(v.degenerate.has_value());
                    CHECK_FALSE(v.camina);
                } else {
                    CHECK_FALSE(v.degenerate.has_value());
                    if (v.complete) CHECK(v.camina == *expected);
                    if (!v.camina && v.complete) CHECK(v.witness.has_value());
                }
            }
        }
    }
}

TEST_CASE("camina verdicts on the generated families") {
    for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::size_t>>{{3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}, {7, 1}}) {
        CAPTURE(p);
        CAPTURE(n);
        const PcGroup G(heisenberg(p, n));
        REQUIRE(check_consistency(G).consistent);
        CHECK(is_camina(G, {.mode = CheckMode::fast}).camina);
        CHECK(special_class_fast(G) == SpecialClass::ultraspecial);
        CHECK(is_extraspecial(G) == (n == 1));
    }
    for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
        const PcGroup G(extraspecial_p3(p));
        CHECK(is_extraspecial(G));
        CHECK(is_camina(G).camina);
        CHECK(special_class(G) == SpecialClass::ultraspecial);
    }
}

TEST_CASE("special class routes agree") {
    for (const auto& [name, pres] : small_corpus()) {
        CAPTURE(name);
        const PcGroup G(pres);
        CHECK(special_class(G) == special_class_fast(G));
    }
}

TEST_CASE("heisenberg families match brute-force centralizers") {
    for (auto [p, n, expected] : std::vector<std::tuple<std::uint32_t, std::size_t, std::size_t>>{{3, 1, 4}, {3, 2, 10}, {5, 1, 6}}) {
        CAPTURE(p);
        CAPTURE(n);
        const PcGroup G(heisenberg(p, n));
        const Stratification S = stratify(G, {.allow_class_two = true});
        const CommutatorForms F(S);
        const Families fam = compute_families(S, F);
        CHECK(fam.members.size() == expected);
        CHECK(fam.star.size() == expected);
        const auto brute = oracle::centralizer_family(G);
        CHECK(brute.members.size() == expected);
        CHECK(brute.abelian == expected);
        std::vector<Subgroup> ours;
        for (const auto& m : fam.members) ours.push_back(S.V.preimage(m.kernel));
        std::sort(ours.begin(), ours.end());
        CHECK(ours == brute.members);
    }
}

TEST_CASE("fixture families by an independent quotient route") {
    const std::vector<std::tuple<const char*, std::size_t, std::size_t>> cases{{"group1.pc", 3241, 1}, {"group2.pc", 2998, 1}};
    for (auto [file, a, star] : cases) {
        CAPTURE(file);
        const PcGroup G(load_presentation(testing::data_path(file)));
        const Stratification S = stratify(G, {.assert_camina = true});
        const CommutatorForms F(S);
        const Families fam = compute_families(S, F, 2);
        CHECK(fam.members.size() == a);
        CHECK(fam.star.size() == star);
        CHECK(fam.rank_defects == 0);
        std::size_t points = 0;
        for (const auto& m : fam.members) points += m.points;
        CHECK(points == fam.projective_points);
        CHECK(fam.projective_points == (6561 - 1) / 2);

        const QuotientCount q = count_via_quotient(G);
        CHECK(q.distinct == a);
        CHECK(q.abelian_mod_g3 == star);

        // C_G(G')/G' from elements against the common kernel.
        CHECK(S.V.image(centralizer_of_derived(S)) == fam.cgg);
        CHECK(fam.cgg.dim() == 4);
        CHECK(fam.c_family.size() == 1);

        // A(a) for elements of G' is rejected.
        CHECK_THROWS_AS(subgroup_A(S, F, S.derived.igs().front()), DomainError);
    }
}

TEST_CASE("VZ predicate against the definition") {
    for (const auto& [name, pres] : small_corpus()) {
        CAPTURE(name);
        const PcGroup G(pres);
        const auto all = oracle::all_elements(G);
        const oracle::ElementSet whole(all.begin(), all.end());
        CHECK(is_vz(Subgroup::whole(G)).vz == oracle::is_vz(G, whole));
    }
}

TEST_CASE("conjugate covers") {
    const PcGroup G(heisenberg(3, 1));
    const Subgroup whole = Subgroup::whole(G);
    const Subgroup D = derived_subgroup(whole);
    const auto factors = transversal_factors(whole, Subgroup::trivial(G));
    const Element x = G.generator(0);
    CHECK(conjugates_cover(G, x, factors, D).covered);
    const Element z = G.generator(2);
    CHECK_FALSE(conjugates_cover(G, z, factors, D).covered);
    // A budget of one conjugation cannot reach three elements.
    const auto r = conjugates_cover(G, x, factors, D, 1);
    CHECK_FALSE(r.covered);
    CHECK_FALSE(r.exhausted);
}
