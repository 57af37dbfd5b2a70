#include <doctest.h>

#include <algorithm>

#include "pgrp/acceptance.hpp"
#include "pgrp/error.hpp"
#include "pgrp/generators.hpp"
#include "pgrp/oracle.hpp"
#include "pgrp/structure.hpp"
#include "pgrp/subgroup.hpp"
#include "support.hpp"

using namespace pgrp;

namespace {

oracle::ElementSet as_set(const Subgroup& H) {
    const auto els = H.elements(oracle::kDefaultLimit);
    return {els.begin(), els.end()};
}

}  // namespace

TEST_CASE("subgroup canonical form") {
    const PcGroup G(heisenberg(3, 2));
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        std::vector<Element> gens{testing::random_element(G, rng), testing::random_element(G, rng)};
        const Subgroup H = Subgroup::generated(G, gens);
        const auto closed = oracle::closure(G, gens);
        CHECK(static_cast<std::size_t>(std::llround(std::pow(3.0, H.order_exponent()))) == closed.size());
        CHECK(as_set(H) == closed);
        CHECK(oracle::to_subgroup(G, closed) == H);
        // Regenerating from products of the generators gives the identical IGS.
        std::vector<Element> other{G.multiply(gens[0], gens[1]), gens[1], G.power(gens[0], 2)};
        CHECK(Subgroup::generated(G, other) == H);
        for (const auto& h : closed) {
            CHECK(H.contains(h));
            const auto c = H.coordinates(h);
            REQUIRE(c.has_value());
            CHECK(H.combine(*c) == h);
            CHECK(H.reduce(h).is_identity());
        }
        const Subgroup N = Subgroup::normal_closure(G, gens);
        CHECK(N.is_normal());
        CHECK(N.contains(H));
    }
    CHECK(Subgroup::whole(G).order_exponent() == 6);
    CHECK(Subgroup::trivial(G).is_trivial());
    CHECK_THROWS_AS(Subgroup::whole(G).elements(100), ResourceError);
}

TEST_CASE("series and centralizers agree with brute force on the small corpus") {
    for (const auto& [name, pres] : small_corpus()) {
        CAPTURE(name);
        const PcGroup G(pres);
        REQUIRE(check_consistency(G).consistent);
        const auto lcs = lower_central_series(G);
        const auto orders = oracle::lower_central_orders(G);
        REQUIRE(lcs.terms.size() == orders.size());
        for (std::size_t i = 0; i < orders.size(); ++i)
            CHECK(as_set(lcs.terms[i]).size() == orders[i]);
        CHECK(as_set(center(G)) == oracle::center(G));

        const auto all = oracle::all_elements(G);
        const oracle::ElementSet whole(all.begin(), all.end());
        for (std::size_t i = 0; i < G.ngens(); ++i) {
            const Element g = G.generator(i);
            const Subgroup C = centralizer(Subgroup::whole(G), std::span<const Element>(&g, 1));
            CHECK(as_set(C) == oracle::centralizer(G, whole, g));
            CHECK(centralizer_bruteforce(Subgroup::whole(G), std::span<const Element>(&g, 1), 1u << 16) == C);
        }
        const auto uc = upper_central(G);
        CHECK(uc.z1 == center(G));
        CHECK(uc.z2.contains(uc.z1));
        // Z_2/Z_1 is the center of G/Z_1: every element of Z_2 commutes with G modulo Z_1.
        for (const auto& z : uc.z2.elements(1u << 16))
            for (std::size_t i = 0; i < G.ngens(); ++i) CHECK(uc.z1.contains(G.commutator(z, G.generator(i))));

        const Subgroup Phi = frattini(G);
        CHECK(Phi.contains(derived_subgroup(Subgroup::whole(G))));
        for (const auto& g : all) CHECK(Phi.contains(G.power(g, G.prime())));
    }
}

TEST_CASE("commutator subgroups match the brute-force closure") {
    const PcGroup G(load_presentation(testing::data_path("group1.pc")));
    const PcGroup H(heisenberg(5, 1));
    const auto whole = oracle::all_elements(H);
    const oracle::ElementSet all(whole.begin(), whole.end());
    CHECK(as_set(derived_subgroup(Subgroup::whole(H))) == oracle::commutator(H, all, all));

    const auto lcs = lower_central_series(G);
    CHECK(lcs.nilpotency_class == 3);
    std::vector<std::size_t> exps;
    for (const auto& t : lcs.terms) exps.push_back(t.order_exponent());
    CHECK(exps == std::vector<std::size_t>{13, 5, 1, 0});
}

TEST_CASE("central quotients") {
    const PcGroup G(load_presentation(testing::data_path("group2.pc")));
    const auto lcs = lower_central_series(G);
    const Subgroup& g3 = lcs.terms[2];
    const CentralQuotient Q(G, g3);
    const PcGroup QG(Q.presentation());
    CHECK(check_consistency(QG).consistent);
    CHECK(QG.ngens() == G.ngens() - g3.order_exponent());
    std::mt19937_64 rng(9);
    for (int t = 0; t < 500; ++t) {
        const Element a = testing::random_element(G, rng), b = testing::random_element(G, rng);
        CHECK(Q.project(G.multiply(a, b)) == QG.multiply(Q.project(a), Q.project(b)));
        CHECK(Q.project(Q.lift(Q.project(a))) == Q.project(a));
    }
    CHECK_THROWS_AS(CentralQuotient(G, lcs.terms[1]), NotCentralError);
}

TEST_CASE("sections and stratification") {
    const PcGroup G(load_presentation(testing::data_path("group1.pc")));
    const Stratification S = stratify(G, {.assert_camina = true});
    CHECK(S.dim_v() == 8);
    CHECK(S.dim_w() == 4);
    CHECK(S.dim_t() == 1);
    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
        const Element g = testing::random_element(G, rng);
        const auto v = S.V.coordinates(g);
        CHECK(S.V.bottom().contains(G.multiply(G.inverse(S.V.element(v)), g)));
    }
    const gfp::Subspace K = gfp::Subspace::span(3, 8, {{1, 0, 0, 0, 0, 0, 0, 0}, {0, 1, 1, 0, 0, 0, 0, 0}});
    const Subgroup pre = S.V.preimage(K);
    CHECK(pre.order_exponent() == 5 + 2);
    CHECK(S.V.image(pre) == K);

    // Forms against direct commutators.
    const CommutatorForms F(S);
    CHECK(validate_forms(S, F, 300, 4).ok());
    for (int t = 0; t < 200; ++t) {
        const Element a = testing::random_element(G, rng), b = testing::random_element(G, rng);
        const Element c = G.commutator(a, b);
        CHECK(S.W.coordinates(c) == F.b(S.V.coordinates(a), S.V.coordinates(b)));
        const Element w = S.derived.reduce(a).is_identity() ? a : G.commutator(a, b);
        CHECK(S.T.coordinates(G.commutator(w, b)) == F.c(S.W.coordinates(w), S.V.coordinates(b)));
    }

    CHECK_THROWS_AS(stratify(PcGroup(heisenberg(3, 1))), ClassError);
    CHECK(stratify(PcGroup(heisenberg(3, 1)), {.allow_class_two = true}).dim_t() == 0);
    // The maximal-class group of order 3^4 stratifies with one-dimensional lower layers.
    const auto corpus = small_corpus();
    const auto it = std::find_if(corpus.begin(), corpus.end(), [](const auto& e) { return e.first == "maxclass(81)"; });
    REQUIRE(it != corpus.end());
    const Stratification SM = stratify(PcGroup(it->second));
    CHECK(SM.dim_v() == 2);
    CHECK(SM.dim_w() == 1);
    CHECK(SM.dim_t() == 1);
}
