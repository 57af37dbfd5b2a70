#include "pgrp/checks.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>

#include "pgrp/error.hpp"
#include "pgrp/parallel.hpp"
#include "pgrp/partitions.hpp"

namespace pgrp {

using gfp::Residue;
using gfp::Subspace;
using gfp::Vector;

namespace {

constexpr std::size_t kLimit = std::size_t{1} << 20;

std::string pe(std::size_t k) { return "p^" + std::to_string(k); }

CheckVerdict verdict(const std::string& name, bool ok, std::string detail) {
    return {name, ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)};
}
CheckVerdict na(const std::string& name, std::string detail) {
    return {name, CheckStatus::not_applicable, std::move(detail)};
}

std::size_t ipow(std::uint32_t p, std::size_t k) {
    std::size_t r = 1;
    while (k--) r *= p;
    return r;
}

// Representatives of the 1-dimensional subspaces of K.
std::vector<Vector> projective_vectors(const Subspace& K) {
    std::vector<Vector> out;
    for (const Vector& c : gfp::projective_points(K.prime(), K.dim(), kLimit)) out.push_back(K.combine(c));
    return out;
}

// True when A(x) has kernel K for every x in K \ 0.
bool self_determined(const CommutatorForms& F, const Subspace& K) {
    for (const Vector& x : projective_vectors(K))
        if (a_kernel(F, x) != K) return false;
    return true;
}

Vector random_vector(std::mt19937_64& rng, std::uint32_t p, std::size_t d) {
    Vector v(d);
    for (auto& x : v) x = static_cast<Residue>(rng() % p);
    return v;
}

// Uniformly random element of the preimage of K \ 0 in G.
Element random_outside_derived(std::mt19937_64& rng, const Stratification& S, const Subspace& K) {
    const std::uint32_t p = K.prime();
    Vector v;
    do {
        v = K.combine(random_vector(rng, p, K.dim()));
    } while (std::all_of(v.begin(), v.end(), [](Residue r) { return r == 0; }));
    const PcGroup& G = S.derived.group();
    std::vector<Exponent> c(S.derived.order_exponent());
    for (auto& x : c) x = static_cast<Exponent>(rng() % p);
    return G.multiply(S.V.element(v), S.derived.combine(c));
}

bool closed_mod(const PcGroup& G, const Subgroup& H, const Subgroup& L) {
    // H/L elementary abelian.
    const auto& u = H.igs();
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!L.contains(G.power(u[i], G.prime()))) return false;
        for (std::size_t j = i + 1; j < u.size(); ++j)
            if (!L.contains(G.commutator(u[i], u[j]))) return false;
    }
    return true;
}

}  // namespace

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::not_applicable: return "not_applicable";
    }
    return "unknown";
}

std::vector<CheckVerdict> not_applicable_checks(const std::vector<std::string>& names, const std::string& reason) {
    std::vector<CheckVerdict> out;
    for (const auto& n : names) out.push_back(na(n, reason));
    return out;
}

bool has_exponent_p(const PcGroup& G) {
    const std::uint32_t p = G.prime();
    const auto lcs = lower_central_series(G);
    if (p != 2 && lcs.nilpotency_class <= 2) {
        // With G' central and p odd, (xy)^p = x^p y^p [y,x]^(p(p-1)/2), and
        // [y,x]^p = [y^p, x]; so generators of order p settle it.
        for (std::size_t i = 0; i < G.ngens(); ++i)
            if (!G.power(G.generator(i), p).is_identity()) return false;
        return true;
    }
    for (const Element& x : Subgroup::whole(G).elements(kLimit))
        if (!G.power(x, p).is_identity()) return false;
    return true;
}

ClassThreeData prepare_class_three(const PcGroup& G, unsigned threads) {
    Stratification S = stratify(G, {.allow_class_two = false, .assert_camina = true});
    CommutatorForms F(S);
    Families fam = compute_families(S, F, threads);
    UpperCentral uc = upper_central(G);
    Subgroup cgg = centralizer_of_derived(S);
    return {std::move(S), std::move(F), std::move(fam), std::move(uc.z1), std::move(uc.z2), std::move(cgg)};
}

const std::vector<std::string>& class_three_check_names() {
    static const std::vector<std::string> names{
        "forms_well_defined",
        "quotient_by_g3_ultraspecial",
        "center_and_second_center",
        "centralizer_index_everywhere",
        "derived_centralizer_dichotomy",
        "derived_centralizer_two_routes",
        "derived_centralizer_mod_g3_elementary",
        "derived_centralizer_index_for_g3_order_p",
        "derived_centralizer_is_A_of_its_elements",
        "abelian_members_self_determined",
        "c_members_self_determined",
        "family_inclusions",
        "c_family_quotient_route",
        "c_criterion_hyperplane",
        "c_criterion_quotient",
        "c_criterion_bracket",
        "single_c_iff_derived_centralizer_proper",
        "abelian_member_complements",
        "commutators_with_A_fill_g3",
        "abelian_iff_derived_is_g3",
        "derived_centralizer_structure",
        "large_g3_forces_trivial_derived_centralizer",
        "c_pairs_generate_g3",
        "c_count_lower_bound",
        "few_c_forces_proper_derived_centralizer",
        "g3_bound_from_c_count",
        "few_abelian_members_bound",
        "centralizer_containment_forces_derived_centralizer",
        "members_avoid_element_centralizers",
        "abelian_members_extraspecial",
        "abelian_members_semiextraspecial",
        "g3_bound_when_c_smaller",
        "large_g3_forces_equal_families",
        "abelian_count_pattern",
        "quotient_by_g3_exponent_p",
    };
    return names;
}

std::vector<CheckVerdict> verify_theorems(const ClassThreeData& D, const TheoremOptions& opts) {
    const Stratification& S = D.S;
    const CommutatorForms& F = D.F;
    const Families& fam = D.families;
    const PcGroup& G = S.derived.group();
    const std::uint32_t p = G.prime();
    const std::size_t dv = F.dim_v(), dw = F.dim_w(), dt = F.dim_t();
    const Subgroup& Gd = S.derived;
    const Subgroup& g3 = S.g3;
    const bool c_proper = D.cgg != Gd;
    const std::size_t n_a = fam.members.size();
    const std::size_t n_star = fam.star.size();
    const std::size_t n_c = fam.c_family.size();
    std::mt19937_64 rng(opts.seed);

    const CentralQuotient Q(G, g3);
    const PcGroup H(Q.presentation());

    // [G', A] for every member, and membership of each member in the C family.
    std::vector<Subspace> bracket(n_a);
    parallel_for(n_a, opts.threads, [&](std::size_t i) { bracket[i] = derived_bracket(F, fam.members[i].kernel); });
    std::vector<char> in_c(n_a, 0);
    for (const Subspace& K : fam.c_family)
        if (auto i = fam.find(K)) in_c[*i] = 1;

    std::vector<CheckVerdict> out;
    const auto& names = class_three_check_names();
    std::size_t next_name = 0;
    auto add = [&](CheckVerdict v) {
        if (next_name >= names.size() || v.name != names[next_name])
            throw InternalError("check emitted out of order: " + v.name);
        ++next_name;
        out.push_back(std::move(v));
    };

    {
        const auto fv = validate_forms(S, F, 512, opts.seed);
        std::string d = std::to_string(fv.samples) + " perturbation samples";
        if (!fv.g_prime_abelian) d += "; G' is not abelian";
        if (!fv.b_consistent) d += "; commutator form on G/G' depends on representatives";
        if (!fv.c_consistent) d += "; commutator form on G'/G_3 x G/G' depends on representatives";
        add(verdict("forms_well_defined", fv.ok(), d));
    }
    {
        const auto def = special_class(H);
        const auto fast = special_class_fast(H);
        const bool ok = def == SpecialClass::ultraspecial && fast == def && dv == 2 * dw && dw % 2 == 0;
        add(verdict("quotient_by_g3_ultraspecial", ok,
                    "G/G_3 is " + to_string(def) + " (linear route: " + to_string(fast) + "), |G:G'| = " + pe(dv) +
                        ", |G':G_3| = " + pe(dw)));
    }
    {
        const bool ok = D.center == g3 && D.second_center == Gd;
        add(verdict("center_and_second_center", ok,
                    "|Z| = " + pe(D.center.order_exponent()) + ", |Z_2| = " + pe(D.second_center.order_exponent()) +
                        ", |G_3| = " + pe(dt) + ", |G'| = " + pe(Gd.order_exponent())));
    }
    {
        std::string d = "|G:A(a)| = " + pe(dw) + " at all " + std::to_string(fam.projective_points) +
                        " projective points of G/G'";
        if (fam.rank_defects)
            d = std::to_string(fam.rank_defects) + " projective points with a short image, first " +
                Subspace::span(p, dv, {*fam.first_rank_defect}).to_string();
        add(verdict("centralizer_index_everywhere", fam.rank_defects == 0, d));
    }
    const std::size_t cdim = fam.cgg.dim();
    add(verdict("derived_centralizer_dichotomy", cdim == 0 || cdim == dv - dw,
                "|C_G(G'):G'| = " + pe(cdim) + ", |G:C_G(G')| = " + pe(dv - cdim)));
    add(verdict("derived_centralizer_two_routes", S.V.preimage(fam.cgg) == D.cgg,
                "linear preimage order " + pe(Gd.order_exponent() + cdim) + ", element-level order " +
                    pe(D.cgg.order_exponent())));
    add(verdict("derived_centralizer_mod_g3_elementary", closed_mod(G, D.cgg, g3),
                "generators of C_G(G') checked for p-th powers and commutators in G_3"));
    if (dt == 1)
        add(verdict("derived_centralizer_index_for_g3_order_p", cdim == dw,
                    "|C_G(G'):G'| = " + pe(cdim) + ", |G':G_3| = " + pe(dw)));
    else
        add(na("derived_centralizer_index_for_g3_order_p", "|G_3| = " + pe(dt)));
    if (dt == 1 && cdim > 0) {
        add(verdict("derived_centralizer_is_A_of_its_elements", self_determined(F, fam.cgg),
                    std::to_string(projective_vectors(fam.cgg).size()) + " projective points of C_G(G')/G'"));
    } else {
        add(na("derived_centralizer_is_A_of_its_elements",
               dt != 1 ? "|G_3| = " + pe(dt) : std::string("C_G(G') = G'")));
    }
    {
        std::size_t bad = 0;
        for (auto i : fam.star) bad += self_determined(F, fam.members[i].kernel) ? 0 : 1;
        add(verdict("abelian_members_self_determined", bad == 0,
                    std::to_string(n_star) + " members with A/G_3 abelian, " + std::to_string(bad) + " violations"));
    }
    {
        std::size_t bad = 0;
        for (const Subspace& K : fam.c_family) bad += self_determined(F, K) ? 0 : 1;
        add(verdict("c_members_self_determined", bad == 0,
                    std::to_string(n_c) + " members of the C family, " + std::to_string(bad) + " violations"));
    }
    {
        bool ok = true;
        std::string why;
        for (const Subspace& K : fam.c_family) {
            const auto i = fam.find(K);
            if (!i || !fam.members[*i].star) {
                ok = false;
                why = "; C(N)/G' = " + K.to_string() + (i ? " is not abelian mod G_3" : " is not some A(a)");
                break;
            }
        }
        for (const auto& m : fam.members)
            if (m.kernel.dim() != dv - dw) {
                ok = false;
                why = "; a member has |A:G'| = " + pe(m.kernel.dim());
                break;
            }
        add(verdict("family_inclusions", ok,
                    "|C| = " + std::to_string(n_c) + ", |A*| = " + std::to_string(n_star) + ", |A| = " +
                        std::to_string(n_a) + why));
    }
    {
        bool ok = true;
        for (std::size_t i = 0; i < fam.hyperplanes.size() && ok; ++i) {
            const Subgroup N = S.T.preimage(fam.hyperplanes[i]);
            ok = c_of_n_via_quotient(S, N) == S.V.preimage(fam.c_of_n[i]);
        }
        add(verdict("c_family_quotient_route", ok,
                    std::to_string(fam.hyperplanes.size()) + " index-p subgroups of G_3 compared"));
    }
    {
        std::size_t bad = 0, tests = 0;
        for (std::size_t a = 0; a < n_a; ++a)
            for (std::size_t h = 0; h < fam.hyperplanes.size(); ++h) {
                ++tests;
                const bool lhs = fam.members[a].kernel == fam.c_of_n[h];
                const bool rhs = fam.hyperplanes[h].contains(bracket[a]);
                bad += lhs != rhs;
            }
        add(verdict("c_criterion_hyperplane", bad == 0,
                    std::to_string(tests) + " (member, N) pairs, " + std::to_string(bad) + " violations"));
    }
    {
        std::size_t bad = 0, tests = 0;
        for (const Subspace& M : gfp::all_subspaces(p, dt, kLimit)) {
            if (M.dim() == dt) continue;
            for (std::size_t a = 0; a < n_a; ++a) {
                ++tests;
                bool lhs = false;
                for (std::size_t h = 0; h < fam.hyperplanes.size() && !lhs; ++h)
                    lhs = fam.hyperplanes[h].contains(M) && fam.members[a].kernel == fam.c_of_n[h];
                const bool rhs = M.sum(bracket[a]).dim() < dt;
                bad += lhs != rhs;
            }
        }
        add(verdict("c_criterion_quotient", bad == 0,
                    std::to_string(tests) + " (member, M < G_3) pairs, " + std::to_string(bad) + " violations"));
    }
    {
        std::size_t bad = 0;
        for (std::size_t a = 0; a < n_a; ++a) bad += (in_c[a] != 0) != (bracket[a].dim() < dt);
        add(verdict("c_criterion_bracket", bad == 0,
                    std::to_string(n_a) + " members, " + std::to_string(bad) + " violations"));
    }
    {
        const bool ok = c_proper == (n_c == 1) && (!c_proper || fam.c_family.front() == fam.cgg);
        add(verdict("single_c_iff_derived_centralizer_proper", ok,
                    std::string("C_G(G') ") + (c_proper ? "> G'" : "= G'") + ", |C| = " + std::to_string(n_c)));
    }
    {
        std::size_t pairs = 0, bad = 0;
        for (auto i : fam.star)
            for (std::size_t j = 0; j < n_a; ++j) {
                if (j == i) continue;
                ++pairs;
                const Subspace& A = fam.members[i].kernel;
                const Subspace& B = fam.members[j].kernel;
                bad += !(A.intersect(B).is_zero() && A.sum(B).dim() == dv);
            }
        add(verdict("abelian_member_complements", bad == 0,
                    std::to_string(pairs) + " pairs (A in A*, B in A, A != B), " + std::to_string(bad) + " violations"));
    }
    {
        // Sample a = x_1, then elements of each abelian member, then of G.
        std::vector<Element> samples;
        if (!Gd.contains(G.generator(0))) samples.push_back(G.generator(0));
        for (auto i : fam.star)
            for (std::size_t s = 0; s < opts.samples; ++s)
                samples.push_back(random_outside_derived(rng, S, fam.members[i].kernel));
        const Subspace whole = Subspace::full(p, dv);
        for (std::size_t s = 0; s < opts.samples; ++s) samples.push_back(random_outside_derived(rng, S, whole));
        std::vector<char> ok(samples.size(), 0);
        parallel_for(samples.size(), opts.threads, [&](std::size_t k) {
            const Element& a = samples[k];
            const Subgroup A = subgroup_A(S, F, a);
            for (const Element& u : A.igs())
                if (!g3.contains(G.commutator(a, u))) return;
            const auto factors = transversal_factors(A, g3);
            ok[k] = conjugates_cover(G, a, factors, g3).covered ? 1 : 0;
        });
        const auto bad = std::find(ok.begin(), ok.end(), 0);
        std::string d = std::to_string(samples.size()) + " elements a (x1, " + std::to_string(opts.samples) +
                        " per abelian member, " + std::to_string(opts.samples) + " from G), seed " +
                        std::to_string(opts.seed);
        if (bad != ok.end()) d += "; fails at a = " + G.format(samples[bad - ok.begin()]);
        add(verdict("commutators_with_A_fill_g3", bad == ok.end(), d));
    }
    {
        std::vector<char> ok(n_a, 0);
        parallel_for(n_a, opts.threads, [&](std::size_t i) {
            const Subgroup A = S.V.preimage(fam.members[i].kernel);
            ok[i] = (derived_subgroup(A) == g3) == fam.members[i].star ? 1 : 0;
        });
        const auto bad = std::count(ok.begin(), ok.end(), 0);
        add(verdict("abelian_iff_derived_is_g3", bad == 0,
                    std::to_string(n_a) + " members, " + std::to_string(bad) + " violations"));
    }
    if (c_proper) {
        const Subgroup Cd = derived_subgroup(D.cgg);
        const Subgroup ZC = center(D.cgg);
        const VzResult vz = is_vz(D.cgg);
        const bool ok = Cd == g3 && ZC == Gd && vz.vz && 2 * dt <= dw;
        add(verdict("derived_centralizer_structure", ok,
                    "C' " + std::string(Cd == g3 ? "=" : "!=") + " G_3, Z(C) " + (ZC == Gd ? "=" : "!=") +
                        " G', VZ " + (vz.vz ? "yes" : "no") + " over " + std::to_string(vz.cosets) +
                        " cosets, |G_3| = " + pe(dt) + ", |G':G_3| = " + pe(dw)));
    } else {
        add(na("derived_centralizer_structure", "C_G(G') = G'"));
    }
    if (2 * dt > dw)
        add(verdict("large_g3_forces_trivial_derived_centralizer", !c_proper,
                    std::string("C_G(G') ") + (c_proper ? "> G'" : "= G'")));
    else
        add(na("large_g3_forces_trivial_derived_centralizer",
               "|G_3|^2 = " + pe(2 * dt) + " <= |G':G_3| = " + pe(dw)));

    std::vector<Subspace> c_bracket;
    for (const Subspace& K : fam.c_family) c_bracket.push_back(derived_bracket(F, K));
    if (n_c >= 2) {
        std::size_t bad = 0;
        for (std::size_t i = 0; i < n_c; ++i)
            for (std::size_t j = i + 1; j < n_c; ++j) bad += c_bracket[i].sum(c_bracket[j]).dim() != dt;
        add(verdict("c_pairs_generate_g3", bad == 0,
                    std::to_string(n_c * (n_c - 1) / 2) + " pairs, " + std::to_string(bad) + " violations"));
    } else {
        add(na("c_pairs_generate_g3", "|C| = " + std::to_string(n_c)));
    }
    if (!c_proper) {
        const auto bound = partition_bound(p, dt);
        const auto dual = verify_dual_cover({p, dt, c_bracket});
        const bool ok = bound.admits(n_c) && dual.hypotheses_ok && dual.k == n_c;
        add(verdict("c_count_lower_bound", ok,
                    "|C| = " + std::to_string(n_c) + (bound.strict ? " > " : " >= ") +
                        std::to_string(bound.threshold) + "; [C_i, G'] " +
                        (dual.hypotheses_ok ? "form a dual cover of G_3" : "fail the dual cover hypotheses: " + dual.reason)));
    } else {
        add(na("c_count_lower_bound", "C_G(G') > G'"));
    }
    if (n_c <= p)
        add(verdict("few_c_forces_proper_derived_centralizer", c_proper && n_c == 1,
                    "|C| = " + std::to_string(n_c) + ", C_G(G') " + (c_proper ? "> G'" : "= G'")));
    else
        add(na("few_c_forces_proper_derived_centralizer", "|C| = " + std::to_string(n_c) + " > p"));
    if (!c_proper) {
        std::size_t a = 1;
        while (n_c > ipow(p, a) + 1) ++a;
        add(verdict("g3_bound_from_c_count", dt <= 2 * a,
                    "|C| <= p^" + std::to_string(a) + " + 1, |G_3| = " + pe(dt)));
    } else {
        add(na("g3_bound_from_c_count", "C_G(G') > G'"));
    }
    {
        std::optional<std::size_t> a;
        for (std::size_t e = 1; ipow(p, e) + 1 <= n_star; ++e)
            if (ipow(p, e) + 1 == n_star) a = e;
        if (n_star == 1 || n_star == 2)
            add(verdict("few_abelian_members_bound", c_proper,
                        "|A*| = " + std::to_string(n_star) + ", C_G(G') " + (c_proper ? "> G'" : "= G'")));
        else if (a)
            add(verdict("few_abelian_members_bound", c_proper || dt <= 2 * *a,
                        "|A*| = p^" + std::to_string(*a) + " + 1, |G_3| = " + pe(dt)));
        else
            add(na("few_abelian_members_bound", "|A*| = " + std::to_string(n_star)));
    }
    {
        // A <= C_G(g) for some g in G' \ G_3 iff some w != 0 has c(w, K_A) = 0.
        std::vector<char> ok(n_a, 1);
        std::atomic<std::size_t> contained{0};
        parallel_for(n_a, opts.threads, [&](std::size_t a) {
            const Subspace& K = fam.members[a].kernel;
            gfp::Matrix M(p, K.dim() * dt, dw);
            for (std::size_t b = 0; b < K.dim(); ++b)
                for (std::size_t t = 0; t < dt; ++t)
                    for (std::size_t k = 0; k < dw; ++k) {
                        long long s = 0;
                        for (std::size_t j = 0; j < dv; ++j) s += F.c_entry(k, j, t) * K.basis().row(b)[j];
                        M.set(b * dt + t, k, s);
                    }
            if (!gfp::rref_nullspace(M).nullspace.is_zero()) {
                ++contained;
                ok[a] = K == fam.cgg ? 1 : 0;
            }
        });
        const auto bad = std::count(ok.begin(), ok.end(), 0);
        add(verdict("centralizer_containment_forces_derived_centralizer", bad == 0,
                    std::to_string(contained.load()) + " of " + std::to_string(n_a) +
                        " members centralize some g in G' \\ G_3, " + std::to_string(bad) + " differ from C_G(G')"));
    }
    {
        std::vector<std::size_t> picks;
        for (std::size_t a = 0; a < n_a; ++a)
            if (fam.members[a].kernel != fam.cgg) picks.push_back(a);
        if (picks.size() > opts.member_samples) {
            std::shuffle(picks.begin(), picks.end(), rng);
            picks.resize(opts.member_samples);
            std::sort(picks.begin(), picks.end());
        }
        const auto points = gfp::projective_points(p, dw, kLimit);
        std::vector<Element> gs;
        for (const Vector& w : points) gs.push_back(S.W.element(w));
        std::vector<char> ok(picks.size(), 1);
        parallel_for(picks.size(), opts.threads, [&](std::size_t k) {
            const Subgroup A = S.V.preimage(fam.members[picks[k]].kernel);
            for (const Element& g : gs) {
                const bool escapes = std::any_of(A.igs().begin(), A.igs().end(),
                                                 [&](const Element& u) { return !G.commutator(u, g).is_identity(); });
                if (!escapes) {
                    ok[k] = 0;
                    return;
                }
            }
        });
        const auto bad = std::count(ok.begin(), ok.end(), 0);
        add(verdict("members_avoid_element_centralizers", bad == 0,
                    std::to_string(picks.size()) + " members other than C_G(G') against " +
                        std::to_string(gs.size()) + " elements g, " + std::to_string(bad) + " violations"));
    }
    {
        std::vector<std::size_t> targets;
        for (auto i : fam.star)
            if (fam.members[i].kernel != fam.cgg) targets.push_back(i);
        if (dt != 1) {
            add(na("abelian_members_extraspecial", "|G_3| = " + pe(dt)));
        } else if (targets.empty()) {
            add(na("abelian_members_extraspecial", "no member of A* other than C_G(G')"));
        } else {
            std::size_t bad = 0;
            for (auto i : targets) {
                const PcGroup A(subgroup_presentation(S.V.preimage(fam.members[i].kernel)));
                bad += is_extraspecial(A) ? 0 : 1;
            }
            add(verdict("abelian_members_extraspecial", bad == 0,
                        std::to_string(targets.size()) + " members, " + std::to_string(bad) + " violations"));
        }
    }
    {
        std::vector<std::size_t> targets;
        for (auto i : fam.star)
            if (!in_c[i]) targets.push_back(i);
        if (targets.empty()) {
            add(na("abelian_members_semiextraspecial", "A* is contained in C"));
        } else {
            std::size_t bad = 0;
            for (auto i : targets) {
                const PcGroup A(subgroup_presentation(S.V.preimage(fam.members[i].kernel)));
                bad += special_class(A) == SpecialClass::none ? 1 : 0;
            }
            add(verdict("abelian_members_semiextraspecial", bad == 0,
                        std::to_string(targets.size()) + " members, " + std::to_string(bad) + " violations"));
        }
    }
    if (n_c < n_a)
        add(verdict("g3_bound_when_c_smaller", dt <= dw,
                    "|G_3| = " + pe(dt) + ", |G:G'|^(1/2) = " + pe(dw)));
    else
        add(na("g3_bound_when_c_smaller", "C = A"));
    if (dt > dw) {
        const bool ok = n_c == n_star && n_star == n_a && n_a == ipow(p, dw) + 1;
        add(verdict("large_g3_forces_equal_families", ok,
                    "|C| = " + std::to_string(n_c) + ", |A*| = " + std::to_string(n_star) + ", |A| = " +
                        std::to_string(n_a)));
    } else {
        add(na("large_g3_forces_equal_families", "|G_3| = " + pe(dt) + " <= " + pe(dw)));
    }
    {
        bool ok = n_star <= 2;
        for (std::size_t h = 1; h <= dw && !ok; ++h)
            if (dw % h == 0 && n_star == ipow(p, h) + 1) ok = true;
        add(verdict("abelian_count_pattern", ok,
                    "|A*(G/G_3)| = " + std::to_string(n_star) + " with |G:G'| = p^(2*" + std::to_string(dw) + ")"));
    }
    {
        bool ok = has_exponent_p(H);
        std::size_t sampled = 0;
        const Subgroup whole = Subgroup::whole(G);
        for (; sampled < 10 * opts.samples && ok; ++sampled) {
            std::vector<Exponent> c(whole.order_exponent());
            for (auto& x : c) x = static_cast<Exponent>(rng() % p);
            ok = H.power(Q.project(whole.combine(c)), p).is_identity();
        }
        add(verdict("quotient_by_g3_exponent_p", ok,
                    "generator powers of G/G_3 and " + std::to_string(sampled) + " projected samples"));
    }
    if (out.size() != names.size()) throw InternalError("check list incomplete");
    return out;
}

const std::vector<std::string>& class_two_check_names() {
    static const std::vector<std::string> names{
        "forms_well_defined",   "special_class_routes_agree", "centralizer_index_everywhere",
        "abelian_count_pattern", "exponent_p",
    };
    return names;
}

std::vector<CheckVerdict> verify_class_two(const PcGroup& G, const TheoremOptions& opts) {
    const Stratification S = stratify(G, {.allow_class_two = true, .assert_camina = false});
    const CommutatorForms F(S);
    const Families fam = compute_families(S, F, opts.threads);
    const std::uint32_t p = G.prime();
    const std::size_t dw = F.dim_w();
    std::vector<CheckVerdict> out;

    const auto fv = validate_forms(S, F, 512, opts.seed);
    out.push_back(verdict("forms_well_defined", fv.ok(), std::to_string(fv.samples) + " perturbation samples"));
    const auto def = special_class(G);
    const auto fast = special_class_fast(G);
    out.push_back(verdict("special_class_routes_agree", def == fast,
                          "definitional " + to_string(def) + ", linear " + to_string(fast)));
    out.push_back(verdict("centralizer_index_everywhere", fam.rank_defects == 0,
                          "|G:C_G(a)| = |G'| = " + pe(dw) + " at " + std::to_string(fam.projective_points) +
                              " projective points"));
    if (def == SpecialClass::none || F.dim_v() % 2 != 0) {
        out.push_back(na("abelian_count_pattern", "G is not semi-extraspecial"));
    } else {
        const std::size_t n = F.dim_v() / 2;
        const std::size_t k = fam.star.size();
        bool ok = k <= 2;
        for (std::size_t h = 1; h <= n && !ok; ++h)
            if (n % h == 0 && k == ipow(p, h) + 1) ok = true;
        out.push_back(verdict("abelian_count_pattern", ok,
                              "|A*| = " + std::to_string(k) + " with |G:G'| = p^(2*" + std::to_string(n) + ")"));
    }
    if (p == 2)
        out.push_back(na("exponent_p", "p = 2"));
    else
        out.push_back(verdict("exponent_p", has_exponent_p(G), "generator powers"));
    return out;
}

}  // namespace pgrp
