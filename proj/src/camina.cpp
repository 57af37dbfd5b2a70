#include "pgrp/camina.hpp"

#include <algorithm>
#include <atomic>

#include "pgrp/error.hpp"
#include "pgrp/parallel.hpp"

namespace pgrp {

using gfp::Matrix;
using gfp::Residue;
using gfp::Subspace;
using gfp::Vector;

namespace {

constexpr std::size_t kCoverTableLimit = std::size_t{1} << 26;
constexpr std::size_t kEnumerationLimit = std::size_t{1} << 24;

// Generator index if y is exactly x_i, else npos.
std::size_t as_generator(const Element& y, std::size_t n) {
    std::size_t found = std::string::npos;
    for (std::size_t k = 0; k < n; ++k) {
        if (y[k] == 0) continue;
        if (y[k] != 1 || found != std::string::npos) return std::string::npos;
        found = k;
    }
    return found;
}

// Elements whose exponent vector is supported on `positions`, enumerated by
// an index in [0, p^|positions|) with the first position most significant.
Element element_at(const std::vector<std::size_t>& positions, std::uint32_t p, std::size_t index) {
    Element g;
    for (std::size_t s = positions.size(); s-- > 0;) {
        g[positions[s]] = static_cast<Exponent>(index % p);
        index /= p;
    }
    return g;
}

std::vector<std::size_t> non_lead_positions(const Subgroup& K) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < K.group().ngens(); ++i)
        if (!K.has_lead(i)) out.push_back(i);
    return out;
}

}  // namespace

std::vector<Element> transversal_factors(const Subgroup& H, const Subgroup& L) {
    std::vector<Element> out;
    for (std::size_t s = H.igs().size(); s-- > 0;)
        if (!L.has_lead(H.leading_indices()[s])) out.push_back(H.igs()[s]);
    return out;
}

// ------------------------------------------------------------------ cover

CoverResult conjugates_cover(const PcGroup& G, const Element& g, std::span<const Element> factors,
                             const Subgroup& K, std::size_t budget) {
    const std::uint32_t p = G.prime();
    const std::size_t n = G.ngens();
    const auto& leads = K.leading_indices();
    const std::size_t target = gfp::checked_power(p, leads.size(), kCoverTableLimit);
    std::vector<bool> seen(target, false);
    std::size_t hits = 0;

    // An element of gK is determined by its exponents at the leading indices
    // of K, so those exponents index the table.
    auto mark = [&](const Element& y) {
        std::size_t idx = 0;
        for (std::size_t s = leads.size(); s-- > 0;) idx = idx * p + y[leads[s]];
        if (!seen[idx]) {
            seen[idx] = true;
            ++hits;
        }
    };

    CoverResult out;
    mark(g);
    if (hits == target) {
        out.covered = true;
        return out;
    }

    const std::size_t r = factors.size();
    std::vector<std::size_t> gen_index(r);
    std::vector<Element> inv(r);
    for (std::size_t i = 0; i < r; ++i) {
        gen_index[i] = as_generator(factors[i], n);
        if (gen_index[i] == std::string::npos) inv[i] = G.inverse(factors[i]);
    }
    auto conj = [&](const Element& a, std::size_t i) {
        if (gen_index[i] != std::string::npos) return G.conjugate_by_generator(a, gen_index[i]);
        return G.multiply(inv[i], G.multiply(a, factors[i]));
    };

    // chain[i] = g^{y_1^{f_1} ... y_i^{f_i}}
    std::vector<Element> chain(r + 1, g);
    std::vector<Exponent> digit(r, 0);
    for (;;) {
        std::size_t i = r;
        while (i > 0 && digit[i - 1] == p - 1) {
            digit[i - 1] = 0;
            --i;
        }
        if (i == 0) {
            out.exhausted = true;
            return out;
        }
        ++digit[i - 1];
        chain[i] = conj(chain[i], i - 1);
        for (std::size_t j = i + 1; j <= r; ++j) chain[j] = chain[i];
        ++out.steps;
        mark(chain[r]);
        if (hits == target) {
            out.covered = true;
            return out;
        }
        if (budget != 0 && out.steps >= budget) return out;
    }
}

// ----------------------------------------------------------------- camina

CaminaVerdict is_camina(const PcGroup& G, const CaminaOptions& opts) {
    CaminaVerdict out;
    const Subgroup whole = Subgroup::whole(G);
    const Subgroup derived = derived_subgroup(whole);
    if (derived.is_trivial()) {
        out.degenerate = "abelian";
        out.method = "none";
        return out;
    }
    if (derived == whole) {
        out.degenerate = "perfect";
        out.method = "none";
        return out;
    }

    const std::uint32_t p = G.prime();
    const LowerCentralSeries lcs = lower_central_series(G);
    const std::size_t cls = lcs.nilpotency_class;
    std::optional<Stratification> strat;
    std::optional<CommutatorForms> forms;
    if (cls == 2 || cls == 3) {
        try {
            strat.emplace(stratify(G, {.allow_class_two = true, .assert_camina = false}));
            forms.emplace(*strat);
        } catch (const ShapeError&) {
            // Some layer is not elementary abelian: enumeration only.
            strat.reset();
        }
    }
    const bool linear = opts.mode == CheckMode::fast && forms.has_value();
    out.method = opts.mode == CheckMode::all ? "enumeration" : (linear ? "linear" : "bounded");

    const Subgroup Z = center(G);
    const std::vector<Element> factors = transversal_factors(whole, Z);
    const std::vector<std::size_t> top = non_lead_positions(derived);
    const std::size_t cosets = gfp::checked_power(p, top.size(), kEnumerationLimit);
    out.cosets = cosets - 1;

    enum class Outcome : std::uint8_t { pass, fail, incomplete };
    std::vector<Outcome> result(cosets, Outcome::pass);
    std::vector<std::size_t> steps(cosets, 0);
    std::atomic<std::size_t> first_fail{cosets};

    parallel_for(cosets - 1, opts.threads, [&](std::size_t job) {
        const std::size_t idx = job + 1;
        if (idx > first_fail.load(std::memory_order_relaxed)) return;
        const Element g = element_at(top, p, idx);
        auto fail = [&] {
            result[idx] = Outcome::fail;
            std::size_t cur = first_fail.load();
            while (idx < cur && !first_fail.compare_exchange_weak(cur, idx)) {
            }
        };

        if (forms) {
            const Vector a = strat->V.coordinates(g);
            const Matrix M = forms->b_map(a);
            const auto red = gfp::rref_nullspace(M);
            if (red.rank != forms->dim_w()) return fail();
            if (linear) {
                if (forms->dim_t() == 0) return;
                // x -> [g, x] is a homomorphism from A(g) into the central G_3,
                // so its image is spanned by the images of any generating set.
                std::vector<Vector> rows;
                auto add = [&](const Element& u) { rows.push_back(strat->T.coordinates(G.commutator(g, u))); };
                for (const Element& u : strat->derived.igs()) add(u);
                for (std::size_t b = 0; b < red.nullspace.dim(); ++b)
                    add(strat->V.element(red.nullspace.basis_vector(b)));
                if (Subspace::span(p, forms->dim_t(), rows).dim() != forms->dim_t()) return fail();
                return;
            }
        }
        const std::size_t budget = opts.mode == CheckMode::all ? 0 : opts.budget;
        const CoverResult c = conjugates_cover(G, g, factors, derived, budget);
        steps[idx] = c.steps;
        if (c.covered) return;
        if (c.exhausted) return fail();
        result[idx] = Outcome::incomplete;
    });

    for (std::size_t s : steps) out.steps += s;
    const std::size_t ff = first_fail.load();
    if (ff < cosets) {
        out.camina = false;
        out.witness = element_at(top, p, ff);
        return out;
    }
    const bool incomplete = std::any_of(result.begin(), result.end(), [](Outcome o) { return o == Outcome::incomplete; });
    out.complete = !incomplete;
    out.camina = !incomplete;
    return out;
}

// ---------------------------------------------------------- special class

std::string to_string(SpecialClass c) {
    switch (c) {
        case SpecialClass::none: return "none";
        case SpecialClass::semiextraspecial: return "semiextraspecial";
        case SpecialClass::ultraspecial: return "ultraspecial";
    }
    return "none";
}

bool is_extraspecial(const PcGroup& G) {
    const Subgroup Z = center(G);
    if (Z.order_exponent() != 1) return false;
    const Subgroup derived = derived_subgroup(Subgroup::whole(G));
    return derived == Z && frattini(G) == Z;
}

SpecialClass special_class(const PcGroup& G) {
    const Subgroup Z = center(G);
    if (Z.is_trivial()) return SpecialClass::none;
    std::vector<Element> pth;
    for (const Element& u : Z.igs()) pth.push_back(G.power(u, G.prime()));
    const Subgroup Zp = Subgroup::generated(G, pth);
    const Section sec(Z, Zp);
    for (const Subspace& H : gfp::hyperplanes(G.prime(), sec.dim(), kEnumerationLimit)) {
        const Subgroup N = sec.preimage(H);
        const CentralQuotient Q(G, N);
        const PcGroup GQ(Q.presentation());
        if (!is_extraspecial(GQ)) return SpecialClass::none;
    }
    const Subgroup derived = derived_subgroup(Subgroup::whole(G));
    const std::size_t top = G.ngens() - derived.order_exponent();
    return top == 2 * derived.order_exponent() ? SpecialClass::ultraspecial : SpecialClass::semiextraspecial;
}

SpecialClass special_class_fast(const PcGroup& G) {
    const LowerCentralSeries lcs = lower_central_series(G);
    if (lcs.nilpotency_class != 2) return SpecialClass::none;
    const Subgroup& derived = lcs.terms[1];
    if (center(G) != derived || frattini(G) != derived) return SpecialClass::none;
    const Stratification S = stratify(G, {.allow_class_two = true, .assert_camina = false});
    const CommutatorForms F(S);
    const std::uint32_t p = G.prime();
    const std::size_t dv = F.dim_v();
    for (const Vector& lambda : gfp::projective_points(p, F.dim_w(), kEnumerationLimit)) {
        Matrix M(p, dv, dv);
        for (std::size_t i = 0; i < dv; ++i)
            for (std::size_t j = 0; j < dv; ++j) {
                std::uint64_t acc = 0;
                for (std::size_t k = 0; k < F.dim_w(); ++k) acc += std::uint64_t{lambda[k]} * F.b_entry(i, j, k);
                M.set(i, j, static_cast<long long>(acc % p));
            }
        if (gfp::rref(M).rank != dv) return SpecialClass::none;
    }
    return dv == 2 * F.dim_w() ? SpecialClass::ultraspecial : SpecialClass::semiextraspecial;
}

// ------------------------------------------------------------------- VZ

VzResult is_vz(const Subgroup& H) {
    const PcGroup& G = H.group();
    VzResult out;
    const Subgroup ZH = center(H);
    const Subgroup Hd = derived_subgroup(H);
    for (const Element& u : Hd.igs())
        if (!ZH.contains(u)) {
            // u lies in H' but its class cannot be the coset uH' (which holds 1).
            out.witness = u;
            return out;
        }
    const std::vector<Element> factors = transversal_factors(H, ZH);
    std::vector<Element> reps;
    for (std::size_t s = 0; s < H.igs().size(); ++s)
        if (!Hd.has_lead(H.leading_indices()[s])) reps.push_back(H.igs()[s]);
    const std::uint32_t p = G.prime();
    const std::size_t total = gfp::checked_power(p, reps.size(), kEnumerationLimit);
    std::vector<Exponent> c(reps.size(), 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        Element a;
        for (std::size_t s = 0; s < reps.size(); ++s)
            if (c[s]) a = G.multiply(a, G.power(reps[s], c[s]));
        for (std::size_t s = c.size(); s-- > 0;) {
            if (++c[s] < p) break;
            c[s] = 0;
        }
        if (ZH.contains(a)) continue;
        ++out.cosets;
        if (!conjugates_cover(G, a, factors, Hd).covered) {
            out.witness = a;
            return out;
        }
    }
    out.vz = true;
    return out;
}

// --------------------------------------------------------------- families

Subspace a_kernel(const CommutatorForms& F, std::span<const Residue> a) {
    return gfp::rref_nullspace(F.b_map(a)).nullspace;
}

Subgroup subgroup_A(const Stratification& S, const CommutatorForms& F, const Element& a) {
    const Vector v = S.V.coordinates(a);
    if (std::all_of(v.begin(), v.end(), [](Residue r) { return r == 0; }))
        throw DomainError("A(a) needs a outside G'");
    const Subspace K = a_kernel(F, v);
    if (K.dim() != F.dim_v() - F.dim_w())
        throw ContradictionError("|G:A(a)| = p^" + std::to_string(F.dim_v() - K.dim()) +
                                 " differs from |G':G_3| = p^" + std::to_string(F.dim_w()));
    return S.V.preimage(K);
}

Subspace derived_bracket(const CommutatorForms& F, const Subspace& K) {
    std::vector<Vector> rows;
    Vector w(F.dim_w(), 0);
    for (std::size_t k = 0; k < F.dim_w(); ++k) {
        std::fill(w.begin(), w.end(), 0);
        w[k] = 1;
        const Matrix M = F.c_map(w);
        for (std::size_t b = 0; b < K.dim(); ++b) rows.push_back(M.apply(K.basis_vector(b)));
    }
    return Subspace::span(F.prime(), F.dim_t(), rows);
}

Subspace c_kernel(const CommutatorForms& F, const std::optional<Subspace>& N) {
    const std::uint32_t p = F.prime();
    std::vector<Vector> rows;
    std::optional<Vector> lambda;
    if (N) {
        const Subspace ann = N->annihilator();
        if (ann.dim() != 1) throw DimensionError("C(N) needs N of index p in G_3");
        lambda = ann.basis_vector(0);
    }
    Vector w(F.dim_w(), 0);
    for (std::size_t k = 0; k < F.dim_w(); ++k) {
        std::fill(w.begin(), w.end(), 0);
        w[k] = 1;
        const Matrix M = F.c_map(w);
        if (!lambda) {
            for (std::size_t t = 0; t < M.rows(); ++t) rows.push_back(M.row_vector(t));
        } else {
            Vector row(F.dim_v(), 0);
            for (std::size_t t = 0; t < M.rows(); ++t)
                for (std::size_t j = 0; j < F.dim_v(); ++j)
                    row[j] = gfp::add(row[j], gfp::mul((*lambda)[t], M(t, j), p), p);
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) return Subspace::full(p, F.dim_v());
    return gfp::rref_nullspace(Matrix::from_rows(p, F.dim_v(), rows)).nullspace;
}

std::optional<std::size_t> Families::find(const Subspace& K) const {
    auto it = std::lower_bound(members.begin(), members.end(), K,
                               [](const FamilyMember& m, const Subspace& k) { return m.kernel < k; });
    if (it == members.end() || it->kernel != K) return std::nullopt;
    return static_cast<std::size_t>(it - members.begin());
}

Families compute_families(const Stratification& S, const CommutatorForms& F, unsigned threads) {
    const std::uint32_t p = F.prime();
    Families out;
    const auto points = gfp::projective_points(p, F.dim_v(), kEnumerationLimit);
    out.projective_points = points.size();

    std::vector<Subspace> kernels(points.size());
    parallel_for(points.size(), threads, [&](std::size_t i) { kernels[i] = a_kernel(F, points[i]); });
    for (std::size_t i = 0; i < points.size(); ++i)
        if (F.dim_v() - kernels[i].dim() != F.dim_w()) {
            if (out.rank_defects++ == 0) out.first_rank_defect = points[i];
        }

    std::sort(kernels.begin(), kernels.end());
    for (std::size_t i = 0; i < kernels.size();) {
        std::size_t j = i;
        while (j < kernels.size() && kernels[j] == kernels[i]) ++j;
        out.members.push_back({kernels[i], j - i, false});
        i = j;
    }
    std::vector<char> star(out.members.size(), 0);
    parallel_for(out.members.size(), threads,
                 [&](std::size_t i) { star[i] = F.totally_isotropic(out.members[i].kernel) ? 1 : 0; });
    for (std::size_t i = 0; i < out.members.size(); ++i) {
        out.members[i].star = star[i] != 0;
        if (star[i]) out.star.push_back(i);
    }

    out.cgg = c_kernel(F, std::nullopt);
    if (F.dim_t() > 0) {
        out.hyperplanes = gfp::hyperplanes(p, F.dim_t(), kEnumerationLimit);
        for (const Subspace& N : out.hyperplanes) out.c_of_n.push_back(c_kernel(F, N));
        out.c_family = out.c_of_n;
        std::sort(out.c_family.begin(), out.c_family.end());
        out.c_family.erase(std::unique(out.c_family.begin(), out.c_family.end()), out.c_family.end());
    }
    (void)S;
    return out;
}

Subgroup centralizer_of_derived(const Stratification& S) {
    return centralizer(S.lcs.terms[0], S.derived.igs());
}

Subgroup c_of_n_via_quotient(const Stratification& S, const Subgroup& N) {
    const PcGroup& G = S.V.top().group();
    const CentralQuotient Q(G, N);
    const PcGroup GQ(Q.presentation());
    std::vector<Element> image;
    for (const Element& u : S.derived.igs()) image.push_back(Q.project(u));
    const Subgroup CQ = centralizer(Subgroup::whole(GQ), image);
    std::vector<Element> lifted;
    for (const Element& q : CQ.igs()) lifted.push_back(Q.lift(q));
    return N.join(lifted);
}

PcPresentation subgroup_presentation(const Subgroup& H) {
    const PcGroup& G = H.group();
    const auto& u = H.igs();
    PcPresentation P(G.prime(), u.size());
    auto word_of = [&](const Element& h, std::size_t floor) {
        const auto c = H.coordinates(h);
        if (!c) throw InternalError("relation value is not in the subgroup");
        Word w;
        for (std::size_t s = 0; s < c->size(); ++s)
            if ((*c)[s] != 0) {
                if (s <= floor) throw InternalError("relation value is not deeper than its base");
                w.push_back({s, (*c)[s]});
            }
        return w;
    };
    for (std::size_t i = 0; i < u.size(); ++i) {
        P.set_power(i, word_of(G.power(u[i], G.prime()), i));
        for (std::size_t j = i + 1; j < u.size(); ++j) P.set_conjugate(j, i, word_of(G.commutator(u[j], u[i]), j));
    }
    return P;
}

}  // namespace pgrp
