#include "pgrp/structure.hpp"

#include <random>

#include "pgrp/error.hpp"

namespace pgrp {

using gfp::Matrix;
using gfp::Residue;
using gfp::Subspace;
using gfp::Vector;

Subgroup commutator_subgroup(const Subgroup& H, const Subgroup& K) {
    const PcGroup& G = H.group();
    std::vector<Element> gens;
    for (const Element& h : H.igs())
        for (const Element& k : K.igs()) gens.push_back(G.commutator(h, k));
    Subgroup C = Subgroup::generated(G, gens);
    // [H, K] is the normal closure of these commutators in <H, K>.
    std::vector<Element> conj_by = H.igs();
    conj_by.insert(conj_by.end(), K.igs().begin(), K.igs().end());
    for (;;) {
        std::vector<Element> extra;
        for (const Element& u : C.igs())
            for (const Element& y : conj_by) {
                Element c = G.conjugate(u, y);
                if (!C.contains(c)) extra.push_back(c);
            }
        if (extra.empty()) return C;
        C = C.join(extra);
    }
}

Subgroup derived_subgroup(const Subgroup& H) { return commutator_subgroup(H, H); }

LowerCentralSeries lower_central_series(const PcGroup& G) {
    LowerCentralSeries out{{Subgroup::whole(G)}, 0};
    const Subgroup whole = Subgroup::whole(G);
    while (!out.terms.back().is_trivial()) {
        Subgroup next = commutator_subgroup(out.terms.back(), whole);
        if (next == out.terms.back())
            throw InvariantError("lower central series stalls; the presentation is not nilpotent");
        out.terms.push_back(std::move(next));
    }
    out.nilpotency_class = out.terms.size() - 1;
    return out;
}

Subgroup centralizer(const Subgroup& H, std::span<const Element> S) {
    const PcGroup& G = H.group();
    const std::uint32_t p = G.prime();
    Subgroup C = H;
    // Invariant before level l: [s, c] lies in G_l for all c in C and s in S.
    for (std::size_t l = 0; l < G.ngens() && !C.is_trivial(); ++l) {
        const auto& u = C.igs();
        Matrix M(p, S.size(), u.size());
        bool any = false;
        for (std::size_t r = 0; r < S.size(); ++r)
            for (std::size_t j = 0; j < u.size(); ++j) {
                const Exponent e = G.commutator(S[r], u[j])[l];
                if (e != 0) {
                    M.set(r, j, e);
                    any = true;
                }
            }
        if (!any) continue;
        const Subspace null = gfp::rref_nullspace(M).nullspace;
        std::vector<Element> gens;
        for (std::size_t b = 0; b < null.dim(); ++b) {
            const Vector v = null.basis_vector(b);
            std::vector<Exponent> coeffs(v.begin(), v.end());
            gens.push_back(C.combine(coeffs));
        }
        C = Subgroup::generated(G, gens);
    }
    return C;
}

Subgroup centralizer(const Subgroup& H, const Subgroup& S) { return centralizer(H, S.igs()); }

Subgroup center(const Subgroup& H) { return centralizer(H, H.igs()); }

Subgroup center(const PcGroup& G) {
    std::vector<Element> gens;
    for (std::size_t i = 0; i < G.ngens(); ++i) gens.push_back(G.generator(i));
    return centralizer(Subgroup::whole(G), gens);
}

Subgroup centralizer_bruteforce(const Subgroup& H, std::span<const Element> S, std::size_t limit) {
    const PcGroup& G = H.group();
    std::vector<Element> keep;
    for (const Element& h : H.elements(limit)) {
        bool ok = true;
        for (const Element& s : S)
            if (G.multiply(s, h) != G.multiply(h, s)) {
                ok = false;
                break;
            }
        if (ok) keep.push_back(h);
    }
    return Subgroup::generated(G, keep);
}

UpperCentral upper_central(const PcGroup& G) {
    Subgroup z1 = center(G);
    CentralQuotient Q(G, z1);
    PcGroup GQ(Q.presentation());
    const Subgroup zq = center(GQ);
    std::vector<Element> lifted;
    for (const Element& q : zq.igs()) lifted.push_back(Q.lift(q));
    Subgroup z2 = z1.join(lifted);
    return {std::move(z1), std::move(z2)};
}

Subgroup frattini(const PcGroup& G) {
    const Subgroup whole = Subgroup::whole(G);
    Subgroup phi = derived_subgroup(whole);
    std::vector<Element> powers;
    for (std::size_t i = 0; i < G.ngens(); ++i) powers.push_back(G.power(G.generator(i), G.prime()));
    return phi.join(powers);
}

// --------------------------------------------------------------- Section

Section::Section(const Subgroup& H, const Subgroup& K) : H_(H), K_(K) {
    if (!H.contains(K)) throw InvariantError("section bottom is not contained in top");
    for (std::size_t s = 0; s < H.igs().size(); ++s) {
        const std::size_t l = H.leading_indices()[s];
        if (!K.has_lead(l)) {
            reps_.push_back(H.igs()[s]);
            rep_leads_.push_back(l);
        }
    }
}

Vector Section::coordinates(const Element& h) const {
    const PcGroup& G = H_.group();
    const std::uint32_t p = G.prime();
    Vector v(reps_.size(), 0);
    Element r = K_.reduce(h);
    while (!r.is_identity()) {
        const std::size_t l = r.leading_index();
        std::size_t idx = 0;
        while (idx < rep_leads_.size() && rep_leads_[idx] != l) ++idx;
        if (idx == rep_leads_.size())
            throw DomainError("element " + G.format(h) + " does not lie in the section top");
        const Exponent c = r[l];
        v[idx] = gfp::add(v[idx], static_cast<Residue>(c), p);
        r = K_.reduce(G.multiply(G.power(reps_[idx], -static_cast<long long>(c)), r));
    }
    return v;
}

Element Section::element(std::span<const Residue> v) const {
    if (v.size() != reps_.size()) throw DimensionError("section vector has wrong length");
    const PcGroup& G = H_.group();
    Element r;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) r = G.multiply(r, G.power(reps_[i], v[i]));
    return r;
}

Subgroup Section::preimage(const Subspace& S) const {
    if (S.ambient_dim() != dim()) throw DimensionError("subspace does not match section dimension");
    std::vector<Element> gens;
    for (std::size_t b = 0; b < S.dim(); ++b) gens.push_back(element(S.basis_vector(b)));
    return K_.join(gens);
}

Subspace Section::image(const Subgroup& L) const {
    std::vector<Vector> rows;
    for (const Element& u : L.igs()) rows.push_back(coordinates(u));
    return Subspace::span(H_.group().prime(), dim(), rows);
}

// -------------------------------------------------------- Stratification

Stratification stratify(const PcGroup& G, StratifyOptions opts) {
    LowerCentralSeries lcs = lower_central_series(G);
    const std::size_t cls = lcs.nilpotency_class;
    if (!(cls == 3 || (opts.allow_class_two && cls == 2)))
        throw ClassError("stratification needs nilpotence class 3" +
                         std::string(opts.allow_class_two ? " or 2" : "") + ", got class " +
                         std::to_string(cls));
    Subgroup derived = lcs.terms[1];
    Subgroup g3 = lcs.terms[2];
    Subgroup trivial = Subgroup::trivial(G);
    Section V(lcs.terms[0], derived);
    Section W(derived, g3);
    Section T(g3, trivial);
    // The forms live over GF(p), so each layer must be elementary abelian.
    // Commutators are automatic: [G', G'] <= G_4 = 1 and G_3 is central.
    auto require_elementary = [&](const Section& S, const char* name) {
        for (const Element& u : S.reps())
            if (!S.bottom().contains(G.power(u, G.prime())))
                throw ShapeError(std::string(name) + " is not elementary abelian");
    };
    require_elementary(V, "G/G'");
    require_elementary(W, "G'/G_3");
    require_elementary(T, "G_3");
    if (opts.assert_camina) {
        if (V.dim() != 2 * W.dim())
            throw ShapeError("|G:G'| = p^" + std::to_string(V.dim()) + " is not |G':G_3|^2 = p^" +
                             std::to_string(2 * W.dim()));
        if (W.dim() % 2 != 0)
            throw ShapeError("|G':G_3| = p^" + std::to_string(W.dim()) + " is not a square");
    }
    return Stratification{std::move(lcs), std::move(derived), std::move(g3), std::move(V), std::move(W),
                          std::move(T)};
}

// ------------------------------------------------------- CommutatorForms

CommutatorForms::CommutatorForms(const Stratification& S)
    : p_(S.V.top().group().prime()),
      dv_(S.dim_v()),
      dw_(S.dim_w()),
      dt_(S.dim_t()),
      btab_(dv_ * dv_ * dw_),
      ctab_(dw_ * dv_ * dt_) {
    const PcGroup& G = S.V.top().group();
    const auto& top = S.V.reps();
    const auto& mid = S.W.reps();
    for (std::size_t i = 0; i < dv_; ++i)
        for (std::size_t j = 0; j < dv_; ++j) {
            const Vector w = S.W.coordinates(G.commutator(top[i], top[j]));
            std::copy(w.begin(), w.end(), btab_.begin() + static_cast<std::ptrdiff_t>((i * dv_ + j) * dw_));
        }
    for (std::size_t k = 0; k < dw_; ++k)
        for (std::size_t j = 0; j < dv_; ++j) {
            const Vector t = S.T.coordinates(G.commutator(mid[k], top[j]));
            std::copy(t.begin(), t.end(), ctab_.begin() + static_cast<std::ptrdiff_t>((k * dv_ + j) * dt_));
        }
}

Matrix CommutatorForms::b_map(std::span<const Residue> a) const {
    Matrix M(p_, dw_, dv_);
    for (std::size_t j = 0; j < dv_; ++j)
        for (std::size_t k = 0; k < dw_; ++k) {
            std::uint64_t acc = 0;
            for (std::size_t i = 0; i < dv_; ++i) acc += std::uint64_t{a[i]} * b_entry(i, j, k);
            M.set(k, j, static_cast<long long>(acc % p_));
        }
    return M;
}

Vector CommutatorForms::b(std::span<const Residue> u, std::span<const Residue> x) const {
    return b_map(u).apply(x);
}

Matrix CommutatorForms::c_map(std::span<const Residue> w) const {
    Matrix M(p_, dt_, dv_);
    for (std::size_t j = 0; j < dv_; ++j)
        for (std::size_t t = 0; t < dt_; ++t) {
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < dw_; ++k) acc += std::uint64_t{w[k]} * c_entry(k, j, t);
            M.set(t, j, static_cast<long long>(acc % p_));
        }
    return M;
}

Vector CommutatorForms::c(std::span<const Residue> w, std::span<const Residue> x) const {
    return c_map(w).apply(x);
}

bool CommutatorForms::totally_isotropic(const Subspace& K) const {
    for (std::size_t a = 0; a < K.dim(); ++a) {
        const Matrix M = b_map(K.basis_vector(a));
        for (std::size_t b = a + 1; b < K.dim(); ++b) {
            const Vector w = M.apply(K.basis_vector(b));
            for (Residue r : w)
                if (r != 0) return false;
        }
    }
    return true;
}

FormsValidation validate_forms(const Stratification& S, const CommutatorForms& F, std::size_t samples,
                               std::uint64_t seed) {
    const PcGroup& G = S.V.top().group();
    const std::uint32_t p = G.prime();
    std::mt19937_64 rng(seed);
    auto random_in = [&](const Subgroup& H) {
        std::vector<Exponent> c(H.order_exponent());
        for (auto& e : c) e = static_cast<Exponent>(rng() % p);
        return H.combine(c);
    };
    FormsValidation out{samples, true, true, true};

    const auto& dig = S.derived.igs();
    for (std::size_t a = 0; a < dig.size() && out.g_prime_abelian; ++a)
        for (std::size_t b = a + 1; b < dig.size(); ++b)
            if (!G.commutator(dig[a], dig[b]).is_identity()) {
                out.g_prime_abelian = false;
                break;
            }

    const Subgroup& whole = S.lcs.terms[0];
    for (std::size_t s = 0; s < samples; ++s) {
        const Element u = random_in(whole);
        const Element x = random_in(whole);
        const Element g = random_in(S.derived);
        // u and u*g share a coset of G', so both must give the tabulated value.
        const Vector expect = F.b(S.V.coordinates(u), S.V.coordinates(x));
        if (S.W.coordinates(G.commutator(u, x)) != expect ||
            S.W.coordinates(G.commutator(G.multiply(u, g), x)) != expect)
            out.b_consistent = false;

        const Element w = random_in(S.derived);
        const Element t = random_in(S.g3);
        const Vector expect_c = F.c(S.W.coordinates(w), S.V.coordinates(x));
        if (S.T.coordinates(G.commutator(w, x)) != expect_c ||
            S.T.coordinates(G.commutator(G.multiply(w, t), x)) != expect_c)
            out.c_consistent = false;
    }
    return out;
}

}  // namespace pgrp
