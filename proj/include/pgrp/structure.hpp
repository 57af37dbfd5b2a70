#pragma once

// Series, centralizers, and the linearization of a class <= 3 group into the
// sections V = G/G', W = G'/G_3, T = G_3 with the commutator forms between
// them.

#include <cstdint>
#include <vector>

#include "pgrp/gfp.hpp"
#include "pgrp/subgroup.hpp"

namespace pgrp {

Subgroup commutator_subgroup(const Subgroup& H, const Subgroup& K);
Subgroup derived_subgroup(const Subgroup& H);

struct LowerCentralSeries {
    std::vector<Subgroup> terms;  // G = G_1 > G_2 > ... > 1
    std::size_t nilpotency_class;
};
LowerCentralSeries lower_central_series(const PcGroup& G);

// C_H(S) by lifting through the PC series one layer at a time.
Subgroup centralizer(const Subgroup& H, std::span<const Element> S);
Subgroup centralizer(const Subgroup& H, const Subgroup& S);
Subgroup center(const PcGroup& G);
Subgroup center(const Subgroup& H);
// Element-level version for small groups; ResourceError if |H| > limit.
Subgroup centralizer_bruteforce(const Subgroup& H, std::span<const Element> S, std::size_t limit);

struct UpperCentral {
    Subgroup z1;
    Subgroup z2;
};
UpperCentral upper_central(const PcGroup& G);

// Frattini subgroup G' G^p.
Subgroup frattini(const PcGroup& G);

// A section H/K with H/K elementary abelian, K normal in H. The basis is the
// IGS elements of H whose leading index is not a leading index of K.
class Section {
public:
    Section(const Subgroup& H, const Subgroup& K);

    const Subgroup& top() const noexcept { return H_; }
    const Subgroup& bottom() const noexcept { return K_; }
    std::size_t dim() const noexcept { return reps_.size(); }
    const std::vector<Element>& reps() const noexcept { return reps_; }

    // Coordinates of hK; h must lie in H.
    gfp::Vector coordinates(const Element& h) const;
    // prod reps_i^{v_i}.
    Element element(std::span<const gfp::Residue> v) const;
    // Full preimage in H of a subspace of H/K.
    Subgroup preimage(const gfp::Subspace& S) const;
    // Image of a subgroup L with K <= L <= H.
    gfp::Subspace image(const Subgroup& L) const;

private:
    Subgroup H_;
    Subgroup K_;
    std::vector<Element> reps_;
    std::vector<std::size_t> rep_leads_;
};

struct StratifyOptions {
    bool allow_class_two = false;  // class 2 input gets T trivial
    bool assert_camina = false;    // enforce |G:G'| = |G':G_3|^2 and n even
};

struct Stratification {
    LowerCentralSeries lcs;
    Subgroup derived;  // G'
    Subgroup g3;       // G_3 (trivial for class 2)
    Section V;         // G/G'
    Section W;         // G'/G_3
    Section T;         // G_3/1
    std::size_t dim_v() const { return V.dim(); }
    std::size_t dim_w() const { return W.dim(); }
    std::size_t dim_t() const { return T.dim(); }
};

// ClassError if the class is not 3 (or not 2 or 3 when allowed); ShapeError
// if assert_camina is set and the shape is wrong.
Stratification stratify(const PcGroup& G, StratifyOptions opts = {});

// B(u, x) = [u, x] G_3 in W and Cmap(w, x) = [w, x] in T, stored as tables
// over the section bases.
class CommutatorForms {
public:
    explicit CommutatorForms(const Stratification& S);

    std::uint32_t prime() const noexcept { return p_; }
    std::size_t dim_v() const noexcept { return dv_; }
    std::size_t dim_w() const noexcept { return dw_; }
    std::size_t dim_t() const noexcept { return dt_; }

    // dim_w x dim_v matrix of x -> B(a, x).
    gfp::Matrix b_map(std::span<const gfp::Residue> a) const;
    gfp::Vector b(std::span<const gfp::Residue> u, std::span<const gfp::Residue> x) const;
    // dim_t x dim_v matrix of x -> Cmap(w, x).
    gfp::Matrix c_map(std::span<const gfp::Residue> w) const;
    gfp::Vector c(std::span<const gfp::Residue> w, std::span<const gfp::Residue> x) const;

    // Entry tables: b_entry(i, j)[k], c_entry(k, j)[t].
    gfp::Residue b_entry(std::size_t i, std::size_t j, std::size_t k) const {
        return btab_[(i * dv_ + j) * dw_ + k];
    }
    gfp::Residue c_entry(std::size_t k, std::size_t j, std::size_t t) const {
        return ctab_[(k * dv_ + j) * dt_ + t];
    }

    // True iff B vanishes on K x K.
    bool totally_isotropic(const gfp::Subspace& K) const;

private:
    std::uint32_t p_;
    std::size_t dv_, dw_, dt_;
    std::vector<gfp::Residue> btab_;
    std::vector<gfp::Residue> ctab_;
};

struct FormsValidation {
    std::size_t samples;
    bool g_prime_abelian;
    bool b_consistent;
    bool c_consistent;
    bool ok() const { return g_prime_abelian && b_consistent && c_consistent; }
};

// Compares both forms with collected commutators of random elements and
// coset perturbations; deterministic for a given seed.
FormsValidation validate_forms(const Stratification& S, const CommutatorForms& F, std::size_t samples,
                               std::uint64_t seed);

}  // namespace pgrp
