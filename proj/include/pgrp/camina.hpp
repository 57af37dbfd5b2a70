#pragma once

// Camina-type predicates and the centralizer families of a group of class
// at most 3.

#include <optional>
#include <string>
#include <vector>

#include "pgrp/structure.hpp"

namespace pgrp {

enum class CheckMode { fast, all };

// ---------------------------------------------------------------- covers

struct CoverResult {
    bool covered = false;    // every element of gK was reached
    bool exhausted = false;  // the whole transversal was walked
    std::size_t steps = 0;
};

// IGS elements of H at leading indices that L lacks, deepest first. Their
// products y_1^{f_1} ... y_r^{f_r} form a transversal of L in H when L is
// normal in H.
std::vector<Element> transversal_factors(const Subgroup& H, const Subgroup& L);

// Walks x over the products y_1^{f_1} ... y_r^{f_r} (last factor fastest)
// and records g^x, which must lie in gK. Stops as soon as all |K| elements of
// gK are reached or after `budget` conjugations (0 = unbounded).
CoverResult conjugates_cover(const PcGroup& G, const Element& g, std::span<const Element> factors,
                             const Subgroup& K, std::size_t budget = 0);

// ----------------------------------------------------------------- camina

struct CaminaOptions {
    CheckMode mode = CheckMode::all;
    std::size_t budget = 1u << 14;  // per-coset conjugation cap for bounded passes
    unsigned threads = 1;
};

struct CaminaVerdict {
    bool camina = false;
    std::optional<std::string> degenerate;  // "abelian" or "perfect"
    bool complete = true;                   // false means bounded-incomplete
    std::string method;                     // "enumeration", "linear", "bounded"
    std::size_t cosets = 0;
    std::size_t steps = 0;
    std::optional<Element> witness;  // coset representative with a short class
};

CaminaVerdict is_camina(const PcGroup& G, const CaminaOptions& opts = {});

// ---------------------------------------------------------- special class

enum class SpecialClass { none, semiextraspecial, ultraspecial };
std::string to_string(SpecialClass c);

bool is_extraspecial(const PcGroup& G);
// Quotients by every index-p subgroup of the center.
SpecialClass special_class(const PcGroup& G);
// Class 2, Z = G' = Frattini, and every nonzero functional composed with the
// commutator form is nondegenerate.
SpecialClass special_class_fast(const PcGroup& G);

// ------------------------------------------------------------------ VZ

struct VzResult {
    bool vz = false;
    std::size_t cosets = 0;
    std::optional<Element> witness;
};
VzResult is_vz(const Subgroup& H);

// --------------------------------------------------------------- families

// A(a) = {x : [a, x] in G_3}; DomainError if a lies in G', ContradictionError
// if its index differs from |G':G_3|.
Subgroup subgroup_A(const Stratification& S, const CommutatorForms& F, const Element& a);

struct FamilyMember {
    gfp::Subspace kernel;  // A/G' inside V
    std::size_t points;    // projective points of V giving this member
    bool star;             // kernel totally isotropic, i.e. A/G_3 abelian
};

struct Families {
    std::size_t projective_points = 0;
    std::size_t rank_defects = 0;  // points where B(a, .) is not onto W
    std::optional<gfp::Vector> first_rank_defect;
    std::vector<FamilyMember> members;  // sorted by kernel
    std::vector<std::size_t> star;      // indices into members
    gfp::Subspace cgg;                  // C_G(G')/G'
    std::vector<gfp::Subspace> hyperplanes;  // index-p subgroups N of G_3, in T
    std::vector<gfp::Subspace> c_of_n;       // C(N)/G' for each hyperplane
    std::vector<gfp::Subspace> c_family;     // distinct C(N)/G', sorted

    std::optional<std::size_t> find(const gfp::Subspace& K) const;
};

Families compute_families(const Stratification& S, const CommutatorForms& F, unsigned threads = 1);

// ker of x -> B(a, x) on V.
gfp::Subspace a_kernel(const CommutatorForms& F, std::span<const gfp::Residue> a);
// [G', A] as a subspace of T, for A/G' = K.
gfp::Subspace derived_bracket(const CommutatorForms& F, const gfp::Subspace& K);
// {x : lambda(Cmap(w, x)) = 0 for all w} for the hyperplane N = ker lambda;
// the common kernel when N is not given.
gfp::Subspace c_kernel(const CommutatorForms& F, const std::optional<gfp::Subspace>& N);

// C_G(G') as a subgroup, by the layered centralizer on elements.
Subgroup centralizer_of_derived(const Stratification& S);
// C(N) through the central quotient G/N.
Subgroup c_of_n_via_quotient(const Stratification& S, const Subgroup& N);

// Induced presentation of H on its IGS.
PcPresentation subgroup_presentation(const Subgroup& H);

}  // namespace pgrp
