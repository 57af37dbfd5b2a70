#pragma once

// Subgroups of a PC group held as canonical induced generating sequences.
//
// The IGS u_1, ..., u_k has strictly increasing leading indices, leading
// exponent 1, and each u_i has exponent 0 at the leading index of every other
// u_j. That form is unique per subgroup, so equality is list equality.

#include <optional>
#include <span>
#include <vector>

#include "pgrp/pcgroup.hpp"

namespace pgrp {

class Subgroup {
public:
    static Subgroup trivial(const PcGroup& G);
    static Subgroup whole(const PcGroup& G);
    static Subgroup generated(const PcGroup& G, std::span<const Element> gens);
    // Smallest normal subgroup of G containing `gens`.
    static Subgroup normal_closure(const PcGroup& G, std::span<const Element> gens);

    const PcGroup& group() const noexcept { return *G_; }
    const std::vector<Element>& igs() const noexcept { return igs_; }
    std::size_t order_exponent() const noexcept { return igs_.size(); }
    const std::vector<std::size_t>& leading_indices() const noexcept { return leads_; }
    bool has_lead(std::size_t l) const noexcept { return slot_[l] >= 0; }
    bool is_trivial() const noexcept { return igs_.empty(); }

    bool contains(const Element& h) const;
    bool contains(const Subgroup& K) const;

    // Canonical representative of the coset h K: the unique element of hK
    // with exponent 0 at every leading index of this subgroup.
    Element reduce(const Element& h) const;

    // Exponents c with h = u_1^c_1 ... u_k^c_k, or nullopt if h is not a member.
    std::optional<std::vector<Exponent>> coordinates(const Element& h) const;
    Element combine(std::span<const Exponent> coeffs) const;

    // All p^k elements, ordered by coordinate tuple; ResourceError past limit.
    std::vector<Element> elements(std::size_t limit) const;

    Subgroup join(const Subgroup& other) const;
    Subgroup join(std::span<const Element> extra) const;
    bool is_normal() const;

    bool operator==(const Subgroup& other) const { return igs_ == other.igs_; }
    auto operator<=>(const Subgroup& other) const { return igs_ <=> other.igs_; }

private:
    explicit Subgroup(const PcGroup& G);
    void close(std::vector<Element> pending);
    void canonicalize();
    Element power_of(std::size_t slot, Exponent e) const;  // u_slot^e

    const PcGroup* G_;
    std::vector<Element> igs_;
    std::vector<std::size_t> leads_;
    std::vector<int> slot_;  // leading index -> position in igs_, or -1
};

// G/N for a central subgroup N, presented on the generators of G that are
// not leading indices of N.
class CentralQuotient {
public:
    CentralQuotient(const PcGroup& G, const Subgroup& N);  // NotCentralError

    const PcPresentation& presentation() const noexcept { return pres_; }
    const std::vector<std::size_t>& kept_generators() const noexcept { return kept_; }
    Element project(const Element& g) const;
    Element lift(const Element& q) const;

private:
    const PcGroup* G_;
    Subgroup N_;
    std::vector<std::size_t> kept_;
    PcPresentation pres_;
};

}  // namespace pgrp
