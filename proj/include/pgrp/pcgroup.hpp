#pragma once

// Power-conjugate presentations of finite p-groups and exact arithmetic on
// their normal-form elements.
//
// A presentation on generators x_1, ..., x_n (0-based internally) consists of
//   x_i^p          = pow(i)         (a word in generators > i)
//   x_i^-1 x_j x_i = x_j conj(j,i)  (i < j, a word in generators > j)
// with every omitted relation trivial. Elements are exponent vectors
// (e_1, ..., e_n), 0 <= e_k < p, standing for x_1^e_1 ... x_n^e_n.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pgrp {

inline constexpr std::size_t kMaxGens = 64;
using Exponent = std::uint16_t;

class Element {
public:
    Element() { exps_.fill(0); }

    Exponent operator[](std::size_t i) const noexcept { return exps_[i]; }
    Exponent& operator[](std::size_t i) noexcept { return exps_[i]; }

    bool is_identity() const noexcept;
    // Index of the first nonzero exponent, or kMaxGens for the identity.
    std::size_t leading_index() const noexcept;

    std::span<const Exponent> exponents(std::size_t ngens) const noexcept {
        return {exps_.data(), ngens};
    }

    bool operator==(const Element&) const = default;
    auto operator<=>(const Element&) const = default;

    std::size_t hash() const noexcept;

private:
    std::array<Exponent, kMaxGens> exps_;
};

struct ElementHash {
    std::size_t operator()(const Element& e) const noexcept { return e.hash(); }
};

struct Factor {
    std::size_t gen;
    Exponent exp;
    bool operator==(const Factor&) const = default;
};

// Normalized words have strictly increasing generators and exponents in
// [1, p-1].
using Word = std::vector<Factor>;

class PcPresentation {
public:
    PcPresentation(std::uint32_t p, std::size_t ngens);

    std::uint32_t prime() const noexcept { return p_; }
    std::size_t ngens() const noexcept { return ngens_; }

    const Word& power(std::size_t i) const { return pow_.at(i); }
    const Word& conjugate(std::size_t j, std::size_t i) const;

    // Both throw InvariantError if the word is not normalized or mentions a
    // generator that is not strictly deeper than the relation allows.
    void set_power(std::size_t i, Word tail);
    void set_conjugate(std::size_t j, std::size_t i, Word tail);

    bool operator==(const PcPresentation&) const = default;

private:
    void validate_word(const Word& w, std::size_t floor, const std::string& what) const;

    std::uint32_t p_;
    std::size_t ngens_;
    std::vector<Word> pow_;
    std::vector<Word> conj_;  // conj_[j * ngens + i], i < j
};

PcPresentation parse_presentation(std::string_view text);
PcPresentation load_presentation(const std::string& path);
std::string serialize(const PcPresentation& pres);

// Collector and derived arithmetic for one presentation. Instances are
// immutable after construction and pinned in memory (subgroups keep a pointer
// to their group), so they are neither copyable nor movable.
class PcGroup {
public:
    explicit PcGroup(PcPresentation pres);
    PcGroup(const PcGroup&) = delete;
    PcGroup& operator=(const PcGroup&) = delete;

    const PcPresentation& presentation() const noexcept { return pres_; }
    std::uint32_t prime() const noexcept { return pres_.prime(); }
    std::size_t ngens() const noexcept { return pres_.ngens(); }

    Element identity() const { return Element{}; }
    Element generator(std::size_t i, Exponent e = 1) const;
    Element from_exponents(std::span<const Exponent> exps) const;
    Element word_element(const Word& w) const;

    Element multiply(const Element& a, const Element& b) const;
    Element inverse(const Element& a) const;
    Element power(const Element& a, long long k) const;
    // b^-1 a b
    Element conjugate(const Element& a, const Element& b) const;
    Element conjugate_by_generator(const Element& a, std::size_t i) const;
    // a^-1 b^-1 a b
    Element commutator(const Element& a, const Element& b) const;

    // Multiply `acc` on the right by x_i^e in place.
    void multiply_generator(Element& acc, std::size_t i, Exponent e) const;

    std::string format(const Element& e) const;

private:
    struct Letter {
        std::uint16_t gen;
        Exponent exp;
    };
    void collect(Element& r, std::vector<Letter>& stack) const;
    static std::vector<Letter>& scratch();

    PcPresentation pres_;
    std::uint32_t p_;
    std::size_t n_;
    std::vector<std::vector<Letter>> pow_letters_;    // per generator, reversed
    std::vector<std::vector<Letter>> conj_letters_;   // x_k^{x_g} for k > g, reversed
    std::vector<bool> conj_trivial_;                  // conj(k, g) empty
    std::vector<Element> generator_inverse_;
};

struct ConsistencyWitness {
    std::string test;  // "kji", "jpow-i", "j-ipow", "ipow-i"
    std::size_t k, j, i;
    Element lhs, rhs;
};

struct ConsistencyReport {
    bool consistent;
    std::optional<ConsistencyWitness> witness;
};

// Runs the overlap tests by collection and reports the first failure.
ConsistencyReport check_consistency(const PcGroup& G);

}  // namespace pgrp
