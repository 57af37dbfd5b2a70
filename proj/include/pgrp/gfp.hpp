#pragma once

// Exact linear algebra over the prime field GF(p), plus a small facility for
// GF(p^d) arithmetic in a power basis.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pgrp::gfp {

using Residue = std::uint16_t;
using Vector = std::vector<Residue>;

inline constexpr std::uint32_t kMaxPrime = 1u << 15;

bool is_prime(std::uint32_t n) noexcept;

// Throws DomainError unless p is a prime not exceeding kMaxPrime.
void require_prime(std::uint32_t p);

// p^k, or ResourceError if it would exceed `limit`.
std::size_t checked_power(std::uint32_t p, std::size_t k, std::size_t limit);

inline Residue add(Residue a, Residue b, std::uint32_t p) noexcept {
    std::uint32_t s = std::uint32_t{a} + b;
    return static_cast<Residue>(s >= p ? s - p : s);
}
inline Residue sub(Residue a, Residue b, std::uint32_t p) noexcept {
    return static_cast<Residue>(a >= b ? a - b : a + p - b);
}
inline Residue neg(Residue a, std::uint32_t p) noexcept {
    return static_cast<Residue>(a == 0 ? 0 : p - a);
}
inline Residue mul(Residue a, Residue b, std::uint32_t p) noexcept {
    return static_cast<Residue>((std::uint32_t{a} * b) % p);
}
Residue inv(Residue a, std::uint32_t p);
Residue reduce(long long value, std::uint32_t p) noexcept;

class Matrix {
public:
    Matrix(std::uint32_t p, std::size_t rows, std::size_t cols);

    static Matrix identity(std::uint32_t p, std::size_t n);
    // Rows must all have length `cols`; entries are reduced mod p.
    static Matrix from_rows(std::uint32_t p, std::size_t cols, const std::vector<Vector>& rows);

    std::uint32_t prime() const noexcept { return p_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Residue operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, long long value) noexcept {
        data_[r * cols_ + c] = reduce(value, p_);
    }
    std::span<const Residue> row(std::size_t r) const noexcept {
        return {data_.data() + r * cols_, cols_};
    }
    Vector row_vector(std::size_t r) const { return {row(r).begin(), row(r).end()}; }

    Matrix transposed() const;
    Vector apply(std::span<const Residue> v) const;  // M * v
    Matrix stacked(const Matrix& below) const;

    bool operator==(const Matrix&) const = default;
    std::strong_ordering operator<=>(const Matrix& other) const;

private:
    friend class Subspace;
    std::uint32_t p_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Residue> data_;
};

struct Rref {
    Matrix reduced;  // zero rows kept at the bottom, same shape as the input
    std::size_t rank;
    std::vector<std::size_t> pivots;
};

Rref rref(const Matrix& m);

// A subspace of GF(p)^n, held as the nonzero rows of its reduced row echelon
// form. Equal spans always produce identical bases.
class Subspace {
public:
    Subspace() : Subspace(2, 0) {}
    Subspace(std::uint32_t p, std::size_t ambient_dim);  // zero subspace

    static Subspace span(std::uint32_t p, std::size_t ambient_dim, const std::vector<Vector>& gens);
    static Subspace row_space(const Matrix& m);
    static Subspace full(std::uint32_t p, std::size_t ambient_dim);

    std::uint32_t prime() const noexcept { return basis_.prime(); }
    std::size_t ambient_dim() const noexcept { return basis_.cols(); }
    std::size_t dim() const noexcept { return basis_.rows(); }
    bool is_zero() const noexcept { return dim() == 0; }
    const Matrix& basis() const noexcept { return basis_; }
    Vector basis_vector(std::size_t i) const { return basis_.row_vector(i); }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    bool member(std::span<const Residue> v) const;
    bool contains(const Subspace& other) const;
    // Coefficients of v in the RREF basis, if v lies in the span.
    std::optional<Vector> coordinates(std::span<const Residue> v) const;
    Vector combine(std::span<const Residue> coeffs) const;

    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;
    // Orthogonal complement for the standard dot product.
    Subspace annihilator() const;

    // All p^dim vectors in lexicographic order; ResourceError past `limit`.
    std::vector<Vector> vectors(std::size_t limit) const;

    bool operator==(const Subspace& other) const { return basis_ == other.basis_; }
    std::strong_ordering operator<=>(const Subspace& other) const { return basis_ <=> other.basis_; }

    std::string to_string() const;

private:
    explicit Subspace(Matrix reduced_nonzero, std::vector<std::size_t> pivots);
    void require_compatible(const Subspace& other) const;

    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

struct RrefNullspace {
    Matrix reduced;
    std::size_t rank;
    Subspace nullspace;  // right null space {v : M v = 0}
};

RrefNullspace rref_nullspace(const Matrix& m);

// Nonzero vectors of GF(p)^d whose first nonzero coordinate is 1, in
// lexicographic order: one representative per 1-dimensional subspace.
std::vector<Vector> projective_points(std::uint32_t p, std::size_t d, std::size_t limit);

// All (p^d - 1)/(p - 1) codimension-1 subspaces of GF(p)^d, ordered by their
// normalized defining functional.
std::vector<Subspace> hyperplanes(std::uint32_t p, std::size_t d, std::size_t limit);

// Every subspace of GF(p)^d, zero and full included, sorted.
std::vector<Subspace> all_subspaces(std::uint32_t p, std::size_t d, std::size_t limit);

// Monic polynomial arithmetic over GF(p); coefficient vectors are low degree
// first.
bool is_irreducible(std::uint32_t p, const Vector& monic);

// GF(p^d) = GF(p)[t] / (modulus), elements stored in the power basis
// 1, t, ..., t^{d-1}.
class FieldExt {
public:
    using Element = Vector;

    FieldExt(std::uint32_t p, Vector monic_modulus);

    // The monic irreducible of degree d whose coefficient tuple
    // (c_{d-1}, ..., c_0) is lexicographically least.
    static FieldExt least_irreducible(std::uint32_t p, std::size_t degree);

    std::uint32_t prime() const noexcept { return p_; }
    std::size_t degree() const noexcept { return modulus_.size() - 1; }
    const Vector& modulus() const noexcept { return modulus_; }

    Element zero() const { return Element(degree(), 0); }
    Element one() const;
    Element basis_element(std::size_t i) const;
    Element add(const Element& a, const Element& b) const;
    Element multiply(const Element& a, const Element& b) const;

private:
    std::uint32_t p_;
    Vector modulus_;
};

}  // namespace pgrp::gfp
