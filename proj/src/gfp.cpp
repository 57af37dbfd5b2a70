#include "pgrp/gfp.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "pgrp/error.hpp"

namespace pgrp::gfp {

bool is_prime(std::uint32_t n) noexcept {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void require_prime(std::uint32_t p) {
    if (p > kMaxPrime) throw DomainError("prime " + std::to_string(p) + " exceeds cap 2^15");
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
}

std::size_t checked_power(std::uint32_t p, std::size_t k, std::size_t limit) {
    std::size_t result = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (result > limit / p)
            throw ResourceError(std::to_string(p) + "^" + std::to_string(k) +
                                " exceeds enumeration limit " + std::to_string(limit));
        result *= p;
    }
    if (result > limit)
        throw ResourceError(std::to_string(p) + "^" + std::to_string(k) +
                            " exceeds enumeration limit " + std::to_string(limit));
    return result;
}

Residue inv(Residue a, std::uint32_t p) {
    if (a % p == 0) throw DomainError("inverse of zero in GF(" + std::to_string(p) + ")");
    long long t = 0, new_t = 1, r = p, new_r = a % p;
    while (new_r != 0) {
        long long q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    return reduce(t, p);
}

Residue reduce(long long value, std::uint32_t p) noexcept {
    long long r = value % static_cast<long long>(p);
    if (r < 0) r += p;
    return static_cast<Residue>(r);
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(std::uint32_t p, std::size_t n) {
    Matrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
    return m;
}

Matrix Matrix::from_rows(std::uint32_t p, std::size_t cols, const std::vector<Vector>& rows) {
    Matrix m(p, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw DimensionError("row of length " + std::to_string(rows[r].size()) +
                                 " in matrix with " + std::to_string(cols) + " columns");
        for (std::size_t c = 0; c < cols; ++c) m.data_[r * cols + c] = rows[r][c] % p;
    }
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(p_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = (*this)(r, c);
    return t;
}

Vector Matrix::apply(std::span<const Residue> v) const {
    if (v.size() != cols_) throw DimensionError("matrix-vector size mismatch");
    Vector out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) acc += std::uint64_t{(*this)(r, c)} * v[c];
        out[r] = static_cast<Residue>(acc % p_);
    }
    return out;
}

Matrix Matrix::stacked(const Matrix& below) const {
    if (below.cols_ != cols_ || below.p_ != p_) throw DimensionError("cannot stack matrices");
    Matrix m(p_, rows_ + below.rows_, cols_);
    std::copy(data_.begin(), data_.end(), m.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(),
              m.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return m;
}

std::strong_ordering Matrix::operator<=>(const Matrix& other) const {
    if (auto c = p_ <=> other.p_; c != 0) return c;
    if (auto c = rows_ <=> other.rows_; c != 0) return c;
    if (auto c = cols_ <=> other.cols_; c != 0) return c;
    return std::lexicographical_compare_three_way(data_.begin(), data_.end(), other.data_.begin(),
                                                  other.data_.end());
}

Rref rref(const Matrix& m) {
    const std::uint32_t p = m.prime();
    Matrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t sel = row;
        while (sel < a.rows() && a(sel, col) == 0) ++sel;
        if (sel == a.rows()) continue;
        if (sel != row)
            for (std::size_t c = 0; c < a.cols(); ++c) {
                Residue tmp = a(row, c);
                a.set(row, c, a(sel, c));
                a.set(sel, c, tmp);
            }
        const Residue scale = inv(a(row, col), p);
        for (std::size_t c = col; c < a.cols(); ++c) a.set(row, c, mul(a(row, c), scale, p));
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row) continue;
            const Residue f = a(r, col);
            if (f == 0) continue;
            for (std::size_t c = col; c < a.cols(); ++c)
                a.set(r, c, sub(a(r, c), mul(f, a(row, c), p), p));
        }
        pivots.push_back(col);
        ++row;
    }
    return Rref{std::move(a), pivots.size(), std::move(pivots)};
}

RrefNullspace rref_nullspace(const Matrix& m) {
    const std::uint32_t p = m.prime();
    Rref r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : r.pivots) is_pivot[c] = true;
    std::vector<Vector> gens;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vector v(m.cols(), 0);
        v[f] = 1;
        for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = neg(r.reduced(i, f), p);
        gens.push_back(std::move(v));
    }
    Subspace ns = Subspace::span(p, m.cols(), gens);
    return RrefNullspace{std::move(r.reduced), r.rank, std::move(ns)};
}

// -------------------------------------------------------------- Subspace

Subspace::Subspace(std::uint32_t p, std::size_t ambient_dim) : basis_(p, 0, ambient_dim) {}

Subspace::Subspace(Matrix reduced_nonzero, std::vector<std::size_t> pivots)
    : basis_(std::move(reduced_nonzero)), pivots_(std::move(pivots)) {}

Subspace Subspace::row_space(const Matrix& m) {
    Rref r = rref(m);
    Matrix basis(m.prime(), r.rank, m.cols());
    std::copy(r.reduced.data_.begin(),
              r.reduced.data_.begin() + static_cast<std::ptrdiff_t>(r.rank * m.cols()),
              basis.data_.begin());
    return Subspace(std::move(basis), std::move(r.pivots));
}

Subspace Subspace::span(std::uint32_t p, std::size_t ambient_dim, const std::vector<Vector>& gens) {
    return row_space(Matrix::from_rows(p, ambient_dim, gens));
}

Subspace Subspace::full(std::uint32_t p, std::size_t ambient_dim) {
    return row_space(Matrix::identity(p, ambient_dim));
}

void Subspace::require_compatible(const Subspace& other) const {
    if (other.prime() != prime() || other.ambient_dim() != ambient_dim())
        throw DimensionError("subspaces of GF(" + std::to_string(prime()) + ")^" +
                             std::to_string(ambient_dim()) + " and GF(" +
                             std::to_string(other.prime()) + ")^" +
                             std::to_string(other.ambient_dim()) + " are not comparable");
}

std::optional<Vector> Subspace::coordinates(std::span<const Residue> v) const {
    if (v.size() != ambient_dim()) throw DimensionError("vector length does not match ambient dimension");
    const std::uint32_t p = prime();
    Vector rest(v.begin(), v.end());
    Vector coeffs(dim(), 0);
    for (std::size_t i = 0; i < dim(); ++i) {
        const Residue c = rest[pivots_[i]];
        coeffs[i] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < ambient_dim(); ++j)
            rest[j] = sub(rest[j], mul(c, basis_(i, j), p), p);
    }
    if (std::any_of(rest.begin(), rest.end(), [](Residue x) { return x != 0; })) return std::nullopt;
    return coeffs;
}

bool Subspace::member(std::span<const Residue> v) const { return coordinates(v).has_value(); }

Vector Subspace::combine(std::span<const Residue> coeffs) const {
    if (coeffs.size() != dim()) throw DimensionError("coefficient count does not match dimension");
    const std::uint32_t p = prime();
    Vector out(ambient_dim(), 0);
    for (std::size_t i = 0; i < dim(); ++i) {
        if (coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < ambient_dim(); ++j)
            out[j] = add(out[j], mul(coeffs[i], basis_(i, j), p), p);
    }
    return out;
}

bool Subspace::contains(const Subspace& other) const {
    require_compatible(other);
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!member(other.basis_.row(i))) return false;
    return true;
}

Subspace Subspace::sum(const Subspace& other) const {
    require_compatible(other);
    return row_space(basis_.stacked(other.basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
    require_compatible(other);
    const std::uint32_t p = prime();
    const std::size_t da = dim(), db = other.dim(), n = ambient_dim();
    // Columns a_1..a_da, -b_1..-b_db; a kernel vector (alpha, beta) gives the
    // common vector sum alpha_i a_i.
    Matrix system(p, n, da + db);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < da; ++i) system.set(j, i, basis_(i, j));
        for (std::size_t i = 0; i < db; ++i) system.set(j, da + i, neg(other.basis_(i, j), p));
    }
    RrefNullspace k = rref_nullspace(system);
    std::vector<Vector> gens;
    for (std::size_t r = 0; r < k.nullspace.dim(); ++r) {
        Vector alpha(k.nullspace.basis_.row(r).begin(), k.nullspace.basis_.row(r).begin() + da);
        gens.push_back(combine(alpha));
    }
    return span(p, n, gens);
}

Subspace Subspace::annihilator() const { return rref_nullspace(basis_).nullspace; }

std::vector<Vector> Subspace::vectors(std::size_t limit) const {
    const std::uint32_t p = prime();
    const std::size_t count = checked_power(p, dim(), limit);
    std::vector<Vector> out;
    out.reserve(count);
    Vector coeffs(dim(), 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
        out.push_back(combine(coeffs));
        for (std::size_t pos = dim(); pos-- > 0;) {
            if (++coeffs[pos] < p) break;
            coeffs[pos] = 0;
        }
    }
    return out;
}

std::string Subspace::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < dim(); ++r) {
        if (r) os << ' ';
        os << '(';
        for (std::size_t c = 0; c < ambient_dim(); ++c) os << (c ? "," : "") << basis_(r, c);
        os << ')';
    }
    os << ']';
    return os.str();
}

std::vector<Vector> projective_points(std::uint32_t p, std::size_t d, std::size_t limit) {
    std::vector<Vector> out;
    std::size_t total = 0;
    for (std::size_t lead = 0; lead < d; ++lead) total += checked_power(p, d - lead - 1, limit);
    if (total > limit) throw ResourceError("too many projective points");
    out.reserve(total);
    for (std::size_t lead = 0; lead < d; ++lead) {
        const std::size_t free = d - lead - 1;
        const std::size_t count = checked_power(p, free, limit);
        Vector v(d, 0);
        v[lead] = 1;
        for (std::size_t idx = 0; idx < count; ++idx) {
            out.push_back(v);
            for (std::size_t pos = d; pos-- > lead + 1;) {
                if (++v[pos] < p) break;
                v[pos] = 0;
            }
        }
    }
    return out;
}

std::vector<Subspace> hyperplanes(std::uint32_t p, std::size_t d, std::size_t limit) {
    std::vector<Subspace> out;
    for (const Vector& functional : projective_points(p, d, limit))
        out.push_back(rref_nullspace(Matrix::from_rows(p, d, {functional})).nullspace);
    return out;
}

std::vector<Subspace> all_subspaces(std::uint32_t p, std::size_t d, std::size_t limit) {
    const auto points = projective_points(p, d, limit);
    std::vector<Subspace> out{Subspace(p, d)};
    std::vector<Subspace> layer = out;
    while (!layer.empty()) {
        std::vector<Subspace> next;
        for (const Subspace& S : layer)
            for (const Vector& v : points)
                if (!S.member(v)) next.push_back(S.sum(Subspace::span(p, d, {v})));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        out.insert(out.end(), next.begin(), next.end());
        if (out.size() > limit) throw ResourceError("too many subspaces to enumerate");
        layer = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ------------------------------------------------------------- FieldExt

namespace {

// Remainder of a modulo monic b; coefficient vectors low degree first.
Vector poly_mod(Vector a, const Vector& b, std::uint32_t p) {
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const Residue lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        if (lead != 0)
            for (std::size_t i = 0; i <= db; ++i)
                a[shift + i] = sub(a[shift + i], mul(lead, b[i], p), p);
        a.pop_back();
    }
    return a;
}

}  // namespace

bool is_irreducible(std::uint32_t p, const Vector& monic) {
    const std::size_t deg = monic.size() - 1;
    if (monic.empty() || monic.back() != 1) throw DomainError("polynomial must be monic");
    if (deg == 0) return false;
    // Exhaustive trial division by every monic polynomial of degree 1..deg/2.
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        const std::size_t count = checked_power(p, d, std::size_t{1} << 26);
        Vector divisor(d + 1, 0);
        divisor[d] = 1;
        for (std::size_t idx = 0; idx < count; ++idx) {
            std::size_t code = idx;
            for (std::size_t i = 0; i < d; ++i) {
                divisor[i] = static_cast<Residue>(code % p);
                code /= p;
            }
            Vector r = poly_mod(monic, divisor, p);
            if (std::all_of(r.begin(), r.end(), [](Residue x) { return x == 0; })) return false;
        }
    }
    return true;
}

FieldExt::FieldExt(std::uint32_t p, Vector monic_modulus) : p_(p), modulus_(std::move(monic_modulus)) {
    require_prime(p);
    if (modulus_.size() < 2) throw DomainError("field extension degree must be at least 1");
    if (!is_irreducible(p, modulus_)) throw DomainError("modulus is reducible");
}

FieldExt FieldExt::least_irreducible(std::uint32_t p, std::size_t degree) {
    require_prime(p);
    if (degree == 0) throw DomainError("field extension degree must be at least 1");
    const std::size_t count = checked_power(p, degree, std::size_t{1} << 26);
    Vector poly(degree + 1, 0);
    poly[degree] = 1;
    // code enumerates (c_{d-1}, ..., c_0) with c_{d-1} most significant.
    for (std::size_t code = 0; code < count; ++code) {
        std::size_t c = code;
        for (std::size_t i = 0; i < degree; ++i) {
            poly[i] = static_cast<Residue>(c % p);
            c /= p;
        }
        if (is_irreducible(p, poly)) return FieldExt(p, poly);
    }
    throw InternalError("no irreducible polynomial found");
}

FieldExt::Element FieldExt::one() const { return basis_element(0); }

FieldExt::Element FieldExt::basis_element(std::size_t i) const {
    Element e(degree(), 0);
    e.at(i) = 1;
    return e;
}

FieldExt::Element FieldExt::add(const Element& a, const Element& b) const {
    Element out(degree(), 0);
    for (std::size_t i = 0; i < degree(); ++i) out[i] = gfp::add(a[i], b[i], p_);
    return out;
}

FieldExt::Element FieldExt::multiply(const Element& a, const Element& b) const {
    Vector prod(2 * degree() - 1, 0);
    for (std::size_t i = 0; i < degree(); ++i)
        for (std::size_t j = 0; j < degree(); ++j)
            prod[i + j] = gfp::add(prod[i + j], mul(a[i], b[j], p_), p_);
    Vector r = poly_mod(std::move(prod), modulus_, p_);
    r.resize(degree(), 0);
    return r;
}

}  // namespace pgrp::gfp
