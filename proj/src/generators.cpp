#include "pgrp/generators.hpp"

#include "pgrp/error.hpp"
#include "pgrp/gfp.hpp"

namespace pgrp {

namespace {

void require_odd_prime(std::uint32_t p) {
    gfp::require_prime(p);
    if (p == 2) throw UnsupportedError("p = 2 is not supported; Camina 2-groups lie outside this corpus");
}

}  // namespace

PcPresentation heisenberg(std::uint32_t p, std::size_t n) {
    require_odd_prime(p);
    if (n < 1 || n > 4) throw DomainError("heisenberg degree must lie in 1..4, got " + std::to_string(n));
    const auto field = gfp::FieldExt::least_irreducible(p, n);
    PcPresentation pres(p, 3 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto prod = field.multiply(field.basis_element(i), field.basis_element(j));
            // x_i^-1 y_j x_i = y_j [y_j, x_i] and [y_j, x_i] = z(b_i b_j)^-1.
            Word tail;
            for (std::size_t k = 0; k < n; ++k)
                if (prod[k] != 0) tail.push_back({2 * n + k, gfp::neg(prod[k], p)});
            pres.set_conjugate(n + j, i, std::move(tail));
        }
    return pres;
}

PcPresentation extraspecial_p3(std::uint32_t p) {
    require_odd_prime(p);
    PcPresentation pres(p, 3);
    pres.set_conjugate(1, 0, {{2, static_cast<Exponent>(p - 1)}});
    return pres;
}

}  // namespace pgrp
