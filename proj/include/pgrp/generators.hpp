#pragma once

// Presentations of the Heisenberg groups over GF(p^n) and the extraspecial
// groups of order p^3 and exponent p.

#include "pgrp/pcgroup.hpp"

namespace pgrp {

// Generators x_1..x_n, y_1..y_n, z_1..z_n with [x_i, y_j] = z(b_i b_j), where
// b_1..b_n is the power basis of GF(p^n) over the least irreducible modulus.
// UnsupportedError for p = 2, DomainError for n outside 1..4 or p not prime.
PcPresentation heisenberg(std::uint32_t p, std::size_t n);

// x, y, z with [x, y] = z central and all p-th powers trivial.
PcPresentation extraspecial_p3(std::uint32_t p);

}  // namespace pgrp
