#pragma once

#include <vector>

#include "ecros/base/poly.hpp"

namespace ecros {

// irreducible factors with multiplicities, content dropped; factors primitive
// with positive leading coefficient
std::vector<std::pair<PolyZ, int>> factor_z(const PolyZ& f);

// monic irreducible factors over Q with multiplicities
std::vector<std::pair<PolyQ, int>> factor_q(const PolyQ& f);

bool is_irreducible_z(const PolyZ& f);

// rational roots of f
std::vector<Rat> rational_roots(const PolyZ& f);

}  // namespace ecros
