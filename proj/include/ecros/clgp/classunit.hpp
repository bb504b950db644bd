#pragma once

#include <optional>

#include "ecros/nf/morphisms.hpp"
#include "ecros/nf/places.hpp"

namespace ecros {

enum class Rigor { heuristic, certified };

// Class group + unit group data from a relation search over a factor base,
// validated against the analytic class number formula and saturated.
struct ClassUnitData {
  NFPtr K;
  Rigor rigor = Rigor::heuristic;
  std::vector<PrimeIdeal> factor_base;

  std::vector<NFElem> rel_elems;  // gamma_i
  ZMat rel_mat;                   // valuation rows of gamma_i over factor_base

  std::vector<Int> cyc_orders;  // invariant factors > 1 of the class group
  Int h = 1;

  NFElem torsion_gen;
  unsigned long torsion_order = 2;
  std::vector<NFElem> fund_units;
  double regulator = 1.0;

  // exact solve: x with (x) = prod P_i^{v_i} over the factor base, if the
  // class is trivial; result is unit-reduced
  std::optional<NFElem> principal_gen(const std::vector<Int>& v) const;

  // shrink coordinates of x by multiplying with units (value class unchanged)
  NFElem reduce_by_units(const NFElem& x) const;

  // order of [prod P^v] in the class group
  Int class_order(const std::vector<Int>& v) const;
};

// compute (cached) class/unit data whose factor base contains `S`
const ClassUnitData& class_unit_data(const NFPtr& K, const PrimeSet& S, Rigor rigor);

// torsion subgroup mu_K: generator and order
std::pair<NFElem, unsigned long> roots_of_unity(const NFPtr& K);

PolyZ cyclotomic_poly(unsigned long m);

}  // namespace ecros
