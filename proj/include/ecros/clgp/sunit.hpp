#pragma once

#include "ecros/clgp/classunit.hpp"

namespace ecros {

// The S-unit group O*_{K,S}: torsion generator plus a basis of the free part.
// Unit generators come first (sorted by log-embedding norm), then one
// valuation-carrying generator per prime of S.
struct SUnitGroup {
  NFPtr K;
  PrimeSet S;
  NFElem torsion_gen;
  unsigned long torsion_order = 2;
  std::vector<NFElem> gens;
  size_t n_unit_gens = 0;  // prefix of gens that are units
  const ClassUnitData* cu = nullptr;

  size_t rank() const { return gens.size(); }

  // exact discrete log: x == torsion^e0 * prod gens^e ; nullopt if x is not
  // an S-unit (or not in the group, which would be a bug)
  std::optional<std::pair<long, std::vector<Int>>> dlog(const NFElem& x) const;

  // valuation vector of x over S
  std::vector<Int> s_valuations(const NFElem& x) const;

  bool is_s_unit(const NFElem& x) const;

  NFElem evaluate(long e0, const std::vector<Int>& e) const;
};

SUnitGroup compute_s_unit_group(const NFPtr& K, const PrimeSet& S, Rigor rigor);

}  // namespace ecros
