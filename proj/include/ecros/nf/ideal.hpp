#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "ecros/base/factorzp.hpp"
#include "ecros/nf/numberfield.hpp"

namespace ecros {

// Prime ideal of the maximal order, with enough precomputed data for
// valuations and residue arithmetic.
struct PrimeIdeal {
  NFPtr K;
  Int p;      // residue characteristic
  int e = 1;  // ramification index over p
  int f = 1;  // residue degree
  ZMat basis;        // n x n HNF lattice over the order basis (contains p*O)
  NFElem second_gen; // P = (p, second_gen)
  NFElem val_elem;   // t in P^{-1} \ O_K used for valuations

  Int norm() const { return pow(p, (unsigned long)f); }
  bool operator==(const PrimeIdeal& o) const { return p == o.p && basis == o.basis; }
  bool operator<(const PrimeIdeal& o) const;
  std::string str() const;
};

// all primes above a rational prime, deterministically ordered; cached
const std::vector<PrimeIdeal>& factor_rational_prime(const NFPtr& K, const Int& p);

// valuation of x != 0 at P
long valuation(const NFElem& x, const PrimeIdeal& P);

// membership of an integral element in the ideal lattice
bool in_ideal(const NFElem& x, const PrimeIdeal& P);

// primes of L above a prime of a subfield K, given the embedding image of
// K's generator in L
std::vector<PrimeIdeal> primes_above(const PrimeIdeal& p_below, const NFPtr& L,
                                     const NFElem& gen_image);

// residue field O_K/P as F_q = F_p[y]/(m), with reduction maps
class ResidueField {
 public:
  ResidueField(const PrimeIdeal& P);

  const PrimeIdeal& prime() const { return P_; }
  uint64_t p() const { return pu_; }
  int f() const { return P_.f; }
  Int q() const { return ecros::pow(P_.p, (unsigned long)P_.f); }
  const FpPoly& modulus() const { return m_; }

  // reduction: x must have valuation >= 0 at P
  FpPoly reduce(const NFElem& x) const;
  NFElem lift(const FpPoly& a) const;

  // field arithmetic on representatives (poly mod m_)
  FpPoly add(const FpPoly& a, const FpPoly& b) const;
  FpPoly sub(const FpPoly& a, const FpPoly& b) const;
  FpPoly mul(const FpPoly& a, const FpPoly& b) const;
  FpPoly inv(const FpPoly& a) const;
  FpPoly pow(const FpPoly& a, const Int& e) const;
  bool is_zero(const FpPoly& a) const { return a.empty(); }
  bool is_one(const FpPoly& a) const { return a.size() == 1 && a[0] == 1; }

  // multiplicative generator of F_q^* (deterministic), and discrete log
  const FpPoly& mult_gen() const { return g_; }
  Int dlog(const FpPoly& a) const;  // a != 0; baby-step giant-step

 private:
  PrimeIdeal P_;
  uint64_t pu_;
  Fp fp_;
  FpPoly m_;  // degree f irreducible over F_p
  FpPoly g_;  // generator of F_q^*
  // data to map order-coordinates -> F_q representative
  std::vector<FpPoly> basis_img_;  // image of each quotient unit vector
  std::vector<NFElem> lift_basis_; // lifts of 1, y, .., y^(f-1)
  std::vector<std::vector<uint64_t>> rows_;  // rref of P mod p
  std::vector<size_t> piv_;
  std::vector<size_t> free_cols_;
};

// generic integral ideal as an HNF lattice over the order basis
struct IdealLat {
  NFPtr K;
  ZMat basis;  // full-rank n x n HNF

  static IdealLat whole_ring(const NFPtr& K);
  static IdealLat from_prime(const PrimeIdeal& P);
  static IdealLat product(const IdealLat& a, const IdealLat& b);
  static IdealLat from_element(const NFElem& x);  // x integral, x != 0
  Int norm() const;
  bool contains(const NFElem& x) const;
};

}  // namespace ecros
