#pragma once

#include "ecros/nf/numberfield.hpp"

namespace ecros {

// Polynomial with coefficients in a number field (low-to-high, trimmed).
struct NFPoly {
  NFPtr K;
  std::vector<NFElem> c;

  NFPoly() = default;
  explicit NFPoly(NFPtr field) : K(std::move(field)) {}
  NFPoly(NFPtr field, std::vector<NFElem> coeffs);
  static NFPoly from_q(const NFPtr& K, const PolyQ& f);
  static NFPoly from_z(const NFPtr& K, const PolyZ& f);

  int deg() const { return (int)c.size() - 1; }
  bool is_zero() const { return c.empty(); }
  const NFElem& lc() const { return c.back(); }
  void trim();

  friend NFPoly operator+(const NFPoly& a, const NFPoly& b);
  friend NFPoly operator-(const NFPoly& a, const NFPoly& b);
  friend NFPoly operator*(const NFPoly& a, const NFPoly& b);
  friend NFPoly operator*(const NFElem& s, const NFPoly& a);
  friend bool operator==(const NFPoly& a, const NFPoly& b);

  static void divrem(const NFPoly& a, const NFPoly& b, NFPoly& q, NFPoly& r);
  NFPoly monic() const;
  NFPoly derivative() const;
  NFElem eval(const NFElem& x) const;
  static NFPoly gcd(NFPoly a, NFPoly b);  // monic
  NFPoly squarefree_part() const;
  // apply a coefficient map (e.g. an automorphism of K)
  template <typename F>
  NFPoly map_coeffs(F&& f) const {
    NFPoly r(K);
    for (const auto& a : c) r.c.push_back(f(a));
    r.trim();
    return r;
  }
  std::string str() const;
};

// monic irreducible factors over K with multiplicity (Trager)
std::vector<std::pair<NFPoly, int>> nf_factor(const NFPoly& g);
bool nf_is_irreducible(const NFPoly& g);
// roots of g lying in K
std::vector<NFElem> nf_roots(const NFPoly& g);
// roots in L of a rational polynomial
std::vector<NFElem> roots_in_field(const PolyZ& f, const NFPtr& L);

// exact n-th power test; if true and root != nullptr, *root is set to an
// n-th root (deterministic choice: smallest under coordinate order)
bool is_nth_power(const NFElem& x, unsigned long n, NFElem* root);

// norm of an NFPoly down to Q: Res_t(f_K(t), g with theta -> t, X -> X - s t)
PolyQ nf_poly_norm(const NFPoly& g, long shift);

}  // namespace ecros
