#pragma once

#include <cstdint>
#include <vector>

#include "ecros/base/int.hpp"
#include "ecros/base/poly.hpp"

namespace ecros {

// Arithmetic in F_p and F_p[x] for word-size primes p < 2^62.
using FpPoly = std::vector<uint64_t>;  // coefficients low-to-high, trimmed

class Fp {
 public:
  explicit Fp(uint64_t p) : p_(p) {}
  uint64_t p() const { return p_; }

  uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  uint64_t neg(uint64_t a) const { return a ? p_ - a : 0; }
  uint64_t mul(uint64_t a, uint64_t b) const {
    return (uint64_t)((unsigned __int128)a * b % p_);
  }
  uint64_t pow(uint64_t a, uint64_t e) const {
    uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  uint64_t pow(uint64_t a, const Int& e) const;
  uint64_t inv(uint64_t a) const;
  uint64_t reduce(const Int& a) const {
    Int r = mod(a, Int((unsigned long)p_));
    return r.get_ui();
  }

  // polynomials
  static void trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
  }
  static int deg(const FpPoly& f) { return (int)f.size() - 1; }
  FpPoly poly_from_z(const PolyZ& f) const;
  FpPoly padd(const FpPoly& a, const FpPoly& b) const;
  FpPoly psub(const FpPoly& a, const FpPoly& b) const;
  FpPoly pmul(const FpPoly& a, const FpPoly& b) const;
  FpPoly pscale(uint64_t s, const FpPoly& a) const;
  void pdivrem(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r) const;
  FpPoly pmod(const FpPoly& a, const FpPoly& m) const;
  FpPoly pmonic(const FpPoly& a) const;
  FpPoly pgcd(FpPoly a, FpPoly b) const;  // monic
  // g = gcd(a,b) = u*a + v*b, g monic
  FpPoly pxgcd(FpPoly a, FpPoly b, FpPoly& u, FpPoly& v) const;
  FpPoly ppowmod(const FpPoly& a, const Int& e, const FpPoly& m) const;
  FpPoly pderiv(const FpPoly& a) const;
  uint64_t peval(const FpPoly& a, uint64_t x) const;
  uint64_t presultant(FpPoly a, FpPoly b) const;

  bool squarefree(const FpPoly& f) const;
  // full factorization of monic squarefree f: list of (monic irreducible)
  std::vector<FpPoly> factor_squarefree(const FpPoly& f, uint64_t seed) const;
  std::vector<uint64_t> roots(const FpPoly& f) const;

 private:
  uint64_t p_;
};

// deterministic pool of CRT primes (below 2^62, descending)
const std::vector<uint64_t>& crt_primes();

// primes for which f keeps degree and stays squarefree
uint64_t good_prime_for(const PolyZ& f, size_t skip = 0);

}  // namespace ecros
