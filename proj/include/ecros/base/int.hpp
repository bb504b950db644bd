#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ecros {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_from(long v) { return Int(v); }

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int g;
  mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int pow(const Int& a, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
  return r;
}

inline Rat pow(const Rat& a, long e) {
  if (e == 0) return Rat(1);
  Rat base = e > 0 ? a : Rat(1) / a;
  unsigned long k = e > 0 ? e : -e;
  Rat num, den;
  mpz_pow_ui(num.get_num_mpz_t(), base.get_num_mpz_t(), k);
  mpz_pow_ui(den.get_den_mpz_t(), base.get_den_mpz_t(), k);
  num.get_den() = den.get_den();
  num.canonicalize();
  return num;
}

// floor(a / b) for b > 0
inline Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int mod(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline bool divides(const Int& d, const Int& a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int divexact(const Int& a, const Int& d) {
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return q;
}

// valuation of a at prime p, a != 0
inline long valuation(Int a, const Int& p) {
  if (a == 0) throw std::domain_error("valuation of zero");
  long v = 0;
  Int q, r;
  for (;;) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    if (r != 0) return v;
    a = q;
    ++v;
  }
}

inline long valuation(const Rat& a, const Int& p) {
  if (a == 0) throw std::domain_error("valuation of zero");
  long v = valuation(Int(a.get_num()), p);
  if (v > 0) return v;
  return -valuation(Int(a.get_den()), p);
}

// truncated integer n-th root
inline Int iroot(const Int& a, unsigned long n) {
  Int r;
  mpz_root(r.get_mpz_t(), a.get_mpz_t(), n);
  return r;
}

inline bool is_square(const Int& a) { return a >= 0 && mpz_perfect_square_p(a.get_mpz_t()) != 0; }

// exact n-th root of a rational if it exists
inline bool rat_nth_root(const Rat& a, unsigned long n, Rat& out) {
  if (a == 0) {
    out = 0;
    return true;
  }
  if (a < 0 && n % 2 == 0) return false;
  Int num = a.get_num(), den = a.get_den();
  bool neg = num < 0;
  if (neg) num = -num;
  Int rn = iroot(num, n), rd = iroot(den, n);
  if (pow(rn, n) != num || pow(rd, n) != den) return false;
  if (neg) rn = -rn;
  out = Rat(rn) / Rat(rd);
  return true;
}

inline Int powmod(const Int& b, const Int& e, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Int invmod(const Int& a, const Int& m) {
  Int r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
    throw std::domain_error("invmod: not invertible");
  return r;
}

inline std::string to_string(const Int& a) { return a.get_str(); }
inline std::string to_string(const Rat& a) { return a.get_str(); }

inline double to_double(const Rat& a) { return a.get_d(); }

inline size_t hash_combine(size_t seed, size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace ecros
