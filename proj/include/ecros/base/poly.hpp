#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecros/base/int.hpp"
#include "ecros/base/real.hpp"

namespace ecros {

// Dense univariate polynomials, coefficients low-to-high, no trailing zeros.
class PolyZ;

class PolyQ {
 public:
  std::vector<Rat> c;

  PolyQ() = default;
  explicit PolyQ(Rat a) { c.push_back(std::move(a)); trim(); }
  explicit PolyQ(std::vector<Rat> v) : c(std::move(v)) { trim(); }
  static PolyQ x();
  static PolyQ from_z(const PolyZ& f);

  int deg() const { return (int)c.size() - 1; }  // deg(0) = -1
  bool is_zero() const { return c.empty(); }
  const Rat& lc() const { return c.back(); }
  Rat coeff(int i) const { return (i >= 0 && i < (int)c.size()) ? c[i] : Rat(0); }
  void trim();

  friend PolyQ operator+(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator-(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator*(const Rat& s, const PolyQ& a);
  PolyQ operator-() const;
  friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.c == b.c; }

  // division with remainder over the field of rationals
  static void divrem(const PolyQ& a, const PolyQ& b, PolyQ& q, PolyQ& r);
  PolyQ monic() const;
  PolyQ derivative() const;
  Rat eval(const Rat& x) const;
  CReal eval(const CReal& x) const;
  Real eval(const Real& x) const;
  PolyQ compose(const PolyQ& g) const;  // this(g(x))
  PolyQ pow_mod(const Int& e, const PolyQ& mod) const;
  PolyQ mod_by(const PolyQ& m) const;

  static PolyQ gcd(PolyQ a, PolyQ b);  // monic gcd
  PolyQ squarefree_part() const;

  // scale x -> s*x (returns f(s x))
  PolyQ scale_arg(const Rat& s) const;
  PolyQ shift_arg(const Rat& s) const;  // f(x + s)
  PolyQ reverse() const;                // x^deg f(1/x)

  std::string str(const std::string& var = "x") const;
};

class PolyZ {
 public:
  std::vector<Int> c;

  PolyZ() = default;
  explicit PolyZ(Int a) { c.push_back(std::move(a)); trim(); }
  explicit PolyZ(std::vector<Int> v) : c(std::move(v)) { trim(); }
  static PolyZ x();
  // clears denominators: returns primitive integer polynomial with same roots
  static PolyZ from_q_primitive(const PolyQ& f);

  int deg() const { return (int)c.size() - 1; }
  bool is_zero() const { return c.empty(); }
  const Int& lc() const { return c.back(); }
  Int coeff(int i) const { return (i >= 0 && i < (int)c.size()) ? c[i] : Int(0); }
  void trim();

  friend PolyZ operator+(const PolyZ& a, const PolyZ& b);
  friend PolyZ operator-(const PolyZ& a, const PolyZ& b);
  friend PolyZ operator*(const PolyZ& a, const PolyZ& b);
  friend PolyZ operator*(const Int& s, const PolyZ& a);
  PolyZ operator-() const;
  friend bool operator==(const PolyZ& a, const PolyZ& b) { return a.c == b.c; }

  Int content() const;
  PolyZ primitive_part() const;
  PolyZ derivative() const;
  Int eval(const Int& x) const;
  Rat eval(const Rat& x) const;
  CReal eval(const CReal& x) const;
  Real eval(const Real& x) const;

  // pseudo-division: lc(b)^(deg a - deg b + 1) * a = q*b + r
  static void pseudo_divrem(const PolyZ& a, const PolyZ& b, PolyZ& q, PolyZ& r);
  static bool divides(const PolyZ& d, const PolyZ& a);

  static PolyZ gcd(const PolyZ& a, const PolyZ& b);  // primitive positive gcd
  static Int resultant(const PolyZ& a, const PolyZ& b);
  Int discriminant() const;

  PolyZ squarefree_part() const;

  // number of real roots in (a, b]; whole line if unbounded
  int sturm_count(const std::optional<Rat>& a, const std::optional<Rat>& b) const;
  int real_root_count() const { return sturm_count(std::nullopt, std::nullopt); }

  // Cauchy-style bound: all complex roots have |z| <= bound
  Rat root_bound() const;

  std::string str(const std::string& var = "x") const;
};

PolyQ to_q(const PolyZ& f);

// all complex roots to given precision (Aberth iteration, deterministic seeds);
// refined so that consecutive-distinct and conjugate structure is stable.
std::vector<CReal> complex_roots(const PolyZ& f, long prec);

}  // namespace ecros
