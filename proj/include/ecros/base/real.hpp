#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "ecros/base/int.hpp"

namespace ecros {

// Arbitrary-precision real, thin RAII wrapper over mpfr_t.
// Results carry the max precision of the operands.
class Real {
 public:
  Real() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }
  explicit Real(long prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(double x, long prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(const Int& x, long prec) { mpfr_init2(v_, prec); mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
  Real(const Rat& x, long prec) { mpfr_init2(v_, prec); mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    return *this;
  }
  Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~Real() { mpfr_clear(v_); }

  long prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  static Real pi(long prec) { Real r(prec); mpfr_const_pi(r.v_, MPFR_RNDN); return r; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  Int floor() const {
    Int r; mpfr_t t; mpfr_init2(t, prec()); mpfr_floor(t, v_);
    mpfr_get_z(r.get_mpz_t(), t, MPFR_RNDN); mpfr_clear(t); return r;
  }
  Int ceil() const {
    Int r; mpfr_t t; mpfr_init2(t, prec()); mpfr_ceil(t, v_);
    mpfr_get_z(r.get_mpz_t(), t, MPFR_RNDN); mpfr_clear(t); return r;
  }
  Int round() const {
    Int r; mpfr_t t; mpfr_init2(t, prec()); mpfr_round(t, v_);
    mpfr_get_z(r.get_mpz_t(), t, MPFR_RNDN); mpfr_clear(t); return r;
  }

  friend Real operator+(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec())); mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec())); mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec())); mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec())); mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
  }
  Real operator-() const { Real r(prec()); mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }

  Real& operator+=(const Real& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& b) { mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& b) { mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& b) { mpfr_div(v_, v_, b.v_, MPFR_RNDN); return *this; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

  friend Real abs(const Real& a) { Real r(a.prec()); mpfr_abs(r.v_, a.v_, MPFR_RNDN); return r; }
  friend Real sqrt(const Real& a) { Real r(a.prec()); mpfr_sqrt(r.v_, a.v_, MPFR_RNDN); return r; }
  friend Real log(const Real& a) { Real r(a.prec()); mpfr_log(r.v_, a.v_, MPFR_RNDN); return r; }
  friend Real exp(const Real& a) { Real r(a.prec()); mpfr_exp(r.v_, a.v_, MPFR_RNDN); return r; }
  friend Real atan2(const Real& y, const Real& x) {
    Real r(std::max(y.prec(), x.prec())); mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN); return r;
  }
  friend Real pow_si(const Real& a, long e) {
    Real r(a.prec()); mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN); return r;
  }
  friend Real root_ui(const Real& a, unsigned long n) {
    Real r(a.prec());
#if MPFR_VERSION_MAJOR >= 4
    mpfr_rootn_ui(r.v_, a.v_, n, MPFR_RNDN);
#else
    mpfr_root(r.v_, a.v_, n, MPFR_RNDN);
#endif
    return r;
  }

  // 2^k
  static Real pow2(long k, long prec) {
    Real r(prec); mpfr_set_ui(r.v_, 1, MPFR_RNDN); mpfr_mul_2si(r.v_, r.v_, k, MPFR_RNDN); return r;
  }

  std::string str(size_t digits = 20) const {
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", (int)digits, v_);
    return buf;
  }

 private:
  mpfr_t v_;
};

// Complex numbers over Real, just enough for polynomial root finding
// and log-embedding work.
struct CReal {
  Real re, im;
  CReal() = default;
  CReal(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit CReal(double r, long prec) : re(r, prec), im(0.0, prec) {}
  CReal(double r, double i, long prec) : re(r, prec), im(i, prec) {}

  friend CReal operator+(const CReal& a, const CReal& b) { return {a.re + b.re, a.im + b.im}; }
  friend CReal operator-(const CReal& a, const CReal& b) { return {a.re - b.re, a.im - b.im}; }
  friend CReal operator*(const CReal& a, const CReal& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend CReal operator/(const CReal& a, const CReal& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  CReal operator-() const { return {-re, -im}; }
  Real norm2() const { return re * re + im * im; }  // |z|^2
  friend Real abs(const CReal& a) { return sqrt(a.norm2()); }
};

}  // namespace ecros
