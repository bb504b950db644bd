#include "ecros/nf/places.hpp"

#include <algorithm>
#include <sstream>

#include "ecros/base/primes.hpp"

namespace ecros {

std::string Place::str() const {
  if (kind == Kind::finite) return prime->str();
  std::ostringstream os;
  os << (kind == Kind::real ? "real#" : "complex#") << emb_index;
  return os.str();
}

std::vector<Place> infinite_places(const NFPtr& K) {
  std::vector<Place> out;
  for (size_t i = 0; i < (size_t)(K->r1() + K->r2()); ++i) out.push_back(Place::infinite(K, i));
  return out;
}

Rat absolute_value_finite(const NFElem& x, const PrimeIdeal& P) {
  if (x.is_zero()) throw std::domain_error("absolute value of zero");
  long v = valuation(x, P);
  Int q = P.norm();
  Rat r(1);
  if (v >= 0) {
    Int d = pow(q, (unsigned long)v);
    r = Rat(1) / Rat(d);
  } else {
    r = Rat(pow(q, (unsigned long)(-v)));
  }
  return r;
}

Real absolute_value(const NFElem& x, const Place& v, long prec) {
  if (x.is_zero()) throw std::domain_error("absolute value of zero");
  if (v.is_finite()) return Real(absolute_value_finite(x, *v.prime), prec);
  CReal z = v.K->embed(x, v.emb_index, prec + 32);
  Real a2 = z.norm2();
  if (v.kind == Place::Kind::real) return sqrt(a2);
  return a2;
}

Real log_absolute_value(const NFElem& x, const Place& v, long prec) {
  if (x.is_zero()) throw std::domain_error("absolute value of zero");
  if (v.is_finite()) {
    long val = valuation(x, *v.prime);
    // -val * f * log p
    Real lp = log(Real(v.prime->p, prec));
    return Real((double)(-val * v.prime->f), prec) * lp;
  }
  return v.K->log_abs(x, v.emb_index, prec);
}

PrimeSet PrimeSet::of(const NFPtr& K, std::vector<PrimeIdeal> ps) {
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end(),
                       [](const PrimeIdeal& a, const PrimeIdeal& b) { return a == b; }),
           ps.end());
  return {K, std::move(ps)};
}

bool PrimeSet::contains(const PrimeIdeal& P) const {
  for (const auto& Q : primes)
    if (Q == P) return true;
  return false;
}

PrimeSet PrimeSet::with(const PrimeIdeal& P) const {
  auto ps = primes;
  ps.push_back(P);
  return of(K, std::move(ps));
}

PrimeSet PrimeSet::extend(const Int& n) const {
  auto ps = primes;
  for (auto& [p, e] : factor(n)) {
    for (const auto& P : factor_rational_prime(K, p)) ps.push_back(P);
  }
  return of(K, std::move(ps));
}

PrimeSet PrimeSet::lift(const NFPtr& L, const NFElem& gen_image) const {
  std::vector<PrimeIdeal> ps;
  for (const auto& P : primes) {
    for (auto& B : primes_above(P, L, gen_image)) ps.push_back(B);
  }
  return of(L, std::move(ps));
}

std::string PrimeSet::str() const {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < primes.size(); ++i) os << (i ? ", " : "") << primes[i].str();
  os << "}";
  return os.str();
}

std::vector<Int> rational_support(const PrimeSet& S) {
  std::vector<Int> out;
  for (const auto& P : S.primes) out.push_back(P.p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ecros
