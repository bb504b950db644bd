#include "ecros/base/poly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

#include "ecros/base/factorzp.hpp"

namespace ecros {

// ---------- PolyQ ----------

PolyQ PolyQ::x() { return PolyQ(std::vector<Rat>{Rat(0), Rat(1)}); }

PolyQ PolyQ::from_z(const PolyZ& f) {
  std::vector<Rat> v(f.c.size());
  for (size_t i = 0; i < f.c.size(); ++i) v[i] = Rat(f.c[i]);
  return PolyQ(std::move(v));
}

PolyQ to_q(const PolyZ& f) { return PolyQ::from_z(f); }

void PolyQ::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

PolyQ operator+(const PolyQ& a, const PolyQ& b) {
  std::vector<Rat> v(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) v[i] += b.c[i];
  return PolyQ(std::move(v));
}

PolyQ operator-(const PolyQ& a, const PolyQ& b) {
  std::vector<Rat> v(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) v[i] -= b.c[i];
  return PolyQ(std::move(v));
}

PolyQ operator*(const PolyQ& a, const PolyQ& b) {
  if (a.is_zero() || b.is_zero()) return PolyQ();
  std::vector<Rat> v(a.c.size() + b.c.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
  return PolyQ(std::move(v));
}

PolyQ operator*(const Rat& s, const PolyQ& a) {
  std::vector<Rat> v(a.c);
  for (auto& x : v) x *= s;
  return PolyQ(std::move(v));
}

PolyQ PolyQ::operator-() const { return Rat(-1) * *this; }

void PolyQ::divrem(const PolyQ& a, const PolyQ& b, PolyQ& q, PolyQ& r) {
  assert(!b.is_zero());
  q = PolyQ();
  r = a;
  int db = b.deg();
  if (r.deg() >= db) q.c.assign(r.deg() - db + 1, Rat(0));
  while (r.deg() >= db) {
    Rat f = r.lc() / b.lc();
    int k = r.deg() - db;
    q.c[k] = f;
    for (int i = 0; i <= db; ++i) r.c[k + i] -= f * b.c[i];
    r.trim();
  }
  q.trim();
}

PolyQ PolyQ::monic() const {
  if (is_zero()) return *this;
  return (Rat(1) / lc()) * *this;
}

PolyQ PolyQ::derivative() const {
  if (deg() < 1) return PolyQ();
  std::vector<Rat> v(c.size() - 1);
  for (size_t i = 1; i < c.size(); ++i) v[i - 1] = Rat((long)i) * c[i];
  return PolyQ(std::move(v));
}

Rat PolyQ::eval(const Rat& x) const {
  Rat r(0);
  for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

CReal PolyQ::eval(const CReal& x) const {
  long prec = x.re.prec();
  CReal r(0.0, prec);
  for (size_t i = c.size(); i-- > 0;) {
    r = r * x;
    r.re += Real(c[i], prec);
  }
  return r;
}

Real PolyQ::eval(const Real& x) const {
  Real r(0.0, x.prec());
  for (size_t i = c.size(); i-- > 0;) r = r * x + Real(c[i], x.prec());
  return r;
}

PolyQ PolyQ::compose(const PolyQ& g) const {
  PolyQ r;
  for (size_t i = c.size(); i-- > 0;) r = r * g + PolyQ(c[i]);
  return r;
}

PolyQ PolyQ::mod_by(const PolyQ& m) const {
  PolyQ q, r;
  divrem(*this, m, q, r);
  return r;
}

PolyQ PolyQ::pow_mod(const Int& e, const PolyQ& mod) const {
  PolyQ base = mod_by(mod), r(Rat(1));
  Int k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = (r * base).mod_by(mod);
    base = (base * base).mod_by(mod);
    k >>= 1;
  }
  return r;
}

PolyQ PolyQ::gcd(PolyQ a, PolyQ b) {
  while (!b.is_zero()) {
    PolyQ q, r;
    divrem(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
    // keep coefficients small-ish
    if (!b.is_zero()) b = b.monic();
  }
  return a.monic();
}

PolyQ PolyQ::squarefree_part() const {
  if (deg() < 1) return monic();
  PolyQ g = gcd(*this, derivative());
  PolyQ q, r;
  divrem(*this, g, q, r);
  return q.monic();
}

PolyQ PolyQ::scale_arg(const Rat& s) const {
  std::vector<Rat> v(c);
  Rat p(1);
  for (size_t i = 0; i < v.size(); ++i) {
    v[i] *= p;
    p *= s;
  }
  return PolyQ(std::move(v));
}

PolyQ PolyQ::shift_arg(const Rat& s) const {
  // Horner in (x + s)
  PolyQ xs(std::vector<Rat>{s, Rat(1)});
  PolyQ r;
  for (size_t i = c.size(); i-- > 0;) r = r * xs + PolyQ(c[i]);
  return r;
}

PolyQ PolyQ::reverse() const {
  std::vector<Rat> v(c.rbegin(), c.rend());
  return PolyQ(std::move(v));
}

std::string PolyQ::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = deg(); i >= 0; --i) {
    if (c[i] == 0) continue;
    Rat a = c[i];
    if (!first) os << (a > 0 ? " + " : " - ");
    else if (a < 0) os << "-";
    Rat aa = abs(a);
    first = false;
    if (i == 0 || aa != 1) os << aa.get_str();
    if (i > 0) {
      if (aa != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

// ---------- PolyZ ----------

PolyZ PolyZ::x() { return PolyZ(std::vector<Int>{Int(0), Int(1)}); }

PolyZ PolyZ::from_q_primitive(const PolyQ& f) {
  Int den(1);
  for (const auto& a : f.c) den = lcm(den, Int(a.get_den()));
  std::vector<Int> v(f.c.size());
  for (size_t i = 0; i < f.c.size(); ++i) {
    Rat t = f.c[i] * Rat(den);
    v[i] = Int(t.get_num());
  }
  PolyZ g{std::move(v)};
  return g.primitive_part();
}

void PolyZ::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

PolyZ operator+(const PolyZ& a, const PolyZ& b) {
  std::vector<Int> v(std::max(a.c.size(), b.c.size()), Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) v[i] += b.c[i];
  return PolyZ(std::move(v));
}

PolyZ operator-(const PolyZ& a, const PolyZ& b) {
  std::vector<Int> v(std::max(a.c.size(), b.c.size()), Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) v[i] -= b.c[i];
  return PolyZ(std::move(v));
}

PolyZ operator*(const PolyZ& a, const PolyZ& b) {
  if (a.is_zero() || b.is_zero()) return PolyZ();
  std::vector<Int> v(a.c.size() + b.c.size() - 1, Int(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
  return PolyZ(std::move(v));
}

PolyZ operator*(const Int& s, const PolyZ& a) {
  std::vector<Int> v(a.c);
  for (auto& x : v) x *= s;
  return PolyZ(std::move(v));
}

PolyZ PolyZ::operator-() const { return Int(-1) * *this; }

Int PolyZ::content() const {
  Int g(0);
  for (const auto& a : c) g = ecros::gcd(g, a);
  return g;
}

PolyZ PolyZ::primitive_part() const {
  if (is_zero()) return *this;
  Int g = content();
  if (lc() < 0) g = -g;
  std::vector<Int> v(c.size());
  for (size_t i = 0; i < c.size(); ++i) v[i] = divexact(c[i], g);
  return PolyZ(std::move(v));
}

PolyZ PolyZ::derivative() const {
  if (deg() < 1) return PolyZ();
  std::vector<Int> v(c.size() - 1);
  for (size_t i = 1; i < c.size(); ++i) v[i - 1] = Int((long)i) * c[i];
  return PolyZ(std::move(v));
}

Int PolyZ::eval(const Int& x) const {
  Int r(0);
  for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

Rat PolyZ::eval(const Rat& x) const {
  Rat r(0);
  for (size_t i = c.size(); i-- > 0;) r = r * x + Rat(c[i]);
  return r;
}

CReal PolyZ::eval(const CReal& x) const {
  long prec = x.re.prec();
  CReal r(0.0, prec);
  for (size_t i = c.size(); i-- > 0;) {
    r = r * x;
    r.re += Real(c[i], prec);
  }
  return r;
}

Real PolyZ::eval(const Real& x) const {
  Real r(0.0, x.prec());
  for (size_t i = c.size(); i-- > 0;) r = r * x + Real(c[i], x.prec());
  return r;
}

void PolyZ::pseudo_divrem(const PolyZ& a, const PolyZ& b, PolyZ& q, PolyZ& r) {
  // maintains lc(b)^(deg a - deg b + 1) * a = q*b + r exactly
  assert(!b.is_zero());
  int da = a.deg(), db = b.deg();
  q = PolyZ();
  r = a;
  if (da < db) return;
  const Int d = b.lc();
  int scalings = da - db + 1;
  q.c.assign(da - db + 1, Int(0));
  while (!r.is_zero() && r.deg() >= db) {
    int k = r.deg() - db;
    Int f = r.lc();
    for (auto& x : q.c) x *= d;
    q.c[k] += f;
    for (auto& x : r.c) x *= d;
    for (int i = 0; i <= db; ++i) r.c[k + i] -= f * b.c[i];
    r.trim();
    --scalings;
  }
  if (scalings > 0) {
    Int s = pow(d, (unsigned long)scalings);
    for (auto& x : q.c) x *= s;
    for (auto& x : r.c) x *= s;
  }
  q.trim();
  r.trim();
}

bool PolyZ::divides(const PolyZ& d, const PolyZ& a) {
  if (a.is_zero()) return true;
  if (d.is_zero() || a.deg() < d.deg()) return false;
  // exact rational division, then integrality check
  PolyQ q, r;
  PolyQ::divrem(to_q(a), to_q(d), q, r);
  return r.is_zero();
}

// CRT reconstruction helpers (symmetric lift)
static Int crt_pair(const Int& r1, const Int& m1, uint64_t r2, uint64_t p) {
  Int P((unsigned long)p);
  Int d = mod(Int((unsigned long)r2) - r1, P);
  Int t = mod(d * invmod(mod(m1, P), P), P);
  return r1 + t * m1;
}

static Int symmetric(const Int& a, const Int& m) {
  Int r = mod(a, m);
  if (2 * r > m) r -= m;
  return r;
}

PolyZ PolyZ::gcd(const PolyZ& a0, const PolyZ& b0) {
  if (a0.is_zero()) return b0.primitive_part();
  if (b0.is_zero()) return a0.primitive_part();
  PolyZ a = a0.primitive_part(), b = b0.primitive_part();
  if (a.deg() < b.deg()) std::swap(a, b);
  if (b.deg() == 0) return PolyZ(Int(1));
  Int lcg = ecros::gcd(a.lc(), b.lc());

  // modular gcd with verification
  int best_deg = -1;
  std::vector<Int> acc;  // CRT-accumulated coefficients of lcg * monic gcd
  Int modulus(1);
  int stable = 0;
  for (uint64_t p : crt_primes()) {
    Fp fp(p);
    if (fp.reduce(a.lc()) == 0 || fp.reduce(b.lc()) == 0) continue;
    FpPoly g = fp.pgcd(fp.poly_from_z(a), fp.poly_from_z(b));
    int dg = Fp::deg(g);
    if (dg == 0) return PolyZ(Int(1));
    if (best_deg == -1 || dg < best_deg) {
      best_deg = dg;
      acc.assign(dg + 1, Int(0));
      modulus = 1;
      stable = 0;
    } else if (dg > best_deg) {
      continue;  // unlucky prime
    }
    FpPoly gs = fp.pscale(fp.reduce(lcg), g);
    gs.resize(best_deg + 1, 0);
    if (modulus == 1) {
      for (int i = 0; i <= best_deg; ++i) acc[i] = Int((unsigned long)gs[i]);
      modulus = Int((unsigned long)p);
    } else {
      for (int i = 0; i <= best_deg; ++i) acc[i] = crt_pair(acc[i], modulus, gs[i], p);
      modulus *= Int((unsigned long)p);
    }
    std::vector<Int> v(best_deg + 1);
    for (int i = 0; i <= best_deg; ++i) v[i] = symmetric(acc[i], modulus);
    PolyZ cand{v};
    cand = cand.primitive_part();
    if (!cand.is_zero() && divides(cand, a) && divides(cand, b)) return cand;
    (void)stable;
  }
  throw std::runtime_error("PolyZ::gcd: CRT pool exhausted");
}

Int PolyZ::resultant(const PolyZ& a, const PolyZ& b) {
  if (a.is_zero() || b.is_zero()) return Int(0);
  if (a.deg() == 0) return pow(a.c[0], (unsigned long)b.deg());
  if (b.deg() == 0) return pow(b.c[0], (unsigned long)a.deg());

  // Hadamard bound on |res|
  Int na(0), nb(0);
  for (const auto& x : a.c) na += x * x;
  for (const auto& x : b.c) nb += x * x;
  Int b2 = pow(na, (unsigned long)b.deg()) * pow(nb, (unsigned long)a.deg());
  Int bound = iroot(b2, 2) + 1;

  Int res(0), modulus(1);
  for (uint64_t p : crt_primes()) {
    Fp fp(p);
    if (fp.reduce(a.lc()) == 0 || fp.reduce(b.lc()) == 0) continue;
    uint64_t rp = fp.presultant(fp.poly_from_z(a), fp.poly_from_z(b));
    if (modulus == 1) {
      res = Int((unsigned long)rp);
      modulus = Int((unsigned long)p);
    } else {
      res = crt_pair(res, modulus, rp, p);
      modulus *= Int((unsigned long)p);
    }
    if (modulus > 2 * bound) return symmetric(res, modulus);
  }
  throw std::runtime_error("PolyZ::resultant: CRT pool exhausted");
}

Int PolyZ::discriminant() const {
  int n = deg();
  if (n < 1) return Int(0);
  Int res = resultant(*this, derivative());
  Int d = divexact(res, lc());
  // sign (-1)^{n(n-1)/2}
  if (((long)n * (n - 1) / 2) % 2) d = -d;
  return d;
}

PolyZ PolyZ::squarefree_part() const {
  PolyQ f = to_q(*this).squarefree_part();
  return from_q_primitive(f);
}

static int sign_changes(const std::vector<int>& s) {
  int n = 0, last = 0;
  for (int v : s) {
    if (v == 0) continue;
    if (last != 0 && v != last) ++n;
    last = v;
  }
  return n;
}

int PolyZ::sturm_count(const std::optional<Rat>& a, const std::optional<Rat>& b) const {
  PolyZ f = squarefree_part();
  if (f.deg() < 1) return 0;
  auto scale_down = [](PolyZ g) {
    Int ct = g.content();
    if (ct > 1)
      for (auto& c : g.c) c = divexact(c, ct);
    return g;
  };
  std::vector<PolyZ> chain{f, scale_down(f.derivative())};
  while (chain.back().deg() >= 1) {
    PolyZ q, r;
    pseudo_divrem(chain[chain.size() - 2], chain.back(), q, r);
    if (r.is_zero()) break;
    // pseudo-division scales by lc^(da-db+1); undo the sign flip when that
    // power is negative so the chain keeps true remainder signs
    int da = chain[chain.size() - 2].deg(), db = chain.back().deg();
    int e = da - db + 1;
    if ((e % 2) == 1 && chain.back().lc() < 0) r = -r;
    chain.push_back(scale_down(-r));
  }
  auto sig_at = [&](const std::optional<Rat>& pt, int dir) {
    std::vector<int> s;
    for (const auto& g : chain) {
      if (g.is_zero()) {
        s.push_back(0);
        continue;
      }
      if (!pt.has_value()) {
        int lcs = g.lc() > 0 ? 1 : -1;
        if (dir < 0 && (g.deg() & 1)) lcs = -lcs;
        s.push_back(lcs);
      } else {
        Rat v = g.eval(*pt);
        s.push_back(v == 0 ? 0 : (v > 0 ? 1 : -1));
      }
    }
    return s;
  };
  int va = sign_changes(sig_at(a, -1));
  int vb = sign_changes(sig_at(b, +1));
  return va - vb;
}

Rat PolyZ::root_bound() const {
  assert(deg() >= 1);
  Rat m(0);
  for (int i = 0; i < deg(); ++i) {
    Rat t = abs(Rat(c[i]) / Rat(lc()));
    if (t > m) m = t;
  }
  return m + 1;
}

std::string PolyZ::str(const std::string& var) const { return to_q(*this).str(var); }

// ---------- complex roots (Aberth) ----------

std::vector<CReal> complex_roots(const PolyZ& f0, long prec) {
  PolyZ f = f0.squarefree_part();
  int n = f.deg();
  std::vector<CReal> z;
  if (n <= 0) return z;
  long wp = prec + 64;
  PolyQ fq = to_q(f);
  PolyQ fd = fq.derivative();
  // deterministic initial points on a circle of the root-bound radius
  Real R(f.root_bound(), wp);
  Real pi = Real::pi(wp);
  for (int i = 0; i < n; ++i) {
    Real theta = Real(2.0 * i + 0.354, wp) * pi / Real((double)n, wp);
    // crude cos/sin via exp? mpfr has sin/cos:
    Real c(wp), s(wp);
    mpfr_sin_cos(s.raw(), c.raw(), theta.raw(), MPFR_RNDN);
    z.emplace_back(R * c * Real(0.7, wp), R * s * Real(0.7, wp) + Real(0.01, wp));
  }
  Real eps = Real::pow2(-(prec + 16), wp);
  for (int iter = 0; iter < 4000; ++iter) {
    Real maxstep(0.0, wp);
    for (int i = 0; i < n; ++i) {
      CReal fv = fq.eval(z[i]);
      CReal fdv = fd.eval(z[i]);
      if (fdv.norm2().is_zero()) continue;
      CReal w = fv / fdv;
      CReal s(0.0, wp);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        CReal d = z[i] - z[j];
        if (d.norm2().is_zero()) {
          d.re += eps;
          d = CReal(d.re + eps, d.im);
        }
        s = s + CReal(Real(1.0, wp), Real(0.0, wp)) / d;
      }
      CReal denom = CReal(Real(1.0, wp), Real(0.0, wp)) - w * s;
      CReal step = w / denom;
      z[i] = z[i] - step;
      Real st = abs(step);
      if (st > maxstep) maxstep = st;
    }
    if (maxstep < eps * R) break;
  }
  // polish with Newton to full precision
  for (int i = 0; i < n; ++i) {
    for (int it = 0; it < 64; ++it) {
      CReal fv = fq.eval(z[i]);
      CReal fdv = fd.eval(z[i]);
      if (fdv.norm2().is_zero()) break;
      CReal step = fv / fdv;
      z[i] = z[i] - step;
      if (abs(step) < eps) break;
    }
  }
  // canonical order: by (re, |im|), real-ish first within ties
  std::sort(z.begin(), z.end(), [](const CReal& a, const CReal& b) {
    if (a.re < b.re) return true;
    if (b.re < a.re) return false;
    return abs(a.im) < abs(b.im);
  });
  return z;
}

}  // namespace ecros
