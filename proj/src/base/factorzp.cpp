#include "ecros/base/factorzp.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace ecros {

uint64_t Fp::pow(uint64_t a, const Int& e) const {
  uint64_t r = 1;
  Int k = e;
  a %= p_;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

uint64_t Fp::inv(uint64_t a) const {
  // extended euclid on signed 128-bit
  __int128 t = 0, newt = 1;
  __int128 r = p_, newr = a % p_;
  while (newr != 0) {
    __int128 q = r / newr;
    __int128 tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw std::domain_error("Fp::inv: not invertible");
  if (t < 0) t += p_;
  return (uint64_t)t;
}

FpPoly Fp::poly_from_z(const PolyZ& f) const {
  FpPoly r(f.c.size());
  for (size_t i = 0; i < f.c.size(); ++i) r[i] = reduce(f.c[i]);
  trim(r);
  return r;
}

FpPoly Fp::padd(const FpPoly& a, const FpPoly& b) const {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = add(r[i], b[i]);
  trim(r);
  return r;
}

FpPoly Fp::psub(const FpPoly& a, const FpPoly& b) const {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i]);
  trim(r);
  return r;
}

FpPoly Fp::pmul(const FpPoly& a, const FpPoly& b) const {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (uint64_t)(((unsigned __int128)a[i] * b[j] + r[i + j]) % p_);
  }
  trim(r);
  return r;
}

FpPoly Fp::pscale(uint64_t s, const FpPoly& a) const {
  FpPoly r(a);
  for (auto& x : r) x = mul(x, s);
  trim(r);
  return r;
}

void Fp::pdivrem(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r) const {
  assert(!b.empty());
  r = a;
  q.clear();
  int db = deg(b);
  if (deg(a) < db) return;
  q.assign(deg(a) - db + 1, 0);
  uint64_t binv = inv(b.back());
  while (deg(r) >= db) {
    int k = deg(r) - db;
    uint64_t f = mul(r.back(), binv);
    q[k] = f;
    for (int i = 0; i <= db; ++i) r[k + i] = sub(r[k + i], mul(f, b[i]));
    trim(r);
  }
}

FpPoly Fp::pmod(const FpPoly& a, const FpPoly& m) const {
  FpPoly q, r;
  pdivrem(a, m, q, r);
  return r;
}

FpPoly Fp::pmonic(const FpPoly& a) const {
  if (a.empty()) return a;
  return pscale(inv(a.back()), a);
}

FpPoly Fp::pgcd(FpPoly a, FpPoly b) const {
  while (!b.empty()) {
    FpPoly q, r;
    pdivrem(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return pmonic(a);
}

FpPoly Fp::pxgcd(FpPoly a, FpPoly b, FpPoly& u, FpPoly& v) const {
  FpPoly u0{1}, v0{}, u1{}, v1{1};
  while (!b.empty()) {
    FpPoly q, r;
    pdivrem(a, b, q, r);
    FpPoly nu = psub(u0, pmul(q, u1));
    FpPoly nv = psub(v0, pmul(q, v1));
    a = std::move(b);
    b = std::move(r);
    u0 = std::move(u1);
    u1 = std::move(nu);
    v0 = std::move(v1);
    v1 = std::move(nv);
  }
  if (a.empty()) {
    u = {};
    v = {};
    return a;
  }
  uint64_t s = inv(a.back());
  u = pscale(s, u0);
  v = pscale(s, v0);
  return pscale(s, a);
}

FpPoly Fp::ppowmod(const FpPoly& a, const Int& e, const FpPoly& m) const {
  FpPoly base = pmod(a, m), r{1};
  Int k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = pmod(pmul(r, base), m);
    base = pmod(pmul(base, base), m);
    k >>= 1;
  }
  return r;
}

FpPoly Fp::pderiv(const FpPoly& a) const {
  if (a.size() <= 1) return {};
  FpPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = mul(a[i], i % p_);
  trim(r);
  return r;
}

uint64_t Fp::peval(const FpPoly& a, uint64_t x) const {
  uint64_t r = 0;
  for (size_t i = a.size(); i-- > 0;) r = add(mul(r, x), a[i]);
  return r;
}

uint64_t Fp::presultant(FpPoly a, FpPoly b) const {
  if (a.empty() || b.empty()) return 0;
  uint64_t acc = 1;
  bool neg = false;
  for (;;) {
    if (deg(a) < deg(b)) {
      if ((deg(a) & 1) && (deg(b) & 1)) neg = !neg;
      std::swap(a, b);
    }
    if (b.empty()) return 0;
    if (deg(b) == 0) {
      uint64_t r = mul(acc, pow(b[0], (uint64_t)deg(a)));
      return neg ? sub(0, r) : r;
    }
    FpPoly q, r;
    pdivrem(a, b, q, r);
    if (r.empty()) return 0;
    int dA = deg(a), dB = deg(b), dr = deg(r);
    if ((dA & 1) && (dB & 1)) neg = !neg;
    acc = mul(acc, pow(b.back(), (uint64_t)(dA - dr)));
    a = std::move(b);
    b = std::move(r);
  }
}

bool Fp::squarefree(const FpPoly& f) const {
  if (f.empty()) return false;
  FpPoly d = pderiv(f);
  if (d.empty()) return false;  // p-th power or constant
  return deg(pgcd(f, d)) == 0;
}

namespace {
struct Lcg {
  uint64_t s;
  uint64_t next() {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return s >> 1;
  }
};
}  // namespace

std::vector<FpPoly> Fp::factor_squarefree(const FpPoly& f0, uint64_t seed) const {
  std::vector<FpPoly> out;
  FpPoly f = pmonic(f0);
  if (deg(f) <= 0) return out;

  // distinct-degree splitting
  struct Task {
    FpPoly f;
    int d;  // all irreducible factors have degree d (0 = unknown)
  };
  std::vector<Task> stack;
  {
    FpPoly h{0, 1};  // x
    FpPoly rem = f;
    int d = 0;
    Int P((unsigned long)p_);
    while (deg(rem) > 0) {
      ++d;
      if (2 * d > deg(rem)) {
        stack.push_back({rem, deg(rem)});
        break;
      }
      h = ppowmod(h, P, rem);
      FpPoly hx = psub(h, FpPoly{0, 1});
      FpPoly g = pgcd(rem, hx);
      if (deg(g) > 0) {
        stack.push_back({g, d});
        FpPoly q, r;
        pdivrem(rem, g, q, r);
        assert(r.empty());
        rem = pmonic(q);
        h = pmod(h, rem);
      }
    }
  }

  // equal-degree (Cantor–Zassenhaus)
  Lcg rng{seed * 2654435761ULL + p_ + 12345};
  Int P((unsigned long)p_);
  while (!stack.empty()) {
    Task t = stack.back();
    stack.pop_back();
    int n = deg(t.f);
    if (n == t.d) {
      out.push_back(pmonic(t.f));
      continue;
    }
    // split
    for (;;) {
      FpPoly a(n);
      for (int i = 0; i < n; ++i) a[i] = rng.next() % p_;
      trim(a);
      if (a.empty()) continue;
      FpPoly g = pgcd(t.f, a);
      if (deg(g) > 0 && deg(g) < n) {
        FpPoly q, r;
        pdivrem(t.f, g, q, r);
        stack.push_back({g, t.d});
        stack.push_back({pmonic(q), t.d});
        break;
      }
      FpPoly b;
      if (p_ == 2) {
        // trace map
        b = a;
        FpPoly acc = a;
        for (int i = 1; i < t.d; ++i) {
          acc = ppowmod(acc, Int(2), t.f);
          b = padd(b, acc);
        }
      } else {
        Int e = (ecros::pow(P, (unsigned long)t.d) - 1) / 2;
        b = psub(ppowmod(a, e, t.f), FpPoly{1});
      }
      g = pgcd(t.f, b);
      if (deg(g) > 0 && deg(g) < n) {
        FpPoly q, r;
        pdivrem(t.f, g, q, r);
        stack.push_back({g, t.d});
        stack.push_back({pmonic(q), t.d});
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint64_t> Fp::roots(const FpPoly& f) const {
  std::vector<uint64_t> out;
  if (deg(f) <= 0) return out;
  // roots of gcd(f, x^p - x)
  FpPoly xp = ppowmod(FpPoly{0, 1}, Int((unsigned long)p_), f);
  FpPoly g = pgcd(f, psub(xp, FpPoly{0, 1}));
  if (deg(g) <= 0) return out;
  auto linear = factor_squarefree(g, 7);
  for (const auto& l : linear)
    if (deg(l) == 1) out.push_back(sub(0, l[0]));
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<uint64_t>& crt_primes() {
  static const std::vector<uint64_t> primes = [] {
    std::vector<uint64_t> v;
    Int p = (Int(1) << 62) - 1;
    for (int i = 0; i < 2000; ++i) {
      mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
      // keep strictly below 2^63 so Fp fits
      v.push_back(p.get_ui());
    }
    return v;
  }();
  return primes;
}

uint64_t good_prime_for(const PolyZ& f, size_t skip) {
  size_t found = 0;
  for (uint64_t p : crt_primes()) {
    Fp fp(p);
    if (fp.reduce(f.lc()) == 0) continue;
    FpPoly g = fp.poly_from_z(f);
    if (Fp::deg(g) != f.deg()) continue;
    if (!fp.squarefree(g)) continue;
    if (found++ == skip) return p;
  }
  throw std::runtime_error("good_prime_for: exhausted prime pool");
}

}  // namespace ecros
