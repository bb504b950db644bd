#include "ecros/nf/trager.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

#include "ecros/base/factorq.hpp"
#include "ecros/base/primes.hpp"

namespace ecros {

NFPoly::NFPoly(NFPtr field, std::vector<NFElem> coeffs) : K(std::move(field)), c(std::move(coeffs)) {
  trim();
}

NFPoly NFPoly::from_q(const NFPtr& K, const PolyQ& f) {
  NFPoly r(K);
  for (const auto& a : f.c) r.c.push_back(K->from_rat(a));
  r.trim();
  return r;
}

NFPoly NFPoly::from_z(const NFPtr& K, const PolyZ& f) { return from_q(K, to_q(f)); }

void NFPoly::trim() {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

NFPoly operator+(const NFPoly& a, const NFPoly& b) {
  NFPoly r(a.K);
  size_t n = std::max(a.c.size(), b.c.size());
  for (size_t i = 0; i < n; ++i) {
    NFElem s = a.K->zero();
    if (i < a.c.size()) s = s + a.c[i];
    if (i < b.c.size()) s = s + b.c[i];
    r.c.push_back(s);
  }
  r.trim();
  return r;
}

NFPoly operator-(const NFPoly& a, const NFPoly& b) {
  NFPoly r(a.K);
  size_t n = std::max(a.c.size(), b.c.size());
  for (size_t i = 0; i < n; ++i) {
    NFElem s = a.K->zero();
    if (i < a.c.size()) s = s + a.c[i];
    if (i < b.c.size()) s = s - b.c[i];
    r.c.push_back(s);
  }
  r.trim();
  return r;
}

NFPoly operator*(const NFPoly& a, const NFPoly& b) {
  NFPoly r(a.K);
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, a.K->zero());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j].is_zero()) continue;
      r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    }
  }
  r.trim();
  return r;
}

NFPoly operator*(const NFElem& s, const NFPoly& a) {
  NFPoly r(a.K);
  for (const auto& x : a.c) r.c.push_back(s * x);
  r.trim();
  return r;
}

bool operator==(const NFPoly& a, const NFPoly& b) {
  if (a.c.size() != b.c.size()) return false;
  for (size_t i = 0; i < a.c.size(); ++i)
    if (!(a.c[i] == b.c[i])) return false;
  return true;
}

void NFPoly::divrem(const NFPoly& a, const NFPoly& b, NFPoly& q, NFPoly& r) {
  assert(!b.is_zero());
  q = NFPoly(a.K);
  r = a;
  int db = b.deg();
  if (r.deg() < db) return;
  NFElem binv = b.lc().inv();
  q.c.assign(r.deg() - db + 1, a.K->zero());
  while (r.deg() >= db) {
    int k = r.deg() - db;
    NFElem f = r.c.back() * binv;
    q.c[k] = f;
    for (int i = 0; i <= db; ++i) r.c[k + i] = r.c[k + i] - f * b.c[i];
    r.trim();
  }
  q.trim();
}

NFPoly NFPoly::monic() const {
  if (is_zero()) return *this;
  return lc().inv() * *this;
}

NFPoly NFPoly::derivative() const {
  NFPoly r(K);
  for (size_t i = 1; i < c.size(); ++i) r.c.push_back(K->from_rat(Rat((long)i)) * c[i]);
  r.trim();
  return r;
}

NFElem NFPoly::eval(const NFElem& x) const {
  NFElem r = K->zero();
  for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

NFPoly NFPoly::gcd(NFPoly a, NFPoly b) {
  while (!b.is_zero()) {
    NFPoly q, r;
    divrem(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
    if (!b.is_zero()) b = b.monic();
  }
  return a.monic();
}

NFPoly NFPoly::squarefree_part() const {
  if (deg() < 1) return monic();
  NFPoly g = gcd(*this, derivative());
  NFPoly q, r;
  divrem(*this, g, q, r);
  return q.monic();
}

std::string NFPoly::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i].str();
  os << "]";
  return os.str();
}

PolyQ nf_poly_norm(const NFPoly& g, long shift) {
  // Res_t(f(t), sum_m a_m(t) (X - s t)^m) via interpolation in X
  const PolyZ& f = g.K->poly();
  int n = f.deg();
  int D = g.deg() * n;
  std::vector<Rat> xs, ys;
  for (int j = 0; j <= D; ++j) {
    // h_j(t) = sum_m a_m(t) * (j - s t)^m
    PolyQ h;
    PolyQ base(std::vector<Rat>{Rat(j), Rat(-shift)});
    PolyQ pw(Rat(1));
    for (int m = 0; m <= g.deg(); ++m) {
      PolyQ am(std::vector<Rat>(g.c[m].co));
      h = h + am * pw;
      pw = pw * base;
    }
    // clear denominators: Res(f, d h) = d^n Res(f, h)
    if (h.is_zero()) {
      xs.push_back(Rat(j));
      ys.push_back(Rat(0));
      continue;
    }
    Int den(1);
    for (const auto& a : h.c) den = lcm(den, Int(a.get_den()));
    std::vector<Int> hz(h.c.size());
    for (size_t i = 0; i < h.c.size(); ++i) hz[i] = Int(Rat(h.c[i] * den).get_num());
    Int r = PolyZ::resultant(f, PolyZ{hz});
    xs.push_back(Rat(j));
    ys.push_back(Rat(r) / Rat(pow(den, (unsigned long)n)));
  }
  // Lagrange interpolation
  PolyQ N;
  for (int i = 0; i <= D; ++i) {
    if (ys[i] == 0) continue;
    PolyQ Li(Rat(1));
    Rat denom(1);
    for (int j = 0; j <= D; ++j) {
      if (j == i) continue;
      Li = Li * PolyQ(std::vector<Rat>{-xs[j], Rat(1)});
      denom *= (xs[i] - xs[j]);
    }
    N = N + (ys[i] / denom) * Li;
  }
  return N;
}

namespace {

// factor a squarefree monic polynomial over K
std::vector<NFPoly> trager_squarefree(const NFPoly& a) {
  std::vector<NFPoly> out;
  if (a.deg() <= 0) return out;
  if (a.deg() == 1) {
    out.push_back(a);
    return out;
  }
  const NFPtr& K = a.K;
  if (K->degree() == 1) {
    // plain rational factorization
    PolyQ aq;
    for (const auto& x : a.c) aq.c.push_back(x.rational_value());
    aq.trim();
    for (auto& [g, m] : factor_q(aq)) {
      assert(m == 1);
      out.push_back(NFPoly::from_q(K, g));
    }
    return out;
  }
  for (long s = 0;; s = (s >= 0 ? -(s + 1) : -s)) {
    PolyQ N = nf_poly_norm(a, s);
    if (N.deg() != a.deg() * K->degree()) continue;  // degenerate shift
    PolyZ Nz = PolyZ::from_q_primitive(N);
    if (PolyZ::gcd(Nz, Nz.derivative()).deg() != 0) continue;  // not squarefree
    auto fac = factor_z(Nz);
    if (fac.size() == 1) {
      out.push_back(a.monic());
      return out;
    }
    // theta shift: A_i = gcd(a(X), B_i(X + s*theta))
    NFElem stheta = K->from_rat(Rat(s)) * K->gen();
    for (auto& [Bz, m] : fac) {
      assert(m == 1);
      // compose B(X + s*theta) by Horner
      NFPoly B = NFPoly::from_z(K, Bz);
      NFPoly xs(K);
      xs.c = {stheta, K->one()};
      NFPoly shifted(K);
      for (size_t i = B.c.size(); i-- > 0;) {
        NFPoly ci(K);
        ci.c = {B.c[i]};
        ci.trim();
        shifted = shifted * xs + ci;
      }
      NFPoly g = NFPoly::gcd(a, shifted);
      if (g.deg() >= 1) out.push_back(g);
    }
    // sanity: degrees add up
    int dsum = 0;
    for (auto& g : out) dsum += g.deg();
    if (dsum != a.deg()) throw std::runtime_error("trager: factor degrees mismatch");
    return out;
  }
}

}  // namespace

std::vector<std::pair<NFPoly, int>> nf_factor(const NFPoly& g0) {
  std::vector<std::pair<NFPoly, int>> out;
  if (g0.deg() <= 0) return out;
  NFPoly g = g0.monic();
  std::vector<NFPoly> uniq = trager_squarefree(g.squarefree_part());
  for (auto& f : uniq) {
    int m = 0;
    NFPoly cur = g;
    for (;;) {
      NFPoly q, r;
      NFPoly::divrem(cur, f, q, r);
      if (!r.is_zero()) break;
      cur = q;
      ++m;
    }
    out.push_back({f, m});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
    for (size_t i = 0; i < a.first.c.size(); ++i) {
      if (!(a.first.c[i] == b.first.c[i])) return a.first.c[i] < b.first.c[i];
    }
    return false;
  });
  return out;
}

bool nf_is_irreducible(const NFPoly& g) {
  if (g.deg() <= 0) return false;
  if (g.deg() == 1) return true;
  auto f = nf_factor(g);
  return f.size() == 1 && f[0].second == 1;
}

std::vector<NFElem> nf_roots(const NFPoly& g) {
  std::vector<NFElem> out;
  if (g.deg() < 1) return out;
  for (auto& [f, m] : nf_factor(g)) {
    if (f.deg() == 1) out.push_back(-(f.c[0] * f.c[1].inv()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NFElem> roots_in_field(const PolyZ& f, const NFPtr& L) {
  return nf_roots(NFPoly::from_z(L, f));
}

bool is_nth_power(const NFElem& x, unsigned long n, NFElem* root) {
  assert(n >= 1);
  const NFPtr& K = x.K;
  if (x.is_zero()) {
    if (root) *root = K->zero();
    return true;
  }
  if (n == 1) {
    if (root) *root = x;
    return true;
  }
  // peel one prime of n at a time
  auto nf = factor(Int((unsigned long)n));
  NFElem cur = x;
  for (auto& [p, e] : nf) {
    unsigned long pu = p.get_ui();
    for (int i = 0; i < e; ++i) {
      // p-th root of cur
      if (cur.is_rational() && K->degree() == 1) {
        Rat r;
        if (!rat_nth_root(cur.rational_value(), pu, r)) return false;
        cur = K->from_rat(r);
        continue;
      }
      NFPoly g(K);
      g.c.assign(pu + 1, K->zero());
      g.c[0] = -cur;
      g.c[pu] = K->one();
      auto roots = nf_roots(g);
      if (roots.empty()) return false;
      cur = roots.front();  // deterministic: smallest in coordinate order
    }
  }
  if (root) *root = cur;
  return true;
}

}  // namespace ecros
