#include "ecros/nf/numberfield.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

#include "ecros/base/factorq.hpp"
#include "ecros/base/factorzp.hpp"
#include "ecros/base/primes.hpp"

namespace ecros {

// ---------- small F_p linear algebra (local helper) ----------

namespace {

struct FpMat {
  Fp fp;
  size_t m, n;
  std::vector<uint64_t> a;
  FpMat(uint64_t p, size_t m_, size_t n_) : fp(p), m(m_), n(n_), a(m_ * n_, 0) {}
  uint64_t& at(size_t i, size_t j) { return a[i * n + j]; }
  uint64_t at(size_t i, size_t j) const { return a[i * n + j]; }

  // reduced row echelon; returns pivot columns
  std::vector<size_t> rref() {
    std::vector<size_t> piv;
    size_t r = 0;
    for (size_t j = 0; j < n && r < m; ++j) {
      size_t p = m;
      for (size_t i = r; i < m; ++i)
        if (at(i, j)) { p = i; break; }
      if (p == m) continue;
      for (size_t k = 0; k < n; ++k) std::swap(at(p, k), at(r, k));
      uint64_t inv = fp.inv(at(r, j));
      for (size_t k = 0; k < n; ++k) at(r, k) = fp.mul(at(r, k), inv);
      for (size_t i = 0; i < m; ++i) {
        if (i == r || !at(i, j)) continue;
        uint64_t f = at(i, j);
        for (size_t k = 0; k < n; ++k) at(i, k) = fp.sub(at(i, k), fp.mul(f, at(r, k)));
      }
      piv.push_back(j);
      ++r;
    }
    return piv;
  }

  // basis of right kernel {x : M x = 0}, as rows
  std::vector<std::vector<uint64_t>> right_kernel() const {
    FpMat M = *this;
    auto piv = M.rref();
    std::vector<bool> is_piv(n, false);
    for (size_t j : piv) is_piv[j] = true;
    std::vector<std::vector<uint64_t>> ker;
    for (size_t j = 0; j < n; ++j) {
      if (is_piv[j]) continue;
      std::vector<uint64_t> v(n, 0);
      v[j] = 1;
      for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = fp.sub(0, M.at(i, j));
      ker.push_back(std::move(v));
    }
    return ker;
  }
};

}  // namespace

// ---------- NFElem ----------

bool NFElem::is_zero() const {
  for (const auto& a : co)
    if (a != 0) return false;
  return true;
}

bool NFElem::is_rational() const {
  for (size_t i = 1; i < co.size(); ++i)
    if (co[i] != 0) return false;
  return true;
}

Rat NFElem::rational_value() const {
  if (!is_rational()) throw std::domain_error("NFElem: not rational");
  return co.empty() ? Rat(0) : co[0];
}

NFElem operator+(const NFElem& a, const NFElem& b) {
  assert(a.K == b.K);
  std::vector<Rat> v(a.co);
  for (size_t i = 0; i < v.size(); ++i) v[i] += b.co[i];
  return {a.K, std::move(v)};
}

NFElem operator-(const NFElem& a, const NFElem& b) {
  assert(a.K == b.K);
  std::vector<Rat> v(a.co);
  for (size_t i = 0; i < v.size(); ++i) v[i] -= b.co[i];
  return {a.K, std::move(v)};
}

NFElem NFElem::operator-() const {
  std::vector<Rat> v(co);
  for (auto& x : v) x = -x;
  return {K, std::move(v)};
}

NFElem operator*(const NFElem& a, const NFElem& b) {
  assert(a.K == b.K);
  size_t n = a.co.size();
  std::vector<Rat> prod(2 * n - 1, Rat(0));
  for (size_t i = 0; i < n; ++i) {
    if (a.co[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) {
      if (b.co[j] == 0) continue;
      prod[i + j] += a.co[i] * b.co[j];
    }
  }
  return {a.K, a.K->reduce_poly(std::move(prod))};
}

NFElem NFElem::inv() const {
  if (is_zero()) throw std::domain_error("NFElem::inv of zero");
  // extended euclid in Q[x] mod f
  PolyQ a{std::vector<Rat>(co)};
  PolyQ f = to_q(K->poly());
  PolyQ r0 = f, r1 = a, s0, s1(Rat(1));
  while (!r1.is_zero()) {
    PolyQ q, r;
    PolyQ::divrem(r0, r1, q, r);
    PolyQ s = s0 - q * s1;
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s;
  }
  // r0 = gcd = constant (f irreducible)
  assert(r0.deg() == 0);
  PolyQ inv = (Rat(1) / r0.c[0]) * s0;
  return K->from_poly(inv);
}

NFElem operator/(const NFElem& a, const NFElem& b) { return a * b.inv(); }

NFElem NFElem::pow(long e) const {
  NFElem base = e >= 0 ? *this : inv();
  unsigned long k = e >= 0 ? e : -e;
  NFElem r = K->one();
  while (k) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

bool operator==(const NFElem& a, const NFElem& b) {
  assert(a.K == b.K);
  return a.co == b.co;
}

Rat NFElem::trace() const {
  Rat t(0);
  for (size_t i = 0; i < co.size(); ++i) t += co[i] * K->trace_pow_[i];
  return t;
}

Rat NFElem::norm() const {
  Int den = denominator();
  std::vector<Int> num(co.size());
  for (size_t i = 0; i < co.size(); ++i) num[i] = Int(Rat(co[i] * den).get_num());
  PolyZ g{num};
  if (g.is_zero()) return Rat(0);
  Int r = PolyZ::resultant(K->poly(), g);
  return Rat(r) / Rat(ecros::pow(den, (unsigned long)K->degree()));
}

Int NFElem::denominator() const {
  Int d(1);
  for (const auto& a : co) d = lcm(d, Int(a.get_den()));
  return d;
}

PolyQ NFElem::min_poly_q() const {
  int n = K->degree();
  // characteristic polynomial by interpolation: C(j) = Norm(j - x)
  std::vector<Rat> xs, ys;
  for (int j = 0; j <= n; ++j) {
    NFElem d = K->from_rat(Rat(j)) - *this;
    xs.push_back(Rat(j));
    ys.push_back(d.norm());
  }
  // Lagrange interpolation
  PolyQ C;
  for (int i = 0; i <= n; ++i) {
    PolyQ Li(Rat(1));
    Rat denom(1);
    for (int j = 0; j <= n; ++j) {
      if (j == i) continue;
      Li = Li * PolyQ(std::vector<Rat>{-xs[j], Rat(1)});
      denom *= (xs[i] - xs[j]);
    }
    C = C + (ys[i] / denom) * Li;
  }
  // C is min_poly^(n/deg); squarefree part is the minimal polynomial
  return C.squarefree_part().monic();
}

PolyZ NFElem::min_poly() const { return PolyZ::from_q_primitive(min_poly_q()); }

std::string NFElem::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < co.size(); ++i) os << (i ? "," : "") << co[i].get_str();
  os << "]";
  return os.str();
}

// ---------- NumberField ----------

std::vector<Rat> NumberField::reduce_poly(std::vector<Rat> v) const {
  size_t n = (size_t)degree();
  for (size_t k = v.size(); k-- > n;) {
    if (v[k] == 0) continue;
    const auto& rep = theta_pow_[k - n];  // theta^k over power basis
    for (size_t i = 0; i < n; ++i) v[i] += v[k] * rep[i];
    v[k] = 0;
  }
  v.resize(n);
  return v;
}

NFPtr NumberField::rationals() {
  static NFPtr q = create(PolyZ(std::vector<Int>{Int(0), Int(1)}));
  return q;
}

NFElem NumberField::zero() const {
  return {shared_from_this(), std::vector<Rat>((size_t)degree(), Rat(0))};
}
NFElem NumberField::one() const { return from_rat(Rat(1)); }
NFElem NumberField::gen() const {
  std::vector<Rat> v((size_t)degree(), Rat(0));
  if (degree() == 1) {
    // generator is the root of f = x - c, i.e. rational c
    v[0] = -Rat(poly().c[0]) / Rat(poly().c[1]);
  } else {
    v[1] = 1;
  }
  return {shared_from_this(), std::move(v)};
}
NFElem NumberField::from_rat(const Rat& a) const {
  std::vector<Rat> v((size_t)degree(), Rat(0));
  v[0] = a;
  return {shared_from_this(), std::move(v)};
}
NFElem NumberField::elem(std::vector<Rat> coords) const {
  assert((int)coords.size() == degree());
  return {shared_from_this(), std::move(coords)};
}
NFElem NumberField::from_poly(const PolyQ& g) const {
  std::vector<Rat> v = g.c;
  v.resize(std::max(v.size(), (size_t)degree()), Rat(0));
  return {shared_from_this(), reduce_poly(std::move(v))};
}

std::vector<Rat> NumberField::order_coords(const NFElem& x) const {
  std::vector<Rat> out;
  bool ok = QMat::solve_left(w_q_, x.co, out);
  assert(ok);
  (void)ok;
  return out;
}

bool NumberField::is_integral(const NFElem& x) const {
  for (const auto& a : order_coords(x))
    if (a.get_den() != 1) return false;
  return true;
}

NFElem NumberField::from_order_coords(const std::vector<Int>& v) const {
  std::vector<Rat> co((size_t)degree(), Rat(0));
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (size_t j = 0; j < (size_t)degree(); ++j)
      co[j] += Rat(v[i]) * Rat(w_num_.at(i, j)) / Rat(w_den_);
  }
  return {shared_from_this(), std::move(co)};
}

NFElem NumberField::from_order_coords_q(const std::vector<Rat>& v) const {
  std::vector<Rat> co((size_t)degree(), Rat(0));
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (size_t j = 0; j < (size_t)degree(); ++j)
      co[j] += v[i] * Rat(w_num_.at(i, j)) / Rat(w_den_);
  }
  return {shared_from_this(), std::move(co)};
}

namespace {

// order data during maximal-order computation: basis rows over power basis
// with a common denominator
struct WorkOrder {
  ZMat num;  // n x n, HNF
  Int den;
};

// multiplication table of a work order; entries rational in general but must
// be integral for a genuine order (asserted)
std::vector<ZMat> order_mult_table(const PolyZ& f, const std::vector<std::vector<Rat>>& theta_pow,
                                   const WorkOrder& W) {
  size_t n = (size_t)f.deg();
  QMat wq(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) wq.at(i, j) = Rat(W.num.at(i, j)) / Rat(W.den);
  QMat winv = wq.inverse();

  auto reduce = [&](std::vector<Rat> v) {
    for (size_t k = v.size(); k-- > n;) {
      if (v[k] == 0) continue;
      const auto& rep = theta_pow[k - n];
      for (size_t i = 0; i < n; ++i) v[i] += v[k] * rep[i];
      v[k] = 0;
    }
    v.resize(n);
    return v;
  };

  std::vector<ZMat> T(n, ZMat(n, n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      std::vector<Rat> prod(2 * n - 1, Rat(0));
      for (size_t a = 0; a < n; ++a) {
        if (wq.at(i, a) == 0) continue;
        for (size_t b = 0; b < n; ++b) {
          if (wq.at(j, b) == 0) continue;
          prod[a + b] += wq.at(i, a) * wq.at(j, b);
        }
      }
      auto red = reduce(std::move(prod));
      // express over order basis: solve x * wq = red
      std::vector<Rat> oc;
      bool ok = QMat::solve_left(wq, red, oc);
      if (!ok) throw std::runtime_error("order_mult_table: solve failed");
      for (size_t k = 0; k < n; ++k) {
        if (oc[k].get_den() != 1) throw std::runtime_error("order_mult_table: not an order");
        T[i].at(j, k) = Int(oc[k].get_num());
        T[j].at(i, k) = T[i].at(j, k);
      }
    }
  }
  return T;
}

// p-radical of the order as a lattice over the order basis (contains p*rows)
ZMat p_radical(const std::vector<ZMat>& T, uint64_t p, size_t n,
               const std::vector<uint64_t>& id_coords) {
  Fp fp(p);
  // frobenius matrix: columns are w_i^p over the basis, mod p
  auto mulvec = [&](const std::vector<uint64_t>& x,
                    const std::vector<uint64_t>& y) {
    std::vector<uint64_t> r(n, 0);
    for (size_t i = 0; i < n; ++i) {
      if (!x[i]) continue;
      for (size_t j = 0; j < n; ++j) {
        if (!y[j]) continue;
        uint64_t c = fp.mul(x[i], y[j]);
        for (size_t k = 0; k < n; ++k) {
          uint64_t t = fp.reduce(T[i].at(j, k));
          r[k] = fp.add(r[k], fp.mul(c, t));
        }
      }
    }
    return r;
  };
  auto powp = [&](std::vector<uint64_t> x, uint64_t e) {
    std::vector<uint64_t> r = id_coords;
    while (e) {
      if (e & 1) r = mulvec(r, x);
      x = mulvec(x, x);
      e >>= 1;
    }
    return r;
  };

  // k with p^k >= n
  uint64_t q = 1;
  while (q < n) q *= p;

  FpMat F(p, n, n);
  for (size_t i = 0; i < n; ++i) {
    std::vector<uint64_t> e(n, 0);
    e[i] = 1;
    auto fi = powp(e, q);
    for (size_t k = 0; k < n; ++k) F.at(k, i) = fi[k];
  }
  auto ker = F.right_kernel();

  ZMat L((size_t)ker.size() + n, n);
  for (size_t i = 0; i < ker.size(); ++i)
    for (size_t j = 0; j < n; ++j) L.at(i, j) = Int((unsigned long)ker[i][j]);
  for (size_t i = 0; i < n; ++i) L.at(ker.size() + i, i) = Int((unsigned long)p);
  return ZMat::hnf(L);
}

}  // namespace

NFPtr NumberField::create(const PolyZ& f) {
  if (f.deg() < 1 || f.lc() != 1) throw std::domain_error("NumberField: monic required");
  if (f.deg() > 1 && !is_irreducible_z(f)) throw std::domain_error("NumberField: reducible");

  auto K = std::shared_ptr<NumberField>(new NumberField());
  K->f_ = f;
  size_t n = (size_t)f.deg();

  // theta^n..theta^(2n-2)
  std::vector<Rat> cur(n, Rat(0));  // theta^n = -(lower part of f)
  for (size_t i = 0; i < n; ++i) cur[i] = -Rat(f.c[i]);
  K->theta_pow_.push_back(cur);
  for (size_t k = n + 1; k <= 2 * n - 2; ++k) {
    // multiply by theta
    std::vector<Rat> nxt(n, Rat(0));
    for (size_t i = 0; i + 1 < n; ++i) nxt[i + 1] = cur[i];
    if (cur[n - 1] != 0)
      for (size_t i = 0; i < n; ++i) nxt[i] += cur[n - 1] * K->theta_pow_[0][i];
    K->theta_pow_.push_back(nxt);
    cur = K->theta_pow_.back();
  }

  // trace of powers via Newton identities
  {
    std::vector<Rat> p((size_t)n, Rat(0));
    p[0] = Rat((long)n);
    for (size_t k = 1; k < n; ++k) {
      Rat s = Rat((long)k) * Rat(f.coeff((int)(n - k)));
      for (size_t i = 1; i < k; ++i) s += Rat(f.coeff((int)(n - i))) * p[k - i];
      p[k] = -s;
    }
    K->trace_pow_ = p;
  }

  // signature
  K->r1_ = f.real_root_count();
  K->r2_ = ((int)n - K->r1_) / 2;

  // maximal order via round-2
  Int Df = f.discriminant();
  if (Df == 0) throw std::domain_error("NumberField: not squarefree");
  WorkOrder W{ZMat::identity(n), Int(1)};
  auto fac = factor(Df);
  for (auto& [p, e] : fac) {
    if (e < 2) continue;
    if (!p.fits_ulong_p()) throw std::runtime_error("NumberField: huge ramified prime");
    uint64_t pu = p.get_ui();
    for (;;) {
      auto T = order_mult_table(f, K->theta_pow_, W);
      // order coordinates of the element 1
      std::vector<uint64_t> idc(n);
      {
        QMat wq(n, n);
        for (size_t i = 0; i < n; ++i)
          for (size_t j = 0; j < n; ++j) wq.at(i, j) = Rat(W.num.at(i, j)) / Rat(W.den);
        std::vector<Rat> one(n, Rat(0)), oc;
        one[0] = 1;
        bool ok = QMat::solve_left(wq, one, oc);
        if (!ok) throw std::runtime_error("identity coords failed");
        Fp fpl(pu);
        for (size_t i = 0; i < n; ++i) {
          assert(oc[i].get_den() == 1);
          idc[i] = fpl.reduce(Int(oc[i].get_num()));
        }
      }
      ZMat rad = p_radical(T, pu, n, idc);
      // ring of multipliers: y in O with y * rad  subset  p * rad
      // unknowns y mod p (order coords); conditions per radical basis vector
      Fp fp(pu);
      assert(rad.rows() == n);
      // need, for each radical basis r_k and unknown y: coords of y*r_k in
      // rad-basis must be 0 mod p
      // Solve radical-basis coordinates: z * rad = w  (w = y*r_k in order coords)
      QMat radq = QMat::from_z(rad);
      QMat radinv = radq.inverse();
      FpMat C(pu, n * n, n);
      for (size_t i = 0; i < n; ++i) {    // y = w_i
        for (size_t k = 0; k < n; ++k) {  // r_k
          // w_i * r_k over order basis
          std::vector<Rat> w(n, Rat(0));
          for (size_t j = 0; j < n; ++j) {
            if (rad.at(k, j) == 0) continue;
            for (size_t l = 0; l < n; ++l) w[l] += Rat(rad.at(k, j)) * Rat(T[i].at(j, l));
          }
          std::vector<Rat> z;
          bool ok = QMat::solve_left(radq, w, z);
          if (!ok) throw std::runtime_error("radical solve failed");
          for (size_t l = 0; l < n; ++l) {
            if (z[l].get_den() != 1) throw std::runtime_error("radical coords not integral");
            C.at(k * n + l, i) = fp.reduce(Int(z[l].get_num()));
          }
        }
      }
      auto ker = C.right_kernel();
      if (ker.size() == 0) break;  // multiplier ring equals O at p... no wait
      // new order: O' = (1/p) * M where M = lattice spanned by kernel lifts + pO
      ZMat M((size_t)ker.size() + n, n);
      for (size_t i = 0; i < ker.size(); ++i)
        for (size_t j = 0; j < n; ++j) M.at(i, j) = Int((unsigned long)ker[i][j]);
      for (size_t i = 0; i < n; ++i) M.at(ker.size() + i, i) = Int((unsigned long)pu);
      ZMat Mh = ZMat::hnf(M);
      // check if O' = O: M == p*I over order coords?
      bool same = true;
      for (size_t i = 0; i < n && same; ++i)
        for (size_t j = 0; j < n && same; ++j)
          if (Mh.at(i, j) != (i == j ? Int((unsigned long)pu) : Int(0))) same = false;
      if (same) break;
      // convert M (order coords) to power-basis rows: Mh * W.num, den W.den * p
      ZMat nb = Mh * W.num;
      W.num = ZMat::hnf(nb);
      W.den = W.den * Int((unsigned long)pu);
      // normalize common factor
      Int g = W.den;
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) g = gcd(g, W.num.at(i, j));
      if (g > 1) {
        for (size_t i = 0; i < n; ++i)
          for (size_t j = 0; j < n; ++j) W.num.at(i, j) = divexact(W.num.at(i, j), g);
        W.den = divexact(W.den, g);
      }
    }
  }

  K->w_num_ = W.num;
  K->w_den_ = W.den;
  K->w_q_ = QMat(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) K->w_q_.at(i, j) = Rat(W.num.at(i, j)) / Rat(W.den);
  K->w_inv_ = K->w_q_.inverse();
  Rat idx = abs(K->w_q_.det());
  // index of Z[theta] in O = 1/det(W)
  Rat index = Rat(1) / idx;
  assert(index.get_den() == 1);
  K->index_ = Int(index.get_num());
  K->disc_ = divexact(Df, K->index_ * K->index_);
  K->mult_table_ = order_mult_table(f, K->theta_pow_, W);

  // sanity: 1 lies in the order with integral coordinates
  {
    NFElem one = K->from_rat(Rat(1));
    if (!K->is_integral(one)) throw std::runtime_error("NumberField: 1 not in order");
  }
  return K;
}

std::vector<CReal> NumberField::embeddings(long prec) const {
  std::lock_guard<std::mutex> lk(emb_mu_);
  auto it = emb_cache_.find(prec);
  if (it != emb_cache_.end()) return it->second;
  long wp = prec + 32;
  for (int attempt = 0; attempt < 6; ++attempt, wp *= 2) {
    auto roots = complex_roots(f_, wp);
    // classify: r1 smallest |im| are real
    std::vector<size_t> idx(roots.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
      return abs(roots[a].im) < abs(roots[b].im);
    });
    std::vector<CReal> out;
    std::vector<CReal> reals, comps;
    for (size_t k = 0; k < idx.size(); ++k) {
      if ((int)k < r1_) {
        CReal r = roots[idx[k]];
        r.im = Real(0.0, wp);
        reals.push_back(r);
      } else if (roots[idx[k]].im.sign() > 0) {
        comps.push_back(roots[idx[k]]);
      }
    }
    if ((int)comps.size() != r2_) continue;  // retry at higher precision
    std::sort(reals.begin(), reals.end(),
              [](const CReal& a, const CReal& b) { return a.re < b.re; });
    std::sort(comps.begin(), comps.end(), [](const CReal& a, const CReal& b) {
      if (a.re < b.re) return true;
      if (b.re < a.re) return false;
      return a.im < b.im;
    });
    for (auto& r : reals) out.push_back(r);
    for (auto& c : comps) out.push_back(c);
    emb_cache_[prec] = out;
    return out;
  }
  throw std::runtime_error("embeddings: classification failed");
}

CReal NumberField::embed(const NFElem& x, size_t place, long prec) const {
  auto emb = embeddings(prec);
  assert(place < emb.size());
  PolyQ g(std::vector<Rat>(x.co));
  return g.eval(emb[place]);
}

Real NumberField::log_abs(const NFElem& x, size_t place, long prec) const {
  if (x.is_zero()) throw std::domain_error("log_abs of zero");
  CReal v = embed(x, place, prec + 32);
  Real a2 = v.norm2();
  Real l = log(a2);
  Real half(0.5, l.prec());
  if ((int)place < r1_) return half * l;  // |sigma(x)|
  return l;                               // |sigma(x)|^2
}

}  // namespace ecros
