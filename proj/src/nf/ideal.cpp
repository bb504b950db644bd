#include "ecros/nf/ideal.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "ecros/base/primes.hpp"

namespace ecros {

namespace {

// --- small F_p linear algebra over order coordinates ---

struct FpLin {
  Fp fp;
  size_t n;
  explicit FpLin(uint64_t p, size_t n_) : fp(p), n(n_) {}

  // rref rows + pivot cols of a set of vectors
  void rref(std::vector<std::vector<uint64_t>>& rows, std::vector<size_t>& pivots) const {
    pivots.clear();
    size_t r = 0;
    for (size_t j = 0; j < n && r < rows.size(); ++j) {
      size_t p = rows.size();
      for (size_t i = r; i < rows.size(); ++i)
        if (rows[i][j]) { p = i; break; }
      if (p == rows.size()) continue;
      std::swap(rows[p], rows[r]);
      uint64_t inv = fp.inv(rows[r][j]);
      for (size_t k = 0; k < n; ++k) rows[r][k] = fp.mul(rows[r][k], inv);
      for (size_t i = 0; i < rows.size(); ++i) {
        if (i == r || !rows[i][j]) continue;
        uint64_t f = rows[i][j];
        for (size_t k = 0; k < n; ++k) rows[i][k] = fp.sub(rows[i][k], fp.mul(f, rows[r][k]));
      }
      pivots.push_back(j);
      ++r;
    }
    rows.resize(r);
  }

  // reduce v modulo the row space given by rref rows/pivots
  std::vector<uint64_t> reduce(std::vector<uint64_t> v,
                               const std::vector<std::vector<uint64_t>>& rows,
                               const std::vector<size_t>& pivots) const {
    for (size_t i = 0; i < rows.size(); ++i) {
      uint64_t c = v[pivots[i]];
      if (!c) continue;
      for (size_t k = 0; k < n; ++k) v[k] = fp.sub(v[k], fp.mul(c, rows[i][k]));
    }
    return v;
  }
};

std::vector<uint64_t> order_coords_mod_p(const NFPtr& K, const NFElem& x, uint64_t p) {
  Fp fp(p);
  auto oc = K->order_coords(x);
  std::vector<uint64_t> v(oc.size());
  for (size_t i = 0; i < oc.size(); ++i) {
    Int den(oc[i].get_den());
    if (mod(den, Int((unsigned long)p)) == 0) throw std::domain_error("coords not p-integral");
    Int num(oc[i].get_num());
    uint64_t d = fp.reduce(den);
    v[i] = fp.mul(fp.reduce(num), fp.inv(d));
  }
  return v;
}

// multiply two order-coordinate vectors mod p via the order mult table
std::vector<uint64_t> mulvec_mod_p(const NFPtr& K, const std::vector<uint64_t>& a,
                                   const std::vector<uint64_t>& b, uint64_t p) {
  Fp fp(p);
  size_t n = a.size();
  const auto& T = K->mult_table();
  std::vector<uint64_t> r(n, 0);
  for (size_t i = 0; i < n; ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < n; ++j) {
      if (!b[j]) continue;
      uint64_t c = fp.mul(a[i], b[j]);
      for (size_t k = 0; k < n; ++k)
        r[k] = fp.add(r[k], fp.mul(c, fp.reduce(T[i].at(j, k))));
    }
  }
  return r;
}

// integral membership in a full-rank HNF lattice over order coords
bool lattice_contains(const ZMat& H, std::vector<Int> v) {
  size_t n = H.cols();
  // pivot of row i is at column pivcol(i); HNF rows sorted by pivot col
  for (size_t i = 0; i < H.rows(); ++i) {
    size_t j = 0;
    while (j < n && H.at(i, j) == 0) ++j;
    if (j == n) continue;
    if (!divides(H.at(i, j), v[j])) return false;
    Int q = divexact(v[j], H.at(i, j));
    if (q != 0)
      for (size_t k = 0; k < n; ++k) v[k] -= q * H.at(i, k);
  }
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

NFElem make_val_elem(const NFPtr& K, const ZMat& pbasis, const Int& p) {
  // y in O with y*P inside p*O, y not in p*O ; val elem is y/p
  uint64_t pu = p.get_ui();
  size_t n = (size_t)K->degree();
  FpLin lin(pu, n);
  Fp fp(pu);
  // conditions: for each basis row b of P and unknown y (order coords mod p):
  // (y * b) mod p == 0
  // build matrix: rows are conditions, columns unknown coords
  std::vector<std::vector<uint64_t>> cond;  // each row length n
  for (size_t bi = 0; bi < pbasis.rows(); ++bi) {
    std::vector<uint64_t> b(n);
    for (size_t j = 0; j < n; ++j) b[j] = fp.reduce(pbasis.at(bi, j));
    // map y -> y*b : matrix rows per output coordinate
    for (size_t out = 0; out < n; ++out) {
      std::vector<uint64_t> row(n, 0);
      for (size_t i = 0; i < n; ++i) {
        // coefficient of y_i in coordinate `out` of y*b
        uint64_t s = 0;
        for (size_t j = 0; j < n; ++j) {
          if (!b[j]) continue;
          s = fp.add(s, fp.mul(b[j], fp.reduce(K->mult_table()[i].at(j, out))));
        }
        row[i] = s;
      }
      cond.push_back(std::move(row));
    }
  }
  // kernel of cond (as matrix acting on y)
  // transpose trick: we need {y : M y = 0}; build FpMat-like elimination
  size_t m = cond.size();
  std::vector<std::vector<uint64_t>> M(m, std::vector<uint64_t>(n, 0));
  for (size_t i = 0; i < m; ++i) M[i] = cond[i];
  // gaussian elimination to find kernel
  std::vector<size_t> pivots;
  lin.rref(M, pivots);
  std::vector<bool> is_piv(n, false);
  for (size_t j : pivots) is_piv[j] = true;
  for (size_t j = 0; j < n; ++j) {
    if (is_piv[j]) continue;
    std::vector<uint64_t> y(n, 0);
    y[j] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) y[pivots[i]] = fp.sub(0, M[i][j]);
    // y is a nonzero kernel vector; val elem = y/p
    std::vector<Int> yi(n);
    for (size_t k = 0; k < n; ++k) yi[k] = Int((unsigned long)y[k]);
    NFElem ye = K->from_order_coords(yi);
    return ye / K->from_rat(Rat(p));
  }
  throw std::runtime_error("make_val_elem: empty kernel");
}

long valuation_integral(const NFElem& x0, const PrimeIdeal& P) {
  NFElem x = x0;
  long v = 0;
  for (;;) {
    NFElem y = x * P.val_elem;
    if (!P.K->is_integral(y)) return v;
    x = y;
    ++v;
    if (v > 100000) throw std::runtime_error("valuation runaway");
  }
}

struct PrimeCacheKey {
  const NumberField* K;
  Int p;
  bool operator<(const PrimeCacheKey& o) const {
    if (K != o.K) return K < o.K;
    return p < o.p;
  }
};
std::mutex g_prime_mu;
std::map<PrimeCacheKey, std::vector<PrimeIdeal>> g_prime_cache;

}  // namespace

bool PrimeIdeal::operator<(const PrimeIdeal& o) const {
  if (p != o.p) return p < o.p;
  if (f != o.f) return f < o.f;
  if (e != o.e) return e < o.e;
  for (size_t i = 0; i < basis.rows(); ++i)
    for (size_t j = 0; j < basis.cols(); ++j) {
      if (basis.at(i, j) != o.basis.at(i, j)) return basis.at(i, j) < o.basis.at(i, j);
    }
  return false;
}

std::string PrimeIdeal::str() const {
  std::ostringstream os;
  os << "(" << p.get_str() << "," << second_gen.str() << ")";
  return os.str();
}

bool in_ideal(const NFElem& x, const PrimeIdeal& P) {
  auto oc = P.K->order_coords(x);
  std::vector<Int> v(oc.size());
  for (size_t i = 0; i < oc.size(); ++i) {
    if (oc[i].get_den() != 1) return false;
    v[i] = Int(oc[i].get_num());
  }
  return lattice_contains(P.basis, v);
}

long valuation(const NFElem& x, const PrimeIdeal& P) {
  if (x.is_zero()) throw std::domain_error("valuation of zero");
  Int d = x.denominator();
  NFElem num = x * x.K->from_rat(Rat(d));
  long vnum = valuation_integral(num, P);
  long vden = 0;
  Int dd = d;
  if (d != 1) {
    long k = 0;
    while (divides(P.p, dd)) {
      dd = divexact(dd, P.p);
      ++k;
    }
    vden = (long)P.e * k;
  }
  return vnum - vden;
}

const std::vector<PrimeIdeal>& factor_rational_prime(const NFPtr& K, const Int& p) {
  std::lock_guard<std::mutex> lk(g_prime_mu);
  PrimeCacheKey key{K.get(), p};
  auto it = g_prime_cache.find(key);
  if (it != g_prime_cache.end()) return it->second;
  if (!is_prime(p)) throw std::domain_error("factor_rational_prime: not prime");
  if (!p.fits_ulong_p()) throw std::runtime_error("factor_rational_prime: prime too large");

  size_t n = (size_t)K->degree();
  uint64_t pu = p.get_ui();
  Fp fp(pu);
  std::vector<PrimeIdeal> out;

  if (!divides(p, K->index())) {
    // Dedekind: factor the defining polynomial mod p
    FpPoly fbar = fp.poly_from_z(K->poly());
    // squarefree decomposition mod p: group equal factors
    std::map<FpPoly, int> mult;
    {
      FpPoly rem = fbar;
      while (Fp::deg(rem) > 0) {
        FpPoly d = fp.pderiv(rem);
        FpPoly g = d.empty() ? rem : fp.pgcd(rem, d);
        FpPoly sqf;
        if (Fp::deg(g) == 0) {
          sqf = fp.pmonic(rem);
        } else {
          FpPoly q, r;
          fp.pdivrem(rem, g, q, r);
          sqf = fp.pmonic(q);
        }
        if (Fp::deg(sqf) == 0) {
          // rem is a p-th power: take p-th root
          FpPoly root((Fp::deg(rem) / pu) + 1);
          for (size_t i = 0; i < root.size(); ++i) root[i] = rem[i * pu];
          rem = root;
          continue;
        }
        for (auto& g1 : fp.factor_squarefree(sqf, 3)) {
          FpPoly q, r;
          int e = 0;
          FpPoly cur = fbar;  // multiplicity is counted in the full polynomial
          for (;;) {
            fp.pdivrem(cur, g1, q, r);
            if (!r.empty()) break;
            cur = q;
            ++e;
          }
          mult[g1] = e;
        }
        // divide rem by all found factors to continue (simpler: recompute)
        FpPoly prod{1};
        for (auto& [g1, e] : mult)
          for (int i = 0; i < e; ++i) prod = fp.pmul(prod, g1);
        FpPoly q, r;
        fp.pdivrem(fbar, prod, q, r);
        assert(r.empty());
        rem = fp.pmonic(q);
      }
    }
    for (auto& [g, e] : mult) {
      PrimeIdeal P;
      P.K = K;
      P.p = p;
      P.e = e;
      P.f = Fp::deg(g);
      // second gen g(theta)
      std::vector<Int> gc(g.size());
      for (size_t i = 0; i < g.size(); ++i) gc[i] = Int((unsigned long)g[i]);
      PolyZ gz{gc};
      P.second_gen = K->from_poly(to_q(gz));
      // lattice pO + g(theta) O
      ZMat L(2 * n, n);
      for (size_t i = 0; i < n; ++i) L.at(i, i) = p;
      for (size_t i = 0; i < n; ++i) {
        NFElem wi = K->from_order_coords([&] {
          std::vector<Int> v(n, Int(0));
          v[i] = 1;
          return v;
        }());
        NFElem prod = P.second_gen * wi;
        auto oc = K->order_coords(prod);
        for (size_t jj = 0; jj < n; ++jj) {
          assert(oc[jj].get_den() == 1);
          L.at(n + i, jj) = Int(oc[jj].get_num());
        }
      }
      P.basis = ZMat::hnf(L);
      P.val_elem = make_val_elem(K, P.basis, p);
      out.push_back(std::move(P));
    }
  } else {
    // Buchmann–Lenstra via the radical of O/pO
    FpLin lin(pu, n);
    // radical (order coords mod p): frobenius-power kernel
    std::vector<uint64_t> idc(n);
    {
      auto oc = K->order_coords(K->one());
      for (size_t i = 0; i < n; ++i) idc[i] = fp.reduce(Int(oc[i].get_num()));
    }
    uint64_t q = 1;
    while (q < n) q *= pu;
    auto powq = [&](std::vector<uint64_t> x) {
      std::vector<uint64_t> r = idc;
      uint64_t e = q;
      while (e) {
        if (e & 1) r = mulvec_mod_p(K, r, x, pu);
        x = mulvec_mod_p(K, x, x, pu);
        e >>= 1;
      }
      return r;
    };
    // frobenius^k matrix columns
    std::vector<std::vector<uint64_t>> Fcols(n);
    for (size_t i = 0; i < n; ++i) {
      std::vector<uint64_t> e(n, 0);
      e[i] = 1;
      Fcols[i] = powq(e);
    }
    // kernel of F: rows = conditions per output coordinate
    std::vector<std::vector<uint64_t>> M(n, std::vector<uint64_t>(n, 0));
    for (size_t out = 0; out < n; ++out)
      for (size_t i = 0; i < n; ++i) M[out][i] = Fcols[i][out];
    std::vector<size_t> piv;
    lin.rref(M, piv);
    std::vector<bool> is_piv(n, false);
    for (size_t j : piv) is_piv[j] = true;
    std::vector<std::vector<uint64_t>> rad_gens;
    for (size_t j = 0; j < n; ++j) {
      if (is_piv[j]) continue;
      std::vector<uint64_t> y(n, 0);
      y[j] = 1;
      for (size_t i = 0; i < piv.size(); ++i) y[piv[i]] = fp.sub(0, M[i][j]);
      rad_gens.push_back(std::move(y));
    }
    // rref of the radical subspace for quotient work
    std::vector<std::vector<uint64_t>> rad_rref = rad_gens;
    std::vector<size_t> rad_piv;
    lin.rref(rad_rref, rad_piv);

    auto project = [&](std::vector<uint64_t> v) { return lin.reduce(v, rad_rref, rad_piv); };

    // components of the semisimple quotient: basis vectors + identity
    struct Comp {
      std::vector<std::vector<uint64_t>> basis;  // reduced mod radical, rref'd
      std::vector<size_t> piv;
      std::vector<uint64_t> id;
    };
    auto make_comp = [&](std::vector<std::vector<uint64_t>> vecs,
                         std::vector<uint64_t> id) {
      Comp c;
      c.basis = std::move(vecs);
      lin.rref(c.basis, c.piv);
      c.id = project(std::move(id));
      return c;
    };

    std::vector<Comp> fields;
    std::vector<Comp> work;
    {
      std::vector<std::vector<uint64_t>> all;
      for (size_t j = 0; j < n; ++j) {
        std::vector<uint64_t> e(n, 0);
        e[j] = 1;
        all.push_back(project(e));
      }
      work.push_back(make_comp(all, idc));
    }

    // deterministic rng for splitting elements
    uint64_t rngs = 0x9e3779b97f4a7c15ULL + pu;
    auto next_rng = [&rngs] {
      rngs = rngs * 6364136223846793005ULL + 1442695040888963407ULL;
      return rngs >> 3;
    };

    while (!work.empty()) {
      Comp C = work.back();
      work.pop_back();
      size_t d = C.basis.size();
      if (d == 1) {
        fields.push_back(C);
        continue;
      }
      bool split_done = false;
      for (size_t attempt = 0; attempt < 200 && !split_done; ++attempt) {
        // choose a in C
        std::vector<uint64_t> a(n, 0);
        if (attempt < d) {
          a = C.basis[attempt];
        } else {
          for (size_t b = 0; b < d; ++b) {
            uint64_t c = next_rng() % pu;
            for (size_t k = 0; k < n; ++k) a[k] = fp.add(a[k], fp.mul(c, C.basis[b][k]));
          }
        }
        // min poly of a within C: powers until dependence
        std::vector<std::vector<uint64_t>> pows{C.id};
        std::vector<std::vector<uint64_t>> echelon;
        std::vector<size_t> epiv;
        auto add_vec = [&](const std::vector<uint64_t>& v) {
          // returns false if dependent; maintains echelon copy
          auto r = lin.reduce(v, echelon, epiv);
          size_t j = 0;
          while (j < n && !r[j]) ++j;
          if (j == n) return false;
          // normalize and insert
          uint64_t inv = fp.inv(r[j]);
          for (auto& x : r) x = fp.mul(x, inv);
          // reduce existing rows by new one? keep simple: insert sorted
          echelon.push_back(r);
          epiv.push_back(j);
          // re-rref to keep structure exact
          lin.rref(echelon, epiv);
          return true;
        };
        add_vec(C.id);
        std::vector<uint64_t> cur = C.id;
        size_t degm = 0;
        for (size_t k = 1; k <= d; ++k) {
          cur = project(mulvec_mod_p(K, cur, a, pu));
          pows.push_back(cur);
          if (!add_vec(cur)) {
            degm = k;
            break;
          }
        }
        if (degm == 0) degm = d;  // dependence at latest by dim
        // solve min poly coefficients: cur(^degm) = sum c_k a^k, k<degm
        // build system over the stored powers
        std::vector<std::vector<uint64_t>> A(n, std::vector<uint64_t>(degm, 0));
        for (size_t k = 0; k < degm; ++k)
          for (size_t r = 0; r < n; ++r) A[r][k] = pows[k][r];
        // gaussian solve A c = pows[degm]
        std::vector<uint64_t> rhs = pows[degm];
        // augmented elimination
        std::vector<std::vector<uint64_t>> Aug(n, std::vector<uint64_t>(degm + 1, 0));
        for (size_t r = 0; r < n; ++r) {
          for (size_t k = 0; k < degm; ++k) Aug[r][k] = A[r][k];
          Aug[r][degm] = rhs[r];
        }
        // rref over columns 0..degm-1
        size_t rr = 0;
        std::vector<size_t> pcols;
        for (size_t j = 0; j < degm && rr < n; ++j) {
          size_t pr = n;
          for (size_t i = rr; i < n; ++i)
            if (Aug[i][j]) { pr = i; break; }
          if (pr == n) continue;
          std::swap(Aug[pr], Aug[rr]);
          uint64_t inv = fp.inv(Aug[rr][j]);
          for (size_t k = 0; k <= degm; ++k) Aug[rr][k] = fp.mul(Aug[rr][k], inv);
          for (size_t i = 0; i < n; ++i) {
            if (i == rr || !Aug[i][j]) continue;
            uint64_t fx = Aug[i][j];
            for (size_t k = 0; k <= degm; ++k)
              Aug[i][k] = fp.sub(Aug[i][k], fp.mul(fx, Aug[rr][k]));
          }
          pcols.push_back(j);
          ++rr;
        }
        FpPoly mpoly(degm + 1, 0);
        mpoly[degm] = 1;
        for (size_t i = 0; i < pcols.size(); ++i) mpoly[pcols[i]] = fp.sub(0, Aug[i][degm]);
        Fp::trim(mpoly);
        // factor
        auto mf = fp.factor_squarefree(fp.pmonic(mpoly), 11);
        if (mf.size() == 1 && Fp::deg(mf[0]) == (int)d) {
          fields.push_back(C);
          split_done = true;
          break;
        }
        if (mf.size() <= 1) continue;  // not separating
        // split with idempotents
        for (auto& ml : mf) {
          FpPoly ql{1};
          for (auto& mj : mf)
            if (!(mj == ml)) ql = fp.pmul(ql, mj);
          FpPoly u, v;
          fp.pxgcd(ql, ml, u, v);
          FpPoly el = fp.pmod(fp.pmul(u, ql), fp.pmul(ml, ql));
          // evaluate el at a inside the algebra
          std::vector<uint64_t> eval(n, 0);
          std::vector<uint64_t> apow = C.id;
          for (size_t k = 0; k < el.size(); ++k) {
            if (el[k])
              for (size_t t = 0; t < n; ++t) eval[t] = fp.add(eval[t], fp.mul(el[k], apow[t]));
            apow = project(mulvec_mod_p(K, apow, a, pu));
          }
          // new component: eval * basis
          std::vector<std::vector<uint64_t>> nb;
          for (auto& bvec : C.basis) nb.push_back(project(mulvec_mod_p(K, eval, bvec, pu)));
          work.push_back(make_comp(std::move(nb), eval));
        }
        split_done = true;
      }
      if (!split_done) throw std::runtime_error("prime splitting: no separating element");
    }

    // build prime ideals from field components
    for (auto& C : fields) {
      // kernel of x -> project(id_C * x)
      std::vector<std::vector<uint64_t>> M2(n, std::vector<uint64_t>(n, 0));
      for (size_t i = 0; i < n; ++i) {
        std::vector<uint64_t> e(n, 0);
        e[i] = 1;
        auto im = project(mulvec_mod_p(K, C.id, e, pu));
        // coordinates of im within C's basis: reduce by C.basis rref
        // we only need im as a vector for the kernel condition im(x)=0
        for (size_t r = 0; r < n; ++r) M2[r][i] = im[r];
      }
      std::vector<size_t> piv2;
      lin.rref(M2, piv2);
      std::vector<bool> ispiv2(n, false);
      for (size_t j : piv2) ispiv2[j] = true;
      std::vector<std::vector<uint64_t>> kerv;
      for (size_t j = 0; j < n; ++j) {
        if (ispiv2[j]) continue;
        std::vector<uint64_t> y(n, 0);
        y[j] = 1;
        for (size_t i = 0; i < piv2.size(); ++i) y[piv2[i]] = fp.sub(0, M2[i][j]);
        kerv.push_back(std::move(y));
      }
      ZMat L((size_t)kerv.size() + n, n);
      for (size_t i = 0; i < kerv.size(); ++i)
        for (size_t j = 0; j < n; ++j) L.at(i, j) = Int((unsigned long)kerv[i][j]);
      for (size_t i = 0; i < n; ++i) L.at(kerv.size() + i, i) = p;
      PrimeIdeal P;
      P.K = K;
      P.p = p;
      P.basis = ZMat::hnf(L);
      P.f = (int)C.basis.size();
      P.val_elem = make_val_elem(K, P.basis, p);
      P.e = 0;  // set below
      out.push_back(std::move(P));
    }
    // ramification via valuation of p
    for (auto& P : out) {
      NFElem pe = K->from_rat(Rat(p));
      P.e = (int)valuation_integral(pe, P);
    }
    // uniformizer-style second generators avoiding siblings
    for (size_t i = 0; i < out.size(); ++i) {
      PrimeIdeal& P = out[i];
      bool found = false;
      // candidate stream: basis rows, then pairs, then with +p
      std::vector<NFElem> cands;
      for (size_t r = 0; r < n; ++r) {
        std::vector<Int> v(n);
        for (size_t j = 0; j < n; ++j) v[j] = P.basis.at(r, j);
        cands.push_back(K->from_order_coords(v));
      }
      size_t base = cands.size();
      for (size_t a = 0; a < base && cands.size() < 200; ++a)
        for (size_t b = a + 1; b < base && cands.size() < 200; ++b)
          cands.push_back(cands[a] + cands[b]);
      for (size_t a = 0; a < base; ++a) cands.push_back(cands[a] + K->from_rat(Rat(p)));
      for (auto& c : cands) {
        if (c.is_zero()) continue;
        if (valuation_integral(c, P) != 1) continue;
        bool ok = true;
        for (size_t j = 0; j < out.size() && ok; ++j) {
          if (j == i) continue;
          if (valuation_integral(c, out[j]) != 0) ok = false;
        }
        if (ok) {
          P.second_gen = c;
          found = true;
          break;
        }
      }
      if (!found) throw std::runtime_error("no uniformizer found");
    }
  }

  // for the Dedekind path make sure second gens behave as uniformizers too
  for (size_t i = 0; i < out.size(); ++i) {
    PrimeIdeal& P = out[i];
    bool ok = !P.second_gen.is_zero() && valuation_integral(P.second_gen, P) == 1;
    for (size_t j = 0; j < out.size() && ok; ++j) {
      if (j == i) continue;
      if (valuation_integral(P.second_gen, out[j]) != 0) ok = false;
    }
    if (!ok) {
      // fall back to a search as in the index-divisor path
      size_t nn = (size_t)K->degree();
      std::vector<NFElem> cands;
      for (size_t r = 0; r < nn; ++r) {
        std::vector<Int> v(nn);
        for (size_t j = 0; j < nn; ++j) v[j] = P.basis.at(r, j);
        cands.push_back(K->from_order_coords(v));
      }
      size_t base = cands.size();
      for (size_t a = 0; a < base; ++a)
        for (size_t b = a + 1; b < base; ++b) cands.push_back(cands[a] + cands[b]);
      for (size_t a = 0; a < base; ++a) cands.push_back(cands[a] + K->from_rat(Rat(P.p)));
      bool found = false;
      for (auto& c : cands) {
        if (c.is_zero()) continue;
        if (valuation_integral(c, P) != 1) continue;
        bool good = true;
        for (size_t j = 0; j < out.size() && good; ++j) {
          if (j == i) continue;
          if (valuation_integral(c, out[j]) != 0) good = false;
        }
        if (good) {
          P.second_gen = c;
          found = true;
          break;
        }
      }
      if (!found) throw std::runtime_error("no uniformizer found (dedekind)");
    }
  }

  std::sort(out.begin(), out.end());
  // sanity: sum of e*f equals degree
  {
    long s = 0;
    for (auto& P : out) s += (long)P.e * P.f;
    if (s != K->degree()) throw std::runtime_error("prime splitting: sum ef != degree");
  }
  auto& slot = g_prime_cache[key];
  slot = std::move(out);
  return slot;
}

std::vector<PrimeIdeal> primes_above(const PrimeIdeal& p_below, const NFPtr& L,
                                     const NFElem& gen_image) {
  // image of the second generator under K -> L
  PolyQ g(std::vector<Rat>(p_below.second_gen.co));
  // evaluate at gen_image within L
  NFElem img = L->zero();
  NFElem pw = L->one();
  for (int i = 0; i <= g.deg(); ++i) {
    if (g.c[i] != 0) img = img + L->from_rat(g.c[i]) * pw;
    pw = pw * gen_image;
  }
  std::vector<PrimeIdeal> out;
  for (const auto& B : factor_rational_prime(L, p_below.p)) {
    if (valuation(img, B) >= 1) out.push_back(B);
  }
  if (out.empty()) throw std::runtime_error("primes_above: none found");
  return out;
}

// ---------- ResidueField ----------

ResidueField::ResidueField(const PrimeIdeal& P)
    : P_(P), pu_(P.p.get_ui()), fp_(P.p.get_ui()) {
  size_t n = (size_t)P.K->degree();
  FpLin lin(pu_, n);
  // quotient coordinates: rref of P basis mod p
  std::vector<std::vector<uint64_t>> rows;
  for (size_t i = 0; i < P.basis.rows(); ++i) {
    std::vector<uint64_t> r(n);
    for (size_t j = 0; j < n; ++j) r[j] = fp_.reduce(P.basis.at(i, j));
    rows.push_back(std::move(r));
  }
  std::vector<size_t> piv;
  lin.rref(rows, piv);
  std::vector<bool> ispiv(n, false);
  for (size_t j : piv) ispiv[j] = true;
  std::vector<size_t> free_cols;
  for (size_t j = 0; j < n; ++j)
    if (!ispiv[j]) free_cols.push_back(j);
  assert((int)free_cols.size() == P.f);
  size_t f = free_cols.size();

  auto to_quot = [&, rows, piv, free_cols](std::vector<uint64_t> v) {
    v = lin.reduce(std::move(v), rows, piv);
    std::vector<uint64_t> q(f);
    for (size_t i = 0; i < f; ++i) q[i] = v[free_cols[i]];
    return q;
  };
  auto quot_to_order = [&, free_cols](const std::vector<uint64_t>& q) {
    std::vector<uint64_t> v((size_t)P.K->degree(), 0);
    for (size_t i = 0; i < q.size(); ++i) v[free_cols[i]] = q[i];
    return v;
  };

  // find y with min poly of degree f
  std::vector<uint64_t> idc(n);
  {
    auto oc = P.K->order_coords(P.K->one());
    for (size_t i = 0; i < n; ++i) idc[i] = fp_.reduce(Int(oc[i].get_num()));
  }
  uint64_t rngs = 0x853c49e6748fea9bULL + pu_;
  auto next_rng = [&rngs] {
    rngs = rngs * 6364136223846793005ULL + 1442695040888963407ULL;
    return rngs >> 3;
  };
  std::vector<uint64_t> y_order;
  FpPoly minp;
  for (size_t attempt = 0;; ++attempt) {
    std::vector<uint64_t> yq(f, 0);
    if (f == 1) {
      yq[0] = 1;
    } else if (attempt < f) {
      yq[attempt] = 1;
    } else {
      for (size_t i = 0; i < f; ++i) yq[i] = next_rng() % pu_;
    }
    std::vector<uint64_t> y = quot_to_order(yq);
    // powers of y in the quotient
    std::vector<std::vector<uint64_t>> pq;  // quotient coords of y^k
    std::vector<uint64_t> cur = idc;
    pq.push_back(to_quot(cur));
    bool indep = true;
    for (size_t k = 1; k < f; ++k) {
      cur = mulvec_mod_p(P.K, cur, y, pu_);
      pq.push_back(to_quot(cur));
      // dependence check via rank
      std::vector<std::vector<uint64_t>> cp = pq;
      std::vector<size_t> pv;
      FpLin linf(pu_, f);
      linf.rref(cp, pv);
      if (cp.size() != k + 1) {
        indep = false;
        break;
      }
    }
    if (!indep) continue;
    // min poly: y^f = sum c_k y^k
    cur = mulvec_mod_p(P.K, cur, y, pu_);
    auto rhs = to_quot(cur);
    // solve over quotient coords
    FpLin linf(pu_, f);
    std::vector<std::vector<uint64_t>> Aug(f, std::vector<uint64_t>(f + 1, 0));
    for (size_t r = 0; r < f; ++r) {
      for (size_t k = 0; k < f; ++k) Aug[r][k] = pq[k][r];
      Aug[r][f] = rhs[r];
    }
    size_t rr = 0;
    std::vector<size_t> pcols;
    for (size_t j = 0; j < f && rr < f; ++j) {
      size_t pr = f;
      for (size_t i = rr; i < f; ++i)
        if (Aug[i][j]) { pr = i; break; }
      if (pr == f) continue;
      std::swap(Aug[pr], Aug[rr]);
      uint64_t inv = fp_.inv(Aug[rr][j]);
      for (size_t k = 0; k <= f; ++k) Aug[rr][k] = fp_.mul(Aug[rr][k], inv);
      for (size_t i = 0; i < f; ++i) {
        if (i == rr || !Aug[i][j]) continue;
        uint64_t fx = Aug[i][j];
        for (size_t k = 0; k <= f; ++k) Aug[i][k] = fp_.sub(Aug[i][k], fp_.mul(fx, Aug[rr][k]));
      }
      pcols.push_back(j);
      ++rr;
    }
    minp.assign(f + 1, 0);
    minp[f] = 1;
    for (size_t i = 0; i < pcols.size(); ++i) minp[pcols[i]] = fp_.sub(0, Aug[i][f]);
    y_order = y;
    break;
  }
  m_ = minp;

  // basis images: representation of quotient unit vectors as polys in y:
  // we have pq: y^k quotient coords; invert that matrix
  {
    size_t fdim = f;
    // matrix Y: columns = quotient coords of y^k
    std::vector<std::vector<uint64_t>> Y(fdim, std::vector<uint64_t>(fdim, 0));
    std::vector<uint64_t> cur = idc;
    std::vector<std::vector<uint64_t>> pq;
    pq.push_back(to_quot(cur));
    for (size_t k = 1; k < fdim; ++k) {
      cur = mulvec_mod_p(P.K, cur, y_order, pu_);
      pq.push_back(to_quot(cur));
    }
    for (size_t r = 0; r < fdim; ++r)
      for (size_t k = 0; k < fdim; ++k) Y[r][k] = pq[k][r];
    // invert Y over F_p
    std::vector<std::vector<uint64_t>> Aug(fdim, std::vector<uint64_t>(2 * fdim, 0));
    for (size_t i = 0; i < fdim; ++i) {
      for (size_t j = 0; j < fdim; ++j) Aug[i][j] = Y[i][j];
      Aug[i][fdim + i] = 1;
    }
    for (size_t j = 0; j < fdim; ++j) {
      size_t pr = fdim;
      for (size_t i = j; i < fdim; ++i)
        if (Aug[i][j]) { pr = i; break; }
      assert(pr != fdim);
      std::swap(Aug[pr], Aug[j]);
      uint64_t inv = fp_.inv(Aug[j][j]);
      for (size_t k = 0; k < 2 * fdim; ++k) Aug[j][k] = fp_.mul(Aug[j][k], inv);
      for (size_t i = 0; i < fdim; ++i) {
        if (i == j || !Aug[i][j]) continue;
        uint64_t fx = Aug[i][j];
        for (size_t k = 0; k < 2 * fdim; ++k)
          Aug[i][k] = fp_.sub(Aug[i][k], fp_.mul(fx, Aug[j][k]));
      }
    }
    // Yinv maps quotient coords -> poly-in-y coords
    // basis_img_[j] for unit vector e_j (j-th free col)
    basis_img_.resize(fdim);
    for (size_t j = 0; j < fdim; ++j) {
      FpPoly img(fdim, 0);
      for (size_t k = 0; k < fdim; ++k) img[k] = Aug[k][fdim + j];
      Fp::trim(img);
      basis_img_[j] = img;
    }
    // lifts of y^k
    lift_basis_.clear();
    std::vector<uint64_t> c2 = idc;
    for (size_t k = 0; k < fdim; ++k) {
      if (k) c2 = mulvec_mod_p(P.K, c2, y_order, pu_);
      auto qv = to_quot(c2);
      auto ov = quot_to_order(qv);
      std::vector<Int> vi(ov.size());
      for (size_t i = 0; i < ov.size(); ++i) vi[i] = Int((unsigned long)ov[i]);
      lift_basis_.push_back(P.K->from_order_coords(vi));
    }
  }

  // store closures for reduce(): recompute rref data members
  rows_ = rows;
  piv_ = piv;
  free_cols_ = free_cols;

  // multiplicative generator
  {
    Int qm1 = q() - 1;
    auto fac = factor(qm1);
    auto try_gen = [&](const FpPoly& g) {
      if (g.empty()) return false;
      for (auto& [ell, e] : fac) {
        FpPoly t = pow(g, qm1 / ell);
        if (is_one(t)) return false;
      }
      return true;
    };
    // deterministic candidates: y + c, then random polys
    bool ok = false;
    for (uint64_t c = 0; c < pu_ && !ok; ++c) {
      FpPoly g = f == 1 ? FpPoly{} : FpPoly{c, 1};
      if (f == 1) {
        g = FpPoly{(c + 2) % pu_};
        Fp::trim(g);
      }
      if (try_gen(g)) {
        g_ = g;
        ok = true;
      }
    }
    uint64_t rs = 12345 + pu_;
    while (!ok) {
      rs = rs * 6364136223846793005ULL + 1442695040888963407ULL;
      FpPoly g(f, 0);
      for (size_t i = 0; i < f; ++i) {
        rs = rs * 6364136223846793005ULL + 1442695040888963407ULL;
        g[i] = (rs >> 5) % pu_;
      }
      Fp::trim(g);
      if (try_gen(g)) {
        g_ = g;
        ok = true;
      }
    }
  }
}

FpPoly ResidueField::reduce(const NFElem& x) const {
  if (x.is_zero()) return {};
  Int d = x.denominator();
  long k = 0;
  Int dd = d;
  while (divides(P_.p, dd)) {
    dd = divexact(dd, P_.p);
    ++k;
  }
  NFElem A = x, B = P_.K->one();
  if (k > 0) {
    NFElem te = P_.val_elem.pow((long)P_.e * k);
    NFElem de = P_.K->from_rat(Rat(d));
    A = x * de * te;
    B = de * te;
  } else if (d != 1) {
    // denominator coprime to p: multiply through
    NFElem de = P_.K->from_rat(Rat(d));
    A = x * de;
    B = de;
  }
  // reduce integral A and B
  auto red_int = [&](const NFElem& z) {
    size_t n = (size_t)P_.K->degree();
    auto oc = P_.K->order_coords(z);
    std::vector<uint64_t> v(n);
    for (size_t i = 0; i < n; ++i) {
      assert(oc[i].get_den() == 1);
      v[i] = fp_.reduce(Int(oc[i].get_num()));
    }
    FpLin lin(pu_, n);
    v = lin.reduce(std::move(v), rows_, piv_);
    FpPoly out;
    for (size_t i = 0; i < free_cols_.size(); ++i) {
      uint64_t c = v[free_cols_[i]];
      if (!c) continue;
      // add c * basis_img_[i]
      if (out.size() < basis_img_[i].size()) out.resize(basis_img_[i].size(), 0);
      for (size_t j = 0; j < basis_img_[i].size(); ++j)
        out[j] = fp_.add(out[j], fp_.mul(c, basis_img_[i][j]));
    }
    Fp::trim(out);
    return out;
  };
  FpPoly ra = red_int(A);
  FpPoly rb = red_int(B);
  if (rb.empty()) throw std::domain_error("residue reduce: denominator in P");
  return mul(ra, inv(rb));
}

NFElem ResidueField::lift(const FpPoly& a) const {
  NFElem out = P_.K->zero();
  for (size_t k = 0; k < a.size(); ++k) {
    if (!a[k]) continue;
    out = out + P_.K->from_rat(Rat((unsigned long)a[k])) * lift_basis_[k];
  }
  return out;
}

FpPoly ResidueField::add(const FpPoly& a, const FpPoly& b) const { return fp_.padd(a, b); }
FpPoly ResidueField::sub(const FpPoly& a, const FpPoly& b) const { return fp_.psub(a, b); }
FpPoly ResidueField::mul(const FpPoly& a, const FpPoly& b) const {
  return fp_.pmod(fp_.pmul(a, b), m_);
}
FpPoly ResidueField::inv(const FpPoly& a) const {
  FpPoly u, v;
  FpPoly g = fp_.pxgcd(a, m_, u, v);
  if (Fp::deg(g) != 0) throw std::domain_error("residue inv: not invertible");
  return fp_.pmod(u, m_);
}
FpPoly ResidueField::pow(const FpPoly& a, const Int& e) const {
  if (e < 0) return pow(inv(a), -e);
  FpPoly r{1}, base = fp_.pmod(a, m_);
  Int k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

Int ResidueField::dlog(const FpPoly& a) const {
  if (a.empty()) throw std::domain_error("dlog of zero");
  Int N = q() - 1;
  // baby-step giant-step
  Int mI = iroot(N, 2) + 1;
  unsigned long m = mI.get_ui();
  std::map<FpPoly, unsigned long> table;
  FpPoly cur{1};
  for (unsigned long j = 0; j < m; ++j) {
    if (!table.count(cur)) table[cur] = j;
    cur = mul(cur, g_);
  }
  FpPoly gm_inv = pow(inv(g_), Int(m));
  FpPoly x = fp_.pmod(a, m_);
  for (unsigned long i = 0; i <= m; ++i) {
    auto it = table.find(x);
    if (it != table.end()) {
      Int r = Int(i) * Int(m) + Int(it->second);
      return mod(r, N);
    }
    x = mul(x, gm_inv);
  }
  throw std::runtime_error("dlog failed");
}

// ---------- IdealLat ----------

IdealLat IdealLat::whole_ring(const NFPtr& K) {
  return {K, ZMat::identity((size_t)K->degree())};
}

IdealLat IdealLat::from_prime(const PrimeIdeal& P) { return {P.K, P.basis}; }

IdealLat IdealLat::product(const IdealLat& a, const IdealLat& b) {
  assert(a.K == b.K);
  size_t n = (size_t)a.K->degree();
  ZMat L(a.basis.rows() * b.basis.rows(), n);
  size_t r = 0;
  for (size_t i = 0; i < a.basis.rows(); ++i) {
    std::vector<Int> ai(n);
    for (size_t j = 0; j < n; ++j) ai[j] = a.basis.at(i, j);
    NFElem ea = a.K->from_order_coords(ai);
    for (size_t k = 0; k < b.basis.rows(); ++k) {
      std::vector<Int> bk(n);
      for (size_t j = 0; j < n; ++j) bk[j] = b.basis.at(k, j);
      NFElem eb = a.K->from_order_coords(bk);
      auto oc = a.K->order_coords(ea * eb);
      for (size_t j = 0; j < n; ++j) {
        assert(oc[j].get_den() == 1);
        L.at(r, j) = Int(oc[j].get_num());
      }
      ++r;
    }
  }
  return {a.K, ZMat::hnf(L)};
}

IdealLat IdealLat::from_element(const NFElem& x) {
  NFPtr K = x.K;
  size_t n = (size_t)K->degree();
  ZMat L(n, n);
  for (size_t i = 0; i < n; ++i) {
    std::vector<Int> v(n, Int(0));
    v[i] = 1;
    NFElem wi = K->from_order_coords(v);
    auto oc = K->order_coords(x * wi);
    for (size_t j = 0; j < n; ++j) {
      assert(oc[j].get_den() == 1);
      L.at(i, j) = Int(oc[j].get_num());
    }
  }
  return {K, ZMat::hnf(L)};
}

Int IdealLat::norm() const { return abs(basis.det()); }

bool IdealLat::contains(const NFElem& x) const {
  auto oc = K->order_coords(x);
  std::vector<Int> v(oc.size());
  for (size_t i = 0; i < oc.size(); ++i) {
    if (oc[i].get_den() != 1) return false;
    v[i] = Int(oc[i].get_num());
  }
  return lattice_contains(basis, v);
}

}  // namespace ecros
