#include "ecros/base/factorq.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "ecros/base/factorzp.hpp"

namespace ecros {

namespace {

PolyZ reduce_mod(const PolyZ& f, const Int& m) {
  PolyZ r = f;
  for (auto& c : r.c) c = mod(c, m);
  r.trim();
  return r;
}

PolyZ symmetric_mod(const PolyZ& f, const Int& m) {
  PolyZ r = f;
  for (auto& c : r.c) {
    c = mod(c, m);
    if (2 * c > m) c -= m;
  }
  r.trim();
  return r;
}

PolyZ mulmod(const PolyZ& a, const PolyZ& b, const Int& m) { return reduce_mod(a * b, m); }

// division by monic h, coefficients mod m
void divrem_monic_mod(const PolyZ& a, const PolyZ& h, const Int& m, PolyZ& q, PolyZ& r) {
  assert(!h.is_zero() && h.lc() == 1);
  r = reduce_mod(a, m);
  q = PolyZ();
  int dh = h.deg();
  if (r.deg() >= dh) q.c.assign(r.deg() - dh + 1, Int(0));
  while (r.deg() >= dh) {
    int k = r.deg() - dh;
    Int f = r.lc();
    q.c[k] = f;
    for (int i = 0; i <= dh; ++i) r.c[k + i] = mod(r.c[k + i] - f * h.c[i], m);
    r.trim();
  }
  q.trim();
}

PolyZ from_fp(const FpPoly& f) {
  std::vector<Int> v(f.size());
  for (size_t i = 0; i < f.size(); ++i) v[i] = Int((unsigned long)f[i]);
  return PolyZ(std::move(v));
}

// one quadratic Hensel step: (g,h,s,t) valid mod m -> valid mod m^2
// invariants: f = g.h (mod m), s.g + t.h = 1 (mod m), h monic,
// deg s < deg h, deg t < deg g
void hensel_step(const PolyZ& f, PolyZ& g, PolyZ& h, PolyZ& s, PolyZ& t, const Int& m) {
  Int m2 = m * m;
  PolyZ e = reduce_mod(f - g * h, m2);
  PolyZ q, r;
  divrem_monic_mod(s * e, h, m2, q, r);
  PolyZ gs = reduce_mod(g + t * e + q * g, m2);
  PolyZ hs = reduce_mod(h + r, m2);
  PolyZ b = reduce_mod(s * gs + t * hs - PolyZ(Int(1)), m2);
  PolyZ c, d;
  divrem_monic_mod(s * b, hs, m2, c, d);
  PolyZ ss = reduce_mod(s - d, m2);
  PolyZ ts = reduce_mod(t - t * b - c * gs, m2);
  g = gs;
  h = hs;
  s = ss;
  t = ts;
}

// lift the factorization f = lc(f) * prod(monic h_i) from mod p to mod p^(2^levels) >= target
std::vector<PolyZ> hensel_lift_all(const PolyZ& f, const std::vector<FpPoly>& hs_p, uint64_t p,
                                   const Int& target, Int& modulus_out) {
  Fp fp(p);
  Int m((unsigned long)p);
  int levels = 0;
  Int mm = m;
  while (mm < target) {
    mm = mm * mm;
    ++levels;
  }
  modulus_out = mm;

  std::vector<PolyZ> out;
  std::function<void(const PolyZ&, std::vector<FpPoly>)> peel = [&](const PolyZ& fcur,
                                                                    std::vector<FpPoly> hs) {
    if (hs.size() == 1) {
      // fcur = lc * (monic factor); store monic normalization at the end
      out.push_back(fcur);
      return;
    }
    // split the list in half for balanced lifting
    size_t half = hs.size() / 2;
    FpPoly Hm{1}, Gm{fp.reduce(fcur.lc())};
    for (size_t i = 0; i < half; ++i) Hm = fp.pmul(Hm, hs[i]);
    for (size_t i = half; i < hs.size(); ++i) Gm = fp.pmul(Gm, hs[i]);
    // f = G * H mod p with H monic
    FpPoly u, v;
    FpPoly gg = fp.pxgcd(Gm, Hm, u, v);
    if (Fp::deg(gg) != 0) throw std::runtime_error("hensel: factors not coprime");
    PolyZ G = from_fp(Gm), H = from_fp(Hm), S = from_fp(u), T = from_fp(v);
    Int mk((unsigned long)p);
    for (int l = 0; l < levels; ++l) {
      hensel_step(fcur, G, H, S, T, mk);
      mk = mk * mk;
      if (mk >= modulus_out) break;
    }
    // recurse: H is monic product of first half, G carries lc
    std::vector<FpPoly> left(hs.begin(), hs.begin() + half);
    std::vector<FpPoly> right(hs.begin() + half, hs.end());
    // normalize H to a "lc=1" subproblem: treat H as its own f with lc 1
    peel(reduce_mod(H, modulus_out), left);
    peel(reduce_mod(G, modulus_out), right);
  };

  // kick off: make fcur = f mod modulus
  peel(reduce_mod(f, modulus_out), hs_p);

  // normalize every lifted product to monic factors
  // each entry of `out` is (unit * monic factor) mod modulus; make monic
  for (auto& g : out) {
    Int lc = g.lc();
    Int li = invmod(lc, modulus_out);
    for (auto& c : g.c) c = mod(c * li, modulus_out);
  }
  std::sort(out.begin(), out.end(), [](const PolyZ& a, const PolyZ& b) { return a.c < b.c; });
  return out;
}

std::vector<PolyZ> factor_squarefree_primitive(const PolyZ& f) {
  std::vector<PolyZ> out;
  if (f.deg() <= 0) return out;
  if (f.deg() == 1) {
    out.push_back(f);
    return out;
  }

  // choose a prime keeping f squarefree with few modular factors
  uint64_t best_p = 0;
  std::vector<FpPoly> best_factors;
  for (size_t k = 0; k < 5; ++k) {
    uint64_t p;
    try {
      p = good_prime_for(f, k);
    } catch (...) {
      break;
    }
    Fp fp(p);
    auto fac = fp.factor_squarefree(fp.pmonic(fp.poly_from_z(f)), /*seed=*/k + 1);
    if (best_p == 0 || fac.size() < best_factors.size()) {
      best_p = p;
      best_factors = fac;
    }
    if (best_factors.size() <= 2) break;
  }
  if (best_p == 0) throw std::runtime_error("factor: no good prime");
  if (best_factors.size() == 1) {
    out.push_back(f);
    return out;
  }

  // Mignotte-style bound for coefficients of lc(f) * (monic divisor)
  Int n2(0);
  for (const auto& c : f.c) n2 += c * c;
  Int B = (iroot(n2, 2) + 1) * abs(f.lc());
  B <<= (unsigned long)(f.deg() + 1);
  Int modulus;
  std::vector<PolyZ> lifted = hensel_lift_all(f, best_factors, best_p, 2 * B + 1, modulus);

  // recombination
  PolyZ fcur = f;
  std::vector<PolyZ> avail = lifted;
  size_t card = 1;
  while (2 * card <= avail.size()) {
    bool found_any = false;
    std::vector<size_t> idx(card);
    for (size_t i = 0; i < card; ++i) idx[i] = i;
    for (;;) {
      PolyZ cand(Int(1));
      for (size_t i : idx) cand = mulmod(cand, avail[i], modulus);
      cand = symmetric_mod(Int(fcur.lc()) * cand, modulus);
      PolyZ candp = cand.primitive_part();
      if (!candp.is_zero() && PolyZ::divides(candp, fcur)) {
        out.push_back(candp);
        PolyQ q, r;
        PolyQ::divrem(to_q(fcur), to_q(candp), q, r);
        fcur = PolyZ::from_q_primitive(q);
        std::vector<PolyZ> rest;
        for (size_t i = 0, k = 0; i < avail.size(); ++i) {
          if (k < idx.size() && idx[k] == i) {
            ++k;
            continue;
          }
          rest.push_back(avail[i]);
        }
        avail = std::move(rest);
        found_any = true;
        break;
      }
      // next combination
      size_t i = card;
      while (i-- > 0) {
        if (idx[i] != i + avail.size() - card) {
          ++idx[i];
          for (size_t j = i + 1; j < card; ++j) idx[j] = idx[j - 1] + 1;
          break;
        }
        if (i == 0) {
          i = SIZE_MAX;
          break;
        }
      }
      if (i == SIZE_MAX) break;
    }
    if (!found_any) ++card;
  }
  if (fcur.deg() > 0) out.push_back(fcur);
  return out;
}

}  // namespace

std::vector<std::pair<PolyZ, int>> factor_z(const PolyZ& f0) {
  std::vector<std::pair<PolyZ, int>> out;
  if (f0.deg() <= 0) return out;
  PolyZ f = f0.primitive_part();

  // Yun squarefree decomposition (over Q, denominators are trivial here)
  std::vector<std::pair<PolyZ, int>> sqf;
  {
    PolyQ a = to_q(f);
    PolyQ da = a.derivative();
    PolyQ g = PolyQ::gcd(a, da);
    if (g.deg() == 0) {
      sqf.push_back({f, 1});
    } else {
      PolyQ w, y, dummy;
      PolyQ::divrem(a, g, w, dummy);
      PolyQ::divrem(da, g, y, dummy);
      int i = 1;
      while (w.deg() > 0) {
        PolyQ z = y - w.derivative();
        PolyQ fi = PolyQ::gcd(w, z);
        if (fi.deg() > 0) sqf.push_back({PolyZ::from_q_primitive(fi), i});
        PolyQ w2, y2;
        PolyQ::divrem(w, fi, w2, dummy);
        PolyQ::divrem(z, fi, y2, dummy);
        w = w2;
        y = y2;
        ++i;
      }
    }
  }

  for (auto& [g, mult] : sqf) {
    auto irr = factor_squarefree_primitive(g);
    for (auto& h : irr) {
      PolyZ hh = h;
      if (hh.lc() < 0) hh = -hh;
      out.push_back({hh, mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
    return a.first.c < b.first.c;
  });
  return out;
}

std::vector<std::pair<PolyQ, int>> factor_q(const PolyQ& f) {
  std::vector<std::pair<PolyQ, int>> out;
  if (f.deg() <= 0) return out;
  auto fz = factor_z(PolyZ::from_q_primitive(f));
  for (auto& [g, m] : fz) out.push_back({to_q(g).monic(), m});
  return out;
}

bool is_irreducible_z(const PolyZ& f) {
  if (f.deg() <= 0) return false;
  if (f.deg() == 1) return true;
  auto fac = factor_z(f);
  return fac.size() == 1 && fac[0].second == 1;
}

std::vector<Rat> rational_roots(const PolyZ& f) {
  std::vector<Rat> out;
  for (auto& [g, m] : factor_z(f))
    if (g.deg() == 1) out.push_back(Rat(-g.c[0]) / Rat(g.c[1]));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ecros
