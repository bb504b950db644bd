#include "ecros/base/lll.hpp"

#include <cassert>

namespace ecros {

namespace {

Rat dotq(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dotzq(const std::vector<Int>& a, const std::vector<Rat>& b) {
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

Int dotz(const std::vector<Int>& a, const std::vector<Int>& b) {
  Int s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

ZMat lll_reduce(const ZMat& B0, long delta_num, long delta_den) {
  size_t m = B0.rows(), n = B0.cols();
  std::vector<std::vector<Int>> b(m);
  for (size_t i = 0; i < m; ++i) b[i] = B0.row(i);

  // Gram-Schmidt data recomputed incrementally
  std::vector<std::vector<Rat>> bstar(m);
  std::vector<std::vector<Rat>> mu(m);
  std::vector<Rat> B(m);  // |b*_i|^2

  auto compute_gs = [&](size_t k) {
    bstar[k].assign(n, Rat(0));
    for (size_t j = 0; j < n; ++j) bstar[k][j] = Rat(b[k][j]);
    mu[k].assign(k, Rat(0));
    for (size_t i = 0; i < k; ++i) {
      if (B[i] == 0) {
        mu[k][i] = 0;
        continue;
      }
      mu[k][i] = dotzq(b[k], bstar[i]) / B[i];
      for (size_t j = 0; j < n; ++j) bstar[k][j] -= mu[k][i] * bstar[i][j];
    }
    B[k] = dotq(bstar[k], bstar[k]);
  };

  Rat delta(delta_num, delta_den);
  size_t k = 0;
  size_t count = m;
  for (size_t i = 0; i < count; ++i) compute_gs(i);
  // remove zero vectors up front
  {
    std::vector<std::vector<Int>> nb;
    for (auto& v : b) {
      bool z = true;
      for (auto& x : v)
        if (x != 0) z = false;
      if (!z) nb.push_back(v);
    }
    b = nb;
    m = b.size();
    bstar.assign(m, {});
    mu.assign(m, {});
    B.assign(m, Rat(0));
    for (size_t i = 0; i < m; ++i) compute_gs(i);
  }

  k = 1;
  while (k < m) {
    // size-reduce b_k against b_{k-1}..b_0
    for (size_t i = k; i-- > 0;) {
      Rat q = mu[k][i];
      Int r;
      // nearest integer
      Rat half(1, 2);
      Rat qr = q + half;
      r = Int(qr.get_num() / qr.get_den());
      if (qr < 0 && Rat(r) != qr) r -= 1;  // floor for negatives
      if (r != 0) {
        for (size_t j = 0; j < n; ++j) b[k][j] -= r * b[i][j];
        compute_gs(k);
      }
    }
    // Lovasz condition; handle dependent vectors (B[k] == 0)
    if (B[k] == 0) {
      // b_k is dependent: after size reduction it may be zero; drop if so
      bool z = true;
      for (auto& x : b[k])
        if (x != 0) z = false;
      if (z) {
        b.erase(b.begin() + k);
        bstar.pop_back();
        mu.pop_back();
        B.pop_back();
        m--;
        for (size_t i = k; i < m; ++i) compute_gs(i);
        if (k == 0) k = 1;
        continue;
      }
      // nonzero but dependent: swap down to let elimination continue
      std::swap(b[k], b[k - 1]);
      for (size_t i = k - 1; i < m; ++i) compute_gs(i);
      if (k > 1) --k;
      continue;
    }
    Rat lhs = B[k];
    Rat rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1];
    if (lhs < rhs) {
      std::swap(b[k], b[k - 1]);
      for (size_t i = k - 1; i < m; ++i) compute_gs(i);
      if (k > 1) --k;
    } else {
      ++k;
    }
  }

  ZMat R(m, n);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < n; ++j) R.at(i, j) = b[i][j];
  return R;
}

std::vector<Rat> gs_norms2(const ZMat& Bm) {
  size_t m = Bm.rows(), n = Bm.cols();
  std::vector<std::vector<Rat>> bstar(m);
  std::vector<Rat> B(m);
  for (size_t k = 0; k < m; ++k) {
    bstar[k].assign(n, Rat(0));
    auto bk = Bm.row(k);
    for (size_t j = 0; j < n; ++j) bstar[k][j] = Rat(bk[j]);
    for (size_t i = 0; i < k; ++i) {
      if (B[i] == 0) continue;
      Rat mu = dotzq(bk, bstar[i]) / B[i];
      for (size_t j = 0; j < n; ++j) bstar[k][j] -= mu * bstar[i][j];
    }
    B[k] = dotq(bstar[k], bstar[k]);
  }
  (void)dotz;
  return B;
}

}  // namespace ecros
