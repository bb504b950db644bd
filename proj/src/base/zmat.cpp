#include "ecros/base/zmat.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace ecros {

ZMat ZMat::identity(size_t n) {
  ZMat A(n, n);
  for (size_t i = 0; i < n; ++i) A.at(i, i) = 1;
  return A;
}

ZMat ZMat::transpose() const {
  ZMat B(n_, m_);
  for (size_t i = 0; i < m_; ++i)
    for (size_t j = 0; j < n_; ++j) B.at(j, i) = at(i, j);
  return B;
}

ZMat operator*(const ZMat& A, const ZMat& B) {
  assert(A.n_ == B.m_);
  ZMat C(A.m_, B.n_);
  for (size_t i = 0; i < A.m_; ++i)
    for (size_t k = 0; k < A.n_; ++k) {
      if (A.at(i, k) == 0) continue;
      for (size_t j = 0; j < B.n_; ++j) C.at(i, j) += A.at(i, k) * B.at(k, j);
    }
  return C;
}

ZMat operator+(const ZMat& A, const ZMat& B) {
  assert(A.m_ == B.m_ && A.n_ == B.n_);
  ZMat C(A.m_, A.n_);
  for (size_t i = 0; i < A.a_.size(); ++i) C.a_[i] = A.a_[i] + B.a_[i];
  return C;
}

ZMat operator-(const ZMat& A, const ZMat& B) {
  assert(A.m_ == B.m_ && A.n_ == B.n_);
  ZMat C(A.m_, A.n_);
  for (size_t i = 0; i < A.a_.size(); ++i) C.a_[i] = A.a_[i] - B.a_[i];
  return C;
}

std::vector<Int> ZMat::row(size_t i) const {
  std::vector<Int> v(n_);
  for (size_t j = 0; j < n_; ++j) v[j] = at(i, j);
  return v;
}

void ZMat::set_row(size_t i, const std::vector<Int>& v) {
  assert(v.size() == n_);
  for (size_t j = 0; j < n_; ++j) at(i, j) = v[j];
}

ZMat ZMat::vstack(const ZMat& B) const {
  assert(n_ == B.n_ || m_ == 0 || B.m_ == 0);
  size_t n = m_ ? n_ : B.n_;
  ZMat C(m_ + B.m_, n);
  for (size_t i = 0; i < m_; ++i)
    for (size_t j = 0; j < n_; ++j) C.at(i, j) = at(i, j);
  for (size_t i = 0; i < B.m_; ++i)
    for (size_t j = 0; j < B.n_; ++j) C.at(m_ + i, j) = B.at(i, j);
  return C;
}

ZMat ZMat::hnf(const ZMat& A, ZMat* U) {
  size_t m = A.rows(), n = A.cols();
  ZMat H = A;
  ZMat T = ZMat::identity(m);
  size_t r = 0;  // current pivot row
  for (size_t j = 0; j < n && r < m; ++j) {
    // find a row >= r with nonzero entry in column j, gcd the column below r
    size_t piv = m;
    for (size_t i = r; i < m; ++i)
      if (H.at(i, j) != 0) { piv = i; break; }
    if (piv == m) continue;
    // eliminate all entries below r using extended gcd row combinations
    for (size_t i = piv + 1 > r + 1 ? piv + 1 : r + 1; i < m; ++i) {
      if (H.at(i, j) == 0) continue;
      // combine rows piv and i
      Int a = H.at(piv, j), b = H.at(i, j), g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Int u = divexact(a, g), v = divexact(b, g);
      // new piv row = s*piv + t*i ; new i row = -v*piv + u*i
      for (size_t k = 0; k < n; ++k) {
        Int hp = s * H.at(piv, k) + t * H.at(i, k);
        Int hi = u * H.at(i, k) - v * H.at(piv, k);
        H.at(piv, k) = hp;
        H.at(i, k) = hi;
      }
      for (size_t k = 0; k < m; ++k) {
        Int tp = s * T.at(piv, k) + t * T.at(i, k);
        Int ti = u * T.at(i, k) - v * T.at(piv, k);
        T.at(piv, k) = tp;
        T.at(i, k) = ti;
      }
    }
    // move pivot row into place
    if (piv != r) {
      for (size_t k = 0; k < n; ++k) std::swap(H.at(piv, k), H.at(r, k));
      for (size_t k = 0; k < m; ++k) std::swap(T.at(piv, k), T.at(r, k));
    }
    // pivot positive
    if (H.at(r, j) < 0) {
      for (size_t k = 0; k < n; ++k) H.at(r, k) = -H.at(r, k);
      for (size_t k = 0; k < m; ++k) T.at(r, k) = -T.at(r, k);
    }
    // reduce entries above the pivot into [0, pivot)
    Int p = H.at(r, j);
    for (size_t i = 0; i < r; ++i) {
      Int q = fdiv(H.at(i, j), p);
      if (q == 0) continue;
      for (size_t k = 0; k < n; ++k) H.at(i, k) -= q * H.at(r, k);
      for (size_t k = 0; k < m; ++k) T.at(i, k) -= q * T.at(r, k);
    }
    ++r;
  }
  if (U) *U = T;
  // drop zero rows
  ZMat R(r, n);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < n; ++j) R.at(i, j) = H.at(i, j);
  return R;
}

ZMat ZMat::left_kernel(const ZMat& A) {
  ZMat U;
  ZMat H = hnf(A, &U);
  size_t r = H.rows();
  ZMat K(A.rows() - r, A.rows());
  for (size_t i = r; i < A.rows(); ++i)
    for (size_t j = 0; j < A.rows(); ++j) K.at(i - r, j) = U.at(i, j);
  // canonicalize
  return hnf(K);
}

void ZMat::snf(const ZMat& A, ZMat& D, ZMat& U, ZMat& V) {
  size_t m = A.rows(), n = A.cols();
  D = A;
  U = identity(m);
  V = identity(n);
  auto row_op = [&](size_t i1, size_t i2, const Int& s, const Int& t, const Int& u2,
                    const Int& v2) {
    // (row i1, row i2) <- (s*row i1 + t*row i2, u2*row i1 + v2*row i2)
    for (size_t k = 0; k < n; ++k) {
      Int a = s * D.at(i1, k) + t * D.at(i2, k);
      Int b = u2 * D.at(i1, k) + v2 * D.at(i2, k);
      D.at(i1, k) = a;
      D.at(i2, k) = b;
    }
    for (size_t k = 0; k < m; ++k) {
      Int a = s * U.at(i1, k) + t * U.at(i2, k);
      Int b = u2 * U.at(i1, k) + v2 * U.at(i2, k);
      U.at(i1, k) = a;
      U.at(i2, k) = b;
    }
  };
  auto col_op = [&](size_t j1, size_t j2, const Int& s, const Int& t, const Int& u2,
                    const Int& v2) {
    for (size_t k = 0; k < m; ++k) {
      Int a = s * D.at(k, j1) + t * D.at(k, j2);
      Int b = u2 * D.at(k, j1) + v2 * D.at(k, j2);
      D.at(k, j1) = a;
      D.at(k, j2) = b;
    }
    for (size_t k = 0; k < n; ++k) {
      Int a = s * V.at(k, j1) + t * V.at(k, j2);
      Int b = u2 * V.at(k, j1) + v2 * V.at(k, j2);
      V.at(k, j1) = a;
      V.at(k, j2) = b;
    }
  };

  size_t t = std::min(m, n);
  for (size_t k = 0; k < t; ++k) {
    // find nonzero pivot
    size_t pi = m, pj = n;
    for (size_t i = k; i < m && pi == m; ++i)
      for (size_t j = k; j < n; ++j)
        if (D.at(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == m) break;
    if (pi != k) row_op(k, pi, Int(0), Int(1), Int(1), Int(0));
    if (pj != k) col_op(k, pj, Int(0), Int(1), Int(1), Int(0));
    bool again = true;
    while (again) {
      again = false;
      for (size_t i = k + 1; i < m; ++i) {
        if (D.at(i, k) == 0) continue;
        Int a = D.at(k, k), b = D.at(i, k), g, s, tt;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), tt.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        row_op(k, i, s, tt, -divexact(b, g), divexact(a, g));
      }
      for (size_t j = k + 1; j < n; ++j) {
        if (D.at(k, j) == 0) continue;
        Int a = D.at(k, k), b = D.at(k, j), g, s, tt;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), tt.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        col_op(k, j, s, tt, -divexact(b, g), divexact(a, g));
        // column ops can reintroduce entries in column k
        for (size_t i = k + 1; i < m; ++i)
          if (D.at(i, k) != 0) again = true;
      }
    }
    if (D.at(k, k) < 0) row_op(k, k, Int(-1), Int(0), Int(0), Int(-1));
  }
  // enforce divisibility d_k | d_{k+1}
  for (size_t k = 0; k + 1 < t; ++k) {
    for (size_t l = k + 1; l < t; ++l) {
      if (D.at(l, l) == 0) continue;
      if (D.at(k, k) == 0 || !divides(D.at(k, k), D.at(l, l))) {
        // add column l to column k, re-eliminate the 2x2 block
        col_op(k, l, Int(1), Int(1), Int(0), Int(1));
        Int a = D.at(k, k), b = D.at(l, k), g, s, tt;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), tt.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        row_op(k, l, s, tt, -divexact(b, g), divexact(a, g));
        // clear D(k,l)
        if (D.at(k, l) != 0) {
          Int q = divexact(D.at(k, l), D.at(k, k));
          col_op(l, k, Int(1), -q, Int(0), Int(1));
        }
        if (D.at(k, k) < 0) row_op(k, k, Int(-1), Int(0), Int(0), Int(-1));
        if (D.at(l, l) < 0) row_op(l, l, Int(-1), Int(0), Int(0), Int(-1));
      }
    }
  }
}

Int ZMat::det() const {
  assert(m_ == n_);
  if (m_ == 0) return Int(1);
  // Bareiss
  ZMat A = *this;
  Int prev(1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n_; ++k) {
    if (A.at(k, k) == 0) {
      size_t s = k + 1;
      while (s < n_ && A.at(s, k) == 0) ++s;
      if (s == n_) return Int(0);
      for (size_t j = 0; j < n_; ++j) std::swap(A.at(k, j), A.at(s, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n_; ++i)
      for (size_t j = k + 1; j < n_; ++j)
        A.at(i, j) = divexact(A.at(i, j) * A.at(k, k) - A.at(i, k) * A.at(k, j), prev);
    prev = A.at(k, k);
  }
  Int d = A.at(n_ - 1, n_ - 1);
  return sign < 0 ? -d : d;
}

size_t ZMat::rank() const { return hnf(*this).rows(); }

std::string ZMat::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < m_; ++i) {
    os << "[";
    for (size_t j = 0; j < n_; ++j) os << (j ? " " : "") << at(i, j).get_str();
    os << "]\n";
  }
  return os.str();
}

// ---------- QMat ----------

QMat QMat::identity(size_t n) {
  QMat A(n, n);
  for (size_t i = 0; i < n; ++i) A.at(i, i) = 1;
  return A;
}

QMat QMat::from_z(const ZMat& A) {
  QMat B(A.rows(), A.cols());
  for (size_t i = 0; i < A.rows(); ++i)
    for (size_t j = 0; j < A.cols(); ++j) B.at(i, j) = Rat(A.at(i, j));
  return B;
}

QMat operator*(const QMat& A, const QMat& B) {
  assert(A.cols() == B.rows());
  QMat C(A.rows(), B.cols());
  for (size_t i = 0; i < A.rows(); ++i)
    for (size_t k = 0; k < A.cols(); ++k) {
      if (A.at(i, k) == 0) continue;
      for (size_t j = 0; j < B.cols(); ++j) C.at(i, j) += A.at(i, k) * B.at(k, j);
    }
  return C;
}

QMat QMat::transpose() const {
  QMat B(n_, m_);
  for (size_t i = 0; i < m_; ++i)
    for (size_t j = 0; j < n_; ++j) B.at(j, i) = at(i, j);
  return B;
}

bool QMat::solve_left(const QMat& A, const std::vector<Rat>& b, std::vector<Rat>& x) {
  // x * A = b  <=>  A^T x^T = b^T ; Gaussian elimination on augmented [A^T | b]
  size_t m = A.rows(), n = A.cols();
  assert(b.size() == n);
  QMat M(n, m + 1);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) M.at(i, j) = A.at(j, i);
    M.at(i, m) = b[i];
  }
  size_t r = 0;
  std::vector<size_t> pivot_col;
  for (size_t j = 0; j < m && r < n; ++j) {
    size_t p = n;
    for (size_t i = r; i < n; ++i)
      if (M.at(i, j) != 0) { p = i; break; }
    if (p == n) continue;
    for (size_t k = 0; k <= m; ++k) std::swap(M.at(p, k), M.at(r, k));
    Rat inv = Rat(1) / M.at(r, j);
    for (size_t k = 0; k <= m; ++k) M.at(r, k) *= inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == r || M.at(i, j) == 0) continue;
      Rat f = M.at(i, j);
      for (size_t k = 0; k <= m; ++k) M.at(i, k) -= f * M.at(r, k);
    }
    pivot_col.push_back(j);
    ++r;
  }
  for (size_t i = r; i < n; ++i)
    if (M.at(i, m) != 0) return false;
  x.assign(m, Rat(0));
  for (size_t i = 0; i < r; ++i) x[pivot_col[i]] = M.at(i, m);
  return true;
}

QMat QMat::inverse() const {
  assert(m_ == n_);
  QMat M(m_, 2 * n_);
  for (size_t i = 0; i < m_; ++i) {
    for (size_t j = 0; j < n_; ++j) M.at(i, j) = at(i, j);
    M.at(i, n_ + i) = 1;
  }
  for (size_t j = 0; j < n_; ++j) {
    size_t p = m_;
    for (size_t i = j; i < m_; ++i)
      if (M.at(i, j) != 0) { p = i; break; }
    if (p == m_) throw std::domain_error("QMat::inverse: singular");
    for (size_t k = 0; k < 2 * n_; ++k) std::swap(M.at(p, k), M.at(j, k));
    Rat inv = Rat(1) / M.at(j, j);
    for (size_t k = 0; k < 2 * n_; ++k) M.at(j, k) *= inv;
    for (size_t i = 0; i < m_; ++i) {
      if (i == j || M.at(i, j) == 0) continue;
      Rat f = M.at(i, j);
      for (size_t k = 0; k < 2 * n_; ++k) M.at(i, k) -= f * M.at(j, k);
    }
  }
  QMat R(m_, n_);
  for (size_t i = 0; i < m_; ++i)
    for (size_t j = 0; j < n_; ++j) R.at(i, j) = M.at(i, n_ + j);
  return R;
}

size_t QMat::rank() const {
  QMat M = *this;
  size_t r = 0;
  for (size_t j = 0; j < n_ && r < m_; ++j) {
    size_t p = m_;
    for (size_t i = r; i < m_; ++i)
      if (M.at(i, j) != 0) { p = i; break; }
    if (p == m_) continue;
    for (size_t k = 0; k < n_; ++k) std::swap(M.at(p, k), M.at(r, k));
    for (size_t i = r + 1; i < m_; ++i) {
      if (M.at(i, j) == 0) continue;
      Rat f = M.at(i, j) / M.at(r, j);
      for (size_t k = 0; k < n_; ++k) M.at(i, k) -= f * M.at(r, k);
    }
    ++r;
  }
  return r;
}

Rat QMat::det() const {
  assert(m_ == n_);
  QMat M = *this;
  Rat d(1);
  for (size_t j = 0; j < n_; ++j) {
    size_t p = m_;
    for (size_t i = j; i < m_; ++i)
      if (M.at(i, j) != 0) { p = i; break; }
    if (p == m_) return Rat(0);
    if (p != j) {
      for (size_t k = 0; k < n_; ++k) std::swap(M.at(p, k), M.at(j, k));
      d = -d;
    }
    d *= M.at(j, j);
    Rat inv = Rat(1) / M.at(j, j);
    for (size_t i = j + 1; i < m_; ++i) {
      if (M.at(i, j) == 0) continue;
      Rat f = M.at(i, j) * inv;
      for (size_t k = 0; k < n_; ++k) M.at(i, k) -= f * M.at(j, k);
    }
  }
  return d;
}

bool solve_left_integral(const ZMat& A, const std::vector<Int>& b, std::vector<Int>& x) {
  // x*A = b: HNF of A with transform, then back-substitute on pivot columns.
  ZMat U;
  ZMat H = ZMat::hnf(A, &U);
  size_t r = H.rows(), n = A.cols();
  assert(b.size() == n);
  std::vector<Int> y(r, Int(0));
  std::vector<Int> rem(b);
  // pivot columns
  for (size_t i = 0; i < r; ++i) {
    size_t j = 0;
    while (j < n && H.at(i, j) == 0) ++j;
    assert(j < n);
    if (!divides(H.at(i, j), rem[j])) return false;
    Int q = divexact(rem[j], H.at(i, j));
    y[i] = q;
    for (size_t k = 0; k < n; ++k) rem[k] -= q * H.at(i, k);
  }
  for (size_t k = 0; k < n; ++k)
    if (rem[k] != 0) return false;
  // x = y * U_top
  x.assign(A.rows(), Int(0));
  for (size_t i = 0; i < r; ++i)
    for (size_t k = 0; k < A.rows(); ++k) x[k] += y[i] * U.at(i, k);
  return true;
}

}  // namespace ecros
