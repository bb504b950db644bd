#pragma once

#include <cstddef>
#include <vector>

#include "ecros/base/int.hpp"

namespace ecros {

// Row-major integer matrix. Lattices are row spans throughout.
class ZMat {
 public:
  ZMat() = default;
  ZMat(size_t m, size_t n) : m_(m), n_(n), a_(m * n, Int(0)) {}
  static ZMat identity(size_t n);

  size_t rows() const { return m_; }
  size_t cols() const { return n_; }
  Int& at(size_t i, size_t j) { return a_[i * n_ + j]; }
  const Int& at(size_t i, size_t j) const { return a_[i * n_ + j]; }

  ZMat transpose() const;
  friend ZMat operator*(const ZMat& A, const ZMat& B);
  friend ZMat operator+(const ZMat& A, const ZMat& B);
  friend ZMat operator-(const ZMat& A, const ZMat& B);
  friend bool operator==(const ZMat& A, const ZMat& B) {
    return A.m_ == B.m_ && A.n_ == B.n_ && A.a_ == B.a_;
  }

  std::vector<Int> row(size_t i) const;
  void set_row(size_t i, const std::vector<Int>& v);
  ZMat vstack(const ZMat& B) const;

  // Row Hermite normal form: pivot columns strictly increase, pivots > 0,
  // entries above a pivot reduced into [0, pivot). Zero rows dropped.
  // If U is given, *U * A == result and *U is unimodular (rows not dropped
  // in U; full U returned with the transformed zero rows at the bottom).
  static ZMat hnf(const ZMat& A, ZMat* U = nullptr);

  // Smith normal form: U*A*V = D diagonal, d1 | d2 | ...
  static void snf(const ZMat& A, ZMat& D, ZMat& U, ZMat& V);

  // basis of { x : x*A = 0 } as rows
  static ZMat left_kernel(const ZMat& A);

  Int det() const;   // square
  size_t rank() const;

  std::string str() const;

 private:
  size_t m_ = 0, n_ = 0;
  std::vector<Int> a_;
};

// Dense rational matrix, just enough for solving small systems.
class QMat {
 public:
  QMat() = default;
  QMat(size_t m, size_t n) : m_(m), n_(n), a_(m * n, Rat(0)) {}
  static QMat identity(size_t n);
  static QMat from_z(const ZMat& A);

  size_t rows() const { return m_; }
  size_t cols() const { return n_; }
  Rat& at(size_t i, size_t j) { return a_[i * n_ + j]; }
  const Rat& at(size_t i, size_t j) const { return a_[i * n_ + j]; }

  friend QMat operator*(const QMat& A, const QMat& B);
  QMat transpose() const;

  // solve x * A = b (row-vector convention); false if inconsistent
  static bool solve_left(const QMat& A, const std::vector<Rat>& b, std::vector<Rat>& x);
  QMat inverse() const;  // throws if singular
  size_t rank() const;
  Rat det() const;

 private:
  size_t m_ = 0, n_ = 0;
  std::vector<Rat> a_;
};

// Solve x*A = b over the integers; false if no integral solution.
bool solve_left_integral(const ZMat& A, const std::vector<Int>& b, std::vector<Int>& x);

}  // namespace ecros
