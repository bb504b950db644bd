#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ecros/base/poly.hpp"
#include "ecros/base/zmat.hpp"

namespace ecros {

class NumberField;
using NFPtr = std::shared_ptr<const NumberField>;

// Element of a number field: rational coordinates over the power basis.
// Arithmetic requires both operands to share the same field object.
class NFElem {
 public:
  NFPtr K;
  std::vector<Rat> co;

  NFElem() = default;
  NFElem(NFPtr field, std::vector<Rat> coords) : K(std::move(field)), co(std::move(coords)) {}

  bool is_zero() const;
  bool is_rational() const;     // lies in Q
  Rat rational_value() const;   // requires is_rational

  friend NFElem operator+(const NFElem& a, const NFElem& b);
  friend NFElem operator-(const NFElem& a, const NFElem& b);
  friend NFElem operator*(const NFElem& a, const NFElem& b);
  friend NFElem operator/(const NFElem& a, const NFElem& b);
  NFElem operator-() const;
  NFElem inv() const;
  NFElem pow(long e) const;
  friend bool operator==(const NFElem& a, const NFElem& b);
  friend bool operator!=(const NFElem& a, const NFElem& b) { return !(a == b); }
  bool operator<(const NFElem& o) const { return co < o.co; }  // coordinate order

  Rat norm() const;
  Rat trace() const;
  PolyZ min_poly() const;   // monic -> primitive integral of the monic minimal polynomial
  PolyQ min_poly_q() const; // monic minimal polynomial over Q

  // common denominator of the power-basis coordinates
  Int denominator() const;

  std::string str() const;
};

// Number field Q(theta) for a monic irreducible integer polynomial.
class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  // f monic with integer coefficients, irreducible (checked)
  static NFPtr create(const PolyZ& f);
  // convenience: the rationals as a degree-1 field
  static NFPtr rationals();

  int degree() const { return f_.deg(); }
  const PolyZ& poly() const { return f_; }
  int r1() const { return r1_; }
  int r2() const { return r2_; }
  bool is_totally_real() const { return r2_ == 0; }

  NFElem zero() const;
  NFElem one() const;
  NFElem gen() const;
  NFElem from_rat(const Rat& a) const;
  NFElem elem(std::vector<Rat> coords) const;
  // element from a polynomial expression in the generator
  NFElem from_poly(const PolyQ& g) const;

  // maximal order: rows of basis_num()/basis_den() give the integral basis
  // over the power basis
  const ZMat& basis_num() const { return w_num_; }
  const Int& basis_den() const { return w_den_; }
  const Int& disc() const { return disc_; }
  const Int& index() const { return index_; }  // [O_K : Z[theta]]

  // coordinates of x over the integral basis; integral iff x in O_K
  std::vector<Rat> order_coords(const NFElem& x) const;
  bool is_integral(const NFElem& x) const;
  NFElem from_order_coords(const std::vector<Int>& v) const;
  NFElem from_order_coords_q(const std::vector<Rat>& v) const;

  // multiplication table of the maximal order basis: w_i * w_j = sum_k T[i][j][k] w_k
  const std::vector<ZMat>& mult_table() const { return mult_table_; }

  // complex embeddings: r1 real (ascending), then r2 upper-half-plane
  // representatives (sorted); cached per precision
  std::vector<CReal> embeddings(long prec) const;
  CReal embed(const NFElem& x, size_t place, long prec) const;
  // log |x|_v with the place-normalized absolute value (square modulus at
  // complex places); x must be nonzero
  Real log_abs(const NFElem& x, size_t place, long prec) const;

  std::string str() const { return f_.str(); }

  std::vector<Rat> reduce_poly(std::vector<Rat> v) const;  // mod f, any degree

 private:
  NumberField() = default;

  PolyZ f_;
  int r1_ = 0, r2_ = 0;
  std::vector<std::vector<Rat>> theta_pow_;  // theta^n .. theta^(2n-2) over power basis
  std::vector<Rat> trace_pow_;               // Tr(theta^k), k = 0..n-1

  ZMat w_num_;   // n x n, rows * (1/w_den_) = integral basis, HNF
  Int w_den_ = 1;
  QMat w_q_, w_inv_;  // basis and inverse as rational matrices
  Int disc_, index_;
  std::vector<ZMat> mult_table_;

  mutable std::mutex emb_mu_;
  mutable std::map<long, std::vector<CReal>> emb_cache_;

  friend class NFElem;
};

}  // namespace ecros
