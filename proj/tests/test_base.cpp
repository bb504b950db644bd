#include <catch2/catch_amalgamated.hpp>

#include "ecros/base/factorq.hpp"
#include "ecros/base/factorzp.hpp"
#include "ecros/base/int.hpp"
#include "ecros/base/lll.hpp"
#include "ecros/base/poly.hpp"
#include "ecros/base/primes.hpp"
#include "ecros/base/zmat.hpp"

using namespace ecros;

static PolyZ pz(std::initializer_list<long> cs) {
  std::vector<Int> v;
  for (long c : cs) v.push_back(Int(c));
  return PolyZ(v);
}

TEST_CASE("integer helpers") {
  CHECK(gcd(Int(12), Int(18)) == 6);
  CHECK(valuation(Int(48), Int(2)) == 4);
  CHECK(valuation(Rat(3, 8), Int(2)) == -3);
  Rat r;
  CHECK(rat_nth_root(Rat(27, 8), 3, r));
  CHECK(r == Rat(3, 2));
  CHECK_FALSE(rat_nth_root(Rat(2), 2, r));
  CHECK(pow(Rat(2, 3), -2) == Rat(9, 4));
}

TEST_CASE("poly arithmetic and division") {
  PolyZ f = pz({-1, 0, 1});  // x^2 - 1
  PolyZ g = pz({1, 1});      // x + 1
  CHECK(PolyZ::divides(g, f));
  PolyZ q, r;
  PolyZ::pseudo_divrem(f, g, q, r);
  CHECK(r.is_zero());
  CHECK(q == pz({-1, 1}));

  PolyQ a = to_q(pz({2, 0, 1}));  // x^2+2
  PolyQ b = to_q(pz({1, 1}));
  PolyQ qq, rr;
  PolyQ::divrem(a, b, qq, rr);
  CHECK((qq * b + rr) == a);
}

TEST_CASE("gcd and resultant") {
  PolyZ f = pz({-1, 0, 1}) * pz({2, 3});       // (x^2-1)(3x+2)
  PolyZ g = pz({1, 1}) * pz({2, 3}) * pz({5, 7});
  PolyZ d = PolyZ::gcd(f, g);
  CHECK(d == pz({1, 1}) * pz({2, 3}));

  // res(x^2-2, x^2-3) = 1 ; disc(x^2+1) = -4 ; disc(x^3-x-1) = -23
  CHECK(PolyZ::resultant(pz({-2, 0, 1}), pz({-3, 0, 1})) == 1);
  CHECK(pz({1, 0, 1}).discriminant() == -4);
  CHECK(pz({-1, -1, 0, 1}).discriminant() == -23);
  CHECK(pz({-1, -3, 0, 1}).discriminant() == 81);  // disc(x^3-3x-1) = 81
}

TEST_CASE("sturm real root counting") {
  CHECK(pz({-2, 0, 1}).real_root_count() == 2);       // x^2-2
  CHECK(pz({1, 0, 1}).real_root_count() == 0);        // x^2+1
  CHECK(pz({-1, -3, 0, 1}).real_root_count() == 3);   // x^3-3x-1 totally real
  CHECK(pz({-1, -1, 0, 1}).real_root_count() == 1);   // x^3-x-1
  CHECK(pz({-2, 0, 1}).sturm_count(Rat(0), Rat(2)) == 1);
}

TEST_CASE("factorization over Z") {
  // (x^2+1)(x^2-2)(x-3)^2
  PolyZ f = pz({1, 0, 1}) * pz({-2, 0, 1}) * pz({-3, 1}) * pz({-3, 1});
  auto fac = factor_z(f);
  REQUIRE(fac.size() == 3);
  bool seen_sq = false;
  for (auto& [g, m] : fac) {
    if (g == pz({-3, 1})) {
      CHECK(m == 2);
      seen_sq = true;
    } else {
      CHECK(m == 1);
    }
  }
  CHECK(seen_sq);

  CHECK(is_irreducible_z(pz({-1, -1, 0, 1})));
  CHECK(is_irreducible_z(pz({1, 1, 1, 1, 1, 1, 1})));  // Phi_7
  CHECK_FALSE(is_irreducible_z(pz({-1, 0, 0, 0, 0, 0, 1})));

  // x^6 - 1 factors into 4 cyclotomics
  CHECK(factor_z(pz({-1, 0, 0, 0, 0, 0, 1})).size() == 4);

  auto roots = rational_roots(pz({6, -5, 1}) * pz({0, 1}));  // roots 0,2,3
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == 0);
  CHECK(roots[1] == 2);
  CHECK(roots[2] == 3);
}

TEST_CASE("factorization mod p") {
  Fp fp(13);
  FpPoly f = fp.poly_from_z(pz({-1, 0, 0, 0, 0, 0, 1}));  // x^6-1 mod 13
  auto fac = fp.factor_squarefree(f, 1);
  CHECK(fac.size() == 6);  // 13 = 1 mod 6, splits completely
  auto rts = fp.roots(f);
  CHECK(rts.size() == 6);
}

TEST_CASE("complex roots") {
  PolyZ f = pz({-2, 0, 1});  // x^2-2
  auto z = complex_roots(f, 128);
  REQUIRE(z.size() == 2);
  CHECK(std::abs(z[0].re.to_double() + 1.41421356237) < 1e-9);
  CHECK(std::abs(z[1].re.to_double() - 1.41421356237) < 1e-9);

  PolyZ g = pz({1, 0, 1});
  auto zi = complex_roots(g, 128);
  REQUIRE(zi.size() == 2);
  CHECK(std::abs(std::abs(zi[0].im.to_double()) - 1.0) < 1e-9);
}

TEST_CASE("hnf snf kernel") {
  ZMat A(3, 3);
  long vals[3][3] = {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) A.at(i, j) = vals[i][j];
  ZMat U;
  ZMat H = ZMat::hnf(A, &U);
  CHECK(H.rows() == 3);
  // U*A == H (top rows)
  ZMat UA = U * A;
  for (size_t i = 0; i < H.rows(); ++i)
    for (size_t j = 0; j < 3; ++j) CHECK(UA.at(i, j) == H.at(i, j));

  ZMat D, UU, V;
  ZMat::snf(A, D, UU, V);
  ZMat P = UU * A * V;
  CHECK(P == D);
  // standard example: SNF diag(2,6,12)
  CHECK(D.at(0, 0) == 2);
  CHECK(D.at(1, 1) == 6);
  CHECK(D.at(2, 2) == 12);

  ZMat B(2, 3);
  B.at(0, 0) = 1;
  B.at(0, 1) = 2;
  B.at(0, 2) = 3;
  B.at(1, 0) = 2;
  B.at(1, 1) = 4;
  B.at(1, 2) = 6;
  ZMat K = ZMat::left_kernel(B);
  REQUIRE(K.rows() == 1);
  CHECK(K.at(0, 0) + 2 * K.at(0, 1) == 0);

  CHECK(A.det() == -144);
}

TEST_CASE("integral solve") {
  ZMat A(2, 2);
  A.at(0, 0) = 2;
  A.at(0, 1) = 0;
  A.at(1, 0) = 1;
  A.at(1, 1) = 3;
  std::vector<Int> b{Int(5), Int(3)};
  std::vector<Int> x;
  REQUIRE(solve_left_integral(A, b, x));
  CHECK(x[0] * 2 + x[1] * 1 == 5);
  CHECK(x[1] * 3 == 3);
  std::vector<Int> b2{Int(1), Int(0)};
  CHECK_FALSE(solve_left_integral(A, b2, x));
}

TEST_CASE("lll") {
  ZMat B(3, 3);
  long vals[3][3] = {{1, 1, 1}, {-1, 0, 2}, {3, 5, 6}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) B.at(i, j) = vals[i][j];
  ZMat R = lll_reduce(B);
  REQUIRE(R.rows() == 3);
  // determinant preserved up to sign
  CHECK(abs(R.det()) == abs(B.det()));
  // first vector should be short (norm^2 <= 2 here: (0,1,0) e.g.)
  Int n2 = R.at(0, 0) * R.at(0, 0) + R.at(0, 1) * R.at(0, 1) + R.at(0, 2) * R.at(0, 2);
  CHECK(n2 <= 2);
}

TEST_CASE("integer factor") {
  auto f = factor(Int(2 * 2 * 3 * 17 * 17));
  CHECK(f[Int(2)] == 2);
  CHECK(f[Int(3)] == 1);
  CHECK(f[Int(17)] == 2);
  auto big = factor(Int("12345678901234567891"));
  Int prod(1);
  for (auto& [p, e] : big)
    for (int i = 0; i < e; ++i) prod *= p;
  CHECK(prod == Int("12345678901234567891"));
}
