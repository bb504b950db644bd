#include <catch2/catch_amalgamated.hpp>

#include "ecros/base/factorq.hpp"
#include "ecros/nf/ideal.hpp"
#include "ecros/nf/numberfield.hpp"
#include "ecros/nf/places.hpp"

using namespace ecros;

static PolyZ pz(std::initializer_list<long> cs) {
  std::vector<Int> v;
  for (long c : cs) v.push_back(Int(c));
  return PolyZ(v);
}

TEST_CASE("field arithmetic in Q(sqrt2)") {
  auto K = NumberField::create(pz({-2, 0, 1}));
  CHECK(K->degree() == 2);
  CHECK(K->r1() == 2);
  CHECK(K->r2() == 0);
  CHECK(K->disc() == 8);
  NFElem s = K->gen();
  CHECK((s * s).rational_value() == 2);
  NFElem u = K->one() + s;  // 1 + sqrt2
  CHECK(u.norm() == -1);
  CHECK(u.trace() == 2);
  NFElem ui = u.inv();
  CHECK((u * ui) == K->one());
  CHECK(u.min_poly() == pz({-1, -2, 1}));
}

TEST_CASE("maximal order of Q(sqrt5)") {
  auto K = NumberField::create(pz({-5, 0, 1}));
  CHECK(K->disc() == 5);
  CHECK(K->index() == 2);  // (1+sqrt5)/2 integral
  NFElem golden = K->elem({Rat(1, 2), Rat(1, 2)});
  CHECK(K->is_integral(golden));
  NFElem half = K->elem({Rat(1, 2), Rat(0)});
  CHECK_FALSE(K->is_integral(half));
}

TEST_CASE("maximal order of cyclic cubic x^3-3x-1") {
  auto K = NumberField::create(pz({-1, -3, 0, 1}));
  CHECK(K->disc() == 81);
  CHECK(K->r1() == 3);
}

TEST_CASE("prime splitting in quadratic fields") {
  auto K = NumberField::create(pz({-17, 0, 1}));
  CHECK(K->disc() == 17);
  // 2 splits in Q(sqrt17)
  auto p2 = factor_rational_prime(K, Int(2));
  REQUIRE(p2.size() == 2);
  CHECK(p2[0].e == 1);
  CHECK(p2[0].f == 1);
  // 17 ramifies
  auto p17 = factor_rational_prime(K, Int(17));
  REQUIRE(p17.size() == 1);
  CHECK(p17[0].e == 2);
  // 3 is inert
  auto p3 = factor_rational_prime(K, Int(3));
  REQUIRE(p3.size() == 1);
  CHECK(p3[0].f == 2);
}

TEST_CASE("valuations and absolute values") {
  auto Q = NumberField::rationals();
  auto p2 = factor_rational_prime(Q, Int(2));
  REQUIRE(p2.size() == 1);
  NFElem x = Q->from_rat(Rat(8));
  CHECK(valuation(x, p2[0]) == 3);
  CHECK(absolute_value_finite(x, p2[0]) == Rat(1, 8));
  CHECK(absolute_value_finite(Q->from_rat(Rat(1)), p2[0]) == 1);
  // real place of Q: |-4| = 4
  Place v = Place::infinite(Q, 0);
  Real a = absolute_value(Q->from_rat(Rat(-4)), v, 64);
  CHECK(std::abs(a.to_double() - 4.0) < 1e-12);

  // ramified valuation: ord of sqrt17 at the prime above 17 is 1
  auto K = NumberField::create(pz({-17, 0, 1}));
  auto p17 = factor_rational_prime(K, Int(17));
  CHECK(valuation(K->gen(), p17[0]) == 1);
  CHECK(valuation(K->from_rat(Rat(17)), p17[0]) == 2);
  // fractional
  CHECK(valuation(K->gen().inv(), p17[0]) == -1);
}

TEST_CASE("primes with index divisors") {
  // x^3 - x^2 - 2x - 8 : classical example, 2 divides the index
  auto K = NumberField::create(pz({-8, -2, -1, 1}));
  CHECK(K->disc() == -503);
  CHECK(K->index() == 2);
  auto p2 = factor_rational_prime(K, Int(2));
  REQUIRE(p2.size() == 3);  // 2 splits completely (the Dedekind example)
  for (auto& P : p2) {
    CHECK(P.e == 1);
    CHECK(P.f == 1);
  }
}

TEST_CASE("extend prime set") {
  auto Q = NumberField::rationals();
  auto p3 = factor_rational_prime(Q, Int(3));
  PrimeSet S = PrimeSet::of(Q, {p3[0]});
  PrimeSet S2 = S.extend(Int(2));
  CHECK(S2.size() == 2);
  CHECK(S2.extend(Int(2)).size() == 2);  // idempotent
  // S={2}, n=2 stays {2}
  auto p2 = factor_rational_prime(Q, Int(2));
  PrimeSet T = PrimeSet::of(Q, {p2[0]});
  CHECK(T.extend(Int(2)).size() == 1);
}

TEST_CASE("prime set lifted to Q(sqrt2)") {
  // S = {(2),(17)} over Q lifted to Q(sqrt2): 2 ramifies, 17 splits
  auto Q = NumberField::rationals();
  auto K = NumberField::create(pz({-2, 0, 1}));
  auto p2 = factor_rational_prime(Q, Int(2));
  auto p17 = factor_rational_prime(Q, Int(17));
  PrimeSet S = PrimeSet::of(Q, {p2[0], p17[0]});
  // embedding Q -> K sends the rational generator to itself
  PrimeSet SL = S.lift(K, K->gen() * K->gen() / K->from_rat(Rat(2)));
  CHECK(SL.size() == 3);
}

TEST_CASE("residue fields") {
  auto K = NumberField::create(pz({-17, 0, 1}));
  auto p3 = factor_rational_prime(K, Int(3));  // inert, F_9
  ResidueField R(p3[0]);
  CHECK(R.q() == 9);
  FpPoly a = R.reduce(K->gen());       // sqrt(17) mod 3
  FpPoly b = R.mul(a, a);              // = 17 mod 3 = 2
  CHECK(b == FpPoly{2});
  // dlog sanity: g^dlog(x) = x
  FpPoly x = R.reduce(K->gen() + K->one());
  Int d = R.dlog(x);
  CHECK(R.pow(R.mult_gen(), d) == x);
  // reduce with denominator: 1/5 = 2 mod 3
  FpPoly c = R.reduce(K->from_rat(Rat(1, 5)));
  CHECK(c == FpPoly{2});
}

TEST_CASE("embeddings and log abs") {
  auto K = NumberField::create(pz({-2, 0, 1}));
  NFElem u = K->one() + K->gen();
  Real l0 = K->log_abs(u, 0, 128);
  Real l1 = K->log_abs(u, 1, 128);
  CHECK(std::abs(l0.to_double() - std::log(std::abs(1 - 1.41421356237))) < 1e-9);
  CHECK(std::abs(l1.to_double() - std::log(1 + 1.41421356237)) < 1e-9);
  // product formula over infinite places: log|N(u)| = 0
  CHECK(std::abs((l0 + l1).to_double()) < 1e-9);
}

#include "ecros/nf/morphisms.hpp"
#include "ecros/nf/trager.hpp"

TEST_CASE("trager factorization") {
  auto K = NumberField::create(pz({-2, 0, 1}));
  NFPoly f = NFPoly::from_z(K, pz({-2, 0, 1}));  // x^2-2 over Q(sqrt2)
  auto fac = nf_factor(f);
  REQUIRE(fac.size() == 2);
  CHECK(fac[0].first.deg() == 1);
  auto roots = nf_roots(f);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == -K->gen());
  CHECK(roots[1] == K->gen());

  // x^2-3 stays irreducible over Q(sqrt2)
  CHECK(nf_is_irreducible(NFPoly::from_z(K, pz({-3, 0, 1}))));
}

TEST_CASE("automorphisms") {
  auto K2 = NumberField::create(pz({-2, 0, 1}));
  CHECK(automorphisms(K2).size() == 2);
  auto K3 = NumberField::create(pz({-1, -3, 0, 1}));  // cyclic cubic
  CHECK(automorphisms(K3).size() == 3);
  auto Knc = NumberField::create(pz({-2, 0, 0, 1}));  // x^3-2 non-Galois
  CHECK(automorphisms(Knc).size() == 1);
  // order of the nontrivial automorphism of Q(sqrt2)
  for (auto& s : automorphisms(K2))
    if (!s.is_identity()) CHECK(hom_order(s) == 2);
}

TEST_CASE("relative norm and trace") {
  auto Q = NumberField::rationals();
  auto K = NumberField::create(pz({-2, 0, 1}));
  FieldHom phi = embeddings_into(Q, K)[0];
  NFElem u = K->one() + K->gen();
  NFElem n = relative_norm(phi, u);
  CHECK(n.rational_value() == -1);
  NFElem t = relative_trace(phi, u);
  CHECK(t.rational_value() == 2);
}

TEST_CASE("extension towers") {
  auto K = NumberField::create(pz({-2, 0, 1}));
  NFPoly g(K);
  g.c = {K->from_rat(Rat(-3)), K->zero(), K->one()};  // y^2 - 3
  Extension E = extend_by_poly(K, g);
  CHECK(E.L->degree() == 4);
  CHECK((E.root * E.root) == E.L->from_rat(Rat(3)));
  CHECK((E.base(K->gen()) * E.base(K->gen())) == E.L->from_rat(Rat(2)));
  // preimage roundtrip
  NFElem y = E.base(K->gen() + K->one());
  auto back = hom_preimage(E.base, y);
  REQUIRE(back.has_value());
  CHECK(*back == K->gen() + K->one());
}

TEST_CASE("nth power tests") {
  auto K = NumberField::create(pz({-2, 0, 1}));
  NFElem r;
  CHECK(is_nth_power(K->from_rat(Rat(2)), 2, &r));
  CHECK((r * r) == K->from_rat(Rat(2)));
  CHECK_FALSE(is_nth_power(K->from_rat(Rat(3)), 2, nullptr));
  CHECK(is_nth_power(K->from_rat(Rat(4)), 2, &r));
  // 6th power via 2*3: (1+sqrt2)^6
  NFElem u = (K->one() + K->gen()).pow(6);
  CHECK(is_nth_power(u, 6, &r));
  CHECK(r.pow(6) == u);
}

TEST_CASE("isomorphism and canonical poly") {
  auto A = NumberField::create(pz({-2, 0, 1}));
  auto B = NumberField::create(pz({-8, 0, 1}));
  auto C = NumberField::create(pz({-3, 0, 1}));
  CHECK(fields_isomorphic(A, B));
  CHECK_FALSE(fields_isomorphic(A, C));
  CHECK(canonical_poly(B) == pz({-2, 0, 1}));
}
