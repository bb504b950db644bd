#pragma once

#include <variant>

#include "ecros/nf/ideal.hpp"

namespace ecros {

// A place of a number field: finite prime, real embedding, or complex
// embedding (one per conjugate pair).
struct Place {
  enum class Kind { finite, real, complex };
  Kind kind;
  NFPtr K;
  std::optional<PrimeIdeal> prime;  // finite
  size_t emb_index = 0;             // infinite: index into embeddings()

  static Place finite(PrimeIdeal P) {
    return {Kind::finite, P.K, std::move(P), 0};
  }
  static Place infinite(const NFPtr& K, size_t idx) {
    Kind k = (int)idx < K->r1() ? Kind::real : Kind::complex;
    return {k, K, std::nullopt, idx};
  }
  bool is_finite() const { return kind == Kind::finite; }
  std::string str() const;
};

// all infinite places of K
std::vector<Place> infinite_places(const NFPtr& K);

// |x|_v : exact rational at finite places (p^(-f ord)), Real at infinite
Rat absolute_value_finite(const NFElem& x, const PrimeIdeal& P);
Real absolute_value(const NFElem& x, const Place& v, long prec);
// log|x|_v, exact branch split: finite -> -f*ord*log p
Real log_absolute_value(const NFElem& x, const Place& v, long prec);

// An ordered duplicate-free set of prime ideals of one field.
struct PrimeSet {
  NFPtr K;
  std::vector<PrimeIdeal> primes;

  static PrimeSet empty(const NFPtr& K) { return {K, {}}; }
  static PrimeSet of(const NFPtr& K, std::vector<PrimeIdeal> ps);
  bool contains(const PrimeIdeal& P) const;
  PrimeSet with(const PrimeIdeal& P) const;
  size_t size() const { return primes.size(); }
  // S^(n) = S + primes dividing n
  PrimeSet extend(const Int& n) const;
  // lift to a bigger field L via the embedding of K's generator
  PrimeSet lift(const NFPtr& L, const NFElem& gen_image) const;
  std::string str() const;
};

// rational primes under the set (deduplicated, sorted)
std::vector<Int> rational_support(const PrimeSet& S);

}  // namespace ecros
