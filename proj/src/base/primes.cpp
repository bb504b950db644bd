#include "ecros/base/primes.hpp"

#include <stdexcept>

namespace ecros {

std::vector<uint64_t> primes_up_to(uint64_t n) {
  std::vector<bool> comp(n + 1, false);
  std::vector<uint64_t> out;
  for (uint64_t i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (uint64_t j = i * i; j <= n; j += i) comp[j] = true;
  }
  return out;
}

const std::vector<uint64_t>& small_primes() {
  static const std::vector<uint64_t> v = primes_up_to(1000000);
  return v;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace {

Int pollard_brent(const Int& n) {
  // deterministic parameter schedule
  for (unsigned long c = 1; c < 64; ++c) {
    Int x(2), y(2), d(1);
    Int q(1);
    unsigned long m = 128;
    Int ys = y;
    unsigned long r = 1;
    x = 2;
    y = 2;
    while (true) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = mod(y * y + c, n);
      unsigned long k = 0;
      d = 1;
      while (k < r && d == 1) {
        ys = y;
        unsigned long lim = std::min(m, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          y = mod(y * y + c, n);
          q = mod(q * abs(x - y), n);
        }
        d = gcd(q, n);
        k += lim;
      }
      if (d != 1) break;
      ++r;
      if (r > (1ul << 22)) break;
    }
    if (d == n) {
      // backtrack
      do {
        ys = mod(ys * ys + c, n);
        d = gcd(abs(x - ys), n);
      } while (d == 1);
    }
    if (d != 1 && d != n) return d;
  }
  throw std::runtime_error("pollard_brent: failed to split " + n.get_str());
}

void factor_rec(Int n, std::map<Int, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  Int d = pollard_brent(n);
  factor_rec(d, out);
  factor_rec(divexact(n, d), out);
}

}  // namespace

std::map<Int, int> factor(Int n) {
  if (n == 0) throw std::domain_error("factor(0)");
  if (n < 0) n = -n;
  std::map<Int, int> out;
  for (uint64_t p : small_primes()) {
    if (n == 1) return out;
    Int P((unsigned long)p);
    if (P * P > n) break;
    while (divides(P, n)) {
      n = divexact(n, P);
      out[P] += 1;
    }
  }
  if (n > 1) factor_rec(n, out);
  return out;
}

Int next_prime(const Int& n) {
  Int p;
  mpz_nextprime(p.get_mpz_t(), n.get_mpz_t());
  return p;
}

}  // namespace ecros
