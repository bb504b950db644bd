#pragma once

#include <map>
#include <vector>

#include "ecros/base/int.hpp"

namespace ecros {

// rational primes up to n (inclusive)
const std::vector<uint64_t>& small_primes();  // primes below 10^6
std::vector<uint64_t> primes_up_to(uint64_t n);

bool is_prime(const Int& n);

// full factorization of |n|, n != 0; throws if a cofactor resists
std::map<Int, int> factor(Int n);

Int next_prime(const Int& n);

}  // namespace ecros
