#pragma once

#include <cstdint>
#include <vector>

namespace saxl {

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);  // distinct, ascending
std::uint64_t ipow(std::uint64_t base, unsigned exp);
std::uint64_t isqrt(std::uint64_t n);  // floor
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);  // a coprime to m

// q = p^n with p prime; returns false when q is not a prime power.
bool prime_power(std::uint64_t q, std::uint64_t& p, unsigned& n);

}  // namespace saxl
