#include "saxl/numtheory.hpp"

#include "saxl/error.hpp"

namespace saxl {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::NotSubfieldDegree: return "NotSubfieldDegree";
    case ErrorCode::NonzeroTrace: return "NonzeroTrace";
    case ErrorCode::NonUnitNorm: return "NonUnitNorm";
    case ErrorCode::BadT: return "BadT";
    case ErrorCode::NoUnitDetLift: return "NoUnitDetLift";
    case ErrorCode::UnsupportedCase: return "UnsupportedCase";
    case ErrorCode::BadSubfieldDegree: return "BadSubfieldDegree";
    case ErrorCode::ConditionsNotMet: return "ConditionsNotMet";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::NotSubset: return "NotSubset";
    case ErrorCode::NotSubgroup: return "NotSubgroup";
    case ErrorCode::UnfaithfulAction: return "UnfaithfulAction";
    case ErrorCode::TooManyPoints: return "TooManyPoints";
    case ErrorCode::NotBaseTwo: return "NotBaseTwo";
    case ErrorCode::MisalignedActions: return "MisalignedActions";
    case ErrorCode::FamilyMismatch: return "FamilyMismatch";
    case ErrorCode::NotInvolution: return "NotInvolution";
    case ErrorCode::InsideM: return "InsideM";
    case ErrorCode::NoConjugateInH: return "NoConjugateInH";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

std::uint64_t isqrt(std::uint64_t n) {
  std::uint64_t lo = 0, hi = 1;
  while (hi * hi <= n) hi <<= 1;
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (mid * mid <= n) lo = mid; else hi = mid;
  }
  return lo;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
  while (a1) {
    std::int64_t t = g / a1;
    std::int64_t tmp = g - t * a1; g = a1; a1 = tmp;
    tmp = x - t * x1; x = x1; x1 = tmp;
  }
  if (g != 1) throw Error(ErrorCode::Internal, "mod_inverse of non-unit");
  return ((x % m) + m) % m;
}

bool prime_power(std::uint64_t q, std::uint64_t& p, unsigned& n) {
  if (q < 2) return false;
  auto f = prime_factors(q);
  if (f.size() != 1) return false;
  p = f[0];
  n = 0;
  while (q > 1) {
    q /= p;
    ++n;
  }
  return true;
}

}  // namespace saxl
