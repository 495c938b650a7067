#pragma once

#include <atomic>
#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "saxl/error.hpp"

namespace saxl {

// An element of GF(p^n), stored as the base-p packing sum c_i p^i of its
// polynomial coefficients. Use FieldCtx::coeffs to unpack.
struct FieldElement {
  std::uint32_t code = 0;
  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

enum class FieldOp { Add, Sub, Mul, Div, Pow, Inv };

class FieldCtx {
 public:
  static constexpr std::uint64_t kDefaultCeiling = std::uint64_t{1} << 20;
  static constexpr std::uint64_t kEagerTables = std::uint64_t{1} << 16;

  // modulus is low-degree-first and monic of degree n.
  FieldCtx(std::uint32_t p, unsigned n,
           std::optional<std::vector<std::uint32_t>> modulus = std::nullopt,
           std::uint64_t ceiling = kDefaultCeiling);

  std::uint32_t p() const { return p_; }
  unsigned n() const { return n_; }
  std::uint32_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  FieldElement theta() const { return theta_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  FieldElement from_int(std::int64_t k) const;
  FieldElement from_coeffs(const std::vector<std::uint32_t>& c) const;
  std::vector<std::uint32_t> coeffs(FieldElement x) const;
  FieldElement at(std::uint32_t code) const { return {code}; }

  std::uint32_t log(FieldElement x) const;  // x != 0
  FieldElement exp(std::int64_t k) const;   // theta^k

  FieldElement add(FieldElement a, FieldElement b) const {
    if (a.code == 0) return b;
    if (b.code == 0) return a;
    if (p_ == 2) return {a.code ^ b.code};
    const auto& t = tables();
    std::uint32_t la = t.log[a.code], lb = t.log[b.code];
    std::uint32_t k = lb >= la ? lb - la : lb + (q_ - 1) - la;
    std::int32_t z = t.zech[k];
    if (z < 0) return {0};
    return {t.exp[la + static_cast<std::uint32_t>(z)]};
  }
  FieldElement neg(FieldElement a) const {
    if (a.code == 0 || p_ == 2) return a;
    const auto& t = tables();
    return {t.exp[t.log[a.code] + (q_ - 1) / 2]};
  }
  FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
  FieldElement mul(FieldElement a, FieldElement b) const {
    if (a.code == 0 || b.code == 0) return {0};
    const auto& t = tables();
    return {t.exp[t.log[a.code] + t.log[b.code]]};
  }
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
  FieldElement pow(FieldElement a, std::int64_t e) const;

  // x^(p^k), k taken mod n.
  FieldElement frobenius(FieldElement x, std::int64_t k) const;
  // +1 square, -1 nonsquare, 0 for zero. Odd q only.
  int eta(FieldElement x) const;
  bool is_square(FieldElement x) const;  // nonzero squares; every nonzero element when p = 2
  bool in_subfield(FieldElement x, unsigned m) const;
  // all elements of GF(p^m) inside this field, ascending code order
  std::vector<FieldElement> subfield_elements(unsigned m) const;

 private:
  struct Tables {
    std::vector<std::uint32_t> log;   // log[code], code != 0
    std::vector<std::uint32_t> exp;   // exp[k] for k in [0, 2(q-1))
    std::vector<std::int32_t> zech;   // log(1 + theta^k) or -1
  };
  const Tables& tables() const {
    if (!ready_.load(std::memory_order_acquire)) build_tables();
    return tables_;
  }
  void build_tables() const;
  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t pow_slow(std::uint32_t a, std::uint64_t e) const;

  std::uint32_t p_;
  unsigned n_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  FieldElement theta_;
  mutable Tables tables_;
  mutable std::atomic<bool> ready_{false};
  mutable std::mutex build_mutex_;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

FieldPtr make_field(std::uint32_t p, unsigned n,
                    std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);
FieldPtr make_field_q(std::uint32_t q);

// Smallest monic irreducible of degree n, coefficients compared low-degree-first.
std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, unsigned n);
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly);

// Pow raises a to `exponent` and ignores b; Inv ignores b.
FieldElement field_arith(const FieldCtx& F, FieldElement a, FieldElement b, FieldOp op,
                         std::int64_t exponent = 0);

std::pair<FieldElement, FieldElement> trace_norm_rel(const FieldCtx& F, FieldElement x, unsigned m);
FieldElement hilbert90_additive(const FieldCtx& F, FieldElement d, unsigned m);
FieldElement hilbert90_multiplicative(const FieldCtx& F, FieldElement d, unsigned m);

std::int64_t char_sum_cubic(const FieldCtx& F, FieldElement t);
std::int64_t feng_count(const FieldCtx& F, FieldElement t);

}  // namespace saxl
