#include "saxl/gf.hpp"

#include <string>

#include "saxl/numtheory.hpp"

namespace saxl {

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// remainder of f modulo the monic polynomial g
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    std::uint32_t lead = f.back();
    std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      std::uint64_t sub = std::uint64_t(lead) * g[i] % p;
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - sub) % p);
    }
    trim(f);
  }
  return f;
}

Poly decode(std::uint32_t code, std::uint32_t p, unsigned n) {
  Poly c(n);
  for (unsigned i = 0; i < n; ++i) {
    c[i] = code % p;
    code /= p;
  }
  return c;
}

std::uint32_t encode(const Poly& c, std::uint32_t p) {
  std::uint32_t code = 0;
  for (std::size_t i = c.size(); i-- > 0;) code = code * p + c[i];
  return code;
}

}  // namespace

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
  Poly f = poly;
  trim(f);
  if (f.size() < 2) return false;
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  if (n == 1) return true;
  // trial division by every monic polynomial of degree 1..n/2
  for (unsigned d = 1; d <= n / 2; ++d) {
    std::uint64_t count = ipow(p, d);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly g = decode(static_cast<std::uint32_t>(idx), p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, unsigned n) {
  if (n == 1) return {0, 1};
  const std::uint64_t count = ipow(p, n);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    // c_0 is the most significant digit of idx
    Poly f(n + 1, 0);
    std::uint64_t rest = idx;
    for (unsigned j = n; j-- > 0;) {
      f[j] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    f[n] = 1;
    if (f[0] == 0) continue;
    if (is_irreducible(p, f)) return f;
  }
  throw Error(ErrorCode::Internal, "no irreducible polynomial found");
}

FieldCtx::FieldCtx(std::uint32_t p, unsigned n, std::optional<std::vector<std::uint32_t>> modulus,
                   std::uint64_t ceiling)
    : p_(p), n_(n) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (n < 1) throw Error(ErrorCode::BadParameters, "degree must be at least 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) {
    q *= p;
    if (q > ceiling)
      throw Error(ErrorCode::TooLarge, "field order exceeds ceiling " + std::to_string(ceiling));
  }
  q_ = static_cast<std::uint32_t>(q);
  if (modulus) {
    const auto& m = *modulus;
    if (m.size() != n + 1 || m.back() != 1)
      throw Error(ErrorCode::BadParameters, "modulus must be monic of degree n");
    for (auto c : m)
      if (c >= p) throw Error(ErrorCode::BadParameters, "modulus coefficient out of range");
    if (!is_irreducible(p, m)) throw Error(ErrorCode::Reducible, "modulus is reducible");
    modulus_ = m;
  } else {
    modulus_ = smallest_irreducible(p, n);
  }

  if (q_ == 2) {
    theta_ = {1};
  } else {
    auto factors = prime_factors(q_ - 1);
    bool found = false;
    for (std::uint32_t c = 1; c < q_ && !found; ++c) {
      bool primitive = true;
      for (auto r : factors) {
        if (pow_slow(c, (q_ - 1) / r) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        theta_ = {c};
        found = true;
      }
    }
    if (!found) throw Error(ErrorCode::Reducible, "no primitive element; modulus not irreducible");
  }
  if (q_ <= kEagerTables) build_tables();
}

std::uint32_t FieldCtx::mul_slow(std::uint32_t a, std::uint32_t b) const {
  Poly x = decode(a, p_, n_), y = decode(b, p_, n_);
  Poly prod(2 * n_, 0);
  for (unsigned i = 0; i < n_; ++i) {
    if (!x[i]) continue;
    for (unsigned j = 0; j < n_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(x[i]) * y[j]) % p_);
  }
  Poly r = poly_mod(prod, modulus_, p_);
  r.resize(n_, 0);
  return encode(r, p_);
}

std::uint32_t FieldCtx::pow_slow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1) r = mul_slow(r, a);
    a = mul_slow(a, a);
    e >>= 1;
  }
  return r;
}

void FieldCtx::build_tables() const {
  std::lock_guard<std::mutex> lock(build_mutex_);
  if (ready_.load(std::memory_order_relaxed)) return;
  const std::uint32_t qm1 = q_ - 1;
  tables_.log.assign(q_, 0);
  tables_.exp.assign(2 * std::size_t(qm1) + 1, 0);
  std::uint32_t cur = 1;
  for (std::uint32_t k = 0; k < qm1; ++k) {
    tables_.exp[k] = cur;
    tables_.log[cur] = k;
    cur = mul_slow(cur, theta_.code);
  }
  for (std::uint32_t k = qm1; k < tables_.exp.size(); ++k) tables_.exp[k] = tables_.exp[k - qm1];
  tables_.zech.assign(qm1, -1);
  for (std::uint32_t k = 0; k < qm1; ++k) {
    std::uint32_t code = tables_.exp[k];
    std::uint32_t d0 = code % p_;
    std::uint32_t plus1 = code - d0 + (d0 + 1) % p_;
    tables_.zech[k] = plus1 == 0 ? -1 : static_cast<std::int32_t>(tables_.log[plus1]);
  }
  ready_.store(true, std::memory_order_release);
}

FieldElement FieldCtx::from_int(std::int64_t k) const {
  std::int64_t r = k % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {static_cast<std::uint32_t>(r)};
}

FieldElement FieldCtx::from_coeffs(const std::vector<std::uint32_t>& c) const {
  if (c.size() != n_) throw Error(ErrorCode::BadParameters, "coefficient vector must have length n");
  for (auto x : c)
    if (x >= p_) throw Error(ErrorCode::BadParameters, "coefficient out of range");
  return {encode(c, p_)};
}

std::vector<std::uint32_t> FieldCtx::coeffs(FieldElement x) const { return decode(x.code, p_, n_); }

std::uint32_t FieldCtx::log(FieldElement x) const {
  if (x.code == 0) throw Error(ErrorCode::DivisionByZero, "log of zero");
  return tables().log[x.code];
}

FieldElement FieldCtx::exp(std::int64_t k) const {
  std::int64_t m = k % static_cast<std::int64_t>(q_ - 1);
  if (m < 0) m += q_ - 1;
  return {tables().exp[static_cast<std::size_t>(m)]};
}

FieldElement FieldCtx::inv(FieldElement a) const {
  if (a.code == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  const auto& t = tables();
  std::uint32_t l = t.log[a.code];
  return {t.exp[l == 0 ? 0 : (q_ - 1) - l]};
}

FieldElement FieldCtx::pow(FieldElement a, std::int64_t e) const {
  if (a.code == 0) {
    if (e < 0) throw Error(ErrorCode::DivisionByZero, "negative power of zero");
    return e == 0 ? one() : zero();
  }
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  FieldElement r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

FieldElement FieldCtx::frobenius(FieldElement x, std::int64_t k) const {
  if (x.code == 0 || q_ == 2) return x;
  std::int64_t kk = k % static_cast<std::int64_t>(n_);
  if (kk < 0) kk += n_;
  std::uint64_t mult = ipow(p_, static_cast<unsigned>(kk)) % (q_ - 1);
  return exp(static_cast<std::int64_t>((std::uint64_t(log(x)) * mult) % (q_ - 1)));
}

int FieldCtx::eta(FieldElement x) const {
  if (p_ == 2) throw Error(ErrorCode::EvenCharacteristic, "eta needs odd q");
  if (x.code == 0) return 0;
  return (log(x) % 2 == 0) ? 1 : -1;
}

bool FieldCtx::is_square(FieldElement x) const {
  if (x.code == 0) return false;
  if (p_ == 2) return true;
  return log(x) % 2 == 0;
}

bool FieldCtx::in_subfield(FieldElement x, unsigned m) const {
  if (m == 0 || n_ % m) throw Error(ErrorCode::NotSubfieldDegree, "m must divide n");
  return frobenius(x, m) == x;
}

std::vector<FieldElement> FieldCtx::subfield_elements(unsigned m) const {
  std::vector<FieldElement> out;
  for (std::uint32_t c = 0; c < q_; ++c)
    if (in_subfield({c}, m)) out.push_back({c});
  return out;
}

FieldPtr make_field(std::uint32_t p, unsigned n, std::optional<std::vector<std::uint32_t>> modulus) {
  return std::make_shared<const FieldCtx>(p, n, std::move(modulus));
}

FieldPtr make_field_q(std::uint32_t q) {
  std::uint64_t p;
  unsigned n;
  if (!prime_power(q, p, n)) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
  return make_field(static_cast<std::uint32_t>(p), n);
}

FieldElement field_arith(const FieldCtx& F, FieldElement a, FieldElement b, FieldOp op,
                         std::int64_t exponent) {
  switch (op) {
    case FieldOp::Add: return F.add(a, b);
    case FieldOp::Sub: return F.sub(a, b);
    case FieldOp::Mul: return F.mul(a, b);
    case FieldOp::Div: return F.div(a, b);
    case FieldOp::Inv: return F.inv(a);
    case FieldOp::Pow: return F.pow(a, exponent);
  }
  throw Error(ErrorCode::Internal, "unknown field op");
}

std::pair<FieldElement, FieldElement> trace_norm_rel(const FieldCtx& F, FieldElement x, unsigned m) {
  if (m == 0 || F.n() % m) throw Error(ErrorCode::NotSubfieldDegree, "m must divide n");
  FieldElement tr = F.zero(), nm = F.one();
  for (unsigned j = 0; j < F.n() / m; ++j) {
    FieldElement c = F.frobenius(x, static_cast<std::int64_t>(m) * j);
    tr = F.add(tr, c);
    nm = F.mul(nm, c);
  }
  return {tr, nm};
}

FieldElement hilbert90_additive(const FieldCtx& F, FieldElement d, unsigned m) {
  if (trace_norm_rel(F, d, m).first != F.zero())
    throw Error(ErrorCode::NonzeroTrace, "relative trace of d is not zero");
  const unsigned n = F.n();
  const std::int64_t p = F.p();
  // columns: image of the basis vector p^i under c -> c - c^(p^m)
  std::vector<std::vector<std::int64_t>> A(n, std::vector<std::int64_t>(n + 1, 0));
  std::uint32_t basis = 1;
  for (unsigned i = 0; i < n; ++i, basis *= F.p()) {
    FieldElement e{basis};
    auto col = F.coeffs(F.sub(e, F.frobenius(e, m)));
    for (unsigned r = 0; r < n; ++r) A[r][i] = col[r];
  }
  auto rhs = F.coeffs(d);
  for (unsigned r = 0; r < n; ++r) A[r][n] = rhs[r];

  std::vector<int> pivot_col;
  unsigned row = 0;
  for (unsigned col = 0; col < n && row < n; ++col) {
    unsigned sel = row;
    while (sel < n && A[sel][col] == 0) ++sel;
    if (sel == n) continue;
    std::swap(A[sel], A[row]);
    std::int64_t inv = mod_inverse(A[row][col], p);
    for (auto& v : A[row]) v = v * inv % p;
    for (unsigned r = 0; r < n; ++r) {
      if (r == row || A[r][col] == 0) continue;
      std::int64_t f = A[r][col];
      for (unsigned c = 0; c <= n; ++c) A[r][c] = ((A[r][c] - f * A[row][c]) % p + p) % p;
    }
    pivot_col.push_back(static_cast<int>(col));
    ++row;
  }
  for (unsigned r = row; r < n; ++r)
    if (A[r][n] != 0) throw Error(ErrorCode::Internal, "additive Hilbert 90 system inconsistent");
  // free variables are zero
  std::vector<std::uint32_t> c(n, 0);
  for (unsigned r = 0; r < pivot_col.size(); ++r) c[pivot_col[r]] = static_cast<std::uint32_t>(A[r][n]);
  return F.from_coeffs(c);
}

FieldElement hilbert90_multiplicative(const FieldCtx& F, FieldElement d, unsigned m) {
  if (trace_norm_rel(F, d, m).second != F.one())
    throw Error(ErrorCode::NonUnitNorm, "relative norm of d is not 1");
  const std::int64_t qm1 = F.q() - 1;
  if (qm1 == 1) return F.one();
  std::int64_t k = F.log(d);
  std::int64_t a = (1 - static_cast<std::int64_t>(ipow(F.p(), m) % qm1)) % qm1;
  if (a < 0) a += qm1;
  std::int64_t g = static_cast<std::int64_t>(gcd_u64(a, qm1));
  if (k % g) throw Error(ErrorCode::Internal, "multiplicative Hilbert 90 has no solution");
  std::int64_t mod = qm1 / g;
  std::int64_t j = mod == 1 ? 0 : (k / g) % mod * mod_inverse(a / g, mod) % mod;
  return F.exp(j);
}

std::int64_t char_sum_cubic(const FieldCtx& F, FieldElement t) {
  if (F.p() == 2) throw Error(ErrorCode::EvenCharacteristic, "character sum needs odd q");
  std::int64_t m = 0;
  const FieldElement one = F.one();
  for (std::uint32_t c = 0; c < F.q(); ++c) {
    FieldElement x{c};
    m += F.eta(F.mul(F.mul(x, F.sub(x, one)), F.sub(x, t)));
  }
  if (static_cast<std::uint64_t>(m * m) > 4ull * F.q())
    throw Error(ErrorCode::Internal, "Weil bound violated");
  return m;
}

std::int64_t feng_count(const FieldCtx& F, FieldElement t) {
  if (F.p() == 2) throw Error(ErrorCode::EvenCharacteristic, "feng_count needs odd q");
  if (t == F.zero() || t == F.one()) throw Error(ErrorCode::BadT, "t must avoid 0 and 1");
  std::int64_t count = 0;
  for (std::uint32_t c = 1; c < F.q(); ++c) {
    FieldElement x{c};
    if (F.eta(x) == 1 && F.eta(F.sub(x, F.one())) == -1 && F.eta(F.sub(x, t)) == -1) ++count;
  }
  return count;
}

}  // namespace saxl
