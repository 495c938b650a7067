#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "saxl/action.hpp"
#include "saxl/projgroup.hpp"

namespace saxl {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& r);

// One row of a bound table: observed <= bound (or >= for lower bounds, or == for exact counts).
enum class BoundKind { Upper, Lower, Exact };

struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, std::int64_t>> parameters;
  Rational bound;
  Rational observed;
  BoundKind kind = BoundKind::Upper;
  bool satisfied = false;
  std::string note;
};
BoundReport make_bound(std::string name, std::vector<std::pair<std::string, std::int64_t>> params,
                       Rational bound, Rational observed, BoundKind kind);

// ---- quadratic-character counting ----

// ceil((q - 2 sqrt(q) - 7) / 8), clamped at 0, exact.
std::int64_t feng_lower_bound(std::uint64_t q);
// w(q) = 2 * feng_lower_bound(q)
std::int64_t w_of_q(std::uint64_t q);
// the correction term l in |W| = (q - 3 + m + l) / 8
int feng_l_term(const FieldCtx& F, FieldElement t);
// (q - 3 + m + l) / 8 as an exact rational
Rational feng_w_formula(const FieldCtx& F, FieldElement t);

// ---- dihedral-plus: involution partners and the incidence graph ----

// Noncentral involutions m of M0 with |mg| dividing (q+1)/2 and |mg| > 2.
std::uint64_t involution_partner_count(const PGammaL& G, const Elem& g, const SubgroupSpec& M);
// involutions of T
std::vector<Elem> involutions_T(const PGammaL& G);

struct IncidenceGraphY {
  std::uint32_t q = 0;
  std::vector<Elem> involutions;                  // left side I
  std::vector<ElementSet> dihedrals;              // right side D; dihedrals[0] is alpha
  std::vector<std::vector<std::uint32_t>> inv_of;  // D -> involutions in it
  std::vector<std::vector<std::uint32_t>> d_of;    // I -> dihedrals containing it
  std::vector<int> dist_from_alpha;                // over D then I (index |D| + i)
  int diameter = -1;
  std::uint64_t y2_size = 0, y4_size = 0;          // D-vertices at distance 2 and 4 from alpha
  std::int64_t w = 0;

  struct Row {
    std::uint32_t beta = 0;
    int distance = 0;
    std::uint64_t meet = 0;  // |alpha cap beta|
    std::uint64_t n_beta = 0;
    Rational bound;
    bool ok = false;
  };
  std::vector<Row> rows;  // one per beta != alpha

  bool census_ok() const;
  bool bounds_ok() const;
  bool summary_bound_ok() const;  // n(beta) >= (q-3) w / 4
  bool degrees_ok() const;        // each D-vertex has (q+1)/2 or (q+3)/2 involutions
};
IncidenceGraphY incidence_graph_Y(std::uint32_t q);

// ---- counts that predict enumeration ----

// sum over H-classes K_i of the conjugates of K inside H of |N_L(K_i)| / |N_H(K_i)|.
std::uint64_t manning_fixed_points(const Level& L, const ElementSet& H, const ElementSet& K);

// |Gamma| for T = PSL(2,p^n) on the cosets of PSL(2,p^m), from the closed form.
BigInt gamma_size_subfield(std::uint32_t p, unsigned m, unsigned n);
// |T : PSL(2,p^m)|
BigInt omega_size_subfield(std::uint32_t p, unsigned m, unsigned n);

struct QHat {
  Rational value;
  std::vector<Elem> reps;  // generators of the M-classes of prime-order subgroups
  std::vector<std::uint64_t> class_sizes;
  std::vector<std::uint64_t> fix_counts;
  bool below_half() const { return value < Rational(1, 2); }
};
QHat q_hat(const CosetAction& A);
// closed-form upper estimate keyed by |M0| = 12, 24 or 60: 122, 194 or 722 over q(q-1) for q = p,
// and the S5 estimate for PSigmaL(2,p^2) when |M0| = 60 and n = 2
Rational q_hat_estimate(std::uint64_t m0_order, std::uint32_t p, unsigned n);

// 2-subsets of PG(1,q) relative to alpha = {0, infinity}, q odd.
bool fixed_pair_in_X(const FieldCtx& F, Point u, Point w);
bool fixed_pair_T_not_G(const FieldCtx& F, Point u, Point w);

// ---- the n'(r') bounds ----

enum class BracketReading { Floor, Ceiling };

// prime-order subgroups K of M with K cap M0 = 1; count regular M0-orbits K fixes setwise
struct NPrimeObservation {
  std::uint64_t max_fixed = 0;
  std::uint64_t subgroups_checked = 0;
  std::uint64_t classes = 0;
};

// dihedral-plus in PSigmaL(2,p^n), K of order r' dividing n
BoundReport n_prime_conjugacy(std::uint32_t p, unsigned n, unsigned r_prime, bool slow = false,
                              BracketReading reading = BracketReading::Floor);
// PGammaL(2,p^{mr}) on PGL(2,p^m).Z_n, r' = r
BoundReport n_prime_same_prime(std::uint32_t p, unsigned m, unsigned r, bool slow = false);
// PGammaL(2,p^{mr}) on PGL(2,p^m).Z_n, m = m1 r', r' != r
BoundReport n_prime_cross_prime(std::uint32_t p, unsigned m1, unsigned r, unsigned r_prime, bool slow = false);

// number of regular M0-suborbits fixed setwise, maximized over the prime-order-r' subgroups
// K <= M with K cap M0 = 1 (one per M-class, or all of them when slow is set)
NPrimeObservation observe_n_prime(const CosetAction& A, const ElementSet& M0, unsigned r_prime, bool slow);

// ---- classification predicates ----

enum class ExponentReading { Quotient, Gcd };  // "n/i even" read literally, or as n/gcd(n,i)

// b(G) = 2 for the dihedral-plus family, q >= 5
bool classification_predicate(std::uint32_t q, const GroupLevel& level,
                              ExponentReading reading = ExponentReading::Gcd);
// same question for a realized level (decided from its image in Z_d x Z_n)
bool classification_predicate(const Level& L);
// d(Sigma) = 2 for the dihedral-minus family
bool d_minus_predicate(std::uint32_t q, const GroupLevel& level);
bool d_minus_predicate(const Level& L);

}  // namespace saxl
