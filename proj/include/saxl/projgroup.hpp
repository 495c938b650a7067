#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "saxl/gf.hpp"

namespace saxl {

struct ProjMatrix {
  FieldElement a, b, c, d;
  friend bool operator==(const ProjMatrix&, const ProjMatrix&) = default;
};

// x -> (x A)^(sigma^e) on row vectors; points are acted on the right.
struct SemilinearElement {
  ProjMatrix mat;
  std::uint32_t e = 0;
  friend bool operator==(const SemilinearElement&, const SemilinearElement&) = default;
};
using Elem = SemilinearElement;

struct Signature {
  unsigned det_class = 0;  // 0 square, 1 nonsquare
  unsigned e = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

enum class TraceClass { InvolutionInPSL, Order3Class, Generic };

// PG(1,q): field codes 0..q-1, and q stands for infinity.
using Point = std::uint32_t;

// Arithmetic in PGammaL(2,q) over a fixed field.
class PGammaL {
 public:
  static constexpr std::uint32_t kMaxQ = 1u << 12;

  explicit PGammaL(FieldPtr F);

  const FieldCtx& field() const { return *F_; }
  FieldPtr field_ptr() const { return F_; }
  std::uint32_t q() const { return F_->q(); }
  unsigned n() const { return F_->n(); }
  unsigned d() const { return F_->p() == 2 ? 1 : 2; }
  Point infinity() const { return F_->q(); }

  // |PSL(2,q)|
  std::uint64_t order_T() const;

  Elem identity() const { return {{F_->one(), {0}, {0}, F_->one()}, 0}; }
  // normalizes; throws NotSubgroup on a singular matrix
  Elem make(FieldElement a, FieldElement b, FieldElement c, FieldElement d, unsigned e = 0) const;
  Elem frob() const { return {identity().mat, n() > 1 ? 1u : 0u}; }
  Elem delta() const;  // diag(1, theta)

  Elem compose(const Elem& g, const Elem& h) const {
    const FieldCtx& F = *F_;
    ProjMatrix B = g.e ? twist(h.mat, n() - g.e) : h.mat;
    const ProjMatrix& A = g.mat;
    ProjMatrix C{F.add(F.mul(A.a, B.a), F.mul(A.b, B.c)), F.add(F.mul(A.a, B.b), F.mul(A.b, B.d)),
                 F.add(F.mul(A.c, B.a), F.mul(A.d, B.c)), F.add(F.mul(A.c, B.b), F.mul(A.d, B.d))};
    std::uint32_t e = g.e + h.e;
    if (e >= n()) e -= n();
    return {normalize(C), e};
  }
  Elem inverse(const Elem& g) const;
  Elem power(const Elem& g, std::int64_t k) const;
  Elem conjugate(const Elem& x, const Elem& g) const {  // g^-1 x g
    return compose(compose(inverse(g), x), g);
  }
  std::uint64_t order(const Elem& g) const;
  // order if it is at most cap, else 0
  std::uint64_t order_upto(const Elem& g, std::uint64_t cap) const;

  // Dense enumeration key; ascending key order is the fixed element order.
  std::uint64_t key(const Elem& g) const {
    const std::uint64_t q = F_->q();
    std::uint64_t mk = g.mat.a.code ? (std::uint64_t(g.mat.b.code) * q + g.mat.c.code) * q + g.mat.d.code
                                    : q * q * q + std::uint64_t(g.mat.c.code) * q + g.mat.d.code;
    return std::uint64_t(g.e) * mat_space_ + mk;
  }
  Elem from_key(std::uint64_t k) const;
  std::uint64_t key_space() const { return mat_space_ * n(); }

  Signature signature(const Elem& g) const;
  FieldElement det(const ProjMatrix& m) const;
  TraceClass trace_class(const ProjMatrix& m) const;
  bool is_psl(const Elem& g) const { return g.e == 0 && signature(g).det_class == 0; }

  Point apply(Point x, const Elem& g) const;
  ProjMatrix twist(const ProjMatrix& m, unsigned k) const {  // entries to the p^k
    const auto& t = frob_[k];
    return {{t[m.a.code]}, {t[m.b.code]}, {t[m.c.code]}, {t[m.d.code]}};
  }

  // every normalized matrix, ascending key order
  void for_each_matrix(const std::function<void(const ProjMatrix&)>& fn) const;

 private:
  ProjMatrix normalize(const ProjMatrix& m) const {
    const FieldCtx& F = *F_;
    FieldElement lead = m.a.code ? m.a : m.b;
    if (lead.code == 1) return m;
    FieldElement s = F.inv(lead);
    return {F.mul(m.a, s), F.mul(m.b, s), F.mul(m.c, s), F.mul(m.d, s)};
  }

  FieldPtr F_;
  std::uint64_t mat_space_;
  std::vector<std::vector<std::uint32_t>> frob_;
};

std::string to_string(const PGammaL& G, const Elem& g);

// ---- the lattice of groups between T = PSL(2,q) and PGammaL(2,q) ----

enum class LevelTag { T, Tf, Tdf, PGL, PSigmaL, PGammaL, Custom };

struct GroupLevel {
  LevelTag tag = LevelTag::T;
  unsigned i = 0;                                  // for Tf / Tdf
  std::vector<Signature> custom;                   // generators of G/T for Custom
  static GroupLevel parse(const std::string& s);  // "T", "T:f^i", "T:df^i", "PGL", "PSigmaL", "PGammaL"
  std::string name() const;
};

// Realized level: its image in Z_d x Z_n and a generating set.
class Level {
 public:
  Level(const PGammaL& G, GroupLevel tag);
  const GroupLevel& tag() const { return tag_; }
  const PGammaL& group() const { return *G_; }
  bool contains(const Elem& g) const { return contains(G_->signature(g)); }
  bool contains(Signature s) const { return mask_[s.det_class * G_->n() + s.e]; }
  std::uint64_t order() const { return G_->order_T() * quotient_size_; }
  std::uint64_t quotient_size() const { return quotient_size_; }
  const std::vector<Elem>& generators() const { return gens_; }
  const std::vector<bool>& quotient_mask() const { return mask_; }
  bool same_group(const Level& o) const { return mask_ == o.mask_; }
  bool contains_level(const Level& o) const;
  // ascending key order
  void for_each(const std::function<void(const Elem&)>& fn) const;
  std::vector<Elem> elements() const;

 private:
  const PGammaL* G_;
  GroupLevel tag_;
  std::vector<bool> mask_;
  std::uint64_t quotient_size_ = 1;
  std::vector<Elem> gens_;
};

std::vector<Elem> psl_generators(const PGammaL& G);

// ---- subgroups as explicit element sets ----

class ElementSet {
 public:
  ElementSet() = default;
  ElementSet(const PGammaL& G, std::vector<Elem> elems);  // sorts by key, dedups
  const std::vector<Elem>& elements() const { return elems_; }
  const std::vector<std::uint64_t>& keys() const { return keys_; }
  std::size_t size() const { return elems_.size(); }
  bool contains(std::uint64_t key) const { return lookup_.count(key) != 0; }
  bool contains(const PGammaL& G, const Elem& g) const { return contains(G.key(g)); }
  friend bool operator==(const ElementSet& a, const ElementSet& b) { return a.keys_ == b.keys_; }

 private:
  std::vector<Elem> elems_;
  std::vector<std::uint64_t> keys_;
  std::unordered_set<std::uint64_t> lookup_;
};

ElementSet closure(const PGammaL& G, const std::vector<Elem>& gens, std::uint64_t cap = 20000000);
std::vector<Elem> generating_set(const PGammaL& G, const ElementSet& H);
ElementSet conjugate_set(const PGammaL& G, const ElementSet& K, const Elem& g);
bool is_subset(const ElementSet& A, const ElementSet& B);

enum class Family { DihedralPlus, DihedralMinus, Borel, Subfield, PGLSubfield, A4, S4, A5 };
std::string family_name(Family f, unsigned m = 0);

struct SubgroupSpec {
  Family family = Family::DihedralPlus;
  unsigned m = 0;
  GroupLevel level;
  std::vector<Elem> generators;  // generate `elements`
  ElementSet elements;           // M
  ElementSet socle_part;         // M0 = M cap T
  std::optional<std::string> maximality_warning;
  std::uint64_t order() const { return elements.size(); }
};

// Normalizer / centralizer of K inside a level (scan of every element; cached).
ElementSet normalizer(const Level& L, const ElementSet& K);
ElementSet centralizer(const Level& L, const ElementSet& K);
void clear_normalizer_cache();

// The conjugates K^g (g in L) that lie in H, partitioned into H-classes.
std::vector<ElementSet> subgroup_conjugacy_classes(const Level& L, const ElementSet& K, const ElementSet& H);
// H-classes of subgroups from `subs`.
std::vector<std::vector<std::size_t>> partition_by_conjugacy(const PGammaL& G, const ElementSet& H,
                                                             const std::vector<ElementSet>& subs);

// Explicit elements of the dihedral-plus normalizer construction for odd q.
struct DihedralPlusData {
  Elem s, a, b, c, t, w;
  FieldElement theta2;  // element of 2-power order with alpha^2 = theta2
  int case_id = 0;      // 1: p=3 mod 4, n odd; 2: p=1 mod 4; 3: p=3 mod 4, n even
};
DihedralPlusData dihedral_plus_data(const PGammaL& G);

SubgroupSpec dihedral_plus(const Level& L);
SubgroupSpec dihedral_minus(const Level& L);
SubgroupSpec borel(const Level& L);
SubgroupSpec subfield(const Level& L, unsigned m);
SubgroupSpec pgl_subfield(const Level& L, unsigned m);
std::vector<SubgroupSpec> exceptional(const Level& L, Family type);

// Stabilizer in L of the 2-subset {u, w} of PG(1,q).
ElementSet pair_stabilizer(const Level& L, Point u, Point w);

}  // namespace saxl
