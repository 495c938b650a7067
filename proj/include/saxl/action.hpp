#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "saxl/projgroup.hpp"

namespace saxl {

enum class ActionModel { Coset, ProjectiveLine, TwoSubset };

// A transitive action of a level L on Omega. Point i carries a representative
// rep(i) in the ambient group with alpha^rep(i) = i.
class CosetAction {
 public:
  static constexpr std::uint64_t kPointCeiling = 1000000;

  const PGammaL& group() const { return level_.group(); }
  const Level& level() const { return level_; }
  ActionModel model() const { return model_; }
  std::size_t size() const { return reps_.size(); }
  std::uint32_t base_point() const { return base_; }
  const std::vector<Elem>& generators() const { return gens_; }
  const std::vector<std::vector<std::uint32_t>>& perms() const { return perms_; }
  std::uint64_t group_order() const { return level_.order(); }
  std::uint64_t stab_order() const { return stab_.size(); }
  const ElementSet& stabilizer() const { return stab_; }
  const Elem& rep(std::uint32_t i) const { return reps_[i]; }

  std::uint32_t image(std::uint32_t i, const Elem& g) const;
  std::vector<std::uint32_t> perm_of(const Elem& g) const;
  bool fixes(std::uint32_t i, const Elem& g) const;
  std::string label(std::uint32_t i) const;

  friend CosetAction coset_action(const Level& L, const ElementSet& M, std::uint64_t ceiling);
  friend CosetAction projective_line_action(const Level& L);
  friend CosetAction two_subset_action(const Level& L);
  friend CosetAction restrict_action(const CosetAction& A, const Level& H);

 private:
  explicit CosetAction(const Level& L) : level_(L) {}
  std::uint64_t canon_key(const Elem& x, Elem* rep) const;
  void build_perms();

  Level level_;
  ActionModel model_ = ActionModel::Coset;
  ElementSet point_stab_;  // stabilizer of alpha in the ambient group the points were built from
  ElementSet stab_;        // stabilizer of alpha in the acting level
  std::vector<Elem> reps_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::vector<Elem> gens_;
  std::vector<std::vector<std::uint32_t>> perms_;
  std::uint32_t base_ = 0;
  std::vector<std::pair<Point, Point>> pairs_;  // TwoSubset labels
};

CosetAction coset_action(const Level& L, const ElementSet& M,
                         std::uint64_t ceiling = CosetAction::kPointCeiling);
CosetAction projective_line_action(const Level& L);
CosetAction two_subset_action(const Level& L);
// Same points, acted on by the sub-level H (must stay transitive).
CosetAction restrict_action(const CosetAction& A, const Level& H);

struct Suborbit {
  std::vector<std::uint32_t> points;  // ascending
  std::uint64_t length = 0;
  std::uint64_t stab_order = 0;
  bool regular = false;
};

struct SuborbitDecomposition {
  std::vector<Suborbit> suborbits;  // the trivial suborbit first, then by least point
  std::vector<std::uint32_t> gamma;  // union of regular suborbits, ascending
  std::vector<std::uint32_t> orbit_of;
  std::uint64_t regular_count() const;
  std::vector<std::uint64_t> lengths() const;  // ascending multiset
};

// orbits of the subgroup generated by gens on the points of A
std::vector<std::vector<std::uint32_t>> orbits_of(const CosetAction& A, const std::vector<Elem>& gens);
SuborbitDecomposition suborbits(const CosetAction& A);

ElementSet point_stabilizer(const CosetAction& A, std::uint32_t beta);
std::vector<std::uint32_t> fixed_points(const CosetAction& A, const std::vector<Elem>& K);
// faithful iff no nonidentity element of the stabilizer fixes every point
bool is_faithful(const CosetAction& A);
bool is_transitive(const CosetAction& A);
// Primitive iff the smallest block holding alpha and any other point is all of Omega.
bool is_primitive(const CosetAction& A);

// BFS tree over the generator permutations, rooted at alpha.
struct SchreierTree {
  std::vector<std::int32_t> parent;  // -1 at the root
  std::vector<std::int32_t> via;     // generator index used to reach the point
  std::vector<std::uint32_t> bfs_order;
};
SchreierTree schreier_tree(const CosetAction& A);
// S^t for the tree word t with alpha^t = target.
std::vector<std::uint32_t> translate(const CosetAction& A, const SchreierTree& T,
                                     const std::vector<std::uint32_t>& S, std::uint32_t target);

// Bijection phi with phi(alpha^g) = beta^g, if A and B are isomorphic G-sets
// through their representatives.
std::optional<std::vector<std::uint32_t>> g_set_isomorphism(const CosetAction& A, const CosetAction& B);

}  // namespace saxl
