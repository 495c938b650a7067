#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "saxl/action.hpp"

namespace saxl {

// Base size; kBaseMoreThan3 stands for "> 3".
constexpr int kBaseMoreThan3 = 4;
int base_size(const CosetAction& A);
int base_size(const CosetAction& A, const SuborbitDecomposition& D);

class SaxlGraph {
 public:
  std::size_t n_vertices() const { return n_; }
  bool adjacent(std::uint32_t u, std::uint32_t v) const { return (rows_[u * words_ + v / 64] >> (v % 64)) & 1; }
  std::vector<std::uint32_t> neighbors(std::uint32_t u) const;
  std::size_t degree(std::uint32_t u) const;
  const std::vector<std::uint32_t>& gamma() const { return gamma_; }
  std::uint32_t alpha() const { return alpha_; }
  bool is_frobenius() const { return gamma_.size() + 1 == n_; }
  int base_size() const { return 2; }

  // BFS eccentricity; -1 when some vertex is unreachable
  int eccentricity(std::uint32_t v) const;
  bool symmetric() const;
  bool loop_free() const;
  bool regular() const;

  friend SaxlGraph saxl_graph(const CosetAction& A, const SuborbitDecomposition& D);

 private:
  std::size_t n_ = 0, words_ = 0;
  std::uint32_t alpha_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint32_t> gamma_;
};

constexpr std::size_t kGraphCeiling = 20000;

SaxlGraph saxl_graph(const CosetAction& A, const SuborbitDecomposition& D);
SaxlGraph saxl_graph(const CosetAction& A);

struct Diameter {
  int value = -1;  // -1 for infinity
  bool connected = false;
  std::vector<std::uint32_t> spot_checked;
};
// BFS from alpha plus three seeded spot checks; throws Internal if they disagree.
Diameter diameter(const SaxlGraph& S, unsigned seed = 12345);

struct BgVerdict {
  bool holds = true;
  std::optional<std::uint32_t> witness;  // least point beta with Gamma cap Gamma^g empty
  std::uint64_t checked_suborbits = 0;
};
// Gamma cap Gamma^g != {} for every g with alpha^g outside Gamma and alpha.
BgVerdict bg_property_check(const CosetAction& A, const SuborbitDecomposition& D);
BgVerdict bg_property_check(const CosetAction& A);

// Saxl diameter from the suborbit data alone: 1 (Frobenius), 2 (property holds), 3 meaning ">2".
// Returns 0 when b != 2.
int diameter_class(const CosetAction& A, const SuborbitDecomposition& D);

struct InheritanceResult {
  bool gamma_contained = false;
  bool diameter_inherited = false;
  bool ok() const { return gamma_contained && diameter_inherited; }
};
InheritanceResult subgroup_inheritance_check(const CosetAction& AG, const CosetAction& AG1);

// Every regular T-suborbit pairs with another regular T-suborbit into one PGL-suborbit.
bool merge_check(const CosetAction& AT, const CosetAction& APGL, const SubgroupSpec& family);

void write_dot(const SaxlGraph& S, const CosetAction& A, std::ostream& os);

}  // namespace saxl
