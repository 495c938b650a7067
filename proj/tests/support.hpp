#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>

#include "saxl/action.hpp"
#include "saxl/formulas.hpp"
#include "saxl/projgroup.hpp"
#include "saxl/report.hpp"
#include "saxl/saxl_graph.hpp"

namespace saxl::testing {

// One enumerated action with everything the checks below look at.
struct Case {
  std::unique_ptr<PGammaL> G;
  std::unique_ptr<Level> L;
  SubgroupSpec S;
  std::unique_ptr<CosetAction> A;
  SuborbitDecomposition D;
  int b = 0;
  std::optional<int> bfs_diameter;  // set when b = 2 and the graph was built
  double seconds = 0;

  std::size_t omega() const { return A->size(); }
  std::uint64_t regular() const { return D.regular_count(); }
  std::size_t gamma() const { return D.gamma.size(); }
};

inline Case run_case(std::uint32_t q, const std::string& level, const std::string& family, bool graph = true) {
  auto start = std::chrono::steady_clock::now();
  Case c;
  c.G = std::make_unique<PGammaL>(make_field_q(q));
  c.L = std::make_unique<Level>(*c.G, GroupLevel::parse(level));
  c.S = build_family(*c.L, FamilyChoice::parse(family));
  c.A = std::make_unique<CosetAction>(coset_action(*c.L, c.S.elements));
  c.D = suborbits(*c.A);
  c.b = base_size(*c.A, c.D);
  if (graph && c.b == 2) {
    auto d = diameter(saxl_graph(*c.A, c.D));
    c.bfs_diameter = d.connected ? d.value : -1;
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c;
}

// b by brute force: the smallest k such that some k points have trivial pointwise stabilizer.
inline int brute_base_size(const CosetAction& A, int cap = 3) {
  const auto& M = A.stabilizer().elements();
  if (M.size() == 1) return 1;
  const std::size_t N = A.size();
  auto only_identity = [&](const std::vector<std::uint32_t>& pts) {
    std::size_t fixing = 0;
    for (const auto& g : M) {
      bool all = true;
      for (auto x : pts) all = all && A.fixes(x, g);
      if (all) ++fixing;
    }
    return fixing == 1;
  };
  for (std::uint32_t x = 0; x < N; ++x)
    if (only_identity({A.base_point(), x})) return 2;
  if (cap < 3) return cap + 1;
  for (std::uint32_t x = 0; x < N; ++x)
    for (std::uint32_t y = x + 1; y < N; ++y)
      if (only_identity({A.base_point(), x, y})) return 3;
  return 4;
}

}  // namespace saxl::testing
