#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "saxl/formulas.hpp"
#include "saxl/projgroup.hpp"

namespace saxl {

inline constexpr const char* kEngineVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

// "d-plus", "d-minus", "borel", "subfield:m", "pgl-subfield:m", "a4", "s4", "a5"
struct FamilyChoice {
  Family family = Family::DihedralPlus;
  unsigned m = 0;
  static FamilyChoice parse(const std::string& s);
  std::string name() const { return family_name(family, m); }
};

SubgroupSpec build_family(const Level& L, const FamilyChoice& f);

// paper-predicted b(G) = 2; nullopt when no prediction applies (non-maximal M, q out of range)
std::optional<bool> predicted_base_two(const Level& L, const FamilyChoice& f, const SubgroupSpec& S, bool primitive);

struct VerifyOptions {
  std::uint32_t p = 0;
  unsigned n = 0;
  std::uint32_t q = 0;
  std::string family;
  std::string level = "T";
  std::optional<std::string> dot_path;
  std::optional<std::string> json_path;
  std::optional<std::string> cache_dir;
  bool oracle = false;
  bool timing = false;
};

struct VerifyOutcome {
  nlohmann::ordered_json report;
  int exit_code = 0;  // 0 match, 1 usage/config, 2 mismatch
  bool cache_hit = false;
  std::vector<std::string> warnings;
};

nlohmann::ordered_json bound_to_json(const BoundReport& b);

// Everything except wall time; identical inputs give identical output.
nlohmann::ordered_json verify_core(const Level& L, const FamilyChoice& f, bool oracle,
                                   std::optional<std::string> dot_path = std::nullopt);
VerifyOutcome run_verify(const VerifyOptions& opt);

// content-addressed store of report cores
class ReportCache {
 public:
  explicit ReportCache(std::optional<std::string> dir);
  std::optional<nlohmann::ordered_json> load(const std::string& key) const;
  // false (with a warning) when the directory is not writable
  bool store(const std::string& key, const nlohmann::ordered_json& core, std::string* warning);
  bool enabled() const { return dir_.has_value(); }
  static std::string file_name(const std::string& key);

 private:
  std::optional<std::string> dir_;
};
std::string cache_key(const FieldCtx& F, const FamilyChoice& f, const GroupLevel& level, bool oracle);

struct SurveyOptions {
  std::uint32_t q_min = 5;
  std::uint32_t q_max = 0;
  std::vector<std::string> families;
  unsigned jobs = 1;
};
struct SurveyRow {
  std::uint32_t q = 0;
  std::string family, level;
  std::string csv;
  bool mismatch = false;
};
// rows in (q, family, level) order
std::vector<SurveyRow> run_survey(const SurveyOptions& opt);
std::string survey_header();

// distinct levels of PGammaL(2,q), smallest first, one name per group
std::vector<GroupLevel> distinct_levels(const PGammaL& G);

struct FengRow {
  std::uint32_t t = 0;
  std::int64_t count = 0, char_sum = 0, bound = 0;
  Rational w_formula;
  bool ok = false;
};
std::vector<FengRow> run_feng(std::uint32_t q);
void write_feng_csv(std::uint32_t q, const std::vector<FengRow>& rows, std::ostream& os);

}  // namespace saxl
