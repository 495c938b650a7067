#include <iostream>

#include "CLI11.hpp"
#include "saxl/error.hpp"
#include "saxl/report.hpp"

namespace {

int emit_error(const std::string& kind, const std::string& msg) {
  nlohmann::ordered_json j;
  j["schema_version"] = saxl::kSchemaVersion;
  j["engine_version"] = saxl::kEngineVersion;
  j["error"] = kind;
  j["message"] = msg;
  std::cout << j.dump(2) << "\n";
  std::cerr << "saxl: " << msg << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Base sizes and Saxl graphs for almost simple groups with socle PSL(2,q)"};
  app.require_subcommand(1);

  saxl::VerifyOptions vo;
  std::string dot, json_out, cache_dir;
  auto* verify = app.add_subcommand("verify", "enumerate one action and compare with the predicted verdict");
  verify->add_option("--p", vo.p, "characteristic");
  verify->add_option("--n", vo.n, "extension degree");
  verify->add_option("--q", vo.q, "field order (instead of --p/--n)");
  verify->add_option("--family", vo.family, "d-plus, d-minus, borel, subfield:m, pgl-subfield:m, a4, s4, a5")
      ->required();
  verify->add_option("--level", vo.level, "T, T:f^i, T:df^i, PGL, PSigmaL, PGammaL");
  verify->add_option("--dot", dot, "write the Saxl graph as DOT");
  verify->add_option("--json", json_out, "also write the report to a file");
  verify->add_option("--cache-dir", cache_dir, "report cache directory (default $SAXL_CACHE)");
  verify->add_flag("--oracle", vo.oracle, "run the slow cross-checks");
  verify->add_flag("--timing", vo.timing, "add wall_seconds to the report");

  saxl::SurveyOptions so;
  std::string families;
  auto* survey = app.add_subcommand("survey", "CSV over a grid of q, families and levels");
  survey->add_option("--q-min", so.q_min);
  survey->add_option("--q-max", so.q_max)->required();
  survey->add_option("--families", families, "comma list")->required();
  survey->add_option("--jobs", so.jobs)->check(CLI::PositiveNumber);

  std::uint32_t feng_q = 0;
  auto* feng = app.add_subcommand("feng", "character-count sweep over t for one odd q");
  feng->add_option("--q", feng_q)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*verify) {
      if (!dot.empty()) vo.dot_path = dot;
      if (!json_out.empty()) vo.json_path = json_out;
      if (!cache_dir.empty()) vo.cache_dir = cache_dir;
      auto out = saxl::run_verify(vo);
      for (const auto& w : out.warnings) std::cerr << "saxl: warning: " << w << "\n";
      std::cout << out.report.dump(2) << "\n";
      return out.exit_code;
    }
    if (*survey) {
      std::stringstream ss(families);
      for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) so.families.push_back(item);
      auto rows = saxl::run_survey(so);
      std::cout << saxl::survey_header() << "\n";
      bool mismatch = false;
      for (const auto& r : rows) {
        std::cout << r.csv << "\n";
        mismatch = mismatch || r.mismatch;
      }
      return mismatch ? 2 : 0;
    }
    if (*feng) {
      auto rows = saxl::run_feng(feng_q);
      saxl::write_feng_csv(feng_q, rows, std::cout);
      for (const auto& r : rows)
        if (!r.ok) return 2;
      return 0;
    }
  } catch (const saxl::Error& e) {
    return emit_error(saxl::error_name(e.code()), e.what());
  } catch (const std::exception& e) {
    return emit_error("Internal", e.what());
  }
  return 1;
}
