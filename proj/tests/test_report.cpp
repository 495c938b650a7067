#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include "saxl/report.hpp"

using namespace saxl;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "saxl_test_XXXXXX").string();
    path = ::mkdtemp(tmpl.data());
  }
  ~TempDir() {
    std::error_code ec;
    fs::permissions(path, fs::perms::owner_all, ec);
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

VerifyOptions opts(std::uint32_t q, const std::string& family, const std::string& level = "T") {
  VerifyOptions o;
  o.q = q;
  o.family = family;
  o.level = level;
  return o;
}

}  // namespace

TEST_CASE("family and level names parse and print") {
  for (const char* s : {"d-plus", "d-minus", "borel", "subfield:1", "pgl-subfield:2", "a4", "s4", "a5"})
    CHECK(FamilyChoice::parse(s).name() == s);
  CHECK_THROWS_AS(FamilyChoice::parse("dihedral"), Error);
  CHECK_THROWS_AS(FamilyChoice::parse("subfield:x"), Error);
  for (const char* s : {"T", "PGL", "PSigmaL", "PGammaL", "T:f^2", "T:df^1"}) CHECK(GroupLevel::parse(s).name() == s);
  CHECK_THROWS_AS(GroupLevel::parse("PSU"), Error);
}

TEST_CASE("report for PSL(2,13) on the cosets of D14") {
  auto out = run_verify(opts(13, "d-plus"));
  const json& r = out.report;
  CHECK(out.exit_code == 0);
  CHECK(r["schema_version"] == 1);
  CHECK(r["field"]["q"] == 13);
  CHECK(r["field"]["theta"] == 2);
  CHECK(r["group_order"] == 1092);
  CHECK(r["omega_size"] == 78);
  CHECK(r["stabilizer_order"] == 14);
  CHECK(r["base_size"] == 2);
  CHECK(r["suborbit_count"] == 9);
  CHECK(r["regular_suborbits"] == 3);
  CHECK(r["gamma_size"] == 42);
  CHECK(r["diameter"] == 2);
  CHECK(r["bg_verdict"]["holds"] == true);
  CHECK(r["prediction"]["base_two_and_diameter_two"] == true);
  CHECK(r["verdict"] == "match");
  CHECK_FALSE(r.contains("wall_seconds"));
  json lengths = json::array();
  for (const auto& s : r["suborbits"]) lengths.push_back({s["length"], s["regular"], s["count"]});
  CHECK(lengths == json::parse(R"([[1,false,1],[7,false,5],[14,true,3]])"));
  for (const auto& c : r["cross_checks"]) CHECK(c["ok"] == true);
}

TEST_CASE("reports without a prediction and with b > 2") {
  auto borel = run_verify(opts(13, "borel", "PGL")).report;
  CHECK(borel["base_size"] == 3);
  CHECK(borel["diameter"].is_null());
  CHECK(borel["verdict"] == "match");
  auto big = run_verify(opts(16, "borel", "PGammaL")).report;
  CHECK(big["base_size"] == ">3");
  auto seven = run_verify(opts(7, "d-minus", "PGL")).report;
  CHECK(seven["prediction"]["base_two_and_diameter_two"].is_null());
  CHECK(seven["verdict"] == "no-prediction");
}

TEST_CASE("the field can be given as p and n") {
  VerifyOptions o;
  o.p = 3;
  o.n = 3;
  o.family = "subfield:1";
  auto r = run_verify(o).report;
  CHECK(r["field"]["q"] == 27);
  CHECK(r["field"]["modulus"] == json::parse("[1,0,2,1]"));
  CHECK(r["omega_size"] == 819);
  VerifyOptions bad;
  bad.q = 12;
  bad.family = "d-plus";
  CHECK_THROWS_AS(run_verify(bad), Error);
}

TEST_CASE("identical inputs give byte-identical reports") {
  TempDir tmp;
  auto a = opts(25, "d-plus", "PSigmaL");
  a.json_path = (tmp.path / "a.json").string();
  auto b = a;
  b.json_path = (tmp.path / "b.json").string();
  run_verify(a);
  run_verify(b);
  std::string sa = slurp(*a.json_path), sb = slurp(*b.json_path);
  CHECK(!sa.empty());
  CHECK(sa == sb);
  PGammaL G(make_field(5, 2));
  Level L(G, GroupLevel::parse("PGL"));
  CHECK(verify_core(L, FamilyChoice::parse("d-minus"), true).dump() ==
        verify_core(L, FamilyChoice::parse("d-minus"), true).dump());
}

TEST_CASE("timing is reported only on request") {
  auto o = opts(11, "a5");
  o.timing = true;
  auto r = run_verify(o).report;
  REQUIRE(r.contains("wall_seconds"));
  CHECK(r["wall_seconds"].get<double>() >= 0);
}

TEST_CASE("oracle mode adds the fixed-point cross-checks") {
  auto o = opts(11, "s4", "PGL");
  o.oracle = true;
  auto r = run_verify(o).report;
  bool manning = false;
  for (const auto& c : r["cross_checks"]) {
    CHECK(c["ok"] == true);
    manning = manning || c["name"].get<std::string>().find("Manning") != std::string::npos;
  }
  CHECK(manning);
}

TEST_CASE("report cache") {
  TempDir tmp;
  auto o = opts(13, "d-minus");
  o.cache_dir = tmp.path.string();
  auto first = run_verify(o);
  CHECK_FALSE(first.cache_hit);
  auto second = run_verify(o);
  CHECK(second.cache_hit);
  CHECK(first.report.dump() == second.report.dump());

  PGammaL G(make_field(13, 1));
  std::string key = cache_key(G.field(), FamilyChoice::parse("d-minus"), GroupLevel::parse("T"), false);
  fs::path entry = tmp.path / ReportCache::file_name(key);
  REQUIRE(fs::exists(entry));
  CHECK(key.find(kEngineVersion) != std::string::npos);
  CHECK(cache_key(G.field(), FamilyChoice::parse("d-minus"), GroupLevel::parse("T"), true) != key);

  SUBCASE("a corrupt entry is ignored and rewritten") {
    std::ofstream(entry) << "{ not json";
    auto third = run_verify(o);
    CHECK_FALSE(third.cache_hit);
    CHECK(third.report.dump() == first.report.dump());
    CHECK(run_verify(o).cache_hit);
  }
  SUBCASE("an entry under another key is ignored") {
    std::ofstream(entry) << json{{"key", "other"}, {"report", json::object()}}.dump();
    CHECK_FALSE(run_verify(o).cache_hit);
  }
  SUBCASE("the environment variable names the directory") {
    auto env = opts(13, "d-minus");
    ::setenv("SAXL_CACHE", tmp.path.c_str(), 1);
    CHECK(run_verify(env).cache_hit);
    ::unsetenv("SAXL_CACHE");
  }
  SUBCASE("dot output bypasses cached reads") {
    auto d = o;
    d.dot_path = (tmp.path / "g.dot").string();
    CHECK_FALSE(run_verify(d).cache_hit);
    CHECK(slurp(*d.dot_path).rfind("graph", 0) == 0);
  }
  // no temporaries are left behind
  for (const auto& e : fs::directory_iterator(tmp.path))
    CHECK(e.path().string().find(".tmp.") == std::string::npos);
}

TEST_CASE("an unwritable cache directory gives a warning, not a failure") {
  if (::geteuid() == 0) {
    // root ignores directory permissions; point the cache below a regular file instead
    TempDir tmp;
    fs::path file = tmp.path / "plain";
    std::ofstream(file) << "x";
    auto o = opts(11, "d-plus");
    o.cache_dir = (file / "sub").string();
    auto out = run_verify(o);
    CHECK(out.exit_code == 0);
    CHECK(out.warnings.size() == 1);
  } else {
    TempDir tmp;
    fs::permissions(tmp.path, fs::perms::owner_read | fs::perms::owner_exec);
    auto o = opts(11, "d-plus");
    o.cache_dir = tmp.path.string();
    auto out = run_verify(o);
    CHECK(out.exit_code == 0);
    CHECK(out.warnings.size() == 1);
  }
}

TEST_CASE("distinct levels") {
  PGammaL G13(make_field(13, 1));
  CHECK(distinct_levels(G13).size() == 2);
  PGammaL G8(make_field(2, 3));
  CHECK(distinct_levels(G8).size() == 2);
  PGammaL G25(make_field(5, 2));
  std::vector<std::string> names;
  for (const auto& l : distinct_levels(G25)) names.push_back(l.name());
  CHECK(names == std::vector<std::string>{"T", "PGL", "PSigmaL", "T:df^1", "PGammaL"});
}

TEST_CASE("survey") {
  SurveyOptions o;
  o.q_min = 11;
  o.q_max = 16;
  o.families = {"d-plus", "subfield"};
  auto rows = run_survey(o);
  REQUIRE(!rows.empty());
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i - 1].q <= rows[i].q);
  // q = 16 has the subfield GF(4) (n = 2m) and nothing for q = 11, 13
  const std::string header = survey_header();
  const auto columns = std::count(header.begin(), header.end(), ',');
  bool sub16 = false;
  for (const auto& r : rows) {
    CHECK(r.csv.rfind(std::to_string(r.q) + ",", 0) == 0);
    CHECK(std::count(r.csv.begin(), r.csv.end(), ',') == columns);
    CHECK_FALSE(r.mismatch);
    if (r.family == "subfield:2") sub16 = sub16 || r.q == 16;
    CHECK((r.family != "subfield:2" || r.q == 16));
  }
  CHECK(sub16);
  // the worker count does not change the output
  auto threaded = o;
  threaded.jobs = 3;
  auto rows3 = run_survey(threaded);
  REQUIRE(rows3.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows3[i].csv == rows[i].csv);

  SurveyOptions empty;
  empty.q_max = 20;
  try {
    run_survey(empty);
    FAIL("expected BadParameters");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadParameters);
  }
  SurveyOptions unknown = o;
  unknown.families = {"octahedral"};
  CHECK_THROWS_AS(run_survey(unknown), Error);
}

#ifdef SAXL_CLI_PATH
namespace {

int run_cli(const std::string& args, std::string* stdout_text = nullptr) {
  TempDir tmp;
  fs::path out = tmp.path / "out.txt";
  std::string cmd = std::string(SAXL_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  if (stdout_text) *stdout_text = slurp(out);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("command-line exit codes") {
  std::string text;
  CHECK(run_cli("verify --q 13 --family d-plus", &text) == 0);
  CHECK(json::parse(text)["verdict"] == "match");
  CHECK(run_cli("verify --q 13 --family nonsense", &text) == 1);
  CHECK(json::parse(text)["error"] == "BadParameters");
  CHECK(run_cli("verify --q 12 --family d-plus", &text) == 1);
  CHECK(run_cli("verify --family d-plus") == 1);
  CHECK(run_cli("frobnicate") == 1);
  // M10 at q = 9: enumeration gives b = 2 where the classification says otherwise
  CHECK(run_cli("verify --q 9 --family d-plus --level T:df^1", &text) == 2);
  CHECK(json::parse(text)["verdict"] == "mismatch");
  CHECK(run_cli("survey --q-min 11 --q-max 13 --families d-plus", &text) == 0);
  CHECK(text.rfind(survey_header(), 0) == 0);
  CHECK(run_cli("survey --q-min 5 --q-max 9 --families \"\"") == 1);
  CHECK(run_cli("feng --q 17", &text) == 0);
  CHECK(text.find("all_ok=true") != std::string::npos);
  CHECK(run_cli("feng --q 16") == 1);
}
#endif
