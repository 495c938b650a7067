#include "saxl/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "saxl/numtheory.hpp"
#include "saxl/saxl_graph.hpp"

namespace saxl {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

FamilyChoice FamilyChoice::parse(const std::string& s) {
  FamilyChoice f;
  auto with_m = [&](const std::string& prefix) -> bool {
    if (s.rfind(prefix, 0) != 0) return false;
    std::string rest = s.substr(prefix.size());
    if (rest.empty() || !std::all_of(rest.begin(), rest.end(), ::isdigit))
      throw Error(ErrorCode::BadParameters, "family '" + s + "' needs a subfield degree");
    f.m = static_cast<unsigned>(std::stoul(rest));
    return true;
  };
  if (s == "d-plus") f.family = Family::DihedralPlus;
  else if (s == "d-minus") f.family = Family::DihedralMinus;
  else if (s == "borel") f.family = Family::Borel;
  else if (s == "a4") f.family = Family::A4;
  else if (s == "s4") f.family = Family::S4;
  else if (s == "a5") f.family = Family::A5;
  else if (with_m("subfield:")) f.family = Family::Subfield;
  else if (with_m("pgl-subfield:")) f.family = Family::PGLSubfield;
  else throw Error(ErrorCode::BadParameters, "unknown family '" + s + "'");
  return f;
}

SubgroupSpec build_family(const Level& L, const FamilyChoice& f) {
  switch (f.family) {
    case Family::DihedralPlus: return dihedral_plus(L);
    case Family::DihedralMinus: return dihedral_minus(L);
    case Family::Borel: return borel(L);
    case Family::Subfield: return subfield(L, f.m);
    case Family::PGLSubfield: return pgl_subfield(L, f.m);
    case Family::A4:
    case Family::S4:
    case Family::A5: return exceptional(L, f.family).front();
  }
  throw Error(ErrorCode::Internal, "unhandled family");
}

std::optional<bool> predicted_base_two(const Level& L, const FamilyChoice& f, const SubgroupSpec& S, bool primitive) {
  const PGammaL& G = L.group();
  const std::uint32_t q = G.q(), p = G.field().p();
  const unsigned n = G.n();
  if (!primitive) return std::nullopt;
  switch (f.family) {
    case Family::DihedralPlus: return classification_predicate(L);
    case Family::DihedralMinus:
      if (q % 2 == 0 || q == 7 || q == 9) return std::nullopt;
      return d_minus_predicate(L);
    case Family::Borel:
    case Family::PGLSubfield: return false;
    case Family::Subfield:
      if (ipow(p, f.m) <= 2) return std::nullopt;
      if (p == 2 && n == 2 * f.m) return false;
      return true;
    case Family::A4:
    case Family::S4:
    case Family::A5: {
      // thresholds follow M0 = M cap T, so an S4 outside T counts with A4
      const std::size_t m0 = S.socle_part.size();
      return q >= (m0 == 12 ? 11u : m0 == 24 ? 17u : 29u);
    }
  }
  return std::nullopt;
}

json bound_to_json(const BoundReport& b) {
  json j;
  j["name"] = b.name;
  json params = json::object();
  for (const auto& [k, v] : b.parameters) params[k] = v;
  j["params"] = params;
  j["bound"] = to_string(b.bound);
  j["observed"] = to_string(b.observed);
  j["kind"] = b.kind == BoundKind::Upper ? "upper" : b.kind == BoundKind::Lower ? "lower" : "exact";
  j["ok"] = b.satisfied;
  if (!b.note.empty()) j["note"] = b.note;
  return j;
}

namespace {

json field_header(const FieldCtx& F) {
  json j;
  j["p"] = F.p();
  j["n"] = F.n();
  j["q"] = F.q();
  j["modulus"] = F.modulus();
  j["theta"] = F.theta().code;
  return j;
}

json base_size_json(int b) { return b == kBaseMoreThan3 ? json(">3") : json(b); }

}  // namespace

json verify_core(const Level& L, const FamilyChoice& f, bool oracle, std::optional<std::string> dot_path) {
  const PGammaL& G = L.group();
  const FieldCtx& F = G.field();
  SubgroupSpec S = build_family(L, f);
  CosetAction A = coset_action(L, S.elements);
  auto D = suborbits(A);
  const bool primitive = is_primitive(A);
  const int b = base_size(A, D);

  json r;
  r["schema_version"] = kSchemaVersion;
  r["engine_version"] = kEngineVersion;
  r["field"] = field_header(F);
  r["level"] = L.tag().name();
  r["group_order"] = L.order();
  r["family"] = f.name();
  r["family_params"] = json{{"m", f.m}};
  r["maximality_warning"] = S.maximality_warning ? json(*S.maximality_warning) : json(nullptr);
  r["primitive"] = primitive;
  r["omega_size"] = A.size();
  r["stabilizer_order"] = A.stab_order();
  r["base_size"] = base_size_json(b);

  std::map<std::pair<std::uint64_t, bool>, std::uint64_t> census;
  std::uint64_t total = 0;
  for (const auto& so : D.suborbits) {
    ++census[{so.length, so.regular}];
    total += so.length;
  }
  json cj = json::array();
  for (const auto& [k, c] : census) cj.push_back(json{{"length", k.first}, {"regular", k.second}, {"count", c}});
  r["suborbits"] = cj;
  r["suborbit_count"] = D.suborbits.size();
  r["regular_suborbits"] = D.regular_count();
  r["gamma_size"] = D.gamma.size();

  std::vector<BoundReport> checks;
  checks.push_back(make_bound("suborbit lengths sum to |Omega|", {}, Rational(A.size()), Rational(total), BoundKind::Exact));

  std::optional<bool> observed_d2;
  json bg = nullptr;
  json diam = nullptr;
  if (b == 2) {
    auto v = bg_property_check(A, D);
    bg = json{{"holds", v.holds}, {"witness", v.witness ? json(*v.witness) : json(nullptr)},
              {"checked_suborbits", v.checked_suborbits}};
    int dc = D.gamma.size() + 1 == A.size() ? 1 : (v.holds ? 2 : 3);
    diam = dc == 3 ? json(">2") : json(dc);
    observed_d2 = dc <= 2;
    const bool small = A.size() <= 5000;
    if ((oracle || small || dot_path) && A.size() <= kGraphCeiling) {
      SaxlGraph Sg = saxl_graph(A, D);
      auto dd = diameter(Sg);
      if (!dd.connected && primitive)
        throw Error(ErrorCode::Disconnected, "Saxl graph of a primitive action is disconnected");
      diam = dd.connected ? json(dd.value) : json("inf");
      bool le2 = dd.connected && dd.value <= 2;
      checks.push_back(make_bound("BFS diameter <= 2 iff Gamma meets every Gamma^g", {}, Rational(le2 ? 1 : 0),
                                  Rational(v.holds ? 1 : 0), BoundKind::Exact));
      checks.push_back(make_bound("Saxl graph regular of valency |Gamma|", {}, Rational(1),
                                  Rational(Sg.regular() && Sg.symmetric() ? 1 : 0), BoundKind::Exact));
      if (dot_path) {
        std::ofstream os(*dot_path);
        if (!os) throw Error(ErrorCode::BadParameters, "cannot write " + *dot_path);
        write_dot(Sg, A, os);
      }
    }
  } else {
    observed_d2 = false;
  }
  r["diameter"] = diam;
  r["bg_verdict"] = bg;

  const std::uint32_t q = G.q(), p = F.p();
  const unsigned n = F.n();
  if (f.family == Family::DihedralPlus && p == 2 && L.quotient_size() == 1) {
    BigInt lhs = BigInt(q + 1) * (q / 2 - 1) + 1;
    checks.push_back(make_bound("(q+1)(q/2-1)+1 = |Omega|", {{"q", q}}, Rational(lhs), Rational(A.size()),
                                BoundKind::Exact));
    checks.push_back(make_bound("no regular suborbit for even q", {{"q", q}}, Rational(0),
                                Rational(D.regular_count()), BoundKind::Exact));
  }
  if (f.family == Family::Subfield && L.quotient_size() == 1 && ipow(p, f.m) > 2) {
    checks.push_back(make_bound("|Gamma| closed form", {{"p", p}, {"m", f.m}, {"n", n}},
                                Rational(gamma_size_subfield(p, f.m, n)), Rational(D.gamma.size()),
                                BoundKind::Exact));
  }
  if ((f.family == Family::A4 || f.family == Family::S4 || f.family == Family::A5) && b == 2) {
    QHat qh = q_hat(A);
    r["q_hat"] = to_string(qh.value);
    const std::size_t m0 = S.socle_part.size();
    // the estimates are stated for M = S4 < PGL, M = S4 < T, A5 < T, S5 < PSigmaL
    const std::string lv = L.tag().name();
    const bool stated = (m0 == 12 && lv == "PGL") || (m0 == 24 && lv == "T") || (m0 == 60 && n == 1 && lv == "T") ||
                        (m0 == 60 && n == 2 && lv == "PSigmaL");
    if (stated)
      checks.push_back(make_bound("Q-hat <= closed-form estimate", {{"q", q}}, q_hat_estimate(m0, p, n), qh.value,
                                  BoundKind::Upper));
    if (qh.below_half() && observed_d2 && !*observed_d2)
      checks.push_back(make_bound("Q-hat < 1/2 forces diameter 2", {{"q", q}}, Rational(1), Rational(0),
                                  BoundKind::Exact));
  }
  if (oracle) {
    QHat qh = q_hat(A);
    for (std::size_t i = 0; i < qh.reps.size(); ++i) {
      ElementSet K = closure(G, {qh.reps[i]});
      checks.push_back(make_bound("Manning count = fixed points", {{"class", static_cast<std::int64_t>(i)}},
                                  Rational(manning_fixed_points(L, A.stabilizer(), K)), Rational(qh.fix_counts[i]),
                                  BoundKind::Exact));
    }
  }

  json cc = json::array();
  bool checks_ok = true;
  for (const auto& c : checks) {
    cc.push_back(bound_to_json(c));
    checks_ok = checks_ok && c.satisfied;
  }
  r["cross_checks"] = cc;

  auto pred = predicted_base_two(L, f, S, primitive);
  r["prediction"] = json{{"base_two_and_diameter_two", pred ? json(*pred) : json(nullptr)}};
  r["observed"] = json{{"base_two_and_diameter_two", b == 2 && observed_d2.value_or(false)}};
  std::string verdict;
  if (!checks_ok) verdict = "mismatch";
  else if (!pred) verdict = "no-prediction";
  else verdict = *pred == (b == 2 && observed_d2.value_or(false)) ? "match" : "mismatch";
  r["verdict"] = verdict;
  return r;
}

// ---------------------------------------------------------------- cache

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::string cache_key(const FieldCtx& F, const FamilyChoice& f, const GroupLevel& level, bool oracle) {
  std::ostringstream os;
  os << F.p() << "|" << F.n() << "|";
  for (auto c : F.modulus()) os << c << ",";
  os << "|" << f.name() << "|" << level.name() << "|" << kEngineVersion << "|" << oracle;
  return os.str();
}

ReportCache::ReportCache(std::optional<std::string> dir) : dir_(std::move(dir)) {}

std::string ReportCache::file_name(const std::string& key) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(key) << ".json";
  return os.str();
}

std::optional<json> ReportCache::load(const std::string& key) const {
  if (!dir_) return std::nullopt;
  std::ifstream in(fs::path(*dir_) / file_name(key));
  if (!in) return std::nullopt;
  try {
    json j = json::parse(in);
    if (j.at("key").get<std::string>() != key) return std::nullopt;
    return j.at("report");
  } catch (const std::exception&) {
    return std::nullopt;  // corrupt entry, rebuilt by the caller
  }
}

bool ReportCache::store(const std::string& key, const json& core, std::string* warning) {
  if (!dir_) return false;
  static std::atomic<unsigned> counter{0};
  std::error_code ec;
  fs::create_directories(*dir_, ec);
  fs::path final_path = fs::path(*dir_) / file_name(key);
  fs::path tmp = final_path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp);
    if (!out) {
      if (warning) *warning = "cache directory " + *dir_ + " is not writable; keeping results in memory only";
      return false;
    }
    out << json{{"key", key}, {"report", core}}.dump() << "\n";
  }
  fs::rename(tmp, final_path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    if (warning) *warning = "cache rename failed in " + *dir_;
    return false;
  }
  return true;
}

// ---------------------------------------------------------------- verify

VerifyOutcome run_verify(const VerifyOptions& opt) {
  VerifyOutcome out;
  auto start = std::chrono::steady_clock::now();
  std::uint32_t p = opt.p;
  unsigned n = opt.n;
  if (opt.q) {
    std::uint64_t pp;
    if (!prime_power(opt.q, pp, n)) throw Error(ErrorCode::NotPrime, "q = " + std::to_string(opt.q) + " is not a prime power");
    p = static_cast<std::uint32_t>(pp);
  }
  if (!p || !n) throw Error(ErrorCode::BadParameters, "give --q, or --p and --n");
  FamilyChoice f = FamilyChoice::parse(opt.family);
  GroupLevel level = GroupLevel::parse(opt.level);
  PGammaL G(make_field(p, n));
  Level L(G, level);

  std::optional<std::string> dir = opt.cache_dir;
  if (!dir)
    if (const char* env = std::getenv("SAXL_CACHE")) dir = std::string(env);
  ReportCache cache(dir);
  const std::string key = cache_key(G.field(), f, level, opt.oracle);
  json core;
  if (auto hit = opt.dot_path ? std::nullopt : cache.load(key)) {
    core = *hit;
    out.cache_hit = true;
  } else {
    core = verify_core(L, f, opt.oracle, opt.dot_path);
    std::string warning;
    if (cache.enabled() && !cache.store(key, core, &warning) && !warning.empty()) out.warnings.push_back(warning);
  }
  out.report = core;
  if (opt.timing)
    out.report["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.exit_code = core["verdict"] == "mismatch" ? 2 : 0;
  if (opt.json_path) {
    std::ofstream os(*opt.json_path);
    if (!os) throw Error(ErrorCode::BadParameters, "cannot write " + *opt.json_path);
    os << out.report.dump(2) << "\n";
  }
  return out;
}

// ---------------------------------------------------------------- survey

std::vector<GroupLevel> distinct_levels(const PGammaL& G) {
  const unsigned n = G.n();
  std::vector<GroupLevel> cand;
  cand.push_back(GroupLevel::parse("T"));
  cand.push_back(GroupLevel::parse("PGL"));
  cand.push_back(GroupLevel::parse("PSigmaL"));
  for (unsigned i = 2; i < n; ++i) cand.push_back(GroupLevel{LevelTag::Tf, i, {}});
  for (unsigned i = 1; i < n; ++i) cand.push_back(GroupLevel{LevelTag::Tdf, i, {}});
  cand.push_back(GroupLevel::parse("PGammaL"));
  std::vector<GroupLevel> out;
  std::vector<std::vector<bool>> masks;
  for (const auto& c : cand) {
    Level L(G, c);
    if (std::find(masks.begin(), masks.end(), L.quotient_mask()) != masks.end()) continue;
    masks.push_back(L.quotient_mask());
    out.push_back(c);
  }
  std::stable_sort(out.begin(), out.end(), [&](const GroupLevel& a, const GroupLevel& b) {
    return Level(G, a).quotient_size() < Level(G, b).quotient_size();
  });
  return out;
}

std::string survey_header() {
  return "q,p,n,family,level,omega,b,regular_suborbits,gamma,diameter,bg_holds,predicted,observed,status";
}

namespace {

std::vector<FamilyChoice> families_for(const std::string& name, const FieldCtx& F) {
  std::vector<FamilyChoice> out;
  const unsigned n = F.n();
  if (name == "subfield") {
    for (unsigned m = 1; m < n; ++m)
      if (n % m == 0 && ((is_prime(n / m) && (n / m) % 2 == 1) || (F.p() == 2 && n == 2 * m)))
        out.push_back({Family::Subfield, m});
  } else if (name == "pgl-subfield") {
    if (F.p() != 2 && n % 2 == 0) out.push_back({Family::PGLSubfield, n / 2});
  } else {
    out.push_back(FamilyChoice::parse(name));
  }
  return out;
}

struct Cell {
  std::uint32_t q;
  FamilyChoice f;
  GroupLevel level;
};

SurveyRow run_cell(const Cell& c) {
  SurveyRow row;
  row.q = c.q;
  row.family = c.f.name();
  row.level = c.level.name();
  std::uint64_t p;
  unsigned n;
  prime_power(c.q, p, n);
  std::ostringstream os;
  os << c.q << "," << p << "," << n << "," << row.family << "," << row.level << ",";
  try {
    PGammaL G(make_field(static_cast<std::uint32_t>(p), n));
    Level L(G, c.level);
    json r = verify_core(L, c.f, false);
    auto str = [](const json& j) { return j.is_null() ? std::string("") : j.is_string() ? j.get<std::string>() : j.dump(); };
    os << r["omega_size"].dump() << "," << str(r["base_size"]) << "," << r["regular_suborbits"].dump() << ","
       << r["gamma_size"].dump() << "," << str(r["diameter"]) << ","
       << (r["bg_verdict"].is_null() ? std::string("") : r["bg_verdict"]["holds"].dump()) << ","
       << str(r["prediction"]["base_two_and_diameter_two"]) << ","
       << r["observed"]["base_two_and_diameter_two"].dump() << "," << r["verdict"].get<std::string>();
    row.mismatch = r["verdict"] == "mismatch";
  } catch (const Error& e) {
    os << ",,,,,,,,error:" << error_name(e.code());
  }
  row.csv = os.str();
  return row;
}

}  // namespace

std::vector<SurveyRow> run_survey(const SurveyOptions& opt) {
  if (opt.families.empty()) throw Error(ErrorCode::BadParameters, "empty family list");
  if (opt.q_max > PGammaL::kMaxQ) throw Error(ErrorCode::TooLarge, "q-max above " + std::to_string(PGammaL::kMaxQ));
  for (const auto& name : opt.families)
    if (name != "subfield" && name != "pgl-subfield") FamilyChoice::parse(name);
  std::vector<Cell> cells;
  for (std::uint32_t q = std::max<std::uint32_t>(opt.q_min, 4); q <= opt.q_max; ++q) {
    std::uint64_t p;
    unsigned n;
    if (!prime_power(q, p, n)) continue;
    PGammaL G(make_field(static_cast<std::uint32_t>(p), n));
    auto levels = distinct_levels(G);
    for (const auto& name : opt.families)
      for (const auto& f : families_for(name, G.field())) {
        // families absent for this q produce no rows
        try {
          build_family(Level(G, GroupLevel{}), f);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::ConditionsNotMet || e.code() == ErrorCode::BadSubfieldDegree ||
              e.code() == ErrorCode::UnsupportedCase)
            continue;
        }
        for (const auto& lv : levels) cells.push_back({q, f, lv});
      }
  }
  std::vector<SurveyRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) rows[i] = run_cell(cells[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < std::max(1u, opt.jobs); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

// ---------------------------------------------------------------- feng sweep

std::vector<FengRow> run_feng(std::uint32_t q) {
  std::uint64_t p;
  unsigned n;
  if (!prime_power(q, p, n)) throw Error(ErrorCode::NotPrime, "q is not a prime power");
  if (p == 2) throw Error(ErrorCode::EvenCharacteristic, "feng sweep needs odd q");
  FieldPtr F = make_field(static_cast<std::uint32_t>(p), n);
  const std::int64_t bound = feng_lower_bound(q);
  std::vector<FengRow> rows;
  for (std::uint32_t t = 2; t < q; ++t) {
    FengRow r;
    r.t = t;
    r.count = feng_count(*F, F->at(t));
    r.char_sum = char_sum_cubic(*F, F->at(t));
    r.w_formula = feng_w_formula(*F, F->at(t));
    r.bound = bound;
    r.ok = r.count >= bound && Rational(r.count) == r.w_formula &&
           BigInt(r.char_sum) * r.char_sum <= 4 * BigInt(q);
    rows.push_back(r);
  }
  return rows;
}

void write_feng_csv(std::uint32_t q, const std::vector<FengRow>& rows, std::ostream& os) {
  os << "t,count,w_formula,char_sum,bound,ok\n";
  bool all = true;
  for (const auto& r : rows) {
    os << r.t << "," << r.count << "," << to_string(r.w_formula) << "," << r.char_sum << "," << r.bound << ","
       << (r.ok ? "true" : "false") << "\n";
    all = all && r.ok;
  }
  os << "# q=" << q << " rows=" << rows.size() << " all_ok=" << (all ? "true" : "false") << "\n";
}

}  // namespace saxl
