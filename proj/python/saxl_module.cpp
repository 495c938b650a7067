#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "saxl/report.hpp"
#include "saxl/saxl_graph.hpp"

namespace py = pybind11;

namespace {

std::string verify(std::uint32_t q, const std::string& family, const std::string& level, bool oracle,
                   std::optional<std::string> cache_dir) {
  saxl::VerifyOptions o;
  o.q = q;
  o.family = family;
  o.level = level;
  o.oracle = oracle;
  o.cache_dir = std::move(cache_dir);
  return saxl::run_verify(o).report.dump();
}

std::vector<std::string> survey(std::uint32_t q_min, std::uint32_t q_max, const std::vector<std::string>& families,
                                unsigned jobs) {
  saxl::SurveyOptions o;
  o.q_min = q_min;
  o.q_max = q_max;
  o.families = families;
  o.jobs = jobs;
  std::vector<std::string> out{saxl::survey_header()};
  for (const auto& r : saxl::run_survey(o)) out.push_back(r.csv);
  return out;
}

std::string feng(std::uint32_t q) {
  std::ostringstream os;
  saxl::write_feng_csv(q, saxl::run_feng(q), os);
  return os.str();
}

int base_size(std::uint32_t q, const std::string& family, const std::string& level) {
  saxl::PGammaL G(saxl::make_field_q(q));
  saxl::Level L(G, saxl::GroupLevel::parse(level));
  auto S = saxl::build_family(L, saxl::FamilyChoice::parse(family));
  return saxl::base_size(saxl::coset_action(L, S.elements));
}

std::vector<std::uint32_t> field_modulus(std::uint32_t q) { return saxl::make_field_q(q)->modulus(); }

}  // namespace

PYBIND11_MODULE(_saxl, m) {
  m.doc() = "base sizes and Saxl graphs for groups with socle PSL(2,q)";
  m.attr("engine_version") = saxl::kEngineVersion;

  auto err = py::register_exception<saxl::Error>(m, "SaxlError", PyExc_ValueError);
  (void)err;

  m.def("verify_json", &verify, py::arg("q"), py::arg("family"), py::arg("level") = "T", py::arg("oracle") = false,
        py::arg("cache_dir") = py::none(), py::call_guard<py::gil_scoped_release>());
  m.def("survey_lines", &survey, py::arg("q_min"), py::arg("q_max"), py::arg("families"), py::arg("jobs") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("feng_csv", &feng, py::arg("q"));
  m.def("base_size", &base_size, py::arg("q"), py::arg("family"), py::arg("level") = "T");
  m.def("field_modulus", &field_modulus, py::arg("q"));
  m.def("feng_lower_bound", &saxl::feng_lower_bound, py::arg("q"));
}
