#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pisot/errors.hpp"
#include "pisot/field_io.hpp"
#include "pisot/intprog.hpp"
#include "pisot/logspace.hpp"

namespace py = pybind11;

namespace {

pisot::RunOptions make_options(const std::string& algorithm, const std::string& embedding, pisot::Precision precision,
                               pisot::Precision ceiling, const std::string& epsilon) {
  pisot::RunOptions o;
  o.algorithm = pisot::parse_algorithm(algorithm);
  o.embedding = embedding;
  o.policy = {precision, std::max(precision, ceiling)};
  o.epsilon = pisot::parse_rational(epsilon);
  return o;
}

// Report as a JSON string, or None when no generator exists.
py::object run_field(const std::string& field_json, const std::string& algorithm, const std::string& embedding,
                     pisot::Precision precision, pisot::Precision ceiling, const std::string& epsilon) {
  pisot::RunOptions options = make_options(algorithm, embedding, precision, ceiling, epsilon);
  std::variant<pisot::Report, pisot::NoGenerator> outcome;
  {
    py::gil_scoped_release release;
    pisot::LoadedField loaded = pisot::load_field(pisot::parse_field_description(field_json), options.policy);
    outcome = pisot::run(loaded, options);
  }
  if (std::holds_alternative<pisot::NoGenerator>(outcome)) return py::none();
  return py::str(pisot::to_json(std::get<pisot::Report>(outcome)));
}

std::string no_generator_reason(const std::string& field_json, const std::string& embedding) {
  pisot::LoadedField loaded = pisot::load_field(pisot::parse_field_description(field_json));
  auto k = pisot::resolve_embedding(embedding, loaded.field);
  auto v = pisot::find_cpisot(loaded.units, k, loaded.field);
  if (auto* none = std::get_if<pisot::NoGenerator>(&v)) return none->message();
  return "";
}

bool verify(const std::string& field_json, const std::string& report_json) {
  pisot::LoadedField loaded = pisot::load_field(pisot::parse_field_description(field_json));
  return pisot::verify_report(pisot::parse_report(report_json), loaded);
}

std::vector<std::vector<pisot::Rational>> rational_matrix(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<pisot::Rational>> out;
  for (const auto& row : rows) {
    out.emplace_back();
    for (const auto& s : row) out.back().push_back(pisot::parse_rational(s));
  }
  return out;
}

// Minimizers of c·x over B·x <= b with x integral.
std::vector<std::vector<long long>> solve_intprog(const std::vector<std::vector<std::string>>& B,
                                                  const std::vector<std::string>& b, const std::vector<std::string>& c,
                                                  const std::string& eps) {
  auto one_row = [](const std::vector<std::string>& v) { return rational_matrix({v}).front(); };
  pisot::IPProblem p = pisot::IPProblem::from_rationals(rational_matrix(B), one_row(b), one_row(c),
                                                        pisot::parse_rational(eps));
  return pisot::intprog(p).solutions;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Minimal Pisot, Salem and complex Pisot unit generators of number fields";

  // Messages start with the error code name, e.g. "ParseError: ...".
  py::register_exception<pisot::Error>(m, "PisotError");

  m.def("run", &run_field, py::arg("field_json"), py::arg("algorithm") = "cutedge",
        py::arg("embedding") = "largest-real", py::arg("precision") = 128, py::arg("ceiling") = 8192,
        py::arg("epsilon") = "1/1000");
  m.def("no_generator_reason", &no_generator_reason, py::arg("field_json"), py::arg("embedding") = "first-complex");
  m.def("verify", &verify, py::arg("field_json"), py::arg("report_json"));
  m.def("quadratic_field", [](long long d) { return pisot::to_json(pisot::quadratic_fundamental_unit(d)); },
        py::arg("d"));
  m.def("intprog", &solve_intprog, py::arg("B"), py::arg("b"), py::arg("c"), py::arg("eps") = "0");
  m.def("delta", [](std::size_t n) { return pisot::to_string(pisot::delta(n)); }, py::arg("n"));
  m.def("exit_code", [](const std::string& name) {
    for (int i = 0; i <= static_cast<int>(pisot::ErrorCode::PrecisionCeiling); ++i) {
      auto code = static_cast<pisot::ErrorCode>(i);
      if (name == pisot::error_code_name(code)) return pisot::exit_code(code);
    }
    return 1;
  });
}
