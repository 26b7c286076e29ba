#include "pisot/field_io.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pisot/errors.hpp"
#include "pisot/logspace.hpp"

namespace pisot {

namespace {

using nlohmann::json;

constexpr Precision kReportPrecision = 192;

Rational rational_from_json(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw Error(ErrorCode::ParseError, "expected a rational string, got " + v.dump());
}

Integer integer_from_json(const json& v) {
  if (v.is_number_integer()) return Integer(v.get<long>());
  if (v.is_string()) {
    Rational q = parse_rational(v.get<std::string>());
    if (q.get_den() == 1) return q.get_num();
  }
  throw Error(ErrorCode::ParseError, "expected an integer coefficient, got " + v.dump());
}

std::vector<Rational> rational_vector(const json& v, const char* what) {
  if (!v.is_array()) throw Error(ErrorCode::ParseError, std::string(what) + " must be an array");
  std::vector<Rational> out;
  for (const auto& x : v) out.push_back(rational_from_json(x));
  return out;
}

const json& require_key(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorCode::ParseError, std::string("missing key \"") + key + "\"");
  return *it;
}

bool is_squarefree(long long d) {
  for (long long p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

std::string decimal(const Interval& x, int digits) { return x.to_string(digits); }

std::string complex_string(const ComplexEnclosure& z, int digits) {
  std::string re = decimal(z.real_part, digits);
  if (mpfr_zero_p(z.imag_part.lower()) && mpfr_zero_p(z.imag_part.upper())) return re;
  std::string im = decimal(z.imag_part, digits);
  if (im.front() == '-') return re + " - " + im.substr(1) + "i";
  return re + " + " + im + "i";
}

}  // namespace

FieldDescription parse_field_description(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "field file must hold a JSON object");
  FieldDescription d;
  if (auto it = j.find("name"); it != j.end() && it->is_string()) d.name = it->get<std::string>();
  const json& poly = require_key(j, "defining_polynomial");
  if (!poly.is_array()) throw Error(ErrorCode::ParseError, "defining_polynomial must be an array");
  for (const auto& c : poly) d.defining_polynomial.push_back(integer_from_json(c));
  const json& units = require_key(j, "fundamental_units");
  if (!units.is_array()) throw Error(ErrorCode::ParseError, "fundamental_units must be an array");
  for (const auto& u : units) d.fundamental_units.push_back(rational_vector(u, "a unit"));
  d.torsion_generator = rational_vector(require_key(j, "torsion_generator"), "torsion_generator");
  const json& order = require_key(j, "torsion_order");
  if (!order.is_number_integer()) throw Error(ErrorCode::ParseError, "torsion_order must be an integer");
  d.torsion_order = order.get<long long>();
  return d;
}

FieldDescription read_field_description(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_field_description(buffer.str());
}

std::string to_json(const FieldDescription& d) {
  json j;
  if (!d.name.empty()) j["name"] = d.name;
  json poly = json::array();
  for (const auto& c : d.defining_polynomial) {
    if (c.fits_slong_p()) {
      poly.push_back(c.get_si());
    } else {
      poly.push_back(to_string(c));
    }
  }
  j["defining_polynomial"] = poly;
  json units = json::array();
  for (const auto& u : d.fundamental_units) {
    json row = json::array();
    for (const auto& q : u) row.push_back(to_string(q));
    units.push_back(row);
  }
  j["fundamental_units"] = units;
  json zeta = json::array();
  for (const auto& q : d.torsion_generator) zeta.push_back(to_string(q));
  j["torsion_generator"] = zeta;
  j["torsion_order"] = d.torsion_order;
  return j.dump(2);
}

LoadedField load_field(const FieldDescription& d, const PrecisionPolicy& policy) {
  if (d.defining_polynomial.size() < 2) throw Error(ErrorCode::ParseError, "defining polynomial must have degree >= 1");
  if (d.defining_polynomial.back() != 1) throw Error(ErrorCode::ParseError, "defining polynomial must be monic");
  NumberField field(RationalPoly::from_integers(d.defining_polynomial), policy);
  UnitSystem units;
  for (const auto& u : d.fundamental_units) units.units.push_back(field.element(u));
  units.zeta = field.element(d.torsion_generator);
  units.zeta_order = d.torsion_order;
  validate_units(units, field);
  return {std::move(field), std::move(units)};
}

LoadedField parse_field(const std::string& path, const PrecisionPolicy& policy) {
  return load_field(read_field_description(path), policy);
}

FieldDescription quadratic_fundamental_unit(long long d) {
  if (d < 2 || !is_squarefree(d)) {
    throw Error(ErrorCode::NotSquarefree, std::to_string(d) + " is not a squarefree integer >= 2");
  }
  // Continued fraction of √d; the convergent before the end of the first period
  // solves x² - d·y² = ±1 with the smallest x + y√d > 1.
  const Integer D(static_cast<long>(d));
  Integer a0;
  mpz_sqrt(a0.get_mpz_t(), D.get_mpz_t());
  Integer m = 0, q = 1, a = a0;
  Integer p_prev = 1, p = a0, s_prev = 0, s = 1;
  while (a != 2 * a0) {
    m = q * a - m;
    q = (D - m * m) / q;
    a = (a0 + m) / q;
    if (a == 2 * a0) break;
    Integer p_next = a * p + p_prev, s_next = a * s + s_prev;
    p_prev = p;
    p = p_next;
    s_prev = s;
    s = s_next;
  }
  Rational x = p, y = s;
  const Integer norm = p * p - D * s * s;

  // For d ≡ 5 (mod 8) the unit of Z[√d] may be the cube of a unit (a + b√d)/2.
  if (d % 8 == 5) {
    // t = trace of the cube root solves t³ - 3·N·t = 2x.
    double guess = std::cbrt(2.0 * p.get_d());
    for (long long t = static_cast<long long>(guess) - 2; t <= static_cast<long long>(guess) + 2; ++t) {
      if (t <= 0) continue;
      Integer T(static_cast<long>(t));
      if (T * T * T - 3 * norm * T != 2 * p) continue;
      Integer disc = T * T - 4 * norm;
      if (disc % D != 0) continue;
      Integer b2 = disc / D, b;
      mpz_sqrt(b.get_mpz_t(), b2.get_mpz_t());
      if (b * b != b2) continue;
      Rational cx = Rational(T, 2), cy = Rational(b, 2);
      cx.canonicalize();
      cy.canonicalize();
      // (cx + cy√d)³ must reproduce x + y√d.
      Rational re = cx * cx * cx + 3 * cx * cy * cy * D;
      Rational im = 3 * cx * cx * cy + cy * cy * cy * D;
      if (re == x && im == y) {
        x = cx;
        y = cy;
      }
      break;
    }
  }
  FieldDescription out;
  out.name = "Q(sqrt " + std::to_string(d) + ")";
  out.defining_polynomial = {-D, Integer(0), Integer(1)};
  out.fundamental_units = {{x, y}};
  out.torsion_generator = {Rational(-1), Rational(0)};
  out.torsion_order = 2;
  return out;
}

std::size_t resolve_embedding(const std::string& spec, const NumberField& field) {
  if (spec == "largest-real") {
    if (field.r1() == 0) throw Error(ErrorCode::ParseError, "the field has no real embedding");
    return field.r1() - 1;
  }
  if (spec == "first-complex") {
    if (field.r2() == 0) throw Error(ErrorCode::ParseError, "the field has no complex embedding");
    return field.r1();
  }
  std::size_t used = 0;
  long long index = 0;
  try {
    index = std::stoll(spec, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != spec.size() || spec.empty()) throw Error(ErrorCode::ParseError, "bad embedding \"" + spec + "\"");
  if (index < 1 || static_cast<std::size_t>(index) > field.embedding_count()) {
    throw Error(ErrorCode::ParseError, "embedding index " + spec + " out of range 1.." +
                                           std::to_string(field.embedding_count()));
  }
  return static_cast<std::size_t>(index - 1);
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "findmin") return Algorithm::FindMin;
  if (name == "cutedge") return Algorithm::CutEdge;
  if (name == "findcpisot") return Algorithm::FindCPisot;
  throw Error(ErrorCode::ParseError, "unknown algorithm \"" + name + "\"");
}

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::FindMin: return "findmin";
    case Algorithm::CutEdge: return "cutedge";
    case Algorithm::FindCPisot: return "findcpisot";
  }
  return "?";
}

std::variant<Report, NoGenerator> run(const LoadedField& loaded, const RunOptions& options) {
  NumberField field = loaded.field;
  field.set_policy(options.policy);
  const std::size_t k = resolve_embedding(options.embedding, field);
  auto start = std::chrono::steady_clock::now();
  GeneratorResult g;
  switch (options.algorithm) {
    case Algorithm::FindMin: g = find_min(loaded.units, k, field); break;
    case Algorithm::CutEdge: g = cut_edge(loaded.units, k, field); break;
    case Algorithm::FindCPisot: {
      auto v = find_cpisot(loaded.units, k, field, options.epsilon);
      if (auto* none = std::get_if<NoGenerator>(&v)) return *none;
      g = std::get<GeneratorResult>(v);
      break;
    }
  }
  Report r;
  r.algorithm = to_string(options.algorithm);
  r.embedding_index = k + 1;
  r.embedding_root = complex_string(field.root(k, 64), 20);
  r.exponents = g.exponents;
  r.torsion_power = g.torsion_power;
  RationalPoly m = g.min_poly;
  for (const auto& c : m.coefficients()) r.min_poly.push_back(to_string(c));
  r.classification = to_string(g.classification);
  r.height = decimal(weil_height(g.element, field, kReportPrecision), 30);
  r.approx_value = complex_string(embed(g.element, k, field, kReportPrecision), 30);
  r.regulator = decimal(regulator(build_unit_matrix(loaded.units.units, field, kReportPrecision)), 30);
  r.precision_bits = g.precision_bits;
  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

bool verify_report(const Report& report, const LoadedField& loaded) {
  const NumberField& field = loaded.field;
  if (report.embedding_index < 1 || report.embedding_index > field.embedding_count()) return false;
  const std::size_t k = report.embedding_index - 1;
  FieldElement a = unit_from_exponents(loaded.units, report.exponents, report.torsion_power, field);
  RationalPoly m = minimal_polynomial(a, field);
  std::vector<std::string> coeffs;
  for (const auto& c : m.coefficients()) coeffs.push_back(to_string(c));
  if (coeffs != report.min_poly) return false;
  return report.classification == to_string(classify_number(a, k, field));
}

std::string to_text(const Report& r) {
  std::ostringstream out;
  std::vector<Rational> coeffs;
  for (const auto& c : r.min_poly) coeffs.push_back(parse_rational(c));
  out << "algorithm       " << r.algorithm << "\n";
  out << "embedding       " << r.embedding_index << "  (root " << r.embedding_root << ")\n";
  out << "exponents       (";
  for (std::size_t i = 0; i < r.exponents.size(); ++i) out << (i ? ", " : "") << r.exponents[i];
  out << ")\n";
  out << "torsion power   " << r.torsion_power << "\n";
  out << "min poly        " << RationalPoly(coeffs).to_string() << "\n";
  out << "classification  " << r.classification << "\n";
  out << "height          " << r.height << "\n";
  out << "value           " << r.approx_value << "\n";
  out << "regulator       " << r.regulator << "\n";
  out << "precision       " << r.precision_bits << " bits\n";
  out << "runtime         " << r.runtime_ms << " ms\n";
  return out.str();
}

std::string to_json(const Report& r) {
  json j;
  j["algorithm"] = r.algorithm;
  j["embedding_index"] = r.embedding_index;
  j["embedding_root"] = r.embedding_root;
  j["exponents"] = r.exponents;
  j["torsion_power"] = r.torsion_power;
  j["min_poly"] = r.min_poly;
  j["classification"] = r.classification;
  j["height"] = r.height;
  j["approx_value"] = r.approx_value;
  j["regulator"] = r.regulator;
  j["precision_bits"] = r.precision_bits;
  j["runtime_ms"] = r.runtime_ms;
  return j.dump();
}

Report parse_report(const std::string& json_text) {
  try {
    json j = json::parse(json_text);
    Report r;
    r.algorithm = j.at("algorithm").get<std::string>();
    r.embedding_index = j.at("embedding_index").get<std::size_t>();
    r.embedding_root = j.value("embedding_root", "");
    r.exponents = j.at("exponents").get<std::vector<long long>>();
    r.torsion_power = j.at("torsion_power").get<long long>();
    r.min_poly = j.at("min_poly").get<std::vector<std::string>>();
    r.classification = j.at("classification").get<std::string>();
    r.height = j.at("height").get<std::string>();
    r.approx_value = j.at("approx_value").get<std::string>();
    r.regulator = j.at("regulator").get<std::string>();
    r.precision_bits = j.at("precision_bits").get<Precision>();
    r.runtime_ms = j.at("runtime_ms").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad report: ") + e.what());
  }
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::NotSquarefree:
    case ErrorCode::ZeroConstantTerm:
    case ErrorCode::NotAUnit:
    case ErrorCode::DependentUnits:
    case ErrorCode::BadTorsion:
    case ErrorCode::WrongRank: return 2;
    case ErrorCode::RankZero: return kNoGeneratorExit;
    case ErrorCode::PrecisionCeiling: return 4;
    case ErrorCode::CertificateMismatch: return 5;
    default: return 1;
  }
}

}  // namespace pisot
