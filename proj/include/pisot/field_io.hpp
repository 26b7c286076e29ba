#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "pisot/algorithms.hpp"
#include "pisot/errors.hpp"

namespace pisot {

/// On-disk description of a field and a fundamental system of units.
struct FieldDescription {
  std::string name;
  /// Ascending integer coefficients of the monic defining polynomial.
  std::vector<Integer> defining_polynomial;
  /// Power-basis coordinates of each fundamental unit.
  std::vector<std::vector<Rational>> fundamental_units;
  std::vector<Rational> torsion_generator;
  long long torsion_order = 2;
};

/// ParseError on malformed JSON, missing keys or bad coefficients.
FieldDescription parse_field_description(const std::string& json_text);
FieldDescription read_field_description(const std::string& path);
std::string to_json(const FieldDescription& d);

struct LoadedField {
  NumberField field;
  UnitSystem units;
};

/// Builds and validates the field. Squarefreeness is checked, irreducibility is not.
LoadedField load_field(const FieldDescription& d, const PrecisionPolicy& policy = {});
LoadedField parse_field(const std::string& path, const PrecisionPolicy& policy = {});

/// Fundamental unit > 1 of Q(√d) in the basis 1, √d, from the continued
/// fraction of √d. NotSquarefree unless d >= 2 is squarefree.
FieldDescription quadratic_fundamental_unit(long long d);

/// "largest-real", "first-complex" or a 1-based index into the canonical root
/// order. Returns a 0-based index; ParseError when it does not exist.
std::size_t resolve_embedding(const std::string& spec, const NumberField& field);

enum class Algorithm { FindMin, CutEdge, FindCPisot };

Algorithm parse_algorithm(const std::string& name);
const char* to_string(Algorithm a);

struct Report {
  std::string algorithm;
  std::size_t embedding_index = 0;  // 1-based
  std::string embedding_root;
  std::vector<long long> exponents;
  long long torsion_power = 0;
  std::vector<std::string> min_poly;  // ascending decimal coefficients
  std::string classification;
  std::string height;
  std::string approx_value;
  std::string regulator;
  Precision precision_bits = 0;
  double runtime_ms = 0;
};

struct RunOptions {
  Algorithm algorithm = Algorithm::CutEdge;
  std::string embedding = "largest-real";
  PrecisionPolicy policy;
  Rational epsilon = Rational(1, 1000);
};

/// Runs the chosen algorithm on a loaded field.
std::variant<Report, NoGenerator> run(const LoadedField& loaded, const RunOptions& options);

/// Re-checks a report against its field: the minimal polynomial of the reported
/// unit must match and its classification must re-certify.
bool verify_report(const Report& report, const LoadedField& loaded);

std::string to_text(const Report& r);
/// Single-line JSON record.
std::string to_json(const Report& r);
Report parse_report(const std::string& json_text);

/// Process exit code for an error: 2 parse/validation, 4 precision ceiling,
/// 5 certificate mismatch, 1 otherwise. NoGenerator maps to 3.
int exit_code(ErrorCode code);
constexpr int kNoGeneratorExit = 3;

}  // namespace pisot
