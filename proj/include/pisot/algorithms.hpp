#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "pisot/intprog.hpp"
#include "pisot/logspace.hpp"
#include "pisot/number_field.hpp"

namespace pisot {

/// Fundamental units u_1..u_r and a generator ζ of the roots of unity of order m.
struct UnitSystem {
  std::vector<FieldElement> units;
  FieldElement zeta;
  long long zeta_order = 2;
};

/// NotAUnit, DependentUnits, BadTorsion or WrongRank when the system is invalid.
UnitSystem validate_units(const UnitSystem& units, const NumberField& field);

/// ζ^t · Π u_i^{e_i}, exactly.
FieldElement unit_from_exponents(const UnitSystem& units, const IntVector& e, long long t, const NumberField& field);

struct HeightBound {
  /// Dyadic upper bound on the k-th Log coordinate of some unit in Q_k.
  Rational U;
  /// Integer exponents of such a unit (all other Log coordinates certified negative).
  IntVector witness;
};

/// RankZero when r = 0.
HeightBound height_bound(const UnitMatrix& A, std::size_t k);

struct GeneratorResult {
  std::size_t embedding = 0;
  IntVector exponents;
  long long torsion_power = 0;
  FieldElement element;
  RationalPoly min_poly;
  NumberClass classification = NumberClass::Other;
  RegionTag region;
  /// Weil height (1/n)·Σ log⁺.
  Interval height;
  /// k-th Log coordinate, the quantity minimized.
  Interval objective;
  ComplexEnclosure approx_value;
  Precision precision_bits = 0;
};

enum class NoGeneratorReason { RankZero, AllUnitsReal };

struct NoGenerator {
  NoGeneratorReason reason;
  std::string message() const;
};

/// Unit of minimal height whose Log vector lies in the closure of Q_k. k is 0-based.
GeneratorResult find_min(const UnitSystem& units, std::size_t k, const NumberField& field);

/// As find_min, but excluding the edges of Q_k, so the result is a Pisot unit
/// (complex Pisot for complex k) generating the field.
GeneratorResult cut_edge(const UnitSystem& units, std::size_t k, const NumberField& field);

/// Complex Pisot unit generator of minimal height for a complex embedding k.
std::variant<GeneratorResult, NoGenerator> find_cpisot(const UnitSystem& units, std::size_t k, const NumberField& field,
                                                       const Rational& eps = Rational(1, 1000));

/// ζ^t·a with φ_k positive (real k) or non-real (complex k, when possible); returns t.
std::pair<FieldElement, long long> normalize_torsion(const FieldElement& a, std::size_t k, const UnitSystem& units,
                                                     const NumberField& field);

/// Whether some unit generates the field.
bool generator_existence(const UnitSystem& units, const NumberField& field);

}  // namespace pisot
