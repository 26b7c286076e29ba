#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pisot/interval.hpp"
#include "pisot/number_field.hpp"

namespace pisot {

/// Entry i encloses log|σ_i(a)| for real embeddings and 2·log|τ(a)| for complex ones.
using LogVector = IntervalVector;

/// Every entry has width <= 2^-prec. ZeroElement for a = 0.
LogVector log_embedding(const FieldElement& a, const NumberField& field, Precision prec);

/// The (r+1) × r matrix whose column j is the Log vector of unit j.
struct UnitMatrix {
  IntervalMatrix A;
  std::size_t rank = 0;
  Precision precision = 0;

  std::size_t rows() const { return A.rows(); }
  /// Row i as a linear form on exponent vectors.
  IntervalVector row(std::size_t i) const { return A.row(i); }
};

/// Checks norms (NotAUnit), count (WrongRank) and independence (DependentUnits),
/// escalating precision up to the field's ceiling before declaring dependence.
UnitMatrix build_unit_matrix(const std::vector<FieldElement>& units, const NumberField& field, Precision prec);

/// |det| of A with its last row removed. RankZero when r = 0.
Interval regulator(const UnitMatrix& m);

/// (1/n) Σ log⁺ of the Log entries.
Interval weil_height(const FieldElement& a, const NumberField& field, Precision prec);

/// Dyadic lower bound on n·h(α) for non-torsion α of degree n.
Rational delta(std::size_t n);

/// Sign of Log entry i of a nonzero a: interval escalation, with an exact
/// unit-circle test once the ceiling is reached.
int log_entry_sign(const FieldElement& a, std::size_t i, const NumberField& field);

enum class RegionKind { InteriorQ, Edge, BoundaryOther, Outside, Zero };

struct RegionTag {
  RegionKind kind = RegionKind::Outside;
  std::size_t k = 0;
  /// For Edge tags, the one negative coordinate besides k (the rest vanish).
  std::size_t j = 0;

  friend bool operator==(const RegionTag&, const RegionTag&) = default;
};

std::string to_string(const RegionTag& tag);

/// Position of Log(a) relative to Q_k: all other coordinates negative (InteriorQ),
/// on the half-line l_{k,j} where only coordinates k and j are nonzero (Edge),
/// or on another part of the boundary (BoundaryOther).
RegionTag region_classify(const FieldElement& a, std::size_t k, const NumberField& field);

enum class NumberClass { Pisot, Salem, ComplexPisot, PisotOfRealSubfield, Torsion, Other };

const char* to_string(NumberClass c);

/// Classification of a unit from its region, cross-checked against the exact
/// root counts of its minimal polynomial. CertificateMismatch on disagreement.
NumberClass classify_number(const FieldElement& a, std::size_t k, const NumberField& field);

}  // namespace pisot
