#include "pisot/logspace.hpp"

#include <algorithm>

#include "pisot/errors.hpp"

namespace pisot {

namespace {

constexpr Precision kHardLimit = Precision{1} << 20;

bool width_at_most(const Interval& x, Precision prec) {
  Rational w = x.width().upper_rational();
  mpq_mul_2exp(w.get_mpq_t(), w.get_mpq_t(), static_cast<mp_bitcnt_t>(prec));
  return w <= 1;
}

Interval log_entry(const FieldElement& a, std::size_t i, const NumberField& field, Precision prec) {
  for (Precision extra = 4;; extra *= 2) {
    ComplexEnclosure v = embed(a, i, field, prec + extra, Accuracy::Relative);
    Interval entry = log(v.box().modulus());
    if (!field.is_real_embedding(i)) entry = entry * 2L;
    if (width_at_most(entry, prec)) return entry;
    if (extra > kHardLimit) throw Error(ErrorCode::PrecisionCeiling, "log entry did not converge");
  }
}

bool is_algebraic_integer(const FieldElement& a, const NumberField& field) {
  return minimal_polynomial(a, field).has_integer_coefficients();
}

}  // namespace

LogVector log_embedding(const FieldElement& a, const NumberField& field, Precision prec) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroElement, "Log of zero");
  LogVector v;
  v.reserve(field.embedding_count());
  for (std::size_t i = 0; i < field.embedding_count(); ++i) v.push_back(log_entry(a, i, field, prec));
  return v;
}

UnitMatrix build_unit_matrix(const std::vector<FieldElement>& units, const NumberField& field, Precision prec) {
  const std::size_t r = field.unit_rank();
  if (units.size() != r) {
    throw Error(ErrorCode::WrongRank, "expected " + std::to_string(r) + " fundamental units, got " +
                                          std::to_string(units.size()));
  }
  for (std::size_t j = 0; j < r; ++j) {
    if (units[j].size() != field.degree()) throw Error(ErrorCode::ParseError, "unit has the wrong length");
    Rational norm = field_norm(units[j], field);
    if (abs(norm) != 1 || !is_algebraic_integer(units[j], field)) {
      throw Error(ErrorCode::NotAUnit, "unit " + std::to_string(j + 1) + " has norm " + to_string(norm));
    }
  }
  const std::size_t rows = r + 1;
  for (Precision p = prec;; p *= 2) {
    UnitMatrix m{IntervalMatrix(rows, r, p), r, p};
    for (std::size_t j = 0; j < r; ++j) {
      LogVector column = log_embedding(units[j], field, p);
      Interval sum(p);
      for (std::size_t i = 0; i < rows; ++i) {
        m.A(i, j) = column[i];
        sum += column[i];
      }
      if (!sum.contains_zero()) throw Error(ErrorCode::InternalError, "Log column does not sum to zero");
    }
    bool independent = true;
    for (std::size_t i = 0; i < rows && independent && r > 0; ++i) {
      independent = !determinant(m.A.without_row(i)).contains_zero();
    }
    if (independent) return m;
    if (p >= field.policy().ceiling) break;
  }
  throw Error(ErrorCode::DependentUnits, "a minor of the unit matrix cannot be separated from zero");
}

Interval regulator(const UnitMatrix& m) {
  if (m.rank == 0) throw Error(ErrorCode::RankZero, "regulator of a rank-0 unit group");
  return abs(determinant(m.A.without_row(m.rows() - 1)));
}

Interval weil_height(const FieldElement& a, const NumberField& field, Precision prec) {
  LogVector v = log_embedding(a, field, prec + 8);
  Interval sum(prec + 8);
  for (const auto& entry : v) sum += max(Interval(entry.precision()), entry);
  return sum / Interval::point(static_cast<long>(field.degree()), prec + 8);
}

Rational delta(std::size_t n) {
  const Precision prec = 64;
  if (n >= 4 && n % 2 == 0) {
    Interval ln = log(Interval::point(static_cast<long>(n), prec));
    Interval ratio = log(ln) / ln;
    Interval value = ratio * ratio * ratio / Interval::point(4 * static_cast<long>(n), prec);
    return value.lower_rational();
  }
  return log(Interval::from_rational(Rational(33, 25), prec)).lower_rational();
}

int log_entry_sign(const FieldElement& a, std::size_t i, const NumberField& field) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroElement, "Log of zero");
  bool exact_checked = false;
  for (Precision p = field.policy().initial;; p *= 2) {
    int s = log_entry(a, i, field, p).sign();
    if (s != 0) return s;
    if (p >= field.policy().ceiling && !exact_checked) {
      if (on_unit_circle_at(a, i, field)) return 0;
      exact_checked = true;
    }
    if (p > kHardLimit) throw Error(ErrorCode::PrecisionCeiling, "nonzero Log entry too close to zero");
  }
}

RegionTag region_classify(const FieldElement& a, std::size_t k, const NumberField& field) {
  const std::size_t count = field.embedding_count();
  std::vector<int> signs(count);
  for (std::size_t i = 0; i < count; ++i) signs[i] = log_entry_sign(a, i, field);
  if (std::all_of(signs.begin(), signs.end(), [](int s) { return s == 0; })) return {RegionKind::Zero, k, 0};
  bool others_nonpositive = true;
  std::size_t negatives = 0, negative_index = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i == k) continue;
    if (signs[i] > 0) others_nonpositive = false;
    if (signs[i] < 0) {
      ++negatives;
      negative_index = i;
    }
  }
  if (signs[k] <= 0 || !others_nonpositive) return {RegionKind::Outside, k, 0};
  if (negatives + 1 == count) return {RegionKind::InteriorQ, k, 0};
  // On l_{k,j} every coordinate other than k and j vanishes.
  if (negatives == 1) return {RegionKind::Edge, k, negative_index};
  return {RegionKind::BoundaryOther, k, 0};
}

std::string to_string(const RegionTag& tag) {
  switch (tag.kind) {
    case RegionKind::InteriorQ: return "InteriorQ(" + std::to_string(tag.k + 1) + ")";
    case RegionKind::Edge: return "Edge(" + std::to_string(tag.k + 1) + "," + std::to_string(tag.j + 1) + ")";
    case RegionKind::BoundaryOther: return "Boundary_other";
    case RegionKind::Outside: return "Outside";
    case RegionKind::Zero: return "Zero";
  }
  return "?";
}

const char* to_string(NumberClass c) {
  switch (c) {
    case NumberClass::Pisot: return "Pisot";
    case NumberClass::Salem: return "Salem";
    case NumberClass::ComplexPisot: return "ComplexPisot";
    case NumberClass::PisotOfRealSubfield: return "PisotOfRealSubfield";
    case NumberClass::Torsion: return "Torsion";
    case NumberClass::Other: return "Other";
  }
  return "?";
}

NumberClass classify_number(const FieldElement& a, std::size_t k, const NumberField& field) {
  RegionTag tag = region_classify(a, k, field);
  NumberClass claim = NumberClass::Other;
  const bool real_k = field.is_real_embedding(k);
  switch (tag.kind) {
    case RegionKind::Zero: claim = NumberClass::Torsion; break;
    case RegionKind::InteriorQ:
      if (real_k) {
        claim = NumberClass::Pisot;
      } else {
        claim = certify_real_at(a, k, field) ? NumberClass::PisotOfRealSubfield : NumberClass::ComplexPisot;
      }
      break;
    case RegionKind::Edge: claim = real_k ? NumberClass::Salem : NumberClass::Other; break;
    case RegionKind::BoundaryOther:
    case RegionKind::Outside: claim = NumberClass::Other; break;
  }
  if (claim == NumberClass::Other) return claim;

  RationalPoly m = minimal_polynomial(a, field);
  if (!m.has_integer_coefficients()) {
    throw Error(ErrorCode::CertificateMismatch, "classified element is not an algebraic integer");
  }
  const int d = m.degree();
  const int n = static_cast<int>(field.degree());
  CircleCounts c = count_roots_by_circle(m);
  bool ok = false;
  switch (claim) {
    case NumberClass::Torsion: ok = c.on == d; break;
    case NumberClass::Pisot: ok = d == n && c.outside == 1 && c.on == 0; break;
    case NumberClass::Salem: ok = d == n && c.outside == 1 && c.on == d - 2 && is_palindromic(m); break;
    case NumberClass::ComplexPisot: ok = d == n && c.outside == 2 && c.on == 0; break;
    case NumberClass::PisotOfRealSubfield: ok = 2 * d == n && c.outside == 1 && c.on == 0; break;
    case NumberClass::Other: ok = true; break;
  }
  if (!ok) {
    throw Error(ErrorCode::CertificateMismatch,
                std::string(to_string(claim)) + " from " + to_string(tag) + " but minimal polynomial " +
                    m.to_string() + " has " + std::to_string(c.inside) + " inside, " + std::to_string(c.on) +
                    " on, " + std::to_string(c.outside) + " outside the unit circle");
  }
  return claim;
}

}  // namespace pisot
