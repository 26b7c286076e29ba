#include "pisot/number_field.hpp"

#include <optional>
#include <sstream>
#include <utility>

#include "pisot/errors.hpp"

namespace pisot {

namespace {

constexpr Precision kEmbedExtraLimit = Precision{1} << 22;
constexpr Precision kMatchLimit = Precision{1} << 18;

// width(x) <= 2^-prec * scale, with scale taken at its lower bound.
bool narrow_enough(const Interval& x, Precision prec, const Interval& scale) {
  Rational w = x.width().upper_rational();
  mpq_mul_2exp(w.get_mpq_t(), w.get_mpq_t(), static_cast<mp_bitcnt_t>(prec));
  return w <= scale.lower_rational();
}

// Solves sum_i c_i * columns[i] = rhs for linearly independent columns, or
// returns nothing when rhs is outside their span.
std::optional<std::vector<Rational>> solve_in_span(const std::vector<std::vector<Rational>>& columns,
                                                   const std::vector<Rational>& rhs) {
  const std::size_t rows = rhs.size();
  const std::size_t cols = columns.size();
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = columns[j][i];
    m[i][cols] = rhs[i];
  }
  std::vector<std::size_t> pivot_row(cols);
  std::size_t row = 0;
  for (std::size_t j = 0; j < cols; ++j) {
    std::size_t p = row;
    while (p < rows && m[p][j] == 0) ++p;
    if (p == rows) throw Error(ErrorCode::InternalError, "power basis columns are dependent");
    std::swap(m[p], m[row]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || m[i][j] == 0) continue;
      Rational factor = m[i][j] / m[row][j];
      for (std::size_t t = j; t <= cols; ++t) m[i][t] -= factor * m[row][t];
    }
    pivot_row[j] = row++;
  }
  for (std::size_t i = row; i < rows; ++i) {
    if (m[i][cols] != 0) return std::nullopt;
  }
  std::vector<Rational> c(cols);
  for (std::size_t j = 0; j < cols; ++j) c[j] = m[pivot_row[j]][cols] / m[pivot_row[j]][j];
  return c;
}

struct RootMatch {
  std::size_t index;
  bool conjugate;
};

// Identifies which root of `iso` (a polynomial vanishing at a) equals φ_index(a).
RootMatch match_root(const FieldElement& a, std::size_t index, const NumberField& field, RootIsolation& iso) {
  for (Precision prec = 64;; prec *= 2) {
    ComplexEnclosure value = embed(a, index, field, prec);
    iso.refine_all(prec);
    std::vector<RootMatch> hits;
    for (std::size_t i = 0; i < iso.size(); ++i) {
      ComplexInterval box = iso.enclosure(i).box();
      if (value.box().intersects(box)) hits.push_back({i, false});
      if (!iso.is_real(i) && value.box().intersects(box.conj())) hits.push_back({i, true});
    }
    if (hits.size() == 1) return hits.front();
    if (hits.empty()) throw Error(ErrorCode::InternalError, "embedded value matches no root of its minimal polynomial");
    if (prec > kMatchLimit) throw Error(ErrorCode::PrecisionCeiling, "could not separate conjugates");
  }
}

Rational rational_power(const Rational& base, std::size_t e) {
  Rational r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// FieldElement

FieldElement FieldElement::from_rational(const Rational& q, std::size_t n) {
  std::vector<Rational> c(n);
  if (n > 0) c[0] = q;
  return FieldElement(std::move(c));
}

FieldElement FieldElement::generator(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InternalError, "generator of a degree-1 field is rational");
  std::vector<Rational> c(n);
  c[1] = 1;
  return FieldElement(std::move(c));
}

bool FieldElement::is_zero() const {
  for (const auto& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

bool FieldElement::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return false;
  }
  return true;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  FieldElement r = a;
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
  return r;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  FieldElement r = a;
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] -= b.coeffs_[i];
  return r;
}

FieldElement operator*(const FieldElement& a, const Rational& q) {
  FieldElement r = a;
  for (auto& c : r.coeffs_) c *= q;
  return r;
}

std::string FieldElement::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out << ", ";
    out << pisot::to_string(coeffs_[i]);
  }
  out << ']';
  return out.str();
}

// ---------------------------------------------------------------------------
// NumberField

NumberField::NumberField(RationalPoly defining_polynomial, PrecisionPolicy policy)
    : poly_(std::move(defining_polynomial)), policy_(policy) {
  if (poly_.degree() < 1 || !poly_.is_monic() || !poly_.has_integer_coefficients()) {
    throw Error(ErrorCode::ParseError, "defining polynomial must be monic with integer coefficients");
  }
  RootIsolation iso(poly_, policy_.initial);
  r1_ = iso.real_count();
  r2_ = iso.complex_pair_count();
  cache_ = std::make_shared<RootCache>(std::move(iso));
}

ComplexEnclosure NumberField::root(std::size_t i, Precision prec) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->roots.refine(i, prec);
  return cache_->roots.enclosure(i);
}

FieldElement NumberField::element(std::vector<Rational> coefficients) const {
  if (coefficients.size() > degree()) {
    throw Error(ErrorCode::ParseError, "element has more coordinates than the field degree");
  }
  coefficients.resize(degree());
  return FieldElement(std::move(coefficients));
}

// ---------------------------------------------------------------------------
// Arithmetic

FieldElement mul_mod(const FieldElement& a, const FieldElement& b, const NumberField& field) {
  RationalPoly product = a.as_polynomial() * b.as_polynomial();
  RationalPoly reduced = divmod(product, field.defining_polynomial()).remainder;
  std::vector<Rational> c(field.degree());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = reduced.coefficient(i);
  return FieldElement(std::move(c));
}

FieldElement inverse(const FieldElement& a, const NumberField& field) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroElement, "inverse of zero");
  ExtendedGcd g = extended_gcd(a.as_polynomial(), field.defining_polynomial());
  if (g.gcd.degree() != 0) {
    throw Error(ErrorCode::InternalError, "defining polynomial is reducible: " + g.gcd.to_string());
  }
  RationalPoly s = divmod(g.s, field.defining_polynomial()).remainder;
  std::vector<Rational> c(field.degree());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = s.coefficient(i);
  return FieldElement(std::move(c));
}

FieldElement power(const FieldElement& a, long long e, const NumberField& field) {
  FieldElement base = e < 0 ? inverse(a, field) : a;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1 : static_cast<unsigned long long>(e);
  FieldElement result = field.one();
  while (k > 0) {
    if (k & 1) result = mul_mod(result, base, field);
    k >>= 1;
    if (k > 0) base = mul_mod(base, base, field);
  }
  return result;
}

RationalPoly minimal_polynomial(const FieldElement& a, const NumberField& field) {
  std::vector<std::vector<Rational>> powers{field.one().coefficients()};
  FieldElement current = field.one();
  for (std::size_t d = 1; d <= field.degree(); ++d) {
    current = mul_mod(current, a, field);
    if (auto c = solve_in_span(powers, current.coefficients())) {
      std::vector<Rational> m(d + 1);
      for (std::size_t i = 0; i < d; ++i) m[i] = -(*c)[i];
      m[d] = 1;
      return RationalPoly(std::move(m));
    }
    powers.push_back(current.coefficients());
  }
  throw Error(ErrorCode::InternalError, "no linear dependency among powers up to the field degree");
}

Rational field_norm(const FieldElement& a, const NumberField& field) {
  RationalPoly m = minimal_polynomial(a, field);
  std::size_t d = static_cast<std::size_t>(m.degree());
  Rational root_product = d % 2 == 0 ? m.coefficient(0) : Rational(-m.coefficient(0));
  return rational_power(root_product, field.degree() / d);
}

RootIsolation isolate_roots(const RationalPoly& f, Precision prec) { return RootIsolation(f, prec); }

// ---------------------------------------------------------------------------
// Embeddings

ComplexEnclosure embed(const FieldElement& a, std::size_t index, const NumberField& field, Precision prec,
                       Accuracy accuracy) {
  if (index >= field.embedding_count()) throw Error(ErrorCode::InternalError, "embedding index out of range");
  if (accuracy == Accuracy::Relative && a.is_zero()) throw Error(ErrorCode::ZeroElement, "relative enclosure of zero");
  const Precision out_prec = prec + 32;
  if (a.is_rational()) {
    return {Interval::from_rational(a[0], out_prec), Interval(out_prec), prec};
  }
  const RationalPoly coords = a.as_polynomial();
  const bool real = field.is_real_embedding(index);
  for (Precision extra = 16;; extra *= 2) {
    const Precision root_prec = prec + extra;
    const Precision work = root_prec + 32;
    ComplexEnclosure root = field.root(index, root_prec);
    ComplexInterval value(work);
    if (real) {
      value.re = coords.evaluate(root.real_part.with_precision(work));
    } else {
      value = coords.evaluate(ComplexInterval{root.real_part.with_precision(work), root.imag_part.with_precision(work)});
    }
    Interval magnitude = value.modulus();
    Interval scale = accuracy == Accuracy::Absolute ? max(Interval::point(1, work), magnitude) : magnitude;
    if (scale.is_positive() && narrow_enough(value.re, prec, scale) && narrow_enough(value.im, prec, scale)) {
      return {value.re, value.im, prec};
    }
    if (extra > kEmbedExtraLimit) {
      throw Error(ErrorCode::PrecisionCeiling, "embedding did not reach the requested accuracy");
    }
  }
}

bool certify_real_at(const FieldElement& a, std::size_t index, const NumberField& field) {
  if (a.is_rational() || field.is_real_embedding(index)) return true;
  for (Precision prec = field.policy().initial; prec <= field.policy().ceiling; prec *= 2) {
    ComplexEnclosure value = embed(a, index, field, prec);
    if (!value.imag_part.contains_zero()) return false;
  }
  RationalPoly m = minimal_polynomial(a, field);
  RootIsolation iso(m, 64);
  return iso.is_real(match_root(a, index, field, iso).index);
}

RationalPoly integer_multiple(const RationalPoly& p) {
  if (p.is_zero()) return p;
  Integer denominators = 1;
  for (const auto& c : p.coefficients()) {
    mpz_lcm(denominators.get_mpz_t(), denominators.get_mpz_t(), c.get_den_mpz_t());
  }
  Integer content = 0;
  for (const auto& c : p.coefficients()) {
    Integer scaled = c.get_num() * (denominators / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational factor(denominators, content);
  factor.canonicalize();
  if (p.leading() < 0) factor = -factor;
  return p * factor;
}

CircleCounts count_roots_by_circle(const RationalPoly& p) {
  RationalPoly q = integer_multiple(p);
  const int n = q.degree();
  CircleCounts counts;
  counts.on = count_unit_circle_roots(q);
  if (counts.on == n) return counts;
  RootIsolation iso(q, 64);
  for (Precision prec = 64;; prec *= 2) {
    iso.refine_all(prec);
    int inside = 0, outside = 0;
    for (std::size_t i = 0; i < iso.size(); ++i) {
      int weight = iso.is_real(i) ? 1 : 2;
      switch (iso.circle_side(i)) {
        case CircleSide::Inside: inside += weight; break;
        case CircleSide::Outside: outside += weight; break;
        case CircleSide::Unknown: break;
      }
    }
    if (inside + outside + counts.on == n) {
      counts.inside = inside;
      counts.outside = outside;
      return counts;
    }
    if (prec > kMatchLimit) throw Error(ErrorCode::PrecisionCeiling, "roots too close to the unit circle");
  }
}

bool on_unit_circle_at(const FieldElement& a, std::size_t index, const NumberField& field) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroElement, "modulus of zero");
  if (a.is_rational()) return abs(a[0]) == 1;
  if (field.is_real_embedding(index)) return false;  // φ is injective and a is not ±1
  RationalPoly m = integer_multiple(minimal_polynomial(a, field));
  if (count_unit_circle_roots(m) == 0) return false;
  RootIsolation iso(m, 64);
  // Refine until every root off the circle is certified; the rest lie on it.
  CircleCounts counts = count_roots_by_circle(m);
  for (Precision prec = 64;; prec *= 2) {
    iso.refine_all(prec);
    int certified = 0;
    for (std::size_t i = 0; i < iso.size(); ++i) {
      if (iso.circle_side(i) != CircleSide::Unknown) certified += iso.is_real(i) ? 1 : 2;
    }
    if (certified == counts.inside + counts.outside) break;
    if (prec > kMatchLimit) throw Error(ErrorCode::PrecisionCeiling, "roots too close to the unit circle");
  }
  RootMatch match = match_root(a, index, field, iso);
  return iso.circle_side(match.index) == CircleSide::Unknown;
}

}  // namespace pisot
