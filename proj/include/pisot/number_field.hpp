#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

#include "pisot/interval.hpp"
#include "pisot/polynomial.hpp"
#include "pisot/rational.hpp"
#include "pisot/roots.hpp"

namespace pisot {

/// Element of K = Q[x]/(f) in the power basis 1, θ, ..., θ^(n-1).
class FieldElement {
 public:
  FieldElement() = default;
  explicit FieldElement(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {}

  static FieldElement from_rational(const Rational& q, std::size_t n);
  static FieldElement generator(std::size_t n);

  std::size_t size() const { return coeffs_.size(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }

  bool is_zero() const;
  /// True when only the constant coordinate may be nonzero.
  bool is_rational() const;
  RationalPoly as_polynomial() const { return RationalPoly(coeffs_); }

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const Rational& q);
  friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const;

 private:
  std::vector<Rational> coeffs_;
};

/// K = Q[x]/(f) for a monic, squarefree integer polynomial f.
///
/// Root enclosures live in a shared cache; refinement is serialized by a mutex,
/// so a NumberField (and its copies) can be used from several threads.
class NumberField {
 public:
  explicit NumberField(RationalPoly defining_polynomial, PrecisionPolicy policy = {});

  const RationalPoly& defining_polynomial() const { return poly_; }
  std::size_t degree() const { return static_cast<std::size_t>(poly_.degree()); }
  std::size_t r1() const { return r1_; }
  std::size_t r2() const { return r2_; }
  /// r1 + r2: one index per real embedding and per conjugate pair.
  std::size_t embedding_count() const { return r1_ + r2_; }
  bool is_real_embedding(std::size_t i) const { return i < r1_; }
  /// Dirichlet rank r1 + r2 - 1.
  std::size_t unit_rank() const { return r1_ + r2_ - 1; }

  const PrecisionPolicy& policy() const { return policy_; }
  void set_policy(const PrecisionPolicy& policy) { policy_ = policy; }

  /// Enclosure of root i refined to at least `prec` relative bits.
  ComplexEnclosure root(std::size_t i, Precision prec) const;

  FieldElement zero() const { return FieldElement::from_rational(0, degree()); }
  FieldElement one() const { return FieldElement::from_rational(1, degree()); }
  FieldElement generator() const { return FieldElement::generator(degree()); }
  /// Pads or rejects (ParseError if too long) a coordinate vector.
  FieldElement element(std::vector<Rational> coefficients) const;

 private:
  struct RootCache {
    std::mutex mutex;
    RootIsolation roots;
    explicit RootCache(RootIsolation iso) : roots(std::move(iso)) {}
  };

  RationalPoly poly_;
  PrecisionPolicy policy_;
  std::size_t r1_ = 0;
  std::size_t r2_ = 0;
  std::shared_ptr<RootCache> cache_;
};

FieldElement mul_mod(const FieldElement& a, const FieldElement& b, const NumberField& field);
/// ZeroElement for a = 0; InternalError when f turns out to be reducible.
FieldElement inverse(const FieldElement& a, const NumberField& field);
/// a^e by repeated squaring; negative exponents go through inverse().
FieldElement power(const FieldElement& a, long long e, const NumberField& field);

RationalPoly minimal_polynomial(const FieldElement& a, const NumberField& field);
/// Product of all n embeddings of a.
Rational field_norm(const FieldElement& a, const NumberField& field);

/// Certified root isolation with canonical ordering; NotSquarefree on repeated roots.
RootIsolation isolate_roots(const RationalPoly& f, Precision prec);

enum class Accuracy {
  /// width <= 2^-prec * max(1, |value|)
  Absolute,
  /// width <= 2^-prec * |value|; requires a != 0
  Relative,
};

/// Enclosure of φ_index(a). Real embeddings yield an exact zero imaginary part.
ComplexEnclosure embed(const FieldElement& a, std::size_t index, const NumberField& field, Precision prec,
                       Accuracy accuracy = Accuracy::Absolute);

/// Exact decision of φ_index(a) ∈ R.
bool certify_real_at(const FieldElement& a, std::size_t index, const NumberField& field);

/// Exact decision of |φ_index(a)| = 1 for nonzero a.
bool on_unit_circle_at(const FieldElement& a, std::size_t index, const NumberField& field);

/// Roots of an integer polynomial strictly inside / on / strictly outside |z| = 1,
/// conjugate pairs counted twice. Combines the exact circle count with enclosures.
struct CircleCounts {
  int inside = 0;
  int on = 0;
  int outside = 0;
};
CircleCounts count_roots_by_circle(const RationalPoly& p);

/// Clears denominators: the primitive integer polynomial with the same roots.
RationalPoly integer_multiple(const RationalPoly& p);

}  // namespace pisot
