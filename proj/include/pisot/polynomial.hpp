#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "pisot/interval.hpp"
#include "pisot/rational.hpp"

namespace pisot {

/// Univariate polynomial over Q, coefficients in ascending degree order with no
/// trailing zeros (the zero polynomial has no coefficients).
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coefficients);
  RationalPoly(std::initializer_list<long> coefficients);

  static RationalPoly from_integers(const std::vector<Integer>& coefficients);
  static RationalPoly constant(const Rational& c);
  static RationalPoly monomial(const Rational& c, std::size_t degree);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// Coefficient of x^i (zero past the degree).
  Rational coefficient(std::size_t i) const;
  const Rational& leading() const { return coeffs_.back(); }

  bool is_monic() const;
  bool has_integer_coefficients() const;
  RationalPoly monic() const;
  RationalPoly derivative() const;
  /// x^deg * p(1/x).
  RationalPoly reversed() const;
  /// p(-x).
  RationalPoly negated_variable() const;

  Rational evaluate(const Rational& x) const;
  int sign_at(const Rational& x) const;
  Interval evaluate(const Interval& x) const;
  ComplexInterval evaluate(const ComplexInterval& z) const;

  RationalPoly operator-() const;
  RationalPoly& operator+=(const RationalPoly& rhs);
  RationalPoly& operator-=(const RationalPoly& rhs);
  RationalPoly& operator*=(const RationalPoly& rhs);
  RationalPoly& operator*=(const Rational& rhs);

  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(RationalPoly a, const RationalPoly& b) { return a *= b; }
  friend RationalPoly operator*(RationalPoly a, const Rational& b) { return a *= b; }
  friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// "x^2 - 2" style rendering.
  std::string to_string(const std::string& variable = "x") const;

 private:
  void normalize();

  std::vector<Rational> coeffs_;
};

struct PolyDivision {
  RationalPoly quotient;
  RationalPoly remainder;
};

/// Euclidean division; throws InternalError on division by zero.
PolyDivision divmod(const RationalPoly& a, const RationalPoly& b);

/// Monic gcd (zero if both are zero).
RationalPoly gcd(const RationalPoly& a, const RationalPoly& b);

struct ExtendedGcd {
  RationalPoly gcd;  // monic
  RationalPoly s;    // s*a + t*b = gcd
  RationalPoly t;
};

ExtendedGcd extended_gcd(const RationalPoly& a, const RationalPoly& b);

bool is_squarefree(const RationalPoly& p);

/// Yun decomposition: factor i (0-based) collects the roots of multiplicity i+1.
std::vector<RationalPoly> squarefree_decomposition(const RationalPoly& p);

/// Sturm chain of a nonzero polynomial, built from p and p'.
class SturmSequence {
 public:
  explicit SturmSequence(const RationalPoly& p);

  /// Distinct real roots in the half-open interval (a, b].
  int count_roots(const Rational& a, const Rational& b) const;
  /// Distinct real roots on the whole line.
  int count_real_roots() const;

 private:
  int variations_at(const Rational& x) const;
  int variations_at_infinity(int direction) const;

  std::vector<RationalPoly> chain_;
};

/// True iff the coefficient sequence is palindromic.
bool is_palindromic(const RationalPoly& p);
/// x^n·p(1/x) = ±p(x): palindromic or antipalindromic.
bool is_reciprocal(const RationalPoly& p);

/// Number of roots on |z| = 1 counted with multiplicity. `p` must have integer
/// coefficients and p(0) != 0 (ZeroConstantTerm otherwise).
int count_unit_circle_roots(const RationalPoly& p);

/// For a palindromic p of even degree 2m returns q with p(x) = x^m q(x + 1/x).
RationalPoly trace_polynomial(const RationalPoly& p);

}  // namespace pisot
