#pragma once

#include <mpfr.h>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pisot/rational.hpp"

namespace pisot {

using Precision = mpfr_prec_t;

/// Escalation schedule for certified comparisons: start at `initial` bits and
/// double on every indecisive comparison up to `ceiling`. Past the ceiling the
/// caller must switch to an exact decision procedure.
struct PrecisionPolicy {
  Precision initial = 128;
  Precision ceiling = 8192;
};

/// Closed interval [lo, hi] with MPFR endpoints and outward rounding.
class Interval {
 public:
  explicit Interval(Precision prec = 128);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval point(long value, Precision prec);
  static Interval from_integer(const Integer& z, Precision prec);
  static Interval from_rational(const Rational& q, Precision prec);
  /// Hull of two exactly representable dyadic bounds.
  static Interval from_bounds(const Rational& lo, const Rational& hi, Precision prec);
  static Interval from_double(double value, Precision prec);
  /// (-inf, +inf)
  static Interval entire(Precision prec);

  Precision precision() const { return prec_; }
  mpfr_srcptr lower() const { return lo_; }
  mpfr_srcptr upper() const { return hi_; }

  bool contains_zero() const;
  bool contains(const Interval& other) const;
  bool is_positive() const;  // lo > 0
  bool is_negative() const;  // hi < 0
  /// +1 / -1 when certified, 0 when the interval contains zero.
  int sign() const;

  /// Exact dyadic endpoints.
  Rational lower_rational() const;
  Rational upper_rational() const;
  double lower_double() const;
  double upper_double() const;
  double mid_double() const;
  /// Midpoint rounded to the interval's precision, as a degenerate interval.
  Interval midpoint() const;
  /// Upper bound on hi - lo.
  Interval width() const;
  /// Upper bound on max(|lo|, |hi|).
  Interval magnitude() const;
  /// Lower bound on min |x| over the interval (0 if it contains zero).
  Interval mignitude() const;
  /// log2 of the width, or a large negative number for point intervals.
  long width_exponent() const;

  Interval with_precision(Precision prec) const;

  /// Decimal rendering of the midpoint with `digits` significant digits.
  std::string to_string(int digits = 20) const;

  Interval operator-() const;
  Interval& operator+=(const Interval& rhs);
  Interval& operator-=(const Interval& rhs);
  Interval& operator*=(const Interval& rhs);
  Interval& operator/=(const Interval& rhs);

  friend Interval operator+(Interval lhs, const Interval& rhs) { return lhs += rhs; }
  friend Interval operator-(Interval lhs, const Interval& rhs) { return lhs -= rhs; }
  friend Interval operator*(Interval lhs, const Interval& rhs) { return lhs *= rhs; }
  friend Interval operator/(Interval lhs, const Interval& rhs) { return lhs /= rhs; }

  friend Interval sqr(const Interval& x);
  friend Interval sqrt(const Interval& x);
  friend Interval log(const Interval& x);
  friend Interval exp(const Interval& x);
  friend Interval abs(const Interval& x);
  friend Interval hull(const Interval& a, const Interval& b);
  /// Intersection; both must contain the same true value.
  friend Interval intersect(const Interval& a, const Interval& b);
  friend Interval max(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& x, long k);

 private:
  Precision prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

Interval operator*(const Interval& x, const Integer& k);

/// Rectangular complex enclosure.
struct ComplexInterval {
  Interval re;
  Interval im;

  ComplexInterval() = default;
  explicit ComplexInterval(Precision prec) : re(prec), im(prec) {}
  ComplexInterval(Interval real, Interval imag) : re(std::move(real)), im(std::move(imag)) {}

  Precision precision() const { return re.precision() > im.precision() ? re.precision() : im.precision(); }

  ComplexInterval& operator+=(const ComplexInterval& rhs);
  ComplexInterval& operator-=(const ComplexInterval& rhs);
  ComplexInterval& operator*=(const ComplexInterval& rhs);
  ComplexInterval& operator*=(const Interval& rhs);

  friend ComplexInterval operator+(ComplexInterval a, const ComplexInterval& b) { return a += b; }
  friend ComplexInterval operator-(ComplexInterval a, const ComplexInterval& b) { return a -= b; }
  friend ComplexInterval operator*(ComplexInterval a, const ComplexInterval& b) { return a *= b; }
  friend ComplexInterval operator*(ComplexInterval a, const Interval& b) { return a *= b; }
  /// Division; throws if the divisor may vanish.
  friend ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b);

  ComplexInterval conj() const { return {re, -im}; }
  /// |z|^2
  Interval norm() const;
  Interval modulus() const;
  ComplexInterval midpoint() const { return {re.midpoint(), im.midpoint()}; }
  bool intersects(const ComplexInterval& other) const;
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
};

/// Intervals used as vectors and dense row-major matrices.
using IntervalVector = std::vector<Interval>;

class IntervalMatrix {
 public:
  IntervalMatrix() = default;
  IntervalMatrix(std::size_t rows, std::size_t cols, Precision prec)
      : rows_(rows), cols_(cols), data_(rows * cols, Interval(prec)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Interval& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Interval& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntervalVector row(std::size_t i) const;
  /// Drops row `i`.
  IntervalMatrix without_row(std::size_t i) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Interval> data_;
};

/// Interval dot product of a row with an integer vector.
Interval dot(const IntervalVector& row, const std::vector<long long>& x, Precision prec);

/// Determinant by interval Gaussian elimination with magnitude pivoting.
/// Returns an interval containing zero when no pivot can be certified nonzero.
Interval determinant(const IntervalMatrix& m);

/// Interval inverse by Gauss-Jordan elimination. Throws SingularSystem when a
/// pivot cannot be certified nonzero at the matrix precision.
IntervalMatrix inverse(const IntervalMatrix& m);

}  // namespace pisot
