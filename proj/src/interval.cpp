#include "pisot/interval.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <utility>

#include "pisot/errors.hpp"

namespace pisot {

namespace {

Precision max_prec(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}

// min/max that respect MPFR's NaN-free ordering; both operands are finite or infinite.
void set_min(mpfr_ptr target, mpfr_srcptr candidate) {
  if (mpfr_less_p(candidate, target)) mpfr_set(target, candidate, MPFR_RNDD);
}

void set_max(mpfr_ptr target, mpfr_srcptr candidate) {
  if (mpfr_greater_p(candidate, target)) mpfr_set(target, candidate, MPFR_RNDU);
}

}  // namespace

Interval::Interval(Precision prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : prec_(other.prec_) {
  mpfr_init2(lo_, MPFR_PREC_MIN);
  mpfr_init2(hi_, MPFR_PREC_MIN);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this == &other) return *this;
  prec_ = other.prec_;
  mpfr_set_prec(lo_, prec_);
  mpfr_set_prec(hi_, prec_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  std::swap(prec_, other.prec_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::point(long value, Precision prec) {
  Interval r(prec);
  mpfr_set_si(r.lo_, value, MPFR_RNDD);
  mpfr_set_si(r.hi_, value, MPFR_RNDU);
  return r;
}

Interval Interval::from_integer(const Integer& z, Precision prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_rational(const Rational& q, Precision prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_bounds(const Rational& lo, const Rational& hi, Precision prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::entire(Precision prec) {
  Interval r(prec);
  mpfr_set_inf(r.lo_, -1);
  mpfr_set_inf(r.hi_, 1);
  return r;
}

Interval Interval::from_double(double value, Precision prec) {
  Interval r(prec);
  mpfr_set_d(r.lo_, value, MPFR_RNDD);
  mpfr_set_d(r.hi_, value, MPFR_RNDU);
  return r;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::contains(const Interval& other) const {
  return mpfr_lessequal_p(lo_, other.lo_) && mpfr_greaterequal_p(hi_, other.hi_);
}

bool Interval::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::is_negative() const { return mpfr_sgn(hi_) < 0; }

int Interval::sign() const {
  if (is_positive()) return 1;
  if (is_negative()) return -1;
  return 0;
}

Rational Interval::lower_rational() const {
  if (!mpfr_number_p(lo_)) throw Error(ErrorCode::InternalError, "unbounded interval endpoint");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

Rational Interval::upper_rational() const {
  if (!mpfr_number_p(hi_)) throw Error(ErrorCode::InternalError, "unbounded interval endpoint");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

double Interval::lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid_double() const {
  Interval m = midpoint();
  return mpfr_get_d(m.lo_, MPFR_RNDN);
}

Interval Interval::midpoint() const {
  Interval r(prec_);
  mpfr_add(r.lo_, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(r.lo_, r.lo_, 1, MPFR_RNDN);
  mpfr_set(r.hi_, r.lo_, MPFR_RNDN);
  return r;
}

Interval Interval::width() const {
  Interval r(prec_);
  mpfr_sub(r.hi_, hi_, lo_, MPFR_RNDU);
  mpfr_set_zero(r.lo_, 1);
  return r;
}

Interval Interval::magnitude() const {
  Interval r(prec_);
  mpfr_t a;
  mpfr_init2(a, prec_);
  mpfr_abs(a, lo_, MPFR_RNDU);
  mpfr_abs(r.hi_, hi_, MPFR_RNDU);
  set_max(r.hi_, a);
  mpfr_set(r.lo_, r.hi_, MPFR_RNDD);
  mpfr_clear(a);
  return r;
}

Interval Interval::mignitude() const {
  Interval r(prec_);
  if (contains_zero()) return r;
  if (is_positive()) {
    mpfr_set(r.lo_, lo_, MPFR_RNDD);
  } else {
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  }
  mpfr_set(r.hi_, r.lo_, MPFR_RNDU);
  return r;
}

long Interval::width_exponent() const {
  if (!mpfr_number_p(lo_) || !mpfr_number_p(hi_)) return LONG_MAX / 2;
  Interval w = width();
  if (mpfr_zero_p(w.hi_)) return LONG_MIN / 2;
  return mpfr_get_exp(w.hi_);
}

Interval Interval::with_precision(Precision prec) const {
  Interval r(prec);
  mpfr_set(r.lo_, lo_, MPFR_RNDD);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

std::string Interval::to_string(int digits) const {
  Interval m = midpoint();
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Rg", digits, m.lo_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

Interval Interval::operator-() const {
  Interval r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval& Interval::operator+=(const Interval& rhs) {
  Precision p = max_prec(*this, rhs);
  Interval r(p);
  mpfr_add(r.lo_, lo_, rhs.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, rhs.hi_, MPFR_RNDU);
  return *this = std::move(r);
}

Interval& Interval::operator-=(const Interval& rhs) {
  Precision p = max_prec(*this, rhs);
  Interval r(p);
  mpfr_sub(r.lo_, lo_, rhs.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, rhs.lo_, MPFR_RNDU);
  return *this = std::move(r);
}

Interval& Interval::operator*=(const Interval& rhs) {
  Precision p = max_prec(*this, rhs);
  Interval r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  mpfr_srcptr a[2] = {lo_, hi_};
  mpfr_srcptr b[2] = {rhs.lo_, rhs.hi_};
  mpfr_set_inf(r.lo_, 1);
  mpfr_set_inf(r.hi_, -1);
  for (auto x : a) {
    for (auto y : b) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (mpfr_nan_p(t)) mpfr_set_zero(t, 1);  // 0 * inf
      set_min(r.lo_, t);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (mpfr_nan_p(t)) mpfr_set_zero(t, 1);
      set_max(r.hi_, t);
    }
  }
  mpfr_clear(t);
  return *this = std::move(r);
}

Interval& Interval::operator/=(const Interval& rhs) {
  if (rhs.contains_zero()) {
    throw Error(ErrorCode::InternalError, "interval division by an interval containing zero");
  }
  Precision p = max_prec(*this, rhs);
  Interval r(p);
  mpfr_t t;
  mpfr_init2(t, p);
  mpfr_srcptr a[2] = {lo_, hi_};
  mpfr_srcptr b[2] = {rhs.lo_, rhs.hi_};
  mpfr_set_inf(r.lo_, 1);
  mpfr_set_inf(r.hi_, -1);
  for (auto x : a) {
    for (auto y : b) {
      mpfr_div(t, x, y, MPFR_RNDD);
      set_min(r.lo_, t);
      mpfr_div(t, x, y, MPFR_RNDU);
      set_max(r.hi_, t);
    }
  }
  mpfr_clear(t);
  return *this = std::move(r);
}

Interval operator*(const Interval& x, long k) {
  Interval r(x.prec_);
  if (k >= 0) {
    mpfr_mul_si(r.lo_, x.lo_, k, MPFR_RNDD);
    mpfr_mul_si(r.hi_, x.hi_, k, MPFR_RNDU);
  } else {
    mpfr_mul_si(r.lo_, x.hi_, k, MPFR_RNDD);
    mpfr_mul_si(r.hi_, x.lo_, k, MPFR_RNDU);
  }
  return r;
}

Interval operator*(const Interval& x, const Integer& k) {
  if (k.fits_slong_p()) return x * k.get_si();
  return x * Interval::from_integer(k, x.precision());
}

Interval sqr(const Interval& x) {
  Interval r(x.prec_);
  mpfr_t a, b;
  mpfr_init2(a, x.prec_);
  mpfr_init2(b, x.prec_);
  mpfr_sqr(a, x.lo_, MPFR_RNDU);
  mpfr_sqr(b, x.hi_, MPFR_RNDU);
  if (x.contains_zero()) {
    mpfr_set_zero(r.lo_, 1);
    mpfr_max(r.hi_, a, b, MPFR_RNDU);
  } else {
    mpfr_max(r.hi_, a, b, MPFR_RNDU);
    mpfr_sqr(a, x.lo_, MPFR_RNDD);
    mpfr_sqr(b, x.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, a, b, MPFR_RNDD);
  }
  mpfr_clear(a);
  mpfr_clear(b);
  return r;
}

Interval sqrt(const Interval& x) {
  if (x.is_negative()) throw Error(ErrorCode::InternalError, "sqrt of a negative interval");
  Interval r(x.prec_);
  if (mpfr_sgn(x.lo_) <= 0) {
    mpfr_set_zero(r.lo_, 1);
  } else {
    mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
  }
  mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval log(const Interval& x) {
  if (!x.is_positive()) throw Error(ErrorCode::InternalError, "log of an interval not bounded away from zero");
  Interval r(x.prec_);
  mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval exp(const Interval& x) {
  Interval r(x.prec_);
  mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval abs(const Interval& x) {
  if (x.is_positive()) return x;
  if (x.is_negative()) return -x;
  Interval r = x.magnitude();
  mpfr_set_zero(r.lo_, 1);
  return r;
}

Interval hull(const Interval& a, const Interval& b) {
  Interval r(max_prec(a, b));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval intersect(const Interval& a, const Interval& b) {
  Interval r(max_prec(a, b));
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  if (mpfr_greater_p(r.lo_, r.hi_)) {
    throw Error(ErrorCode::InternalError, "disjoint enclosures of the same quantity");
  }
  return r;
}

Interval max(const Interval& a, const Interval& b) {
  Interval r(max_prec(a, b));
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

// ---------------------------------------------------------------------------

ComplexInterval& ComplexInterval::operator+=(const ComplexInterval& rhs) {
  re += rhs.re;
  im += rhs.im;
  return *this;
}

ComplexInterval& ComplexInterval::operator-=(const ComplexInterval& rhs) {
  re -= rhs.re;
  im -= rhs.im;
  return *this;
}

ComplexInterval& ComplexInterval::operator*=(const ComplexInterval& rhs) {
  Interval r = re * rhs.re - im * rhs.im;
  Interval i = re * rhs.im + im * rhs.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

ComplexInterval& ComplexInterval::operator*=(const Interval& rhs) {
  re *= rhs;
  im *= rhs;
  return *this;
}

ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
  Interval n = b.norm();
  if (!n.is_positive()) {
    throw Error(ErrorCode::InternalError, "complex division by an enclosure containing zero");
  }
  ComplexInterval num = a * b.conj();
  return {num.re / n, num.im / n};
}

Interval ComplexInterval::norm() const { return sqr(re) + sqr(im); }

Interval ComplexInterval::modulus() const { return sqrt(norm()); }

bool ComplexInterval::intersects(const ComplexInterval& other) const {
  auto overlap = [](const Interval& a, const Interval& b) {
    return mpfr_lessequal_p(a.lower(), b.upper()) && mpfr_lessequal_p(b.lower(), a.upper());
  };
  return overlap(re, other.re) && overlap(im, other.im);
}

// ---------------------------------------------------------------------------

IntervalVector IntervalMatrix::row(std::size_t i) const {
  return IntervalVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntervalMatrix IntervalMatrix::without_row(std::size_t drop) const {
  IntervalMatrix out(rows_ - 1, cols_, data_.empty() ? 128 : data_.front().precision());
  std::size_t target = 0;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i == drop) continue;
    for (std::size_t j = 0; j < cols_; ++j) out(target, j) = (*this)(i, j);
    ++target;
  }
  return out;
}

Interval dot(const IntervalVector& row, const std::vector<long long>& x, Precision prec) {
  Interval acc(prec);
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (x[j] != 0) acc += row[j] * static_cast<long>(x[j]);
  }
  return acc;
}

namespace {

// Index of the row (>= start) whose entry in column `col` has the largest mignitude.
std::size_t pick_pivot(const IntervalMatrix& m, std::size_t start, std::size_t col) {
  std::size_t best = start;
  double best_mig = -1.0;
  for (std::size_t i = start; i < m.rows(); ++i) {
    double mig = m(i, col).mignitude().lower_double();
    if (mig > best_mig) {
      best_mig = mig;
      best = i;
    }
  }
  return best;
}

void swap_rows(IntervalMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

}  // namespace

Interval determinant(const IntervalMatrix& input) {
  IntervalMatrix m = input;
  const std::size_t n = m.rows();
  Precision prec = n ? m(0, 0).precision() : 128;
  Interval det = Interval::point(1, prec);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = pick_pivot(m, c, c);
    if (m(p, c).contains_zero()) {
      return Interval::entire(prec);
    }
    if (p != c) {
      swap_rows(m, p, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      Interval factor = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= factor * m(c, j);
    }
  }
  return det;
}

IntervalMatrix inverse(const IntervalMatrix& input) {
  const std::size_t n = input.rows();
  if (n != input.cols()) throw Error(ErrorCode::SingularSystem, "non-square matrix");
  Precision prec = n ? input(0, 0).precision() : 128;
  IntervalMatrix m = input;
  IntervalMatrix inv(n, n, prec);
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = Interval::point(1, prec);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = pick_pivot(m, c, c);
    if (m(p, c).contains_zero()) {
      throw Error(ErrorCode::SingularSystem, "pivot cannot be certified nonzero");
    }
    swap_rows(m, p, c);
    swap_rows(inv, p, c);
    Interval pivot = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= pivot;
      inv(c, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      Interval factor = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= factor * m(c, j);
        inv(i, j) -= factor * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace pisot
