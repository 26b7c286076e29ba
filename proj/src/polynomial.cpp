#include "pisot/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "pisot/errors.hpp"

namespace pisot {

RationalPoly::RationalPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  normalize();
}

RationalPoly::RationalPoly(std::initializer_list<long> coefficients) {
  coeffs_.reserve(coefficients.size());
  for (long c : coefficients) coeffs_.emplace_back(c);
  normalize();
}

RationalPoly RationalPoly::from_integers(const std::vector<Integer>& coefficients) {
  std::vector<Rational> q;
  q.reserve(coefficients.size());
  for (const auto& c : coefficients) q.emplace_back(c);
  return RationalPoly(std::move(q));
}

RationalPoly RationalPoly::constant(const Rational& c) { return RationalPoly(std::vector<Rational>{c}); }

RationalPoly RationalPoly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> q(degree + 1);
  q[degree] = c;
  return RationalPoly(std::move(q));
}

void RationalPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPoly::coefficient(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : Rational(0);
}

bool RationalPoly::is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

bool RationalPoly::has_integer_coefficients() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

RationalPoly RationalPoly::monic() const {
  if (is_zero()) return *this;
  RationalPoly r = *this;
  Rational lc = leading();
  for (auto& c : r.coeffs_) c /= lc;
  return r;
}

RationalPoly RationalPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return RationalPoly(std::move(d));
}

RationalPoly RationalPoly::reversed() const {
  std::vector<Rational> r(coeffs_.rbegin(), coeffs_.rend());
  return RationalPoly(std::move(r));
}

RationalPoly RationalPoly::negated_variable() const {
  RationalPoly r = *this;
  for (std::size_t i = 1; i < r.coeffs_.size(); i += 2) r.coeffs_[i] = -r.coeffs_[i];
  return r;
}

Rational RationalPoly::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int RationalPoly::sign_at(const Rational& x) const { return sgn(evaluate(x)); }

Interval RationalPoly::evaluate(const Interval& x) const {
  Precision prec = x.precision();
  Interval acc(prec);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + Interval::from_rational(*it, prec);
  }
  return acc;
}

ComplexInterval RationalPoly::evaluate(const ComplexInterval& z) const {
  Precision prec = z.precision();
  ComplexInterval acc(prec);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * z;
    acc.re += Interval::from_rational(*it, prec);
  }
  return acc;
}

RationalPoly RationalPoly::operator-() const {
  RationalPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  normalize();
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  normalize();
  return *this;
}

RationalPoly& RationalPoly::operator*=(const RationalPoly& rhs) {
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  coeffs_ = std::move(out);
  normalize();
  return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& rhs) {
  if (rhs == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= rhs;
  return *this;
}

std::string RationalPoly::to_string(const std::string& variable) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = mag == 1;
    if (!unit || i == 0) {
      out << pisot::to_string(mag);
      if (i > 0) out << "*";
    }
    if (i >= 1) out << variable;
    if (i >= 2) out << "^" << i;
  }
  return out.str();
}

// ---------------------------------------------------------------------------

PolyDivision divmod(const RationalPoly& a, const RationalPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::InternalError, "polynomial division by zero");
  if (a.degree() < b.degree()) return {RationalPoly(), a};
  std::vector<Rational> rem = a.coefficients();
  const auto& den = b.coefficients();
  const std::size_t db = den.size() - 1;
  std::vector<Rational> quot(rem.size() - db);
  for (std::size_t k = quot.size(); k-- > 0;) {
    Rational q = rem[k + db] / den[db];
    quot[k] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * den[j];
  }
  rem.resize(db);
  return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
}

RationalPoly gcd(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly x = a;
  RationalPoly y = b;
  while (!y.is_zero()) {
    RationalPoly r = divmod(x, y).remainder;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

ExtendedGcd extended_gcd(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly r0 = a, r1 = b;
  RationalPoly s0 = RationalPoly::constant(1), s1;
  RationalPoly t0, t1 = RationalPoly::constant(1);
  while (!r1.is_zero()) {
    PolyDivision qr = divmod(r0, r1);
    RationalPoly s2 = s0 - qr.quotient * s1;
    RationalPoly t2 = t0 - qr.quotient * t1;
    r0 = std::move(r1);
    r1 = std::move(qr.remainder);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rational lc = r0.leading();
  Rational inv = 1 / lc;
  return {r0 * inv, s0 * inv, t0 * inv};
}

bool is_squarefree(const RationalPoly& p) {
  if (p.degree() <= 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

std::vector<RationalPoly> squarefree_decomposition(const RationalPoly& p) {
  std::vector<RationalPoly> factors;
  if (p.degree() <= 0) return factors;
  RationalPoly f = p.monic();
  RationalPoly fp = f.derivative();
  RationalPoly a = gcd(f, fp);
  RationalPoly b = divmod(f, a).quotient;
  RationalPoly c = divmod(fp, a).quotient;
  RationalPoly d = c - b.derivative();
  while (b.degree() > 0) {
    RationalPoly g = gcd(b, d);
    factors.push_back(g);
    b = divmod(b, g).quotient;
    c = divmod(d, g).quotient;
    d = c - b.derivative();
  }
  return factors;
}

// ---------------------------------------------------------------------------

SturmSequence::SturmSequence(const RationalPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::InternalError, "Sturm sequence of the zero polynomial");
  auto scaled = [](const RationalPoly& q) { return q * Rational(1 / abs(q.leading())); };
  chain_.push_back(scaled(p));
  RationalPoly d = p.derivative();
  if (d.is_zero()) return;
  chain_.push_back(scaled(d));
  while (true) {
    RationalPoly r = divmod(chain_[chain_.size() - 2], chain_.back()).remainder;
    if (r.is_zero()) break;
    chain_.push_back(scaled(-r));
  }
}

int SturmSequence::variations_at(const Rational& x) const {
  int variations = 0;
  int last = 0;
  for (const auto& q : chain_) {
    int s = q.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

int SturmSequence::variations_at_infinity(int direction) const {
  int variations = 0;
  int last = 0;
  for (const auto& q : chain_) {
    int s = sgn(q.leading());
    if (direction < 0 && q.degree() % 2 == 1) s = -s;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

int SturmSequence::count_roots(const Rational& a, const Rational& b) const {
  if (b <= a) return 0;
  return variations_at(a) - variations_at(b);
}

int SturmSequence::count_real_roots() const {
  return variations_at_infinity(-1) - variations_at_infinity(1);
}

// ---------------------------------------------------------------------------

bool is_palindromic(const RationalPoly& p) {
  const auto& c = p.coefficients();
  return std::equal(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(c.size() / 2), c.rbegin());
}

bool is_reciprocal(const RationalPoly& p) { return is_palindromic(p) || p.reversed() == -p; }

RationalPoly trace_polynomial(const RationalPoly& p) {
  const int d = p.degree();
  if (d < 0 || d % 2 != 0 || !is_palindromic(p)) {
    throw Error(ErrorCode::InternalError, "trace polynomial needs a palindromic polynomial of even degree");
  }
  const auto m = static_cast<std::size_t>(d / 2);
  // T_j(y) = x^j + x^-j with y = x + 1/x.
  RationalPoly t_prev = RationalPoly::constant(2);
  RationalPoly t_cur = RationalPoly::monomial(1, 1);
  const RationalPoly y = RationalPoly::monomial(1, 1);
  RationalPoly q = RationalPoly::constant(p.coefficient(m));
  for (std::size_t j = 1; j <= m; ++j) {
    q += t_cur * p.coefficient(m + j);
    RationalPoly next = y * t_cur - t_prev;
    t_prev = std::move(t_cur);
    t_cur = std::move(next);
  }
  return q;
}

namespace {

// Strips every factor (x - root) and returns how many were removed.
int strip_linear_root(RationalPoly& p, long root) {
  int multiplicity = 0;
  const RationalPoly linear = {-root, 1};
  while (p.degree() > 0 && p.evaluate(Rational(root)) == 0) {
    p = divmod(p, linear).quotient;
    ++multiplicity;
  }
  return multiplicity;
}

}  // namespace

int count_unit_circle_roots(const RationalPoly& p) {
  if (p.is_zero() || p.coefficient(0) == 0) {
    throw Error(ErrorCode::ZeroConstantTerm, "unit-circle count needs p(0) != 0");
  }
  if (!p.has_integer_coefficients()) {
    throw Error(ErrorCode::InternalError, "unit-circle count needs integer coefficients");
  }
  RationalPoly work = p;
  int count = strip_linear_root(work, 1) + strip_linear_root(work, -1);
  RationalPoly g = gcd(work, work.reversed());
  if (g.degree() <= 0) return count;
  if (!is_palindromic(g) || g.degree() % 2 != 0) {
    throw Error(ErrorCode::InternalError, "self-reciprocal factor is not palindromic");
  }
  RationalPoly q = trace_polynomial(g);
  const Rational lo(-2), hi(2);
  auto parts = squarefree_decomposition(q);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].degree() <= 0) continue;
    // q(+-2) != 0 because the roots +-1 were stripped, so (-2, 2] == (-2, 2).
    int roots = SturmSequence(parts[i]).count_roots(lo, hi);
    count += 2 * static_cast<int>(i + 1) * roots;
  }
  return count;
}

}  // namespace pisot
