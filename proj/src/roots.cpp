#include "pisot/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

#include "pisot/errors.hpp"

namespace pisot {

namespace {

constexpr Precision kMaxWorkingPrecision = Precision{1} << 20;
constexpr Precision kOrderingPrecision = 4096;

double log_abs(const Rational& q) {
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::log(std::fabs(mn)) - std::log(md) + static_cast<double>(en - ed) * std::numbers::ln2;
}

// Starting points for Aberth iteration: circles whose radii come from the upper
// convex hull of (i, log|a_i|) (the Newton polygon of the coefficient moduli).
std::vector<std::complex<double>> newton_polygon_guesses(const RationalPoly& p) {
  const int n = p.degree();
  std::vector<std::pair<int, double>> pts;
  for (int i = 0; i <= n; ++i) {
    const Rational& c = p.coefficients()[static_cast<std::size_t>(i)];
    if (c != 0) pts.emplace_back(i, log_abs(c));
  }
  std::vector<std::pair<int, double>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      double cross = (b.first - a.first) * (pt.second - a.second) - (b.second - a.second) * (pt.first - a.first);
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }
  std::vector<std::complex<double>> guesses;
  // x^k factor: zero roots do not occur for the polynomials used here, but keep the count right.
  for (int i = 0; i < pts.front().first; ++i) guesses.emplace_back(0.0, 0.0);
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    int k = hull[s + 1].first - hull[s].first;
    double log_r = (hull[s].second - hull[s + 1].second) / k;
    log_r = std::clamp(log_r, -700.0, 700.0);
    double r = std::exp(log_r);
    for (int m = 0; m < k; ++m) {
      double angle = 2.0 * std::numbers::pi * m / k + 0.7 + 0.3 * static_cast<double>(s);
      guesses.emplace_back(r * std::cos(angle), r * std::sin(angle));
    }
  }
  return guesses;
}

ComplexInterval to_point(const std::complex<double>& z, Precision prec) {
  return {Interval::from_double(z.real(), prec), Interval::from_double(z.imag(), prec)};
}

ComplexInterval with_precision(const ComplexInterval& z, Precision prec) {
  return {z.re.with_precision(prec), z.im.with_precision(prec)};
}

// Certified strict inequality a < b.
bool certainly_less(const Interval& a, const Interval& b) { return (b - a).is_positive(); }

Interval power_of_two(long e, Precision prec) {
  Rational q = 1;
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return Interval::from_rational(q, prec);
}

Interval max_one(const Interval& magnitude) {
  Interval one = Interval::point(1, magnitude.precision());
  return max(one, magnitude);
}

}  // namespace

RootIsolation::RootIsolation(RationalPoly p, Precision prec)
    : poly_(std::move(p)), derivative_(poly_.derivative()) {
  if (poly_.degree() < 1) throw Error(ErrorCode::InternalError, "root isolation of a constant polynomial");
  if (!is_squarefree(poly_)) {
    throw Error(ErrorCode::NotSquarefree, "polynomial " + poly_.to_string() + " has a repeated root");
  }
  isolate(prec);
}

Interval RootIsolation::radius_at(const Interval& re, const Interval& im, Precision work) const {
  ComplexInterval z{re.with_precision(work), im.with_precision(work)};
  ComplexInterval value = poly_.evaluate(z);
  ComplexInterval slope = derivative_.evaluate(z);
  Interval slope_norm = slope.norm();
  if (!slope_norm.is_positive()) return Interval::entire(work);
  Interval bound = value.modulus() * static_cast<long>(poly_.degree()) / sqrt(slope_norm);
  Rational upper = bound.upper_rational();
  return Interval::from_rational(upper, work).with_precision(work);
}

void RootIsolation::isolate(Precision prec) {
  const int n = poly_.degree();
  // Wide coefficient ranges need matching working precision to evaluate without cancellation.
  Precision coefficient_bits = 0;
  for (const auto& c : poly_.coefficients()) {
    if (c == 0) continue;
    Precision bits = mpz_sizeinbase(c.get_num_mpz_t(), 2) + mpz_sizeinbase(c.get_den_mpz_t(), 2);
    coefficient_bits = std::max(coefficient_bits, bits);
  }
  Precision work = std::max<Precision>({prec + 32, 96, 2 * coefficient_bits + 64});
  auto guesses = newton_polygon_guesses(poly_);
  std::vector<ComplexInterval> z;
  z.reserve(guesses.size());
  for (const auto& g : guesses) z.push_back(to_point(g, work));

  while (true) {
    for (auto& zi : z) zi = with_precision(zi, work);
    const Interval tolerance = power_of_two(-(work - 12), work);
    for (int iter = 0; iter < 400; ++iter) {
      bool converged = true;
      for (int i = 0; i < n; ++i) {
        auto& zi = z[static_cast<std::size_t>(i)];
        ComplexInterval value = poly_.evaluate(zi);
        if (value.contains_zero()) continue;
        ComplexInterval slope = derivative_.evaluate(zi);
        if (slope.contains_zero()) {
          zi.re += Interval::from_double(1e-3, work);
          converged = false;
          continue;
        }
        ComplexInterval newton = value / slope;
        ComplexInterval sum(work);
        bool collision = false;
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          ComplexInterval diff = zi - z[static_cast<std::size_t>(j)];
          if (diff.contains_zero() || !diff.norm().is_positive()) {
            collision = true;
            break;
          }
          ComplexInterval one{Interval::point(1, work), Interval(work)};
          sum += one / diff;
        }
        if (collision) {
          zi.im += Interval::from_double(1e-3, work);
          converged = false;
          continue;
        }
        ComplexInterval one{Interval::point(1, work), Interval(work)};
        ComplexInterval denom = one - newton * sum;
        if (!denom.norm().is_positive()) {
          converged = false;
          continue;
        }
        ComplexInterval step = (newton / denom).midpoint();
        zi = (zi - step).midpoint();
        Interval scale = max_one(zi.modulus().magnitude());
        if (!certainly_less(step.modulus(), tolerance * scale)) converged = false;
      }
      if (converged || (iter % 16 == 15 && certify(z, work))) break;
    }
    if (certify(z, work)) break;
    work *= 2;
    if (work > kMaxWorkingPrecision) {
      throw Error(ErrorCode::InternalError, "root isolation did not converge for " + poly_.to_string());
    }
  }
  order_roots();
  refine_all(prec);
}

bool RootIsolation::certify(std::vector<ComplexInterval>& centers, Precision work) {
  const std::size_t n = centers.size();
  std::vector<Interval> radii;
  std::vector<int> kind(n, 0);  // 0 real, +1 upper, -1 lower
  radii.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Interval rho = radius_at(centers[i].re, centers[i].im, work);
    if (!mpfr_number_p(rho.upper())) return false;
    if (!certainly_less(rho, abs(centers[i].im))) {
      Interval zero(work);
      Interval real_rho = radius_at(centers[i].re, zero, work);
      if (!mpfr_number_p(real_rho.upper())) return false;
      centers[i].im = zero;
      rho = real_rho;
      kind[i] = 0;
    } else {
      kind[i] = centers[i].im.is_positive() ? 1 : -1;
    }
    radii.push_back(rho);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Interval dist2 = (centers[i] - centers[j]).norm();
      Interval reach = radii[i] + radii[j];
      if (!certainly_less(sqr(reach), dist2)) return false;
    }
  }
  std::size_t reals = static_cast<std::size_t>(std::count(kind.begin(), kind.end(), 0));
  std::size_t uppers = static_cast<std::size_t>(std::count(kind.begin(), kind.end(), 1));
  SturmSequence sturm(poly_);
  if (static_cast<int>(reals) != sturm.count_real_roots()) return false;
  if (2 * uppers + reals != n) return false;

  std::vector<Disk> disks;
  for (std::size_t i = 0; i < n; ++i) {
    if (kind[i] < 0) continue;
    Disk d;
    d.re = centers[i].re;
    d.im = centers[i].im;
    d.radius = radii[i];
    if (kind[i] == 0) {
      Rational lo = (d.re - d.radius).lower_rational();
      Rational hi = (d.re + d.radius).upper_rational();
      int count = sturm.count_roots(lo, hi) + (poly_.sign_at(lo) == 0 ? 1 : 0);
      if (count != 1) return false;
      d.box.real_part = Interval::from_bounds(lo, hi, work);
      d.box.imag_part = Interval(work);
    } else {
      d.box.real_part = hull(d.re - d.radius, d.re + d.radius);
      d.box.imag_part = hull(d.im - d.radius, d.im + d.radius);
    }
    d.precision = achieved_precision(d);
    d.box.precision_bits = d.precision;
    disks.push_back(std::move(d));
  }
  std::stable_partition(disks.begin(), disks.end(), [](const Disk& d) { return mpfr_zero_p(d.im.lower()) != 0; });
  roots_ = std::move(disks);
  real_count_ = reals;
  return true;
}

Precision RootIsolation::achieved_precision(const Disk& d) const {
  if (mpfr_zero_p(d.radius.upper())) return kMaxWorkingPrecision;
  ComplexInterval c{d.re, d.im};
  Interval rel = d.radius / max_one(c.modulus().magnitude());
  long e = mpfr_get_exp(rel.upper());  // rel < 2^e
  return e >= 0 ? 0 : static_cast<Precision>(-e);
}

void RootIsolation::order_roots() {
  std::stable_sort(roots_.begin(), roots_.begin() + static_cast<std::ptrdiff_t>(real_count_),
                   [](const Disk& a, const Disk& b) { return mpfr_less_p(a.re.lower(), b.re.lower()); });
  // Complex representatives: insertion sort with on-demand refinement, since two
  // real parts may only separate at higher accuracy.
  auto precedes = [this](std::size_t a, std::size_t b) {
    for (Precision p = 64;; p *= 2) {
      const auto& ra = roots_[a].box.real_part;
      const auto& rb = roots_[b].box.real_part;
      if (mpfr_less_p(ra.upper(), rb.lower())) return true;
      if (mpfr_less_p(rb.upper(), ra.lower())) return false;
      if (p > kOrderingPrecision) {
        const auto& ia = roots_[a].box.imag_part;
        const auto& ib = roots_[b].box.imag_part;
        if (mpfr_less_p(ia.upper(), ib.lower())) return true;
        if (mpfr_less_p(ib.upper(), ia.lower())) return false;
      }
      refine(a, p);
      refine(b, p);
    }
  };
  for (std::size_t i = real_count_ + 1; i < roots_.size(); ++i) {
    for (std::size_t j = i; j > real_count_ && precedes(j, j - 1); --j) std::swap(roots_[j], roots_[j - 1]);
  }
}

bool RootIsolation::separated_from_others(std::size_t i, const ComplexInterval& c, const Interval& rho) const {
  auto apart = [&](const Disk& other, bool conjugate) {
    ComplexInterval centre{other.re, conjugate ? -other.im : other.im};
    return certainly_less(sqr(rho + other.radius), (c - centre).norm());
  };
  for (std::size_t j = 0; j < roots_.size(); ++j) {
    if (j != i && !apart(roots_[j], false)) return false;
    if (!is_real(j) && !apart(roots_[j], true)) return false;
  }
  return true;
}

void RootIsolation::refine(std::size_t i, Precision prec) {
  Disk& d = roots_[i];
  if (d.precision >= prec) return;
  const bool real = is_real(i);
  Precision work = prec + 32;
  while (true) {
    ComplexInterval c{d.re.with_precision(work), d.im.with_precision(work)};
    const Interval tolerance = power_of_two(-(work - 6), work);
    for (int iter = 0; iter < 200; ++iter) {
      ComplexInterval value = poly_.evaluate(c);
      if (value.contains_zero()) break;
      ComplexInterval slope = derivative_.evaluate(c);
      if (!slope.norm().is_positive()) break;
      ComplexInterval step = (value / slope).midpoint();
      if (real) step.im = Interval(work);
      c = (c - step).midpoint();
      if (certainly_less(step.modulus(), tolerance * max_one(c.modulus().magnitude()))) break;
    }
    Interval rho = radius_at(c.re, c.im, work);
    if (mpfr_number_p(rho.upper())) {
      // The new disk holds a root; if it misses every other disk it is this root.
      if (separated_from_others(i, c, rho)) {
        Disk next;
        next.re = c.re;
        next.im = c.im;
        next.radius = rho;
        next.precision = achieved_precision(next);
        if (next.precision >= prec) {
          if (real) {
            next.box.real_part = intersect(d.box.real_part, hull(c.re - rho, c.re + rho));
            next.box.imag_part = Interval(work);
          } else {
            next.box.real_part = intersect(d.box.real_part, hull(c.re - rho, c.re + rho));
            next.box.imag_part = intersect(d.box.imag_part, hull(c.im - rho, c.im + rho));
          }
          next.box.precision_bits = next.precision;
          d = std::move(next);
          return;
        }
      }
    }
    work *= 2;
    if (work > kMaxWorkingPrecision) {
      throw Error(ErrorCode::PrecisionCeiling, "root refinement exceeded the working precision limit");
    }
  }
}

void RootIsolation::refine_all(Precision prec) {
  for (std::size_t i = 0; i < roots_.size(); ++i) refine(i, prec);
}

ComplexEnclosure RootIsolation::enclosure(std::size_t i) const { return roots_[i].box; }

CircleSide RootIsolation::circle_side(std::size_t i) const {
  const Disk& d = roots_[i];
  ComplexInterval c{d.re, d.im};
  Interval m = c.modulus();
  Interval one = Interval::point(1, m.precision());
  if (certainly_less(m + d.radius, one)) return CircleSide::Inside;
  if (certainly_less(one, m - d.radius)) return CircleSide::Outside;
  return CircleSide::Unknown;
}

}  // namespace pisot
