#include "pisot/intprog.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "pisot/errors.hpp"

namespace pisot {

namespace {

constexpr long long kCoordinateLimit = 1LL << 50;

Rational as_rational(long long v) { return Rational(static_cast<long>(v)); }

struct Range {
  long long lo;
  long long hi;
};

// Constraint coeffs·z <= rhs.
struct LinearRow {
  IntervalVector coeffs;
  Interval rhs;
};

long long clamp_coordinate(const Integer& z) {
  if (z > static_cast<long>(kCoordinateLimit)) return kCoordinateLimit;
  if (z < -static_cast<long>(kCoordinateLimit)) return -kCoordinateLimit;
  return z.get_si();
}

// Integer bounds implied by a real enclosure; nullopt for infinite endpoints.
std::optional<long long> floor_of_upper(const Interval& x) {
  if (!mpfr_number_p(x.upper())) return std::nullopt;
  Rational u = x.upper_rational();
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), u.get_num_mpz_t(), u.get_den_mpz_t());
  return clamp_coordinate(f);
}

std::optional<long long> ceil_of_lower(const Interval& x) {
  if (!mpfr_number_p(x.lower())) return std::nullopt;
  Rational l = x.lower_rational();
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), l.get_num_mpz_t(), l.get_den_mpz_t());
  return clamp_coordinate(c);
}

Interval range_interval(const Range& r, Precision p) {
  return Interval::from_bounds(as_rational(r.lo), as_rational(r.hi), p);
}

// Interval constraint propagation on integer ranges. Returns false when some
// range becomes empty, i.e. the box holds no feasible integer point.
bool propagate(const std::vector<LinearRow>& rows, std::vector<Range>& ranges, Precision p, int passes) {
  const std::size_t r = ranges.size();
  std::vector<Interval> boxes;
  boxes.reserve(r);
  for (const auto& range : ranges) boxes.push_back(range_interval(range, p));
  for (int pass = 0; pass < passes; ++pass) {
    bool changed = false;
    for (const auto& row : rows) {
      for (std::size_t j = 0; j < r; ++j) {
        const Interval& a = row.coeffs[j];
        int s = a.sign();
        if (s == 0) continue;
        Interval rest(p);
        for (std::size_t l = 0; l < r; ++l) {
          if (l != j) rest += row.coeffs[l] * boxes[l];
        }
        Interval bound = (row.rhs - rest) / a;
        Range& range = ranges[j];
        if (s > 0) {
          auto hi = floor_of_upper(bound);
          if (hi && *hi < range.hi) {
            range.hi = *hi;
            changed = true;
          }
        } else {
          auto lo = ceil_of_lower(bound);
          if (lo && *lo > range.lo) {
            range.lo = *lo;
            changed = true;
          }
        }
        if (range.lo > range.hi) return false;
        if (changed) boxes[j] = range_interval(range, p);
      }
    }
    if (!changed) break;
  }
  return true;
}

std::vector<std::vector<std::size_t>> row_subsets(std::size_t m, std::size_t r, const std::vector<Rational>& b) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> pick(r);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == r) {
      out.push_back(pick);
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  // Homogeneous rows first.
  auto inhomogeneous = [&](const std::vector<std::size_t>& s) {
    return std::count_if(s.begin(), s.end(), [&](std::size_t i) { return b[i] != 0; });
  };
  std::stable_sort(out.begin(), out.end(),
                   [&](const auto& x, const auto& y) { return inhomogeneous(x) < inhomogeneous(y); });
  return out;
}

IntervalMatrix select_rows(const IntervalMatrix& B, const std::vector<std::size_t>& rows, Precision p) {
  IntervalMatrix M(rows.size(), B.cols(), p);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < B.cols(); ++j) M(i, j) = B(rows[i], j);
  }
  return M;
}

// Multipliers w with w·M = c, or nothing if M is not certifiably invertible.
std::optional<IntervalVector> multipliers(const IntervalMatrix& M, const IntervalVector& c, Precision p) {
  IntervalMatrix inv;
  try {
    inv = inverse(M);
  } catch (const Error&) {
    return std::nullopt;
  }
  const std::size_t r = M.rows();
  IntervalVector w(r, Interval(p));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) w[i] += c[j] * inv(j, i);
  }
  return w;
}

struct Basis {
  std::vector<std::size_t> rows;
  IntervalVector weights;  // c = -weights·M (lower) or c = weights·M (upper), weights > 0
};

// direction -1: c lies in the negative cone of the rows (objective bounded below);
// direction +1: positive cone (objective bounded above by the right-hand sides).
std::optional<Basis> find_basis(const IntervalMatrix& B, const IntervalVector& c, const std::vector<Rational>& b,
                                int direction, Precision p) {
  const std::size_t r = B.cols();
  for (const auto& rows : row_subsets(B.rows(), r, b)) {
    auto w = multipliers(select_rows(B, rows, p), c, p);
    if (!w) continue;
    bool positive = true;
    for (auto& x : *w) {
      if (direction < 0) x = -x;
      if (!x.is_positive()) positive = false;
    }
    if (positive) return Basis{rows, *w};
  }
  return std::nullopt;
}

// Integer box for {B z <= b, c z <= threshold} from a lower basis; empty when the
// region has no integer point.
std::vector<Range> parallelepiped_box(const IntervalMatrix& B, const IntervalVector& c, const std::vector<Rational>& b,
                                      const Basis& basis, const Interval& threshold, Precision p) {
  const std::size_t r = B.cols();
  IntervalMatrix M = select_rows(B, basis.rows, p);
  IntervalMatrix inv = inverse(M);
  IntervalVector bS;
  for (std::size_t i : basis.rows) bS.push_back(Interval::from_rational(b[i], p));
  // c·z = -λ·(y + b_S) with y = M z - b_S <= 0.
  Interval slack = threshold;
  for (std::size_t i = 0; i < r; ++i) slack += basis.weights[i] * bS[i];
  if (slack.is_negative()) return {};
  IntervalVector shifted(r, Interval(p));
  for (std::size_t i = 0; i < r; ++i) {
    Interval depth = slack / basis.weights[i];
    Interval y = Interval::from_bounds(-depth.upper_rational(), Rational(0), p);
    shifted[i] = y + bS[i];
  }
  std::vector<Range> ranges(r);
  for (std::size_t j = 0; j < r; ++j) {
    Interval z(p);
    for (std::size_t i = 0; i < r; ++i) z += inv(j, i) * shifted[i];
    auto lo = ceil_of_lower(z);
    auto hi = floor_of_upper(z);
    if (!lo || !hi || std::llabs(*lo) >= kCoordinateLimit || std::llabs(*hi) >= kCoordinateLimit) {
      throw Error(ErrorCode::UnboundedRegion, "search box exceeds the coordinate limit");
    }
    ranges[j] = {*lo, *hi};
    if (*lo > *hi) return {};
  }
  std::vector<LinearRow> rows;
  for (std::size_t i = 0; i < B.rows(); ++i) rows.push_back({B.row(i), Interval::from_rational(b[i], p)});
  rows.push_back({c, threshold});
  if (!propagate(rows, ranges, p, 16)) return {};
  return ranges;
}

Interval quasi_threshold(const Interval& value, const Rational& eps, Precision p) {
  Interval e = Interval::from_rational(eps, p);
  return value + e * abs(value);
}

class Solver {
 public:
  explicit Solver(const IPProblem& problem) : p_(problem), prec_(problem.policy.initial) {}

  IPResult run();
  std::vector<Range> box(const Rational& U);

 private:
  const IPData& data_at(Precision p) {
    auto it = cache_.find(p);
    if (it == cache_.end()) {
      IPData d = p_.data(p);
      if (d.B.rows() != p_.rows() || d.B.cols() != p_.dimension || d.c.size() != p_.dimension) {
        throw Error(ErrorCode::InternalError, "constraint data has the wrong shape");
      }
      it = cache_.emplace(p, std::move(d)).first;
    }
    return it->second;
  }

  Interval objective(const IntVector& x, Precision p) { return dot(data_at(p).c, x, p); }

  int row_sign(std::size_t i, const IntVector& x) {
    return certified_sign(
        [&](Precision p) { return dot(data_at(p).B.row(i), x, p) - Interval::from_rational(p_.b[i], p); },
        p_.policy, p_.row_sign ? std::function<int()>([&] { return p_.row_sign(i, x); }) : std::function<int()>());
  }

  int objective_compare(const IntVector& x, const IntVector& y, const Rational& ratio) {
    return certified_sign(
        [&](Precision p) { return objective(x, p) - Interval::from_rational(ratio, p) * objective(y, p); },
        p_.policy,
        p_.objective_sign ? std::function<int()>([&] { return p_.objective_sign(x, y, ratio); })
                          : std::function<int()>());
  }

  bool feasible(const IntVector& x) {
    for (std::size_t i = 0; i < p_.rows(); ++i) {
      if (row_sign(i, x) > 0) return false;
    }
    return true;
  }

  Interval search_cap();
  void search(std::size_t depth, std::vector<Range> ranges);

  const IPProblem& p_;
  Precision prec_;
  std::map<Precision, IPData> cache_;

  // Search state in reduced coordinates x = T z.
  std::vector<IntVector> T_;
  std::vector<LinearRow> rows_;
  std::vector<std::size_t> order_;
  Interval best_;
  bool have_best_ = false;
  std::vector<IntVector> candidates_;
};

Interval Solver::search_cap() {
  const IPData& d = data_at(prec_);
  std::optional<Interval> cap;
  if (p_.objective_cap) cap = Interval::from_rational(*p_.objective_cap, prec_);
  if (p_.warm_start) {
    if (p_.warm_start->size() != p_.dimension) throw Error(ErrorCode::InternalError, "warm start has the wrong length");
    if (feasible(*p_.warm_start)) {
      Interval w = objective(*p_.warm_start, prec_);
      if (!cap || mpfr_less_p(w.upper(), cap->upper())) cap = w;
    }
  }
  if (!cap) {
    auto upper = find_basis(d.B, d.c, p_.b, +1, prec_);
    if (!upper) throw Error(ErrorCode::UnboundedRegion, "no objective cap or warm start and the region is not bounded");
    Interval bound(prec_);
    for (std::size_t i = 0; i < p_.dimension; ++i) {
      bound += upper->weights[i] * Interval::from_rational(p_.b[upper->rows[i]], prec_);
    }
    cap = bound;
  }
  return Interval::from_rational(cap->upper_rational(), prec_);
}

std::vector<Range> Solver::box(const Rational& U) {
  const IPData& d = data_at(prec_);
  auto lower = find_basis(d.B, d.c, p_.b, -1, prec_);
  if (!lower) throw Error(ErrorCode::UnboundedRegion, "objective is not bounded below on the homogeneous cone");
  return parallelepiped_box(d.B, d.c, p_.b, *lower, quasi_threshold(Interval::from_rational(U, prec_), p_.eps, prec_),
                            prec_);
}

void Solver::search(std::size_t depth, std::vector<Range> ranges) {
  if (have_best_) rows_.back().rhs = quasi_threshold(best_, p_.eps, prec_);
  if (!propagate(rows_, ranges, prec_, 2)) return;
  const std::size_t r = p_.dimension;
  if (depth == r) {
    IntVector x(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) x[i] += T_[i][j] * ranges[j].lo;
    }
    if (!feasible(x)) return;
    Interval value = objective(x, prec_);
    if (have_best_ && quasi_threshold(best_, p_.eps, prec_).upper_rational() < value.lower_rational()) return;
    candidates_.push_back(x);
    if (!have_best_ || mpfr_less_p(value.upper(), best_.upper())) {
      best_ = Interval::from_rational(value.upper_rational(), prec_);
      have_best_ = true;
    }
    return;
  }
  const std::size_t j = order_[depth];
  for (long long v = ranges[j].lo; v <= ranges[j].hi; ++v) {
    std::vector<Range> child = ranges;
    child[j] = {v, v};
    search(depth + 1, std::move(child));
  }
}

IPResult Solver::run() {
  const std::size_t r = p_.dimension;
  if (r == 0) throw Error(ErrorCode::Infeasible, "no variables");
  if (p_.b.size() != p_.rows() || p_.rows() < r) throw Error(ErrorCode::InternalError, "malformed problem");
  const IPData& d = data_at(prec_);
  auto lower = find_basis(d.B, d.c, p_.b, -1, prec_);
  if (!lower) throw Error(ErrorCode::UnboundedRegion, "objective is not bounded below on the homogeneous cone");
  Interval cap = search_cap();
  Interval threshold = quasi_threshold(cap, p_.eps, prec_);

  // Reduced coordinates.
  T_ = lll_transform(select_rows(d.B, lower->rows, prec_));
  IntervalMatrix Bt(d.B.rows(), r, prec_);
  IntervalVector ct(r, Interval(prec_));
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t l = 0; l < r; ++l) {
      if (T_[l][j] == 0) continue;
      for (std::size_t i = 0; i < d.B.rows(); ++i) Bt(i, j) += d.B(i, l) * static_cast<long>(T_[l][j]);
      ct[j] += d.c[l] * static_cast<long>(T_[l][j]);
    }
  }
  auto reduced = find_basis(Bt, ct, p_.b, -1, prec_);
  if (!reduced) throw Error(ErrorCode::UnboundedRegion, "lost the bounding basis after reduction");
  std::vector<Range> ranges = parallelepiped_box(Bt, ct, p_.b, *reduced, threshold, prec_);
  if (ranges.empty()) throw Error(ErrorCode::Infeasible, "no integer point below the objective cap");

  rows_.clear();
  for (std::size_t i = 0; i < Bt.rows(); ++i) rows_.push_back({Bt.row(i), Interval::from_rational(p_.b[i], prec_)});
  rows_.push_back({ct, threshold});
  order_.resize(r);
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
    return ranges[a].hi - ranges[a].lo > ranges[b].hi - ranges[b].lo;
  });
  have_best_ = false;
  candidates_.clear();
  search(0, ranges);
  if (candidates_.empty()) throw Error(ErrorCode::Infeasible, "no feasible integer point");

  IntVector best = candidates_.front();
  for (const auto& x : candidates_) {
    if (x != best && objective_compare(x, best, 1) < 0) best = x;
  }
  // min + eps·|min| as a multiple of min.
  const int best_sign = p_.eps == 0 ? 1 : objective_compare(best, best, 0);
  Rational ratio = 1 + p_.eps * best_sign;
  std::vector<IntVector> kept;
  for (const auto& x : candidates_) {
    if (x == best || objective_compare(x, best, ratio) <= 0) kept.push_back(x);
  }
  std::sort(kept.begin(), kept.end(), [&](const IntVector& a, const IntVector& b) {
    if (a == b) return false;
    int s = objective_compare(a, b, 1);
    return s != 0 ? s < 0 : a < b;
  });
  IPResult result;
  for (auto& x : kept) {
    result.objective_values.push_back(objective(x, prec_));
    result.solutions.push_back(std::move(x));
  }
  return result;
}

}  // namespace

IPProblem IPProblem::from_rationals(const std::vector<std::vector<Rational>>& B, const std::vector<Rational>& b,
                                    const std::vector<Rational>& c, const Rational& eps) {
  IPProblem p;
  p.dimension = c.size();
  p.b = b;
  p.eps = eps;
  p.data = [B, c](Precision prec) {
    IPData d{IntervalMatrix(B.size(), c.size(), prec), {}};
    for (std::size_t i = 0; i < B.size(); ++i) {
      for (std::size_t j = 0; j < c.size(); ++j) d.B(i, j) = Interval::from_rational(B[i][j], prec);
    }
    for (const auto& x : c) d.c.push_back(Interval::from_rational(x, prec));
    return d;
  };
  auto dot_exact = [](const std::vector<Rational>& row, const IntVector& x) {
    Rational s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += row[j] * as_rational(x[j]);
    return s;
  };
  p.row_sign = [B, b, dot_exact](std::size_t i, const IntVector& x) { return sgn(dot_exact(B[i], x) - b[i]); };
  p.objective_sign = [c, dot_exact](const IntVector& x, const IntVector& y, const Rational& ratio) {
    return sgn(dot_exact(c, x) - ratio * dot_exact(c, y));
  };
  return p;
}

IPResult intprog(const IPProblem& p) { return Solver(p).run(); }

std::vector<std::pair<long long, long long>> bounded_box(const IPProblem& p, const Rational& U) {
  if (p.dimension == 0) return {};
  std::vector<std::pair<long long, long long>> out;
  for (const auto& r : Solver(p).box(U)) out.emplace_back(r.lo, r.hi);
  return out;
}

bool certified_le(const Interval& x, const Rational& y, const std::function<bool()>& exact_fallback) {
  Interval diff = x - Interval::from_rational(y, x.precision());
  if (mpfr_sgn(diff.upper()) <= 0) return true;
  if (diff.is_positive()) return false;
  if (!exact_fallback) throw Error(ErrorCode::NoFallbackProvided, "comparison is undecided and no exact test exists");
  return exact_fallback();
}

int certified_sign(const std::function<Interval(Precision)>& value, const PrecisionPolicy& policy,
                   const std::function<int()>& exact_fallback) {
  for (Precision p = policy.initial; p <= policy.ceiling; p *= 2) {
    Interval v = value(p);
    int s = v.sign();
    if (s != 0) return s;
    // A degenerate enclosure pins the value exactly.
    if (mpfr_zero_p(v.lower()) && mpfr_zero_p(v.upper())) return 0;
  }
  if (!exact_fallback) throw Error(ErrorCode::NoFallbackProvided, "sign is undecided at the precision ceiling");
  return exact_fallback();
}

std::vector<IntVector> lll_transform(const IntervalMatrix& M) {
  const std::size_t n = M.cols();
  const std::size_t dim = M.rows();
  std::vector<std::vector<long double>> b(n, std::vector<long double>(dim));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < dim; ++i) b[j][i] = M(i, j).mid_double();
  }
  std::vector<IntVector> cols(n, IntVector(n, 0));  // cols[j] = column j of T
  for (std::size_t j = 0; j < n; ++j) cols[j][j] = 1;

  std::vector<std::vector<long double>> mu(n, std::vector<long double>(n));
  std::vector<long double> norms(n);
  auto gram_schmidt = [&] {
    std::vector<std::vector<long double>> star = b;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        long double num = 0;
        for (std::size_t t = 0; t < dim; ++t) num += b[i][t] * star[j][t];
        mu[i][j] = norms[j] > 0 ? num / norms[j] : 0;
        for (std::size_t t = 0; t < dim; ++t) star[i][t] -= mu[i][j] * star[j][t];
      }
      norms[i] = 0;
      for (std::size_t t = 0; t < dim; ++t) norms[i] += star[i][t] * star[i][t];
    }
  };
  gram_schmidt();
  std::size_t k = 1;
  for (int guard = 0; k < n && guard < 100000; ++guard) {
    for (std::size_t jj = k; jj-- > 0;) {
      long double q = std::round(mu[k][jj]);
      if (q == 0) continue;
      long long qi = static_cast<long long>(q);
      for (std::size_t t = 0; t < dim; ++t) b[k][t] -= q * b[jj][t];
      for (std::size_t t = 0; t < n; ++t) cols[k][t] -= qi * cols[jj][t];
      gram_schmidt();
    }
    if (norms[k] >= (0.99L - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      std::swap(cols[k], cols[k - 1]);
      gram_schmidt();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  std::vector<IntVector> T(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) T[i][j] = cols[j][i];
  }
  return T;
}

}  // namespace pisot
