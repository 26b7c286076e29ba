#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "pisot/interval.hpp"
#include "pisot/rational.hpp"

namespace pisot {

using IntVector = std::vector<long long>;

/// Constraint data B (m × r) and objective c (length r) enclosed at some precision.
struct IPData {
  IntervalMatrix B;
  IntervalVector c;
};

/// Recomputes the data at the requested precision; must return enclosures of the
/// same real numbers every time.
using IPDataSource = std::function<IPData(Precision)>;
/// Exact sign of B^i·x - b_i.
using RowSignOracle = std::function<int(std::size_t row, const IntVector& x)>;
/// Exact sign of c·x - ratio·(c·y).
using ObjectiveSignOracle = std::function<int(const IntVector& x, const IntVector& y, const Rational& ratio)>;

/// minimize c·x subject to B·x <= b over integer x.
struct IPProblem {
  std::size_t dimension = 0;
  IPDataSource data;
  std::vector<Rational> b;
  Rational eps = 0;
  std::optional<IntVector> warm_start;
  std::optional<Rational> objective_cap;
  PrecisionPolicy policy;
  RowSignOracle row_sign;
  ObjectiveSignOracle objective_sign;

  /// Exact rational data; the oracles are filled in with rational arithmetic.
  static IPProblem from_rationals(const std::vector<std::vector<Rational>>& B, const std::vector<Rational>& b,
                                  const std::vector<Rational>& c, const Rational& eps);

  std::size_t rows() const { return b.size(); }
};

struct IPResult {
  std::vector<IntVector> solutions;
  std::vector<Interval> objective_values;
};

/// All integer points with c·x <= min + eps·|min|, ascending by objective, ties
/// ordered lexicographically. Infeasible when there are none; UnboundedRegion
/// when no finite search region can be derived.
IPResult intprog(const IPProblem& p);

/// Integer ranges per coordinate containing every feasible x with c·x <= U + eps·|U|.
/// An empty vector means the region has no integer points.
std::vector<std::pair<long long, long long>> bounded_box(const IPProblem& p, const Rational& U);

/// x <= y decided from the interval when possible, otherwise by the callback.
bool certified_le(const Interval& x, const Rational& y, const std::function<bool()>& exact_fallback);

/// Sign of a quantity recomputed at doubling precision; past the ceiling the
/// callback decides (NoFallbackProvided when it is empty).
int certified_sign(const std::function<Interval(Precision)>& value, const PrecisionPolicy& policy,
                   const std::function<int()>& exact_fallback);

/// Unimodular T such that the columns of M·T are LLL-reduced (computed in
/// floating point from the midpoints; T is exact).
std::vector<IntVector> lll_transform(const IntervalMatrix& M);

}  // namespace pisot
