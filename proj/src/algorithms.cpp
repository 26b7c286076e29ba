#include "pisot/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <set>

#include "pisot/errors.hpp"

namespace pisot {

namespace {

constexpr Precision kHardLimit = Precision{1} << 16;

// Integer combination of Log rows: weights·A·x <= rhs.
struct LogRow {
  std::vector<long> weights;
  Rational rhs;
};

LogRow unit_row(std::size_t count, std::size_t i, long sign, const Rational& rhs) {
  LogRow row{std::vector<long>(count, 0), rhs};
  row.weights[i] = sign;
  return row;
}

// The unit lattice of a field: Log matrix at any precision plus exact unit powers.
class LogLattice {
 public:
  LogLattice(const NumberField& field, const UnitSystem& units) : field_(field), units_(units) {
    for (const auto& u : units_.units) inverses_.push_back(inverse(u, field_));
  }

  std::size_t rank() const { return units_.units.size(); }
  const NumberField& field() const { return field_; }

  IntervalMatrix matrix(Precision p) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(p);
    if (it != cache_.end()) return it->second;
    const std::size_t r = rank();
    IntervalMatrix A(r + 1, r, p);
    for (std::size_t j = 0; j < r; ++j) {
      LogVector column = log_embedding(units_.units[j], field_, p);
      for (std::size_t i = 0; i <= r; ++i) A(i, j) = column[i];
    }
    return cache_.emplace(p, std::move(A)).first->second;
  }

  FieldElement power(const IntVector& x) const {
    FieldElement result = field_.one();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      const FieldElement& base = x[i] > 0 ? units_.units[i] : inverses_[i];
      result = mul_mod(result, pisot::power(base, x[i] > 0 ? x[i] : -x[i], field_), field_);
    }
    return result;
  }

  Interval row_value(const LogRow& row, const IntVector& x, Precision p) {
    IntervalMatrix A = matrix(p);
    Interval v(p);
    for (std::size_t i = 0; i < row.weights.size(); ++i) {
      if (row.weights[i] != 0) v += dot(A.row(i), x, p) * row.weights[i];
    }
    return v - Interval::from_rational(row.rhs, p);
  }

  // Past the precision ceiling: exact unit-circle test when the row can vanish,
  // then further escalation (a nonzero value separates eventually).
  int exact_row_sign(const LogRow& row, const IntVector& x) {
    if (std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; })) return sgn(-row.rhs);
    std::size_t nonzero = 0, index = 0;
    for (std::size_t i = 0; i < row.weights.size(); ++i) {
      if (row.weights[i] != 0) {
        ++nonzero;
        index = i;
      }
    }
    // log|φ(β)| = b has no solution for rational b != 0 (e^b is transcendental).
    if (row.rhs == 0 && nonzero == 1 && on_unit_circle_at(power(x), index, field_)) return 0;
    for (Precision p = field_.policy().ceiling * 2; p <= kHardLimit; p *= 2) {
      int s = row_value(row, x, p).sign();
      if (s != 0) return s;
    }
    throw Error(ErrorCode::PrecisionCeiling, "Log comparison undecided at " + std::to_string(kHardLimit) + " bits");
  }

  IPProblem problem(std::vector<LogRow> rows, std::size_t k, const Rational& eps) {
    IPProblem p;
    p.dimension = rank();
    p.eps = eps;
    p.policy = field_.policy();
    for (const auto& row : rows) p.b.push_back(row.rhs);
    auto self = this;
    p.data = [self, rows, k](Precision prec) {
      IntervalMatrix A = self->matrix(prec);
      const std::size_t r = self->rank();
      IPData d{IntervalMatrix(rows.size(), r, prec), A.row(k)};
      for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t l = 0; l < rows[i].weights.size(); ++l) {
          if (rows[i].weights[l] == 0) continue;
          for (std::size_t j = 0; j < r; ++j) d.B(i, j) += A(l, j) * rows[i].weights[l];
        }
      }
      return d;
    };
    p.row_sign = [self, rows](std::size_t i, const IntVector& x) { return self->exact_row_sign(rows[i], x); };
    p.objective_sign = [self, k](const IntVector& x, const IntVector& y, const Rational& ratio) {
      // sign(c·x - (P/Q)·c·y) = sign(c·(Q x - P y))
      IntVector v(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        Integer vi = ratio.get_den() * Integer(static_cast<long>(x[i])) - ratio.get_num() * Integer(static_cast<long>(y[i]));
        if (!vi.fits_slong_p()) throw Error(ErrorCode::PrecisionCeiling, "tie test exponent overflow");
        v[i] = vi.get_si();
      }
      LogRow row = unit_row(self->rank() + 1, k, 1, 0);
      return self->exact_row_sign(row, v);
    };
    return p;
  }

 private:
  NumberField field_;
  UnitSystem units_;
  std::vector<FieldElement> inverses_;
  std::mutex mutex_;
  std::map<Precision, IntervalMatrix> cache_;
};

std::vector<LogRow> findmin_rows(std::size_t count, std::size_t k, const Rational& d) {
  std::vector<LogRow> rows;
  for (std::size_t i = 0; i < count; ++i) {
    rows.push_back(i == k ? unit_row(count, i, -1, -d) : unit_row(count, i, 1, 0));
  }
  return rows;
}

bool is_root_of_unity_order(const FieldElement& zeta, long long m, const NumberField& field) {
  return power(zeta, m, field) == field.one();
}

// A cap below the optimum only makes the region empty; grow it until it is not.
IPResult solve_capped(IPProblem problem, const Rational& cap) {
  problem.objective_cap = cap;
  for (int attempt = 0;; ++attempt) {
    try {
      return intprog(problem);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Infeasible || attempt >= 8) throw;
      *problem.objective_cap *= 4;
    }
  }
}

// First optimum in the solver's order, preferring interior points of Q_k.
std::pair<IntVector, RegionTag> pick_optimum(const IPResult& res, std::size_t k, LogLattice& lattice,
                                             std::vector<RegionTag>* tags_out = nullptr) {
  std::vector<RegionTag> tags;
  std::optional<std::size_t> chosen;
  for (std::size_t i = 0; i < res.solutions.size(); ++i) {
    tags.push_back(region_classify(lattice.power(res.solutions[i]), k, lattice.field()));
    if (!chosen && tags.back().kind == RegionKind::InteriorQ) chosen = i;
  }
  if (tags_out) *tags_out = tags;
  std::size_t i = chosen.value_or(0);
  return {res.solutions[i], tags[i]};
}

GeneratorResult finalize(const UnitSystem& units, const IntVector& x, std::size_t k, LogLattice& lattice) {
  const NumberField& field = lattice.field();
  const Precision prec = field.policy().initial;
  GeneratorResult g;
  g.embedding = k;
  g.exponents = x;
  auto [element, t] = normalize_torsion(lattice.power(x), k, units, field);
  g.element = element;
  g.torsion_power = t;
  g.min_poly = minimal_polynomial(g.element, field);
  g.region = region_classify(g.element, k, field);
  g.classification = classify_number(g.element, k, field);
  g.height = weil_height(g.element, field, prec);
  g.objective = dot(lattice.matrix(prec).row(k), x, prec);
  g.approx_value = embed(g.element, k, field, prec);
  g.precision_bits = prec;
  return g;
}

void require_rank(const LogLattice& lattice) {
  if (lattice.rank() == 0) throw Error(ErrorCode::RankZero, "the unit group has rank 0");
}

void require_embedding(std::size_t k, const NumberField& field) {
  if (k >= field.embedding_count()) throw Error(ErrorCode::ParseError, "embedding index out of range");
}

}  // namespace

std::string NoGenerator::message() const {
  switch (reason) {
    case NoGeneratorReason::RankZero: return "no complex Pisot generator: unit rank 0";
    case NoGeneratorReason::AllUnitsReal:
      return "no complex Pisot generator: every fundamental unit is real at the chosen embedding";
  }
  return "no complex Pisot generator";
}

UnitSystem validate_units(const UnitSystem& units, const NumberField& field) {
  const std::size_t r = field.unit_rank();
  if (units.units.size() != r) {
    throw Error(ErrorCode::WrongRank, "expected " + std::to_string(r) + " fundamental units, got " +
                                          std::to_string(units.units.size()));
  }
  if (units.zeta.size() != field.degree() || units.zeta_order < 1) {
    throw Error(ErrorCode::BadTorsion, "malformed torsion generator");
  }
  const long long m = units.zeta_order;
  if (!is_root_of_unity_order(units.zeta, m, field)) {
    throw Error(ErrorCode::BadTorsion, "ζ^" + std::to_string(m) + " != 1");
  }
  for (long long d = 1; d < m; ++d) {
    if (m % d == 0 && is_root_of_unity_order(units.zeta, d, field)) {
      throw Error(ErrorCode::BadTorsion, "ζ has order " + std::to_string(d) + ", not " + std::to_string(m));
    }
  }
  build_unit_matrix(units.units, field, field.policy().initial);
  return units;
}

FieldElement unit_from_exponents(const UnitSystem& units, const IntVector& e, long long t, const NumberField& field) {
  if (e.size() != units.units.size()) throw Error(ErrorCode::InternalError, "exponent vector has the wrong length");
  FieldElement result = field.one();
  for (std::size_t i = 0; i < e.size(); ++i) result = mul_mod(result, power(units.units[i], e[i], field), field);
  long long m = units.zeta_order;
  long long tt = ((t % m) + m) % m;
  return mul_mod(result, power(units.zeta, tt, field), field);
}

HeightBound height_bound(const UnitMatrix& A, std::size_t k) {
  const std::size_t r = A.rank;
  if (r == 0) throw Error(ErrorCode::RankZero, "no height bound for rank 0");
  const Precision p = A.precision;
  std::vector<Interval> norms;
  Interval total(p);
  for (std::size_t j = 0; j <= r; ++j) {
    Interval s(p);
    for (std::size_t i = 0; i < r; ++i) s += sqr(A.A(j, i));
    norms.push_back(sqrt(s));
    total += norms.back();
  }
  Interval half = sqrt(Interval::point(static_cast<long>(r), p)) / Interval::point(2, p);
  HeightBound hb;
  hb.U = (half * total).upper_rational();

  IntervalMatrix inv = inverse(A.A.without_row(k));
  Rational eps0(1, 1 << 20);
  for (int attempt = 0; attempt < 40; ++attempt, eps0 *= 2) {
    Interval scale = half + Interval::from_rational(eps0, p);
    IntervalVector target;
    for (std::size_t j = 0; j <= r; ++j) {
      if (j != k) target.push_back(-(scale * norms[j]));
    }
    IntVector w(r);
    for (std::size_t i = 0; i < r; ++i) {
      Interval wi(p);
      for (std::size_t j = 0; j < r; ++j) wi += inv(i, j) * target[j];
      w[i] = static_cast<long long>(std::llround(wi.mid_double()));
    }
    bool ok = true;
    for (std::size_t j = 0; j <= r && ok; ++j) {
      if (j != k) ok = dot(A.row(j), w, p).is_negative();
    }
    if (ok) {
      hb.witness = w;
      return hb;
    }
  }
  throw Error(ErrorCode::InternalError, "could not certify a height-bound witness");
}

std::pair<FieldElement, long long> normalize_torsion(const FieldElement& a, std::size_t k, const UnitSystem& units,
                                                     const NumberField& field) {
  FieldElement current = a;
  const long long m = units.zeta_order;
  for (long long t = 0; t < m; ++t) {
    if (field.is_real_embedding(k)) {
      if (embed(current, k, field, 64, Accuracy::Relative).real_part.is_positive()) return {current, t};
    } else if (!certify_real_at(current, k, field)) {
      return {current, t};
    }
    current = mul_mod(current, units.zeta, field);
  }
  return {a, 0};
}

GeneratorResult find_min(const UnitSystem& units, std::size_t k, const NumberField& field) {
  require_embedding(k, field);
  LogLattice lattice(field, units);
  require_rank(lattice);
  const std::size_t count = field.embedding_count();
  HeightBound hb = height_bound(build_unit_matrix(units.units, field, field.policy().initial), k);
  IPProblem problem = lattice.problem(findmin_rows(count, k, delta(field.degree())), k, 0);
  problem.warm_start = hb.witness;
  IPResult res = solve_capped(problem, hb.U);
  return finalize(units, pick_optimum(res, k, lattice).first, k, lattice);
}

GeneratorResult cut_edge(const UnitSystem& units, std::size_t k, const NumberField& field) {
  require_embedding(k, field);
  LogLattice lattice(field, units);
  require_rank(lattice);
  const std::size_t count = field.embedding_count();
  const Rational d = delta(field.degree());
  HeightBound hb = height_bound(build_unit_matrix(units.units, field, field.policy().initial), k);

  std::set<std::size_t> edges;
  for (int round = 0;; ++round) {
    std::vector<LogRow> rows;
    for (std::size_t i = 0; i < count; ++i) {
      if (i != k) rows.push_back(unit_row(count, i, 1, 0));
    }
    if (edges.empty()) {
      rows.push_back(unit_row(count, k, -1, -d));
    } else {
      // -A^k - A^j <= -δ for every edge l_{k,j} that carried an optimum.
      for (std::size_t j : edges) {
        LogRow row = unit_row(count, k, -1, -d);
        row.weights[j] = -1;
        rows.push_back(row);
      }
    }
    IPProblem problem = lattice.problem(rows, k, 0);
    problem.warm_start = hb.witness;
    IPResult res = solve_capped(problem, hb.U);
    std::vector<RegionTag> tags;
    auto [x, tag] = pick_optimum(res, k, lattice, &tags);
    if (tag.kind == RegionKind::InteriorQ) return finalize(units, x, k, lattice);
    bool added = false;
    for (std::size_t i = 0; i < res.solutions.size(); ++i) {
      if (tags[i].kind == RegionKind::Edge) added |= edges.insert(tags[i].j).second;
      if (tags[i].kind == RegionKind::BoundaryOther) {
        throw Error(ErrorCode::InternalError, "an optimum lies on a boundary face of Q_k that is not an edge");
      }
    }
    if (!added || round > static_cast<int>(count)) {
      throw Error(ErrorCode::CertificateMismatch, "edge exclusion did not reach the interior of Q_k");
    }
  }
}

std::variant<GeneratorResult, NoGenerator> find_cpisot(const UnitSystem& units, std::size_t k, const NumberField& field,
                                                       const Rational& eps) {
  require_embedding(k, field);
  if (field.is_real_embedding(k)) throw Error(ErrorCode::ParseError, "find_cpisot needs a complex embedding");
  if (units.units.empty()) return NoGenerator{NoGeneratorReason::RankZero};

  const bool trivial_torsion = units.zeta_order <= 2;
  if (!trivial_torsion) {
    GeneratorResult g = cut_edge(units, k, field);
    if (certify_real_at(g.element, k, field)) {
      g.element = mul_mod(g.element, units.zeta, field);
      g.torsion_power = (g.torsion_power + 1) % units.zeta_order;
      g.min_poly = minimal_polynomial(g.element, field);
      g.classification = classify_number(g.element, k, field);
      g.approx_value = embed(g.element, k, field, field.policy().initial);
    }
    return g;
  }
  if (std::all_of(units.units.begin(), units.units.end(),
                  [&](const FieldElement& u) { return certify_real_at(u, k, field); })) {
    return NoGenerator{NoGeneratorReason::AllUnitsReal};
  }

  LogLattice lattice(field, units);
  const std::size_t count = field.embedding_count();
  const Precision prec = field.policy().initial;
  HeightBound hb = height_bound(build_unit_matrix(units.units, field, prec), k);
  const Rational step = dot(lattice.matrix(prec).row(k), hb.witness, prec).upper_rational();
  Rational lower = delta(field.degree());
  std::set<IntVector> scanned;
  for (int slab = 0; slab < 100000; ++slab) {
    IPProblem problem = lattice.problem(findmin_rows(count, k, lower), k, eps);
    // m·witness is feasible for this slab and its objective is below lower + step.
    Integer m;
    Rational ratio = lower / step;
    mpz_cdiv_q(m.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
    if (m < 1) m = 1;
    IntVector warm = hb.witness;
    for (auto& v : warm) v *= m.get_si();
    problem.warm_start = warm;
    IPResult res = solve_capped(problem, lower + step);
    for (const auto& x : res.solutions) {
      if (!scanned.insert(x).second) continue;
      FieldElement beta = lattice.power(x);
      if (region_classify(beta, k, field).kind == RegionKind::InteriorQ && !certify_real_at(beta, k, field)) {
        return finalize(units, x, k, lattice);
      }
    }
    Interval best = res.objective_values.front();
    Rational next = (best * Interval::from_rational(1 + eps, prec)).lower_rational();
    if (next <= lower) throw Error(ErrorCode::InternalError, "slab bound did not increase");
    lower = next;
  }
  throw Error(ErrorCode::InternalError, "slab search did not terminate");
}

bool generator_existence(const UnitSystem& units, const NumberField& field) {
  if (field.r2() == 0) return !units.units.empty();
  if (units.zeta_order > 2) return true;
  for (std::size_t k = field.r1(); k < field.embedding_count(); ++k) {
    for (const auto& u : units.units) {
      if (!certify_real_at(u, k, field)) return true;
    }
  }
  return false;
}

}  // namespace pisot
