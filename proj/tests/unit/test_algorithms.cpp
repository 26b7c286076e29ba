#include <doctest.h>

#include <cmath>
#include <string>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "pisot/algorithms.hpp"
#include "pisot/errors.hpp"

using namespace pisot;
using testing_support::description;
using testing_support::load;
using testing_support::q;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

struct Case {
  const char* name;
  int bound;
};

// Brute-force boxes large enough to contain the optima.
const Case kCases[] = {{"sqrt2", 12},       {"cubic", 12},         {"salem101", 20},   {"sqrt2_sqrtm5", 12},
                       {"real_cubic7", 12}, {"quartic_mixed", 12}, {"cyclotomic5", 12}, {"pure_cubic2", 12},
                       {"sextic_mixed", 12}};

double tolerance(double x) { return 1e-7 * std::max(1.0, std::fabs(x)); }

}  // namespace

TEST_SUITE("algorithms") {

TEST_CASE("unit system validation") {
  NumberField f(RationalPoly{-2, 0, 1});
  UnitSystem ok{{f.element({1, 1})}, f.element({-1}), 2};
  CHECK_NOTHROW(validate_units(ok, f));
  UnitSystem none{{}, f.element({-1}), 2};
  CHECK(code_of([&] { validate_units(none, f); }) == ErrorCode::WrongRank);
  UnitSystem two{{f.element({1, 1}), f.element({3, 2})}, f.element({-1}), 2};
  CHECK(code_of([&] { validate_units(two, f); }) == ErrorCode::WrongRank);
  UnitSystem not_unit{{f.element({2, 1})}, f.element({-1}), 2};
  CHECK(code_of([&] { validate_units(not_unit, f); }) == ErrorCode::NotAUnit);
  UnitSystem bad_zeta{{f.element({1, 1})}, f.element({1, 1}), 2};
  CHECK(code_of([&] { validate_units(bad_zeta, f); }) == ErrorCode::BadTorsion);
  UnitSystem bad_order{{f.element({1, 1})}, f.element({-1}), 4};
  CHECK(code_of([&] { validate_units(bad_order, f); }) == ErrorCode::BadTorsion);
  UnitSystem dependent{{f.element({3, 2})}, f.element({-1}), 2};
  CHECK_NOTHROW(validate_units(dependent, f));  // a unit of index 2 still has full rank
}

TEST_CASE("units from exponents") {
  NumberField f(RationalPoly{-2, 0, 1});
  UnitSystem u{{f.element({1, 1})}, f.element({-1}), 2};
  CHECK(unit_from_exponents(u, {0}, 0, f) == f.one());
  CHECK(unit_from_exponents(u, {2}, 0, f) == f.element({3, 2}));
  CHECK(unit_from_exponents(u, {-1}, 1, f) == f.element({1, -1}));
  CHECK(unit_from_exponents(u, {1}, 3, f) == f.element({-1, -1}));

  auto L = load("quartic_mixed");
  FieldElement a = unit_from_exponents(L.units, {2, -1}, 1, L.field);
  FieldElement b = mul_mod(power(L.units.units[0], 2, L.field), inverse(L.units.units[1], L.field), L.field);
  CHECK(a == -b);
}

TEST_CASE("height bound and witness") {
  NumberField f(RationalPoly{-2, 0, 1});
  UnitMatrix A = build_unit_matrix({f.element({1, 1})}, f, 128);
  HeightBound hb = height_bound(A, 1);
  CHECK(hb.witness == IntVector{1});
  CHECK(hb.U >= q("881373587019543/1000000000000000"));
  CHECK(hb.U <= q("8815/10000"));
  CHECK(mpz_popcount(hb.U.get_den_mpz_t()) == 1);

  NumberField c(RationalPoly{-1, -1, 0, 1});
  UnitMatrix B = build_unit_matrix({c.generator()}, c, 128);
  HeightBound cb = height_bound(B, 1);
  CHECK(cb.witness == IntVector{-1});
  CHECK(std::fabs(mpq_get_d(cb.U.get_mpq_t()) - 0.281199574322962) < 1e-3);

  auto qi = load("qi");
  CHECK(code_of([&] { height_bound(build_unit_matrix({}, qi.field, 64), 0); }) == ErrorCode::RankZero);
}

TEST_CASE("golden ratio field") {
  NumberField f(RationalPoly{-1, -1, 1});
  UnitSystem u{{f.generator()}, f.element({-1}), 2};
  GeneratorResult m = find_min(u, 1, f);
  GeneratorResult c = cut_edge(u, 1, f);
  CHECK(m.height.mid_double() == doctest::Approx(0.240605912529802));
  CHECK(c.height.mid_double() == doctest::Approx(0.240605912529802));
  CHECK(c.min_poly == RationalPoly{-1, -1, 1});
  CHECK(c.classification == NumberClass::Pisot);
}

TEST_CASE("smallest Pisot cubic") {
  auto L = load("cubic");
  auto out = find_cpisot(L.units, 1, L.field);
  REQUIRE(out.index() == 0);
  const auto& g = std::get<GeneratorResult>(out);
  CHECK(g.min_poly == RationalPoly{-1, 0, 1, 1});
  CHECK(g.classification == NumberClass::ComplexPisot);
  const double plastic = 1.324717957244746;
  CHECK(std::fabs(g.height.mid_double() - std::log(plastic) / 3) < 1e-12);
  CHECK(g.height.contains(Interval::point(0, 64)) == false);
}

TEST_CASE("minimal units agree with brute force") {
  for (const auto& [name, bound] : kCases) {
    auto d = description(name);
    auto L = load(name);
    oracle::Lattice lat = oracle::lattice(d);
    for (std::size_t k = 0; k < L.field.embedding_count(); ++k) {
      CAPTURE(std::string(name));
      CAPTURE(k);
      oracle::Optimum want = oracle::brute_force(lat, static_cast<int>(k), bound, oracle::Region::ClosureQ);
      REQUIRE(want.found);
      GeneratorResult got = find_min(L.units, k, L.field);
      CHECK(std::fabs(got.objective.mid_double() - want.objective) < tolerance(want.objective));
      CHECK(got.height.mid_double() * static_cast<double>(lat.n) >= mpq_get_d(delta(lat.n).get_mpq_t()));
    }
  }
}

TEST_CASE("Pisot generators agree with brute force") {
  for (const auto& [name, bound] : kCases) {
    auto d = description(name);
    auto L = load(name);
    oracle::Lattice lat = oracle::lattice(d);
    const bool generates = generator_existence(L.units, L.field);
    for (std::size_t k = 0; k < L.field.embedding_count(); ++k) {
      CAPTURE(std::string(name));
      CAPTURE(k);
      oracle::Optimum want = oracle::brute_force(lat, static_cast<int>(k), bound, oracle::Region::InteriorQ);
      REQUIRE(want.found);
      GeneratorResult got = cut_edge(L.units, k, L.field);
      CHECK(std::fabs(got.objective.mid_double() - want.objective) < tolerance(want.objective));
      CHECK(got.region.kind == RegionKind::InteriorQ);
      CHECK(got.classification != NumberClass::Salem);
      if (generates) CHECK(got.min_poly.degree() == static_cast<int>(lat.n));
      GeneratorResult low = find_min(L.units, k, L.field);
      CHECK(low.objective.mid_double() <= got.objective.mid_double() + tolerance(got.objective.mid_double()));
    }
  }
}

TEST_CASE("complex Pisot generators agree with brute force") {
  for (const auto& [name, bound] : kCases) {
    auto d = description(name);
    auto L = load(name);
    oracle::Lattice lat = oracle::lattice(d);
    for (std::size_t k = L.field.r1(); k < L.field.embedding_count(); ++k) {
      CAPTURE(std::string(name));
      CAPTURE(k);
      oracle::Optimum want = oracle::brute_force(lat, static_cast<int>(k), bound, oracle::Region::InteriorQ, true);
      auto out = find_cpisot(L.units, k, L.field, 0);
      if (!want.found) {
        CHECK(out.index() == 1);
        continue;
      }
      REQUIRE(out.index() == 0);
      const auto& got = std::get<GeneratorResult>(out);
      CHECK(std::fabs(got.objective.mid_double() - want.objective) < tolerance(want.objective));
      CHECK(got.classification == NumberClass::ComplexPisot);
      CHECK_FALSE(certify_real_at(got.element, k, L.field));
    }
  }
}

TEST_CASE("Salem field") {
  auto L = load("salem101");
  GeneratorResult m = find_min(L.units, 1, L.field);
  CHECK(m.classification == NumberClass::Salem);
  CHECK(m.region == RegionTag{RegionKind::Edge, 1, 0});
  CHECK(m.min_poly == RationalPoly{1, -101, 5, -101, 1});
  GeneratorResult c = cut_edge(L.units, 1, L.field);
  CHECK(c.classification == NumberClass::Pisot);
  CHECK(c.objective.mid_double() > m.objective.mid_double());
  // Powers of the Salem number stay on the same edge.
  for (long long e = 2; e <= 3; ++e) {
    FieldElement s = power(m.element, e, L.field);
    CHECK(region_classify(s, 1, L.field) == m.region);
    CHECK(classify_number(s, 1, L.field) == NumberClass::Salem);
  }
}

TEST_CASE("torsion normalization") {
  NumberField f(RationalPoly{-2, 0, 1});
  UnitSystem u{{f.element({1, 1})}, f.element({-1}), 2};
  auto [a, t] = normalize_torsion(f.element({-1, -1}), 1, u, f);
  CHECK(t == 1);
  CHECK(a == f.element({1, 1}));
  auto [b, s] = normalize_torsion(f.element({1, -1}), 0, u, f);
  CHECK(s == 0);
  CHECK(b == f.element({1, -1}));

  auto L = load("cyclotomic5");
  for (std::size_t k = 0; k < L.field.embedding_count(); ++k) {
    auto [c, r] = normalize_torsion(L.units.units[0], k, L.units, L.field);
    CHECK(r >= 0);
    CHECK(r < L.units.zeta_order);
    CHECK_FALSE(certify_real_at(c, k, L.field));
  }
}

TEST_CASE("generator existence") {
  CHECK(generator_existence(load("sqrt2").units, load("sqrt2").field));
  auto qi = load("qi");
  CHECK(generator_existence(qi.units, qi.field));
  NumberField cm(RationalPoly{49, 0, 6, 0, 1});
  UnitSystem u{{FieldElement({1, q("1/14"), 0, q("-1/14")})}, cm.element({-1}), 2};
  validate_units(u, cm);
  CHECK_FALSE(generator_existence(u, cm));
  auto none = find_cpisot(u, 0, cm);
  REQUIRE(none.index() == 1);
  CHECK(std::get<NoGenerator>(none).reason == NoGeneratorReason::AllUnitsReal);
  auto rank_zero = find_cpisot(qi.units, 0, qi.field);
  REQUIRE(rank_zero.index() == 1);
  CHECK(std::get<NoGenerator>(rank_zero).reason == NoGeneratorReason::RankZero);
}

TEST_CASE("results do not depend on the starting precision") {
  for (Precision p : {64u, 256u, 1024u}) {
    auto L = load("quartic_mixed", PrecisionPolicy{p, 4096});
    GeneratorResult g = cut_edge(L.units, 1, L.field);
    CHECK(g.exponents == IntVector{2, -1});
  }
}

}
