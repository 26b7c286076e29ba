#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "pisot/errors.hpp"
#include "pisot/number_field.hpp"
#include "pisot/polynomial.hpp"

using namespace pisot;
using testing_support::q;

namespace {

FieldElement random_element(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  std::vector<Rational> c;
  for (std::size_t i = 0; i < n; ++i) {
    Rational x(num(rng), den(rng));
    x.canonicalize();
    c.push_back(x);
  }
  return FieldElement(c);
}

bool encloses(const Interval& x, const oracle::BigReal& v) {
  return oracle::to_big(x.lower_rational()) <= v && v <= oracle::to_big(x.upper_rational());
}

}  // namespace

TEST_SUITE("exactnum") {

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-7") == -7);
  CHECK(to_string(parse_rational("10/4")) == "5/2");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("interval arithmetic encloses exact rational results") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 97);
  for (int i = 0; i < 500; ++i) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng));
    a.canonicalize();
    b.canonicalize();
    Interval A = Interval::from_rational(a, 64), B = Interval::from_rational(b, 64);
    auto inside = [](const Interval& x, const Rational& v) { return x.lower_rational() <= v && v <= x.upper_rational(); };
    CHECK(inside(A + B, a + b));
    CHECK(inside(A - B, a - b));
    CHECK(inside(A * B, a * b));
    if (b != 0) CHECK(inside(A / B, a / b));
  }
}

TEST_CASE("interval log and sqrt enclose reference values") {
  Interval two = Interval::point(2, 200);
  oracle::BigReal ref_log = log(oracle::BigReal(2));
  oracle::BigReal ref_sqrt = sqrt(oracle::BigReal(2));
  CHECK(encloses(log(two), ref_log));
  CHECK(encloses(sqrt(two), ref_sqrt));
  CHECK(log(two).width_exponent() < -190);
}

TEST_CASE("polynomial division and gcd") {
  RationalPoly a{-1, 0, 0, 1};  // x^3 - 1
  RationalPoly b{-1, 1};        // x - 1
  PolyDivision d = divmod(a, b);
  CHECK(d.remainder.is_zero());
  CHECK(d.quotient == RationalPoly{1, 1, 1});
  CHECK(gcd(RationalPoly{-1, 0, 1}, RationalPoly{1, 1}) == RationalPoly{1, 1});
  CHECK(is_squarefree(RationalPoly{-2, 0, 1}));
  CHECK_FALSE(is_squarefree(RationalPoly{1, 2, 1}));
}

TEST_CASE("reciprocal test") {
  CHECK(is_reciprocal(RationalPoly{1, -101, 5, -101, 1}));
  CHECK_FALSE(is_reciprocal(RationalPoly{-1, -1, 0, 1}));
  CHECK(is_reciprocal(RationalPoly{-1, 1}));
  CHECK(is_reciprocal(RationalPoly{1, 1}));
  CHECK_FALSE(is_palindromic(RationalPoly{-1, 1}));
  CHECK(is_palindromic(RationalPoly{1, -101, 5, -101, 1}));
}

TEST_CASE("unit circle root counts") {
  CHECK(count_unit_circle_roots(RationalPoly{1, -101, 5, -101, 1}) == 2);
  CHECK(count_unit_circle_roots(RationalPoly{-2, 0, 1}) == 0);
  CHECK(count_unit_circle_roots(RationalPoly{1, 0, 1}) == 2);
  CHECK(count_unit_circle_roots(RationalPoly{1, 1, 1, 1, 1}) == 4);
  CHECK(count_unit_circle_roots(RationalPoly{-1, 1}) == 1);
  CHECK(count_unit_circle_roots(RationalPoly{1, -1, -1, -1, 1}) == 2);
  CHECK_THROWS_AS(count_unit_circle_roots(RationalPoly{0, 1}), Error);
}

TEST_CASE("circle counts add up to the degree") {
  const std::vector<RationalPoly> corpus = {
      {1, -101, 5, -101, 1}, {-2, 0, 1}, {1, 0, 1}, {-1, -1, 0, 1}, {1, 1, 1, 1, 1},
      {-1, -1, 0, 0, 1},     {49, 0, 6, 0, 1}, {1, -1, -1, -1, 1}, {-1, -1, 0, 0, 0, 0, 1}, {1, 3, -7, 3, 1}};
  for (const auto& p : corpus) {
    CircleCounts c = count_roots_by_circle(p);
    CHECK(c.inside + c.on + c.outside == p.degree());
    CHECK(c.on == count_unit_circle_roots(p));
  }
}

TEST_CASE("Sturm counts") {
  SturmSequence s(RationalPoly{-2, 0, 1});
  CHECK(s.count_real_roots() == 2);
  CHECK(s.count_roots(0, 2) == 1);
  CHECK(SturmSequence(RationalPoly{-1, -1, 0, 1}).count_real_roots() == 1);
  CHECK(SturmSequence(RationalPoly{1, -101, 5, -101, 1}).count_real_roots() == 2);
}

TEST_CASE("root isolation signature and ordering") {
  RootIsolation sq(RationalPoly{-2, 0, 1}, 64);
  CHECK(sq.real_count() == 2);
  CHECK(sq.complex_pair_count() == 0);
  CHECK(sq.enclosure(0).real_part.mid_double() == doctest::Approx(-std::sqrt(2.0)));
  CHECK(sq.enclosure(1).real_part.mid_double() == doctest::Approx(std::sqrt(2.0)));

  RootIsolation cubic(RationalPoly{-1, -1, 0, 1}, 64);
  CHECK(cubic.real_count() == 1);
  CHECK(cubic.complex_pair_count() == 1);
  CHECK(cubic.enclosure(0).real_part.mid_double() == doctest::Approx(1.324717957244746));
  CHECK(cubic.enclosure(1).real_part.mid_double() == doctest::Approx(-0.662358978622373));
  CHECK(cubic.enclosure(1).imag_part.mid_double() == doctest::Approx(0.562279512062301));

  RootIsolation salem(RationalPoly{1, -101, 5, -101, 1}, 64);
  CHECK(salem.real_count() == 2);
  CHECK(salem.complex_pair_count() == 1);
  CHECK_THROWS_AS(RootIsolation(RationalPoly{1, 2, 1}, 64), Error);
}

TEST_CASE("root enclosures contain independently computed roots") {
  for (const char* name : {"salem101", "sextic_mixed", "real_cubic7", "sqrt2_sqrtm5", "cyclotomic5"}) {
    auto d = testing_support::description(name);
    oracle::Roots ref = oracle::polynomial_roots(d.defining_polynomial);
    RootIsolation iso(RationalPoly::from_integers(d.defining_polynomial), 200);
    REQUIRE(static_cast<int>(iso.real_count()) == ref.r1);
    REQUIRE(static_cast<int>(iso.complex_pair_count()) == ref.r2);
    for (std::size_t i = 0; i < iso.size(); ++i) {
      ComplexEnclosure e = iso.enclosure(i);
      CHECK(encloses(e.real_part, ref.values[i].real()));
      CHECK(encloses(e.imag_part, ref.values[i].imag()));
    }
  }
}

TEST_CASE("refinement is nested and deterministic") {
  RootIsolation a(RationalPoly{-1, -1, 0, 1}, 64);
  ComplexEnclosure before = a.enclosure(1);
  a.refine(1, 300);
  ComplexEnclosure after = a.enclosure(1);
  CHECK(before.real_part.contains(after.real_part));
  CHECK(before.imag_part.contains(after.imag_part));
  CHECK(after.real_part.width_exponent() < -290);
  RootIsolation b(RationalPoly{-1, -1, 0, 1}, 300);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(b.enclosure(i).real_part.mid_double() == a.enclosure(i).real_part.mid_double());
  }
}

TEST_CASE("mul_mod and inverse") {
  NumberField f(RationalPoly{-2, 0, 1});
  FieldElement u = f.element({1, 1});
  CHECK(mul_mod(u, u, f) == f.element({3, 2}));
  CHECK(mul_mod(u, f.one(), f) == u);
  CHECK(inverse(u, f) == f.element({-1, 1}));
  CHECK(inverse(f.one(), f) == f.one());
  CHECK_THROWS_AS(inverse(f.zero(), f), Error);

  NumberField c(RationalPoly{-1, -1, 0, 1});
  FieldElement t = c.generator();
  CHECK(mul_mod(t, mul_mod(t, t, c), c) == c.element({1, 1}));
  CHECK(inverse(t, c) == c.element({-1, 0, 1}));
  CHECK(power(t, -1, c) == c.element({-1, 0, 1}));
  CHECK(power(t, 0, c) == c.one());
}

TEST_CASE("a times its inverse has minimal polynomial x - 1") {
  std::mt19937_64 rng(11);
  NumberField f(RationalPoly{1, -101, 5, -101, 1});
  for (int i = 0; i < 40; ++i) {
    FieldElement a = random_element(rng, 4);
    if (a.is_zero()) continue;
    CHECK(minimal_polynomial(mul_mod(a, inverse(a, f), f), f) == RationalPoly{-1, 1});
  }
}

TEST_CASE("minimal polynomials") {
  NumberField f(RationalPoly{-2, 0, 1});
  CHECK(minimal_polynomial(f.generator(), f) == f.defining_polynomial());
  CHECK(minimal_polynomial(f.element({0, 0}), f) == RationalPoly{0, 1});
  CHECK(minimal_polynomial(mul_mod(f.generator(), f.generator(), f), f) == RationalPoly{-2, 1});
  NumberField s(RationalPoly{1, -101, 5, -101, 1});
  CHECK(minimal_polynomial(s.generator(), s) == RationalPoly{1, -101, 5, -101, 1});
  NumberField cm(RationalPoly{49, 0, 6, 0, 1});
  FieldElement u({q("1"), q("1/14"), q("0"), q("-1/14")});
  CHECK(minimal_polynomial(u, cm) == RationalPoly{-1, -2, 1});
}

TEST_CASE("minimal polynomial degree divides n") {
  std::mt19937_64 rng(5);
  NumberField f(RationalPoly{49, 0, 6, 0, 1});
  for (int i = 0; i < 30; ++i) {
    FieldElement a = random_element(rng, 4);
    CHECK(4 % minimal_polynomial(a, f).degree() == 0);
  }
}

TEST_CASE("field norms") {
  NumberField f(RationalPoly{-2, 0, 1});
  CHECK(field_norm(f.element({1, 1}), f) == -1);
  CHECK(field_norm(f.element({2}), f) == 4);
  NumberField c(RationalPoly{-1, -1, 0, 1});
  CHECK(field_norm(c.generator(), c) == 1);
}

TEST_CASE("norm is multiplicative") {
  std::mt19937_64 rng(3);
  NumberField f(RationalPoly{-1, -1, 0, 0, 0, 0, 1});
  for (int i = 0; i < 25; ++i) {
    FieldElement a = random_element(rng, 6), b = random_element(rng, 6);
    CHECK(field_norm(mul_mod(a, b, f), f) == field_norm(a, f) * field_norm(b, f));
  }
}

TEST_CASE("embeddings") {
  NumberField f(RationalPoly{-2, 0, 1});
  ComplexEnclosure e = embed(f.element({1, 1}), 1, f, 100);
  CHECK(e.real_part.mid_double() == doctest::Approx(1 + std::sqrt(2.0)));
  CHECK(mpfr_zero_p(e.imag_part.lower()));
  CHECK(mpfr_zero_p(e.imag_part.upper()));
  CHECK(e.real_part.width_exponent() <= -100 + 2);

  ComplexEnclosure r = embed(f.element({q("3/7")}), 0, f, 100);
  CHECK(r.real_part.lower_rational() <= Rational(3, 7));
  CHECK(Rational(3, 7) <= r.real_part.upper_rational());

  NumberField c(RationalPoly{-1, -1, 0, 1});
  ComplexEnclosure t = embed(c.generator(), 1, c, 100);
  CHECK(t.box().modulus().mid_double() == doctest::Approx(1 / std::sqrt(1.324717957244746)));
}

TEST_CASE("embeddings of random elements cover the conjugates of their minimal polynomial") {
  std::mt19937_64 rng(17);
  auto d = testing_support::description("quartic_mixed");
  NumberField f(RationalPoly::from_integers(d.defining_polynomial));
  oracle::Roots ref = oracle::polynomial_roots(d.defining_polynomial);
  for (int i = 0; i < 10; ++i) {
    FieldElement a = random_element(rng, 4);
    for (std::size_t k = 0; k < f.embedding_count(); ++k) {
      ComplexEnclosure e = embed(a, k, f, 120);
      oracle::BigComplex v = oracle::evaluate(a.coefficients(), ref.values[k]);
      CHECK(encloses(e.real_part, v.real()));
      if (k >= f.r1()) CHECK(encloses(e.imag_part, v.imag()));
    }
  }
}

TEST_CASE("exact reality test at complex embeddings") {
  NumberField c(RationalPoly{-1, -1, 0, 1});
  CHECK(certify_real_at(c.element({q("3/2")}), 1, c));
  CHECK_FALSE(certify_real_at(c.generator(), 1, c));
  NumberField cm(RationalPoly{49, 0, 6, 0, 1});
  FieldElement u({q("1"), q("1/14"), q("0"), q("-1/14")});
  CHECK(certify_real_at(u, 0, cm));
  CHECK(certify_real_at(u, 1, cm));
  CHECK_FALSE(certify_real_at(cm.generator(), 0, cm));
}

TEST_CASE("exact unit circle test") {
  NumberField s(RationalPoly{1, -101, 5, -101, 1});
  CHECK(on_unit_circle_at(s.generator(), 2, s));
  CHECK_FALSE(on_unit_circle_at(s.generator(), 1, s));
  NumberField z(RationalPoly{1, 1, 1, 1, 1});
  CHECK(on_unit_circle_at(z.generator(), 0, z));
  CHECK(on_unit_circle_at(z.generator(), 1, z));
}

TEST_CASE("field construction errors") {
  CHECK_THROWS_AS(NumberField(RationalPoly{1, 2, 1}), Error);
  CHECK_THROWS_AS(NumberField(RationalPoly{1, 0, 2}), Error);
  NumberField f(RationalPoly{-2, 0, 1});
  CHECK_THROWS_AS(f.element({1, 2, 3}), Error);
}

TEST_CASE("concurrent refinement on a shared field") {
  NumberField f(RationalPoly{1, -101, 5, -101, 1});
  std::vector<std::thread> threads;
  std::vector<double> values(4);
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] { values[t] = f.root(2, 200 + 100 * t).real_part.mid_double(); });
  }
  for (auto& th : threads) th.join();
  for (double v : values) CHECK(v == doctest::Approx(values[0]));
}

}
