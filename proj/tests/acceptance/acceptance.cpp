// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Usage: acceptance <path to the pisot executable>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "pisot/errors.hpp"
#include "pisot/field_io.hpp"
#include "random_ip.hpp"

using namespace pisot;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  // Exponents and minimal polynomials, compared across precisions.
  std::vector<std::string> fingerprint;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
  return out;
}

std::string join(const IntVector& v) {
  std::vector<std::string> s;
  for (long long x : v) s.push_back(std::to_string(x));
  return join(s);
}

std::string fingerprint(const Report& r) { return "(" + join(r.exponents) + ";" + std::to_string(r.torsion_power) + ")[" + join(r.min_poly) + "]"; }

Report run_report(const LoadedField& L, Algorithm a, const std::string& embedding, const PrecisionPolicy& policy) {
  RunOptions options;
  options.algorithm = a;
  options.embedding = embedding;
  options.policy = policy;
  auto out = run(L, options);
  if (out.index() != 0) throw Error(ErrorCode::InternalError, std::get<NoGenerator>(out).message());
  return std::get<Report>(out);
}

PrecisionPolicy policy_at(Precision initial) {
  PrecisionPolicy p;
  p.initial = initial;
  p.ceiling = std::max(p.ceiling, initial);
  return p;
}

Outcome salem_findmin(Precision prec) {
  Outcome o;
  auto L = testing_support::load("salem101", policy_at(prec));
  auto start = Clock::now();
  Report r = run_report(L, Algorithm::FindMin, "largest-real", policy_at(prec));
  double s = seconds_since(start);
  o.fingerprint.push_back(fingerprint(r));
  if (r.min_poly != std::vector<std::string>{"1", "-101", "5", "-101", "1"}) o.fail("min_poly " + join(r.min_poly));
  if (r.classification != "Salem") o.fail("classified " + r.classification);
  if (s >= 60) o.fail("took " + std::to_string(s) + " s");
  if (o.pass) o.detail = "x^4-101x^3+5x^2-101x+1, Salem, " + std::to_string(s) + " s";
  return o;
}

Outcome salem_cutedge(Precision prec) {
  Outcome o;
  auto L = testing_support::load("salem101", policy_at(prec));
  auto start = Clock::now();
  Report r = run_report(L, Algorithm::CutEdge, "largest-real", policy_at(prec));
  double s = seconds_since(start);
  o.fingerprint.push_back(fingerprint(r));
  const std::vector<std::string> want = {"1", "97520402335817024268676911493103325",
                                         "2556025223049864739934292009524109324899782644859727711036043393301222",
                                         "-60048257490013814123246164511189751124091132508231119928295605154893060", "1"};
  if (r.min_poly != want) o.fail("min_poly " + join(r.min_poly));
  if (r.classification != "Pisot") o.fail("classified " + r.classification);
  if (s >= 600) o.fail("took " + std::to_string(s) + " s");
  if (o.pass) o.detail = "a3, a2, a1 match exactly, Pisot, " + std::to_string(s) + " s";
  return o;
}

bool squarefree(long long d) {
  for (long long p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

Outcome quadratic_suite(Precision prec) {
  Outcome o;
  int fields = 0;
  double slowest = 0;
  for (long long d = 2; d <= 50; ++d) {
    if (!squarefree(d)) continue;
    ++fields;
    FieldDescription fd = quadratic_fundamental_unit(d);
    LoadedField L = load_field(fd, policy_at(prec));
    auto start = Clock::now();
    Report r = run_report(L, Algorithm::CutEdge, "largest-real", policy_at(prec));
    double s = seconds_since(start);
    slowest = std::max(slowest, s);
    o.fingerprint.push_back(std::to_string(d) + fingerprint(r));

    oracle::Lattice lat = oracle::lattice(fd);
    oracle::Optimum want = oracle::brute_force(lat, 1, 12, oracle::Region::InteriorQ);
    const std::string tag = "d=" + std::to_string(d) + ": ";
    if (!want.found) {
      o.fail(tag + "oracle found no Pisot unit");
      continue;
    }
    if (r.classification != "Pisot") o.fail(tag + "classified " + r.classification);
    if (r.exponents != want.exponents) o.fail(tag + "exponents " + join(r.exponents) + " vs " + join(want.exponents));
    double h = std::stod(r.height);
    if (std::fabs(2 * h - want.objective) > 1e-9 * std::max(1.0, want.objective)) o.fail(tag + "height " + r.height);
    if (std::stod(r.approx_value) <= 1) o.fail(tag + "value " + r.approx_value + " is not > 1");
    if (s >= 5) o.fail(tag + std::to_string(s) + " s");
  }
  if (o.pass) o.detail = std::to_string(fields) + " fields, 0 mismatches, slowest " + std::to_string(slowest) + " s";
  return o;
}

Outcome complex_cubic(Precision prec) {
  Outcome o;
  auto d = testing_support::description("cubic");
  auto L = testing_support::load("cubic", policy_at(prec));
  auto start = Clock::now();
  Report r = run_report(L, Algorithm::FindCPisot, "first-complex", policy_at(prec));
  double s = seconds_since(start);
  o.fingerprint.push_back(fingerprint(r));
  if (r.min_poly != std::vector<std::string>{"-1", "0", "1", "1"}) o.fail("min_poly " + join(r.min_poly));
  if (r.classification != "ComplexPisot") o.fail("classified " + r.classification);

  oracle::Lattice lat = oracle::lattice(d);
  oracle::Optimum want = oracle::brute_force(lat, 1, 10, oracle::Region::InteriorQ, true);
  // The real root of x^3 - x - 1.
  oracle::Roots roots = oracle::polynomial_roots(d.defining_polynomial);
  oracle::BigReal closed_form = log(roots.values[0].real()) / 3;
  oracle::BigReal h(r.height);
  if (!want.found || std::fabs(std::stod(r.height) - want.objective / 3) > 1e-10) o.fail("height " + r.height + " vs brute force");
  if (abs(h - closed_form) > oracle::BigReal("1e-10")) o.fail("height " + r.height + " vs log of the real root / 3");
  if (s >= 5) o.fail("took " + std::to_string(s) + " s");
  if (o.pass) o.detail = "x^3+x^2-1, ComplexPisot, h=" + r.height + ", " + std::to_string(s) + " s";
  return o;
}

struct CliRun {
  int status = -1;
  std::string output;
};

CliRun run_cli(const std::string& cli, const std::string& args) {
  CliRun out;
  std::string command = "\"" + cli + "\" " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return out;
  char buffer[512];
  while (fgets(buffer, sizeof buffer, pipe)) out.output += buffer;
  int raw = pclose(pipe);
  out.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

Outcome impossibility(const std::string& cli, Precision prec) {
  Outcome o;
  struct Expect {
    const char* fixture;
    NoGeneratorReason reason;
  };
  for (const auto& [fixture, reason] : {Expect{"qi", NoGeneratorReason::RankZero},
                                        Expect{"sqrt2_sqrtm5", NoGeneratorReason::AllUnitsReal}}) {
    const std::string tag = std::string(fixture) + ": ";
    auto L = testing_support::load(fixture, policy_at(prec));
    RunOptions options;
    options.algorithm = Algorithm::FindCPisot;
    options.embedding = "first-complex";
    options.policy = policy_at(prec);
    auto out = run(L, options);
    if (out.index() != 1) {
      o.fail(tag + "library returned a generator");
    } else if (std::get<NoGenerator>(out).reason != reason) {
      o.fail(tag + "wrong reason: " + std::get<NoGenerator>(out).message());
    } else {
      o.fingerprint.push_back(tag + std::get<NoGenerator>(out).message());
    }
    for (const char* algorithm : {"findcpisot", "cutedge"}) {
      if (reason == NoGeneratorReason::AllUnitsReal && std::string(algorithm) == "cutedge") continue;
      CliRun c = run_cli(cli, "--field \"" + testing_support::fixture_path(fixture) + "\" --algorithm " + algorithm +
                                  " --embedding first-complex --precision " + std::to_string(prec));
      if (c.status != kNoGeneratorExit) o.fail(tag + algorithm + " exit " + std::to_string(c.status) + ": " + c.output);
    }
  }
  if (o.pass) o.detail = "RankZero and AllUnitsReal, exit code 3";
  return o;
}

Outcome intprog_equivalence() {
  Outcome o;
  std::mt19937_64 rng(1729);
  const int instances = 1200;
  int discrepancies = 0, infeasible = 0;
  std::map<std::size_t, int> by_rank;
  for (int i = 0; i < instances; ++i) {
    random_ip::Instance inst = random_ip::make(rng);
    ++by_rank[inst.c.size()];
    for (const Rational& eps : {Rational(0), Rational(1, 1000)}) {
      random_ip::Reference ref = random_ip::enumerate(inst, eps);
      IPProblem p = IPProblem::from_rationals(inst.B, inst.b, inst.c, eps);
      bool same;
      try {
        IPResult got = intprog(p);
        same = ref.feasible && got.solutions == ref.solutions;
      } catch (const Error& e) {
        same = !ref.feasible && e.code() == ErrorCode::Infeasible;
      }
      if (!ref.feasible) ++infeasible;
      if (!same) ++discrepancies;
    }
  }
  std::ostringstream detail;
  detail << instances << " instances x 2 eps (r=1: " << by_rank[1] << ", r=2: " << by_rank[2] << ", r=3: " << by_rank[3]
         << ", infeasible runs: " << infeasible << "), " << discrepancies << " discrepancies";
  o.detail = detail.str();
  if (discrepancies) o.pass = false;
  return o;
}

Outcome invariants() {
  Outcome o;
  const char* const fixtures[] = {"sqrt2",       "cubic",         "salem101",    "sqrt2_sqrtm5", "real_cubic7",
                                  "quartic_mixed", "cyclotomic5", "pure_cubic2", "sextic_mixed"};
  int results = 0, units_checked = 0;
  std::mt19937_64 rng(99);
  for (const char* name : fixtures) {
    const std::string tag = std::string(name) + ": ";
    try {
      auto L = testing_support::load(name);
      const NumberField& f = L.field;
      const std::size_t n = f.degree();
      const Rational dn = delta(n);
      UnitMatrix A = build_unit_matrix(L.units.units, f, 128);
      for (std::size_t j = 0; j < A.rank; ++j) {
        Interval sum(128);
        for (std::size_t i = 0; i < A.rows(); ++i) sum += A.A(i, j);
        if (!sum.contains_zero()) o.fail(tag + "column sum excludes 0");
      }
      auto check_height = [&](const FieldElement& a) {
        Interval h = weil_height(a, f, 128);
        if (Rational(h.upper_rational() * static_cast<long>(n)) < dn) o.fail(tag + "n*h below delta(n)");
      };
      auto check_class = [&](const GeneratorResult& g, std::size_t k) {
        ++results;
        check_height(g.element);
        if (classify_number(g.element, k, f) != g.classification) o.fail(tag + "classification not reproduced");
      };
      for (std::size_t k = 0; k < f.embedding_count(); ++k) {
        GeneratorResult low = find_min(L.units, k, f);
        check_class(low, k);
        if (!certified_le(low.objective, height_bound(A, k).U, [] { return true; })) {
          o.fail(tag + "find_min objective above the height bound");
        }
        GeneratorResult pisot = cut_edge(L.units, k, f);
        check_class(pisot, k);
        const RationalPoly& m = pisot.min_poly;
        if (is_reciprocal(m) && count_unit_circle_roots(m) == m.degree() - 2) o.fail(tag + "cut_edge returned a Salem-type polynomial");
        if (!f.is_real_embedding(k)) {
          auto c = find_cpisot(L.units, k, f);
          if (c.index() == 0) check_class(std::get<GeneratorResult>(c), k);
        }
      }
      // Random non-torsion units.
      std::uniform_int_distribution<int> coord(-3, 3);
      for (int trial = 0; trial < 12; ++trial) {
        IntVector e(L.units.units.size());
        for (auto& x : e) x = coord(rng);
        if (std::all_of(e.begin(), e.end(), [](long long x) { return x == 0; })) continue;
        FieldElement u = unit_from_exponents(L.units, e, trial % L.units.zeta_order, f);
        check_height(u);
        classify_number(u, f.embedding_count() - 1, f);
        ++units_checked;
      }
    } catch (const Error& e) {
      o.fail(tag + e.what());
    }
  }
  if (o.pass) {
    o.detail = std::to_string(results) + " results and " + std::to_string(units_checked) +
               " random units, no CertificateMismatch";
  }
  return o;
}

Outcome guarded(const std::function<Outcome()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    Outcome o;
    o.fail(std::string("threw: ") + e.what());
    return o;
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <pisot executable>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const Precision base = PrecisionPolicy{}.initial;

  std::vector<std::function<Outcome(Precision)>> reproducible = {
      salem_findmin, salem_cutedge, quadratic_suite, complex_cubic,
      [&](Precision p) { return impossibility(cli, p); }};

  bool all = true;
  auto report = [&](int index, const Outcome& o) {
    std::cout << "criterion " << index << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
    all = all && o.pass;
  };

  std::vector<Outcome> first;
  for (std::size_t i = 0; i < reproducible.size(); ++i) {
    first.push_back(guarded([&] { return reproducible[i](base); }));
    report(static_cast<int>(i + 1), first.back());
  }
  report(6, guarded(intprog_equivalence));
  report(7, guarded(invariants));

  Outcome same;
  for (Precision p : {256u, 512u}) {
    for (std::size_t i = 0; i < reproducible.size(); ++i) {
      Outcome again = guarded([&] { return reproducible[i](p); });
      if (!again.pass) {
        same.fail("criterion " + std::to_string(i + 1) + " at " + std::to_string(p) + " bits: " + again.detail);
      } else if (again.fingerprint != first[i].fingerprint) {
        same.fail("criterion " + std::to_string(i + 1) + " differs at " + std::to_string(p) + " bits");
      }
    }
  }
  if (same.pass) same.detail = "criteria 1-5 identical at 256 and 512 bits";
  report(8, same);
  return all ? 0 : 1;
}
