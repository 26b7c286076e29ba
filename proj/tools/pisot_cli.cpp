#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pisot/errors.hpp"
#include "pisot/field_io.hpp"

namespace {

int run_cli(int argc, char** argv) {
  CLI::App app{"Smallest Pisot, Salem or complex Pisot unit generating a number field"};
  std::string field_path, algorithm = "cutedge", embedding = "largest-real", emit = "text", epsilon = "1/1000";
  pisot::PrecisionPolicy policy;
  long long quadratic = 0;

  app.add_option("--field", field_path, "JSON field description");
  app.add_option("--algorithm", algorithm, "findmin | cutedge | findcpisot")
      ->check(CLI::IsMember({"findmin", "cutedge", "findcpisot"}));
  app.add_option("--embedding", embedding, "1-based index, largest-real or first-complex");
  app.add_option("--precision", policy.initial, "initial working precision in bits")->check(CLI::Range(16, 1 << 20));
  app.add_option("--precision-ceiling", policy.ceiling, "precision at which exact fallbacks take over")
      ->check(CLI::Range(16, 1 << 20));
  app.add_option("--epsilon", epsilon, "slab width for findcpisot, as a rational");
  app.add_option("--emit", emit, "text | json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--quadratic", quadratic, "print the field file of Q(sqrt D) and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (quadratic != 0) {
      std::cout << pisot::to_json(pisot::quadratic_fundamental_unit(quadratic)) << "\n";
      return 0;
    }
    if (field_path.empty()) {
      std::cerr << "error: --field is required\n";
      return 2;
    }
    if (policy.ceiling < policy.initial) policy.ceiling = policy.initial;

    pisot::RunOptions options;
    options.algorithm = pisot::parse_algorithm(algorithm);
    options.embedding = embedding;
    options.policy = policy;
    options.epsilon = pisot::parse_rational(epsilon);
    if (options.epsilon < 0) throw pisot::Error(pisot::ErrorCode::ParseError, "epsilon must be >= 0");

    pisot::LoadedField loaded = pisot::parse_field(field_path, policy);
    auto outcome = pisot::run(loaded, options);
    if (auto* none = std::get_if<pisot::NoGenerator>(&outcome)) {
      std::cerr << none->message() << "\n";
      return pisot::kNoGeneratorExit;
    }
    const auto& report = std::get<pisot::Report>(outcome);
    std::cout << (emit == "json" ? pisot::to_json(report) + "\n" : pisot::to_text(report));
    return 0;
  } catch (const pisot::Error& e) {
    if (e.code() == pisot::ErrorCode::RankZero) {
      std::cerr << pisot::NoGenerator{pisot::NoGeneratorReason::RankZero}.message() << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return pisot::exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
