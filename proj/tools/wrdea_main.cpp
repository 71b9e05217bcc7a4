// wrdea: returns-to-scale measurement under weight restrictions.
//
//   wrdea run --data <csv> [--restrictions <json>] --out <path>
//             [--format json|csv] [--force-grs] [--tol-* ...]
//   wrdea check [--seed N]
//
// Exit codes: 0 success, 1 validation error, 2 internal error.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wrdea/wrdea.hpp"

namespace {

int run_command(const wrdea::RunConfig& config) {
  const wrdea::DeaInstance instance = wrdea::parse_dataset(config.data_path);
  wrdea::WeightRestrictions restrictions = wrdea::WeightRestrictions::none(
      instance.input_count(), instance.output_count());
  if (!config.restrictions_path.empty()) {
    const auto specs = wrdea::parse_restrictions(config.restrictions_path);
    restrictions = wrdea::compile_restrictions(specs, instance.input_count(),
                                               instance.output_count());
  }
  wrdea::validate_pairing(instance, restrictions);
  wrdea::RunOptions options;
  options.force_grs = config.force_grs;
  const auto reports = wrdea::run_all(instance, restrictions, config.tolerances, options);
  wrdea::write_report(reports, config.output_format, config.output_path);

  int failed = 0;
  for (const auto& report : reports)
    if (report.error) {
      std::cerr << *report.error << "\n";
      ++failed;
    }
  if (failed > 0) {
    std::cerr << failed << " of " << reports.size() << " DMUs failed\n";
    return 2;
  }
  std::cout << reports.size() << " DMUs evaluated, report written to "
            << config.output_path << "\n";
  return 0;
}

int check_command(unsigned long seed) {
  const auto battery = wrdea::standard_battery(seed);
  const auto results = wrdea::run_battery_checks(battery, wrdea::Tolerances{}, seed);
  bool all_passed = true;
  for (const auto& result : results) {
    std::cout << (result.passed ? "[PASS] " : "[FAIL] ") << result.name << ": "
              << result.detail << "\n";
    all_passed = all_passed && result.passed;
  }
  std::cout << (all_passed ? "check: all criteria passed\n"
                           : "check: at least one criterion failed\n");
  return all_passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weight-restricted DEA efficiency and returns-to-scale analysis"};
  app.require_subcommand(1);

  wrdea::RunConfig config;
  std::string format = "json";
  auto* run = app.add_subcommand("run", "Evaluate a dataset and write a report");
  run->add_option("--data", config.data_path, "Dataset CSV (header dmu,x1..xm,y1..ys)")
      ->required();
  run->add_option("--restrictions", config.restrictions_path,
                  "Weight-restriction JSON file");
  run->add_option("--out", config.output_path, "Report output path")->required();
  run->add_option("--format", format, "Report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  run->add_flag("--force-grs", config.force_grs,
                "Identify the reference set for group-1 DMUs too");
  run->add_option("--tol-feas", config.tolerances.solver.feasibility,
                  "Solver feasibility tolerance");
  run->add_option("--tol-opt", config.tolerances.solver.optimality,
                  "Solver reduced-cost tolerance");
  run->add_option("--tol-class", config.tolerances.classification,
                  "Efficiency classification tolerance");
  run->add_option("--tol-support", config.tolerances.support,
                  "Reference-membership tolerance");
  run->add_option("--tol-sign", config.tolerances.sign, "RTS sign tolerance");

  unsigned long seed = 1;
  auto* check = app.add_subcommand("check",
                                   "Run the oracle-backed property suite on the "
                                   "built-in battery");
  check->add_option("--seed", seed, "Seed for the random-objective harness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand("run")) {
      config.output_format =
          format == "csv" ? wrdea::OutputFormat::Csv : wrdea::OutputFormat::Json;
      config.seed = seed;
      return run_command(config);
    }
    return check_command(seed);
  } catch (const wrdea::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
