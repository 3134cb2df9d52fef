// verify: run verification suites on structure documents.
//
//   verify check <suite> (--chart FILE | --builtin NAME) [--points N] [--seed S]
//                [--tol-abs A] [--tol-rel R] [--report PATH] [--format json|text]
//   verify list
//
// Exit status: 0 when every gating check passes, 1 on a failed check,
// 2 on bad input or usage.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "jgeo/document.hpp"
#include "jgeo/error.hpp"
#include "jgeo/report.hpp"
#include "jgeo/suite.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kDefect = 1;
constexpr int kInput = 2;

std::uint64_t default_seed() {
  const char* env = std::getenv("VERIFY_SEED");
  if (!env || !*env) return 42;
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(env, &used);
    if (used == std::string(env).size()) return v;
  } catch (const std::exception&) {
  }
  throw jgeo::UsageError(std::string("VERIFY_SEED is not an unsigned integer: '") + env + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of Jacobi, contact, lcs and metric identities"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "Print the built-in documents and the suites");

  auto* check = app.add_subcommand("check", "Run a suite on a document");
  std::string suite, chart_path, builtin, report_path, format = "json";
  int points = 32;
  std::uint64_t seed = 0;
  double tol_abs = 1e-9, tol_rel = 1e-9;
  check->add_option("suite", suite, "Suite name or 'all'")->required();
  auto* chart_opt = check->add_option("--chart", chart_path, "Structure document (JSON)");
  auto* builtin_opt = check->add_option("--builtin", builtin, "Built-in document name");
  chart_opt->excludes(builtin_opt);
  builtin_opt->excludes(chart_opt);
  check->add_option("--points", points, "Sample points")->check(CLI::PositiveNumber);
  auto* seed_opt = check->add_option("--seed", seed, "Sampling seed (default: $VERIFY_SEED or 42)");
  check->add_option("--tol-abs", tol_abs, "Absolute tolerance")->check(CLI::NonNegativeNumber);
  check->add_option("--tol-rel", tol_rel, "Relative tolerance")->check(CLI::NonNegativeNumber);
  check->add_option("--report", report_path, "Write the report to this file");
  check->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*list) {
      std::cout << "builtins:\n";
      for (const auto& n : jgeo::builtin_names()) std::cout << "  " << n << "\n";
      std::cout << "suites:\n";
      for (const auto& s : jgeo::suite_names()) std::cout << "  " << s << "\n";
      std::cout << "  all\n";
      return kPass;
    }

    if (chart_path.empty() == builtin.empty()) {
      throw jgeo::UsageError("give exactly one of --chart FILE or --builtin NAME");
    }
    jgeo::RunConfig cfg;
    cfg.points = points;
    cfg.seed = seed_opt->count() ? seed : default_seed();
    cfg.tol = {tol_abs, tol_rel};

    jgeo::StructureSet set = builtin.empty() ? jgeo::load_document(chart_path) : jgeo::load_builtin(builtin);
    jgeo::DefectReport report = jgeo::run_suite(suite, set, cfg);

    if (report_path.empty()) {
      std::cout << jgeo::render_report(report, format);
    } else {
      jgeo::emit_report(report, format, report_path);
      std::size_t failed = 0;
      for (const auto& c : report.checks) failed += (c.gating && !c.pass) ? 1 : 0;
      std::cout << (report.overall() ? "PASS" : "FAIL") << "  " << suite << " on " << report.chart_id << ": "
                << report.checks.size() << " checks, " << failed << " failed; report written to " << report_path
                << "\n";
    }
    return report.overall() ? kPass : kDefect;
  } catch (const jgeo::ParseError& e) {
    std::cerr << "verify: expression error: " << e.what() << "\n";
  } catch (const jgeo::SchemaError& e) {
    std::cerr << "verify: schema error: " << e.what() << "\n";
  } catch (const jgeo::DimensionError& e) {
    std::cerr << "verify: dimension error: " << e.what() << "\n";
  } catch (const jgeo::Error& e) {
    std::cerr << "verify: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "verify: " << e.what() << "\n";
  }
  return kInput;
}
