#pragma once

// Verification suites: each suite evaluates a list of checks on a structure
// document and collects the measured defects into a report.
//
// Check kinds:
//   identity       holds for every input; always gates the run
//   property       a claim about the structure; gates when the suite was
//                  requested directly or claimed by the document, otherwise
//                  it is recorded as informational
//   conditional    "hypothesis => conclusion" or, for equivalences,
//                  "hypothesis => (A <=> B)"; status is confirmed,
//                  hypothesis-not-met or VIOLATED and only VIOLATED fails
//   informational  measured and reported, never gates

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jgeo/defect.hpp"
#include "jgeo/document.hpp"

namespace jgeo {

inline constexpr const char* kToolVersion = "jgeo-verify 1.0.0";

struct RunConfig {
  int points = 32;
  std::uint64_t seed = 42;
  Tolerance tol;
  int samples = 10;  // random argument tuples per check
  bool parallel = true;
};

struct CheckResult {
  std::string id;
  std::string anchor;  // the identity being measured, as a formula
  std::string kind;    // identity | property | conditional | informational
  std::string status;  // pass | fail | measured | confirmed | hypothesis-not-met | VIOLATED | error
  double max_abs_defect = 0.0;
  double scale = 0.0;
  bool pass = true;
  bool gating = true;
  std::optional<double> hypothesis_defect;
  std::optional<double> value;
  std::string note;
};

struct DefectReport {
  std::string tool_version = kToolVersion;
  std::string chart_id;
  std::string suite;
  std::uint64_t seed = 42;
  int points = 32;
  Tolerance tol;
  std::vector<std::string> notes;
  std::vector<CheckResult> checks;

  /// Conjunction of the gating checks.
  bool overall() const;
};

/// The concrete suites, without "all".
std::vector<std::string> suite_names();

/// Runs one suite, or every applicable suite for "all". Throws UsageError for
/// an unknown suite or when the document lacks an entry the suite needs.
DefectReport run_suite(const std::string& name, const StructureSet& set, const RunConfig& cfg = {});

}  // namespace jgeo
