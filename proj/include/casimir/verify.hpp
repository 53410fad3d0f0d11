#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "casimir/run_config.hpp"

namespace casimir {

struct CheckResult {
  enum class Status { pass, fail, skip };

  std::string name;
  Status status = Status::fail;
  double measured = 0.0;   // measured error or value, see detail
  double threshold = 0.0;  // bound the measurement is held to
  std::string detail;
};

struct VerifyOptions {
  // Mutation hook for the self-test: offset added to the third plate
  // coefficient in the closed-form route only, so a nonzero value must
  // break closed-vs-numeric agreement.
  double c3_perturbation = 0.0;
};

// Runs the full invariant and reference-value suite against the given
// configuration.  Checks tied to the reference geometry or to conductivity
// corrections are skipped (with a marker) when the config does not apply.
std::vector<CheckResult> run_verify_checks(const RunConfig& config,
                                           const VerifyOptions& options = {});

bool all_checks_passed(const std::vector<CheckResult>& checks);

// One `[PASS]/[FAIL]/[SKIP] name measured threshold detail` line per check.
void print_check_lines(std::ostream& out,
                       const std::vector<CheckResult>& checks);

// Full report: tool version, config echo, check lines, per-separation
// amplitude/inversion table, power-law fit and confidence interval.
// Reproducible byte-for-byte for a fixed config and seed.
std::string format_run_report(const RunConfig& config,
                              const std::vector<CheckResult>& checks);

}  // namespace casimir
