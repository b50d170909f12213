#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace nlcs {

enum class VerifyLevel { quick, full };

VerifyLevel parse_verify_level(std::string_view text);  // throws InvalidParameter

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::quick;
  // Added to K0 in the algebra checks. Nonzero values exist only to prove
  // that the suite detects a broken generator.
  double k0_offset = 0.0;
};

/// quick: f = 1 and Poschl-Teller (nu = 3) on a cutoff-20 box.
/// full: f = 1 plus every catalog model, q in {0, 1, 2, -2}, cutoff 24.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

/// One line per check: PASS/FAIL, name, measured, tolerance; then a summary.
void write_report(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace nlcs
