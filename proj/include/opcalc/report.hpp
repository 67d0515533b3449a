#pragma once

#include <span>
#include <string>
#include <vector>

namespace opcalc {

/// One checked identity: the measured residual against its tolerance.
struct VerificationReport {
  std::string suite;
  std::string case_name;
  std::string paper_anchor;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double runtime_ms = 0.0;
};

/// pass is residual <= tolerance; NaN residuals fail.
VerificationReport make_report(std::string suite, std::string case_name, std::string anchor, double residual,
                               double tolerance, double runtime_ms = 0.0);

bool all_pass(std::span<const VerificationReport> reports);

/// Stable ordering by (suite, case).
void sort_reports(std::vector<VerificationReport>& reports);

/// {"reports": [...], "summary": {...}} with fixed key order and 17-digit
/// floats. runtime_ms is written only when include_runtime is set, so that
/// repeated runs give identical bytes.
std::string reports_to_json(std::span<const VerificationReport> reports, bool include_runtime = false);
/// Header: suite,case,paper_anchor,residual,tolerance,pass,runtime_ms
std::string reports_to_csv(std::span<const VerificationReport> reports, bool include_runtime = false);

}  // namespace opcalc
