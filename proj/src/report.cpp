#include "opcalc/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "opcalc/io.hpp"

namespace opcalc {

namespace {

std::string quoted(const std::string& s) { return Json(s).dump(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// JSON has no literal for non-finite numbers; they are written as strings.
std::string json_number(double v) {
  const std::string text = format_double(v);
  return std::isfinite(v) ? text : quoted(text);
}

}  // namespace

VerificationReport make_report(std::string suite, std::string case_name, std::string anchor, double residual,
                               double tolerance, double runtime_ms) {
  VerificationReport r;
  r.suite = std::move(suite);
  r.case_name = std::move(case_name);
  r.paper_anchor = std::move(anchor);
  r.residual = residual;
  r.tolerance = tolerance;
  r.pass = residual <= tolerance;
  r.runtime_ms = runtime_ms;
  return r;
}

bool all_pass(std::span<const VerificationReport> reports) {
  return std::all_of(reports.begin(), reports.end(), [](const VerificationReport& r) { return r.pass; });
}

void sort_reports(std::vector<VerificationReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const VerificationReport& a, const VerificationReport& b) {
    if (a.suite != b.suite) return a.suite < b.suite;
    return a.case_name < b.case_name;
  });
}

std::string reports_to_json(std::span<const VerificationReport> reports, bool include_runtime) {
  std::ostringstream out;
  std::size_t passed = 0;
  out << "{\n  \"reports\": [";
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& r = reports[k];
    if (r.pass) ++passed;
    out << (k == 0 ? "\n" : ",\n");
    out << "    {\"suite\": " << quoted(r.suite) << ", \"case\": " << quoted(r.case_name)
        << ", \"paper_anchor\": " << quoted(r.paper_anchor) << ", \"residual\": " << json_number(r.residual)
        << ", \"tolerance\": " << json_number(r.tolerance) << ", \"pass\": " << (r.pass ? "true" : "false");
    if (include_runtime) out << ", \"runtime_ms\": " << json_number(r.runtime_ms);
    out << "}";
  }
  out << (reports.empty() ? "]" : "\n  ]");
  out << ",\n  \"summary\": {\"total\": " << reports.size() << ", \"passed\": " << passed
      << ", \"failed\": " << reports.size() - passed << "}\n}\n";
  return out.str();
}

std::string reports_to_csv(std::span<const VerificationReport> reports, bool include_runtime) {
  std::ostringstream out;
  out << "suite,case,paper_anchor,residual,tolerance,pass,runtime_ms\n";
  for (const auto& r : reports) {
    out << csv_field(r.suite) << ',' << csv_field(r.case_name) << ',' << csv_field(r.paper_anchor) << ','
        << format_double(r.residual) << ',' << format_double(r.tolerance) << ',' << (r.pass ? "true" : "false")
        << ',' << (include_runtime ? format_double(r.runtime_ms) : "") << '\n';
  }
  return out.str();
}

}  // namespace opcalc
