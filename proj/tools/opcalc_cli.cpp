// opcalc: run verification campaigns, the von Neumann demo, refinement
// sweeps, or a one-shot product logarithm.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "opcalc/bch.hpp"
#include "opcalc/campaign.hpp"
#include "opcalc/error.hpp"
#include "opcalc/io.hpp"

namespace {

using namespace opcalc;

struct CommonFlags {
  std::string config;
  std::string suite;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  bool verbose = false;
};

CampaignConfig resolve(const CommonFlags& flags) {
  CampaignConfig cfg = flags.config.empty() ? default_campaign() : load_campaign(flags.config);
  if (!flags.suite.empty()) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), flags.suite) == names.end()) {
      throw Error(ErrorKind::ConfigError, "--suite: unknown suite '" + flags.suite + "'");
    }
    cfg.suites = {flags.suite};
  }
  if (!flags.out.empty()) cfg.output = flags.out;
  if (flags.format == "json") cfg.format = OutputFormat::Json;
  if (flags.format == "csv") cfg.format = OutputFormat::Csv;
  if (flags.seed) cfg.seed = *flags.seed;
  return cfg;
}

void print_summary(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports) {
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.suite << "." << r.case_name << "  residual=" << format_double(r.residual)
              << " tolerance=" << format_double(r.tolerance) << "\n";
  }
}

int cmd_verify(const CommonFlags& flags) {
  const CampaignConfig cfg = resolve(flags);
  const auto reports = run_verify(cfg);
  if (cfg.output.empty()) std::cout << render_reports(reports, cfg);
  if (flags.verbose) print_summary(reports);
  const auto failed = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return !r.pass; });
  std::cerr << reports.size() - failed << "/" << reports.size() << " checks passed\n";
  return all_pass(reports) ? 0 : 1;
}

int cmd_vn_demo(const CommonFlags& flags) {
  CampaignConfig cfg = resolve(flags);
  if (!flags.out.empty()) cfg.vn_demo.trajectory = flags.out;
  const VnDemoResult result = run_vn_demo(cfg.vn_demo);
  if (cfg.vn_demo.trajectory.empty()) std::cout << result.trajectory_csv;
  print_summary(result.reports);
  return all_pass(result.reports) ? 0 : 1;
}

int cmd_sweep(const CommonFlags& flags) {
  const CampaignConfig cfg = resolve(flags);
  const SweepResult result = run_sweep(cfg.sweep);
  if (cfg.output.empty()) {
    std::cout << result.csv;
  } else {
    write_text_file(cfg.output, result.csv);
  }
  std::cerr << "growth slope " << format_double(result.report.growth_slope) << ", band ratio "
            << format_double(result.report.band_ratio) << ", invariants "
            << (result.invariants_hold ? "hold" : "violated") << "\n";
  return result.invariants_hold ? 0 : 1;
}

ComplexMatrix read_matrix(const std::string& path) {
  const Json j = read_json_file(path);
  if (j.is_object() && j.contains("matrix")) return matrix_from_json(j["matrix"], path + ":matrix");
  return matrix_from_json(j, path);
}

int cmd_bch(const std::string& x_path, const std::string& y_path) {
  const ComplexMatrix x = read_matrix(x_path);
  const ComplexMatrix y = read_matrix(y_path);
  if (x.dim() != y.dim()) throw Error(ErrorKind::DimensionMismatch, "X and Y differ in size");
  const ComplexMatrix exact = log_product(x, y);
  // One compact line per matrix keeps the output diffable.
  std::cout << "{\n  \"log_product\": " << matrix_to_json(exact).dump() << ",\n  \"truncations\": [\n";
  for (int order = 1; order <= 4; ++order) {
    const ComplexMatrix z = bch_truncated(x, y, order);
    const Json entry{{"order", order}, {"residual", norm_1(z - exact)}, {"matrix", matrix_to_json(z)}};
    std::cout << "    " << entry.dump() << (order < 4 ? ",\n" : "\n");
  }
  std::cout << "  ]\n}\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator-calculus verification tool"};
  app.require_subcommand(1);

  CommonFlags flags;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "Campaign config (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--out", flags.out, "Output path");
    sub->add_option("--seed", flags.seed, "Override the config seed");
    sub->add_flag("-v,--verbose", flags.verbose, "Print one line per check");
  };

  CLI::App* verify = app.add_subcommand("verify", "Run verification suites");
  add_common(verify);
  verify->add_option("--suite", flags.suite, "Run only this suite");
  verify->add_option("--format", flags.format, "Report format")->check(CLI::IsMember({"json", "csv"}));

  CLI::App* vn = app.add_subcommand("vn-demo", "Density-matrix evolution demo");
  add_common(vn);

  CLI::App* sweep = app.add_subcommand("sweep", "Mesh-refinement sweep");
  add_common(sweep);

  std::string x_path, y_path;
  CLI::App* bch = app.add_subcommand("bch", "Print Log(e^X e^Y) and its truncations");
  bch->add_option("X", x_path, "Matrix JSON file")->required()->check(CLI::ExistingFile);
  bch->add_option("Y", y_path, "Matrix JSON file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(flags);
    if (vn->parsed()) return cmd_vn_demo(flags);
    if (sweep->parsed()) return cmd_sweep(flags);
    if (bch->parsed()) return cmd_bch(x_path, y_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
