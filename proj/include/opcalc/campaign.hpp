#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opcalc/bch.hpp"
#include "opcalc/io.hpp"
#include "opcalc/lab.hpp"
#include "opcalc/report.hpp"

namespace opcalc {

enum class OutputFormat { Json, Csv };

struct VnDemoConfig {
  ComplexMatrix hamiltonian;
  ComplexMatrix rho0;
  double hbar = 1.0;
  double t_end = 1.0;
  int points = 20;
  int rk4_steps = 2000;
  std::filesystem::path trajectory;  ///< empty: no trajectory file
};

struct SweepConfig {
  DiscretizedFamily family;
  double t = 0.5;
  double s = 0.0;
  SweepOptions options;
};

struct CampaignConfig {
  std::uint64_t seed = 42;
  std::vector<std::string> suites;
  std::vector<std::size_t> dims{2, 4, 8, 16};
  int samples = 8;  ///< random cases per dimension
  std::map<std::string, double> tolerances;  ///< "suite.case" -> tolerance
  std::filesystem::path output;               ///< empty: stdout
  OutputFormat format = OutputFormat::Json;
  bool record_timings = false;
  VnDemoConfig vn_demo;
  SweepConfig sweep;
};

/// The recognised suite names in report order.
const std::vector<std::string>& suite_names();

/// Default tolerance for every case the campaign can emit.
const std::map<std::string, double>& default_tolerances();

/// Parses and validates a campaign document. Every problem is reported as
/// Error{ConfigError} naming the offending field.
CampaignConfig campaign_from_json(const Json& j);
CampaignConfig load_campaign(const std::filesystem::path& path);
/// Defaults with a 2x2 rotating-coherence demo and a diffusion sweep.
CampaignConfig default_campaign();

/// Runs one suite. Results depend only on the config and the suite name.
std::vector<VerificationReport> run_suite(const std::string& suite, const CampaignConfig& cfg);
/// All selected suites, sorted by (suite, case), and writes the report file
/// when cfg.output is set.
std::vector<VerificationReport> run_verify(const CampaignConfig& cfg);
std::string render_reports(const std::vector<VerificationReport>& reports, const CampaignConfig& cfg);

struct VnDemoResult {
  std::vector<VerificationReport> reports;
  VonNeumannReport trajectory;
  std::string trajectory_csv;
};
/// Checks the Hermitian and unit-trace preconditions (Error{ConfigError}),
/// evolves rho and writes the trajectory CSV if a path is configured.
VnDemoResult run_vn_demo(const VnDemoConfig& demo);

struct SweepResult {
  SweepReport report;
  std::string csv;
  bool invariants_hold = false;
};
/// Error{InvalidSize} from the lab is rethrown as Error{ConfigError};
/// Error{BudgetExceeded} passes through.
SweepResult run_sweep(const SweepConfig& sweep);
std::string sweep_to_csv(const SweepReport& report);

}  // namespace opcalc
