#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "opcalc/campaign.hpp"
#include "opcalc/io.hpp"

using namespace opcalc;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("opcalc_test_" + name);
}

}  // namespace

TEST_CASE("matrix JSON round trip") {
  const ComplexMatrix m{{1.0, cplx{0.5, -2.0}}, {cplx{0, 1e-300}, -3.25}};
  CHECK(matrix_from_json(Json::parse(matrix_to_json(m).dump())) == m);
  CHECK(matrix_from_json(Json::parse("[[1, 2], [3, 4]]"))(1, 0) == cplx{3.0, 0.0});
}

TEST_CASE("malformed matrices name the field") {
  try {
    matrix_from_json(Json::parse("[[1, 2], [3]]"), "params.matrix");
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigError);
    CHECK(std::string(e.what()).find("params.matrix") != std::string::npos);
  }
  CHECK_ERROR_KIND(matrix_from_json(Json::parse("[[1, \"x\"], [3, 4]]")), ErrorKind::ConfigError);
  CHECK_ERROR_KIND(matrix_from_json(Json::parse("[]")), ErrorKind::ConfigError);
}

TEST_CASE("JSON syntax errors carry line and column") {
  try {
    parse_json_text("{\n  \"a\": 1,\n  \"b\": ]\n}", "cfg.json");
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigError);
    CHECK(std::string(e.what()).find("cfg.json:3:") != std::string::npos);
  }
  CHECK_ERROR_KIND(read_json_file("/nonexistent/opcalc.json"), ErrorKind::IoError);
}

TEST_CASE("generators from JSON") {
  const Json affine = Json::parse(R"({"id": "g1", "kind": "affine",
      "params": {"matrix0": [[0, 1], [0, 0]], "matrix1": [[1, 0], [0, 1]]}})");
  const GeneratorSpec g = generator_from_json(affine);
  CHECK(g.id == "g1");
  CHECK(g.dim == 2);
  CHECK(g.eval(0.5)(0, 0) == cplx{0.5, 0.0});

  const GeneratorSpec d = generator_from_json(Json::parse(R"({"kind": "diffusion", "params": {"n": 8, "viscosity": 0.5}})"));
  CHECK(d.dim == 8);
  CHECK(norm_1(d.eval(0.0)) == doctest::Approx(4 * 0.5 * 64));

  const GeneratorSpec m = generator_from_json(Json::parse(
      R"({"kind": "modulated", "params": {"matrix": [[1]], "modulation": {"type": "affine", "offset": 2, "slope": 3}}})"));
  CHECK(m.eval(1.0)(0, 0) == cplx{5.0, 0.0});

  CHECK_ERROR_KIND(generator_from_json(Json::parse(R"({"kind": "mystery"})")), ErrorKind::ConfigError);
  CHECK_ERROR_KIND(generator_from_json(Json::parse(R"({"kind": "diffusion", "params": {"n": 2}})")), ErrorKind::ConfigError);
  CHECK_ERROR_KIND(generator_from_json(Json::parse(R"({"kind": "constant", "dim": 3, "params": {"matrix": [[1]]}})")),
                   ErrorKind::ConfigError);
}

TEST_CASE("table export reproduces the generator at the samples") {
  const GeneratorSpec g = affine_generator("aff", ComplexMatrix::identity(2), ComplexMatrix{{0.0, 1.0}, {2.0, 0.0}});
  const std::vector<double> times{0.0, 0.5, 1.0};
  const GeneratorSpec back = generator_from_json(generator_to_table_json(g, times));
  CHECK(back.eval(0.5) == g.eval(0.5));
  CHECK(norm_1(back.eval(0.25) - g.eval(0.25)) < 1e-15);
}

TEST_CASE("float formatting is fixed") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
}

TEST_CASE("report invariants and serialisation") {
  const VerificationReport ok = make_report("s", "a", "x", 1e-9, 1e-8);
  const VerificationReport edge = make_report("s", "b", "x", 1e-8, 1e-8);
  const VerificationReport bad = make_report("s", "c", "x", std::nan(""), 1.0);
  CHECK(ok.pass);
  CHECK(edge.pass);
  CHECK_FALSE(bad.pass);
  const std::vector<VerificationReport> all{ok, edge, bad};
  CHECK_FALSE(all_pass(all));
  const Json j = Json::parse(reports_to_json(all));
  CHECK(j["reports"].size() == 3);
  CHECK(j["reports"][2]["residual"] == "nan");
  CHECK(j["summary"]["failed"] == 1);
  CHECK_FALSE(j["reports"][0].contains("runtime_ms"));
  CHECK(Json::parse(reports_to_json(all, true))["reports"][0].contains("runtime_ms"));
  CHECK(reports_to_csv(all).rfind("suite,case,paper_anchor,residual,tolerance,pass,runtime_ms\n", 0) == 0);
}

TEST_CASE("campaign config parsing") {
  const CampaignConfig cfg = campaign_from_json(Json::parse(R"({
      "seed": 7, "suites": ["matfun", "bch"], "dims": [4, 2],
      "tolerances": {"matfun.log_of_exp": 1e-9},
      "output": {"path": "r.csv", "format": "csv"}})"));
  CHECK(cfg.seed == 7);
  CHECK(cfg.suites == std::vector<std::string>{"matfun", "bch"});
  CHECK(cfg.dims == std::vector<std::size_t>{2, 4});
  CHECK(cfg.tolerances.at("matfun.log_of_exp") == 1e-9);
  CHECK(cfg.format == OutputFormat::Csv);

  CHECK_ERROR_KIND(campaign_from_json(Json::parse(R"({"suites": []})")), ErrorKind::ConfigError);
  CHECK_ERROR_KIND(campaign_from_json(Json::parse(R"({"suites": ["nope"]})")), ErrorKind::ConfigError);
  CHECK_ERROR_KIND(campaign_from_json(Json::parse(R"({"dims": [300]})")), ErrorKind::ConfigError);
  CHECK_ERROR_KIND(campaign_from_json(Json::parse(R"({"tolerances": {"matfun.bogus": 1}})")), ErrorKind::ConfigError);
  CHECK_ERROR_KIND(campaign_from_json(Json::parse(R"({"colour": 1})")), ErrorKind::ConfigError);
  CHECK_ERROR_KIND(campaign_from_json(Json::parse(R"({"output": {"format": "xml"}})")), ErrorKind::ConfigError);
}

TEST_CASE("matfun campaign passes and is reproducible") {
  CampaignConfig cfg = default_campaign();
  cfg.suites = {"matfun"};
  cfg.output = temp_path("matfun.json");
  const auto first = run_verify(cfg);
  CHECK(all_pass(first));
  std::ifstream in(cfg.output);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == reports_to_json(run_verify(cfg)));
  std::filesystem::remove(cfg.output);
}

TEST_CASE("campaign output errors") {
  CampaignConfig cfg = default_campaign();
  cfg.suites = {"matfun"};
  cfg.output = "/nonexistent-dir/report.json";
  CHECK_ERROR_KIND(run_verify(cfg), ErrorKind::IoError);
  cfg.suites.clear();
  CHECK_ERROR_KIND(run_verify(cfg), ErrorKind::ConfigError);
}

TEST_CASE("vn demo preconditions") {
  VnDemoConfig demo = default_campaign().vn_demo;
  const VnDemoResult r = run_vn_demo(demo);
  CHECK(all_pass(r.reports));
  CHECK(r.trajectory.points.size() == 20);
  demo.rho0 = ComplexMatrix{{0.6, 0.0}, {0.0, 0.6}};
  CHECK_ERROR_KIND(run_vn_demo(demo), ErrorKind::ConfigError);
  demo = default_campaign().vn_demo;
  demo.hamiltonian = ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}};
  CHECK_ERROR_KIND(run_vn_demo(demo), ErrorKind::ConfigError);
}

TEST_CASE("stationary density stays put") {
  VnDemoConfig demo = default_campaign().vn_demo;
  demo.rho0 = ComplexMatrix::diagonal({0.7, 0.3});
  const VnDemoResult r = run_vn_demo(demo);
  for (const auto& p : r.trajectory.points) CHECK(p.residual <= 1e-10);
}

TEST_CASE("sweep runner") {
  SweepConfig sw = default_campaign().sweep;
  const SweepResult r = run_sweep(sw);
  CHECK(r.invariants_hold);
  CHECK(r.csv.rfind("n,normA,normA_ratio,norm_a,kappa,residual_naive,residual_thm2,residual_eq6\n", 0) == 0);
  sw.family.dims = {2, 8};
  CHECK_ERROR_KIND(run_sweep(sw), ErrorKind::ConfigError);
  sw.family.dims = {4};
  CHECK(run_sweep(sw).report.rows.size() == 1);
}
