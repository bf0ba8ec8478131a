#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hgr/errors.hpp"
#include "hgr/harness.hpp"
#include "hgr/presets.hpp"

using namespace hgr;

namespace {

const char* kConfig = R"(
name: planted-4096
host: {kind: random, n: 4096, d: 4, seed: 3}
gamma: 16
seeds: [1]
checks: [psi, girth, lambda]
options:
  mixing_trials: 50
)";

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("config parsing") {
  const ExperimentConfig cfg = parse_config(kConfig);
  CHECK(cfg.name == "planted-4096");
  CHECK(cfg.host.kind == HostKind::RandomRegular);
  CHECK(cfg.host.n == 4096);
  CHECK(cfg.resolved_d() == 4);
  CHECK(cfg.resolved_gamma() == 16);
  CHECK(cfg.checks == std::vector<Check>{Check::Psi, Check::Girth, Check::Lambda});
  CHECK(cfg.options.mixing_trials == 50);
  CHECK(cfg.options.kappa == doctest::Approx(0.2));

  const ExperimentConfig lps = parse_config(R"js({"host": {"kind": "lps", "p": 5, "q": 13}, "gamma": "n^(1/3)"})js");
  CHECK(lps.host_vertices() == 1092);
  CHECK(lps.resolved_d() == 6);
  CHECK(lps.resolved_gamma() == 10);

  CHECK(cube_root_gamma(4096) == 16);
  CHECK(cube_root_gamma(8192) == 20);
  CHECK(cube_root_gamma(2048) == 12);
  CHECK(cube_root_gamma(26) == 2);
}

TEST_CASE("config rejection") {
  CHECK_THROWS_AS(parse_config("host: {kind: random, n: 4096, d: 4}\ngamma: 15\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("host: {kind: random, n: 4096, d: 4}\nbogus: 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("host: {kind: torus, n: 16}\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("host: {kind: random, n: 4096, d: 4}\nchecks: [psi, nope]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("host: {kind: random, n: 4096, d: 3}\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("host: {kind: lps, p: 5, q: 13}\nd: 4\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1, 2"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.yaml"), ConfigError);
}

TEST_CASE("end-to-end run: d = 4, n = 4096, gamma = 16") {
  const ExperimentConfig cfg = parse_config(kConfig);
  const AuditBundle b = run_experiment(cfg);
  REQUIRE(b.runs.size() == 1);
  const RunResult& r = b.runs[0];
  CHECK_FALSE(r.error.has_value());
  CHECK(r.checks.size() == 3);
  CHECK(r.psi_u == doctest::Approx(2.5));
  CHECK(r.n == 4096 + 104);
  CHECK(r.lambda.has_value());
  CHECK(r.girth.has_value());
  CHECK(b.passed);

  SUBCASE("reruns are identical apart from timings") {
    const AuditBundle again = run_experiment(cfg);
    CHECK(b.to_json(false).dump() == again.to_json(false).dump());
    CHECK(b.to_json(true).contains("timings"));
    CHECK_FALSE(b.to_json(false).contains("timings"));
  }
  SUBCASE("csv") {
    const auto rows = csv_rows(b);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].rfind("planted-4096,1,4200,4,16,", 0) == 0);
    CHECK(csv_header().find("lambda_minus_ramanujan") != std::string::npos);
  }
}

TEST_CASE("every other check produces a report") {
  ExperimentConfig cfg = parse_config(kConfig);
  cfg.host.n = 512;
  cfg.gamma = 6;
  cfg.checks = {Check::Ihara, Check::XRadius, Check::Linkage, Check::SmallSets, Check::Kahale};
  cfg.options.small_set_trials = 100;
  cfg.options.xradius_depth = 2;
  const AuditBundle b = run_experiment(cfg);
  REQUIRE(b.runs.size() == 1);
  REQUIRE(b.runs[0].checks.size() == 5);
  for (const CheckResult& c : b.runs[0].checks) {
    INFO(c.name);
    CHECK_FALSE(c.error.has_value());
    CHECK_FALSE(c.report.is_null());
  }
  // Each check either passed or was reported as not applicable.
  for (const CheckResult& c : b.runs[0].checks) {
    INFO(c.name);
    CHECK((c.passed || !c.asserted));
  }
}

TEST_CASE("construction errors are reported per stage") {
  ExperimentConfig cfg = parse_config(kConfig);
  cfg.host.d = 6;
  cfg.d = 6;
  cfg.host.n = 1000;
  cfg.gamma = 10;
  cfg.checks = {Check::Psi};
  // k = 10 * 5 * 22 / 4 = 275 and 4k > 1000, so no matching can be placed.
  const AuditBundle b = run_experiment(cfg);
  REQUIRE(b.runs.size() == 1);
  REQUIRE(b.runs[0].error.has_value());
  CHECK(b.runs[0].error->rfind("construct:", 0) == 0);
  CHECK_FALSE(b.passed);
  CHECK(csv_rows(b)[0].find("HostTooSmall") != std::string::npos);
}

TEST_CASE("sweep") {
  ExperimentConfig base = parse_config(kConfig);
  base.host.n = 32768;
  base.seeds = {1, 2, 3};
  base.checks = {Check::Psi};
  base.threads = 2;
  const SweepResult r = sweep(base, {parse_axis("gamma=8,16,32")});
  CHECK(r.bundles.size() == 3);
  CHECK(count_lines(r.csv) == 1 + 9);
  CHECK(r.passed);
  for (const auto& b : r.bundles) {
    for (const auto& run : b.runs) CHECK(run.psi_u == doctest::Approx(2.5));
  }

  SUBCASE("a bad grid point fails its rows and the sweep continues") {
    base.host.n = 4096;
    base.seeds = {1};
    const SweepResult bad = sweep(base, {parse_axis("gamma=8,9")});
    REQUIRE(bad.bundles.size() == 2);
    CHECK(bad.bundles[0].passed);
    CHECK_FALSE(bad.bundles[1].passed);
    CHECK_FALSE(bad.passed);
    CHECK(bad.csv.find("config:") != std::string::npos);
  }
}

TEST_CASE("sweep axis parsing") {
  const SweepAxis a = parse_axis("n=2048,8192");
  CHECK(a.key == "n");
  CHECK(a.values == std::vector<std::string>{"2048", "8192"});
  CHECK_THROWS_AS(parse_axis("n"), ConfigError);
  CHECK_THROWS_AS(parse_axis("n="), ConfigError);
  CHECK_THROWS_AS(with_override(ExperimentConfig{}, "colour", "red"), ConfigError);
  CHECK_THROWS_AS(with_override(ExperimentConfig{}, "n", "many"), ConfigError);
  CHECK_THROWS_AS(sweep(parse_config(kConfig), {}), ConfigError);
}

TEST_CASE("outputs are written when requested") {
  const auto dir = std::filesystem::temp_directory_path() / "hgr_test_harness";
  std::filesystem::create_directories(dir);
  ExperimentConfig cfg = parse_config(kConfig);
  cfg.host.n = 512;
  cfg.gamma = 8;
  cfg.checks = {Check::Psi};
  cfg.json_out = (dir / "bundle.json").string();
  cfg.csv_out = (dir / "rows.csv").string();
  run_experiment(cfg);
  std::ifstream json(cfg.json_out), csv(cfg.csv_out);
  const Json j = Json::parse(json);
  CHECK(j["passed"] == true);
  CHECK(j["runs"][0]["checks"]["psi"]["report"]["exact"] == true);
  std::stringstream rows;
  rows << csv.rdbuf();
  CHECK(count_lines(rows.str()) == 2);
}

TEST_CASE("preset catalogue") {
  const auto list = preset_list();
  REQUIRE(list.size() == 10);
  CHECK(list.front().id == 1);
  CHECK(list.back().id == 10);
  CHECK_THROWS_AS(run_preset(0), InvalidParams);
  CHECK_THROWS_AS(run_preset(11), InvalidParams);
  const PresetResult r = run_preset(4);
  CHECK(r.passed);
  CHECK_FALSE(r.summary.empty());
}
