#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hgr/hosts.hpp"
#include "json.hpp"

namespace hgr {

enum class Check { Girth, Lambda, Psi, Ihara, XRadius, Linkage, SmallSets, Kahale };

std::string to_string(Check c);
/// Throws ConfigError for unknown names.
Check parse_check(const std::string& name);

struct CheckOptions {
  double kappa = 0.2;
  std::size_t small_set_trials = 1000;
  std::size_t mixing_trials = 200;
  std::size_t xradius_depth = 3;
  std::size_t linkage_k = 1;
  std::size_t linkage_ell = 1;
  /// When set, the lambda check asserts lambda(G') <= lambda(host) + margin.
  std::optional<double> lambda_host_margin;
  /// When set, the lambda check asserts lambda(G') <= 2 sqrt(d-1) + margin.
  std::optional<double> lambda_abs_margin;
  std::size_t dense_cap = 2048;
  std::size_t ihara_cap = 2000;
};

struct ExperimentConfig {
  std::string name = "experiment";
  HostSpec host;
  std::size_t d = 0;                 // 0: take the host degree
  std::optional<std::size_t> gamma;  // nullopt: 2 floor(n^(1/3) / 2)
  std::vector<std::uint64_t> seeds{1};
  std::vector<Check> checks;
  CheckOptions options;
  std::string json_out;
  std::string csv_out;
  std::size_t threads = 0;  // sweep workers; 0 = hardware concurrency

  /// Host vertex count implied by the host spec.
  std::size_t host_vertices() const;
  std::size_t resolved_d() const;
  std::size_t resolved_gamma() const;
  /// Throws ConfigError.
  void validate() const;
};

/// Largest even integer not above n^(1/3).
std::size_t cube_root_gamma(std::size_t n);

/// YAML (or JSON) text to config. Throws ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct CheckResult {
  std::string name;
  bool asserted = false;
  bool passed = false;
  std::optional<std::string> error;
  nlohmann::json report;
  double seconds = 0.0;
};

struct RunResult {
  std::uint64_t seed = 0;
  nlohmann::json construction;
  std::vector<CheckResult> checks;
  bool passed = false;
  std::optional<std::string> error;  // "stage: message" when construction failed
  double construct_seconds = 0.0;
  // Summary fields for the CSV row.
  std::size_t n = 0;
  std::optional<std::size_t> girth;
  std::optional<double> lambda;
  std::optional<double> lambda_host;
  std::optional<double> psi_u;
  std::optional<double> small_set_bound;
};

struct AuditBundle {
  ExperimentConfig config;
  std::vector<RunResult> runs;
  bool passed = false;
  double seconds = 0.0;

  /// Timings live under a separate "timings" key so that the rest is
  /// reproducible byte for byte.
  nlohmann::json to_json(bool include_timings = true) const;
};

/// Builds the host, runs the pipeline once per seed and then every requested
/// check. Writes the JSON bundle and CSV rows when output paths are set.
AuditBundle run_experiment(const ExperimentConfig& cfg);

std::string csv_header();
std::vector<std::string> csv_rows(const AuditBundle& bundle);

struct SweepAxis {
  std::string key;  // n, d, gamma, seed, p, q, kappa
  std::vector<std::string> values;
};

/// Throws ConfigError for unknown keys or bad values.
ExperimentConfig with_override(ExperimentConfig cfg, const std::string& key, const std::string& value);

struct SweepResult {
  std::vector<AuditBundle> bundles;  // grid order, first axis slowest
  std::string csv;
  bool passed = false;
};

/// One bundle per grid point, run on a worker pool and merged in grid order.
/// A grid point whose configuration is invalid yields a failed row.
SweepResult sweep(const ExperimentConfig& base, const std::vector<SweepAxis>& grid);

/// "key=v1,v2,..." to an axis.
SweepAxis parse_axis(const std::string& text);

}  // namespace hgr
