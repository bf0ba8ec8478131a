#include "hgr/harness.hpp"

#include <yaml-cpp/yaml.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "hgr/errors.hpp"
#include "hgr/expansion.hpp"
#include "hgr/gadget.hpp"
#include "hgr/kahale.hpp"
#include "hgr/lanczos.hpp"
#include "hgr/linkage.hpp"
#include "hgr/report_json.hpp"
#include "hgr/rng.hpp"
#include "hgr/spectral.hpp"

namespace hgr {

namespace {

const std::map<std::string, Check>& check_names() {
  static const std::map<std::string, Check> names{
      {"girth", Check::Girth},     {"lambda", Check::Lambda},   {"psi", Check::Psi},
      {"ihara", Check::Ihara},     {"xradius", Check::XRadius}, {"linkage", Check::Linkage},
      {"small_sets", Check::SmallSets}, {"kahale", Check::Kahale}};
  return names;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::string to_string(Check c) {
  for (const auto& [name, value] : check_names()) {
    if (value == c) return name;
  }
  return "unknown";
}

Check parse_check(const std::string& name) {
  auto it = check_names().find(name);
  if (it == check_names().end()) throw ConfigError("unknown check '" + name + "'");
  return it->second;
}

std::size_t cube_root_gamma(std::size_t n) {
  std::size_t r = static_cast<std::size_t>(std::cbrt(static_cast<double>(n)));
  while ((r + 1) * (r + 1) * (r + 1) <= n) ++r;
  while (r > 0 && r * r * r > n) --r;
  return r - r % 2;
}

std::size_t ExperimentConfig::host_vertices() const {
  if (host.kind == HostKind::RandomRegular) return host.n;
  return static_cast<std::size_t>(host.q * (host.q * host.q - 1) / 2);
}

std::size_t ExperimentConfig::resolved_d() const { return d != 0 ? d : host.degree(); }

std::size_t ExperimentConfig::resolved_gamma() const {
  return gamma ? *gamma : cube_root_gamma(host_vertices());
}

void ExperimentConfig::validate() const {
  try {
    host.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("host: ") + e.what());
  }
  if (resolved_d() != host.degree()) {
    throw ConfigError("d = " + std::to_string(resolved_d()) + " differs from the host degree " +
                      std::to_string(host.degree()));
  }
  if (resolved_d() < 4) throw ConfigError("d must be at least 4");
  const std::size_t g = resolved_gamma();
  if (g == 0 || g % 2 != 0) throw ConfigError("gamma must be even and positive, got " + std::to_string(g));
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (!(options.kappa > 0.0 && options.kappa < 1.0)) throw ConfigError("kappa must lie in (0, 1)");
}

namespace {

template <class T>
T scalar(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception& e) {
    throw ConfigError("bad value for '" + key + "': " + e.what());
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("cannot parse config: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("config must be a mapping");
  ExperimentConfig cfg;
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    static const std::vector<std::string> known{"name", "host", "d", "gamma", "seeds", "checks",
                                                "options", "output", "threads"};
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  if (root["name"]) cfg.name = scalar<std::string>(root["name"], "name");
  const YAML::Node host = root["host"];
  if (!host || !host.IsMap()) throw ConfigError("missing 'host' mapping");
  const auto kind = scalar<std::string>(host["kind"], "host.kind");
  if (kind == "lps") {
    cfg.host.kind = HostKind::Lps;
    cfg.host.p = scalar<std::uint64_t>(host["p"], "host.p");
    cfg.host.q = scalar<std::uint64_t>(host["q"], "host.q");
  } else if (kind == "random") {
    cfg.host.kind = HostKind::RandomRegular;
    cfg.host.n = scalar<std::size_t>(host["n"], "host.n");
    cfg.host.d = scalar<std::size_t>(host["d"], "host.d");
    if (host["seed"]) cfg.host.seed = scalar<std::uint64_t>(host["seed"], "host.seed");
  } else {
    throw ConfigError("host.kind must be 'lps' or 'random'");
  }
  if (root["d"]) cfg.d = scalar<std::size_t>(root["d"], "d");
  if (root["gamma"]) {
    const auto text_value = scalar<std::string>(root["gamma"], "gamma");
    if (text_value != "n^(1/3)") cfg.gamma = scalar<std::size_t>(root["gamma"], "gamma");
  }
  if (root["seeds"]) cfg.seeds = scalar<std::vector<std::uint64_t>>(root["seeds"], "seeds");
  if (root["checks"]) {
    for (const auto& c : scalar<std::vector<std::string>>(root["checks"], "checks")) {
      cfg.checks.push_back(parse_check(c));
    }
  }
  if (const YAML::Node o = root["options"]) {
    auto& opt = cfg.options;
    if (o["kappa"]) opt.kappa = scalar<double>(o["kappa"], "options.kappa");
    if (o["small_set_trials"]) opt.small_set_trials = scalar<std::size_t>(o["small_set_trials"], "options.small_set_trials");
    if (o["mixing_trials"]) opt.mixing_trials = scalar<std::size_t>(o["mixing_trials"], "options.mixing_trials");
    if (o["xradius_depth"]) opt.xradius_depth = scalar<std::size_t>(o["xradius_depth"], "options.xradius_depth");
    if (o["linkage_k"]) opt.linkage_k = scalar<std::size_t>(o["linkage_k"], "options.linkage_k");
    if (o["linkage_ell"]) opt.linkage_ell = scalar<std::size_t>(o["linkage_ell"], "options.linkage_ell");
    if (o["lambda_host_margin"]) opt.lambda_host_margin = scalar<double>(o["lambda_host_margin"], "options.lambda_host_margin");
    if (o["lambda_abs_margin"]) opt.lambda_abs_margin = scalar<double>(o["lambda_abs_margin"], "options.lambda_abs_margin");
    if (o["dense_cap"]) opt.dense_cap = scalar<std::size_t>(o["dense_cap"], "options.dense_cap");
    if (o["ihara_cap"]) opt.ihara_cap = scalar<std::size_t>(o["ihara_cap"], "options.ihara_cap");
  }
  if (const YAML::Node out = root["output"]) {
    if (out["json"]) cfg.json_out = scalar<std::string>(out["json"], "output.json");
    if (out["csv"]) cfg.csv_out = scalar<std::string>(out["csv"], "output.csv");
  }
  if (root["threads"]) cfg.threads = scalar<std::size_t>(root["threads"], "threads");
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

namespace {

SpectrumReport spectrum_of(const Graph& g, std::size_t dense_cap) {
  AdjacencyOptions o;
  o.mode = g.num_vertices() <= dense_cap ? SpectrumMode::Dense : SpectrumMode::Extremal;
  o.dense_cap = dense_cap;
  SpectrumReport r = adjacency_spectrum(g, o);
  if (o.mode == SpectrumMode::Dense) r.eigenvalues.clear();  // keep bundles small
  return r;
}

struct RunContext {
  const ExperimentConfig& cfg;
  const Graph& host;
  std::optional<SpectrumReport>& host_spectrum;
  const PipelineResult& pr;
  std::optional<std::optional<std::size_t>> girth_gp;
  std::optional<SpectrumReport> spectrum_gp;
  RunResult& run;

  const std::optional<std::size_t>& girth_of_gp() {
    if (!girth_gp) girth_gp = girth(pr.splice.graph);
    return *girth_gp;
  }
  const SpectrumReport& gp_spectrum() {
    if (!spectrum_gp) spectrum_gp = spectrum_of(pr.splice.graph, cfg.options.dense_cap);
    return *spectrum_gp;
  }
  const SpectrumReport& host_spec() {
    if (!host_spectrum) host_spectrum = spectrum_of(host, cfg.options.dense_cap);
    return *host_spectrum;
  }
};

void run_check(Check c, RunContext& ctx, CheckResult& out) {
  const auto& cfg = ctx.cfg;
  const auto& pr = ctx.pr;
  const Graph& gp = pr.splice.graph;
  const std::size_t d = cfg.resolved_d();
  const double ramanujan = 2.0 * std::sqrt(static_cast<double>(d) - 1.0);
  Json& rep = out.report;
  out.asserted = true;
  switch (c) {
    case Check::Girth: {
      const auto g = ctx.girth_of_gp();
      const MooreReport moore = moore_bound_check(gp);
      rep = {{"girth", g ? Json(*g) : Json(nullptr)},
             {"structural_bound", pr.report.structural_girth_bound ? Json(*pr.report.structural_girth_bound) : Json(nullptr)},
             {"asymptotic_bound", pr.report.asymptotic_girth_bound},
             {"moore", moore}};
      const bool structural_ok = !g || !pr.report.structural_girth_bound || *g >= *pr.report.structural_girth_bound;
      rep["structural_ok"] = structural_ok;
      out.passed = structural_ok && moore.passed;
      ctx.run.girth = g;
      break;
    }
    case Check::Lambda: {
      const SpectrumReport& s = ctx.gp_spectrum();
      const SpectrumReport& h = ctx.host_spec();
      const double lambda = *s.lambda, lambda_host = *h.lambda;
      const MixingAudit mixing = expander_mixing_audit(gp, lambda, cfg.options.mixing_trials,
                                                       mix_seed(ctx.run.seed, 11));
      rep = {{"lambda", lambda}, {"lambda_host", lambda_host}, {"ramanujan", ramanujan},
             {"excess", lambda - ramanujan}, {"graph_spectrum", s}, {"host_spectrum", h},
             {"mixing", mixing}};
      bool ok = mixing.violations == 0;
      if (cfg.options.lambda_host_margin) {
        const bool pass = lambda <= lambda_host + *cfg.options.lambda_host_margin;
        rep["host_margin"] = {{"margin", *cfg.options.lambda_host_margin}, {"slack", lambda_host + *cfg.options.lambda_host_margin - lambda}, {"passed", pass}};
        ok = ok && pass;
      }
      if (cfg.options.lambda_abs_margin) {
        const bool pass = lambda <= ramanujan + *cfg.options.lambda_abs_margin;
        rep["abs_margin"] = {{"margin", *cfg.options.lambda_abs_margin}, {"slack", ramanujan + *cfg.options.lambda_abs_margin - lambda}, {"passed", pass}};
        ok = ok && pass;
      }
      out.passed = ok;
      ctx.run.lambda = lambda;
      ctx.run.lambda_host = lambda_host;
      break;
    }
    case Check::Psi: {
      const VertexSet& u = pr.splice.planted_u;
      const ExpansionReport e = vertex_expansion(gp, u);
      const bool exact = 2 * e.neighborhood_size == (d + 1) * u.size();
      MinExpansionOptions mo;
      mo.mode = SearchMode::Sampled;
      mo.trials = 200;
      mo.seed = mix_seed(ctx.run.seed, 12);
      mo.seeds = {u};
      const ExpansionReport sampled = min_vertex_expansion(gp, u.size(), mo);
      rep = {{"planted", e}, {"target", (static_cast<double>(d) + 1.0) / 2.0}, {"exact", exact},
             {"sampled_min", sampled}};
      rep["planted"].erase("witness");
      out.passed = exact;
      ctx.run.psi_u = e.psi;
      break;
    }
    case Check::Ihara: {
      const Graph& h = pr.gadget.graph;
      if (2 * h.num_edges() > cfg.options.ihara_cap) {
        out.asserted = false;
        rep = {{"skipped", "gadget has more than ihara_cap directed edges"}, {"directed_edges", 2 * h.num_edges()}};
        out.passed = false;
        break;
      }
      const IharaBassReport r = ihara_bass_check(h, 1e-6, cfg.options.ihara_cap);
      rep = r;
      out.passed = r.passed;
      break;
    }
    case Check::XRadius: {
      Json list = Json::array();
      bool ok = true;
      XRadiusReport own = verify_x_radius(pr.gadget.graph, d);
      ok = ok && own.adjacency_passed && own.nb_passed;
      for (std::size_t depth = 0; depth <= cfg.options.xradius_depth; ++depth) {
        const XRadiusReport r = verify_x_radius(pr.gadget, depth);
        ok = ok && r.adjacency_passed && r.nb_passed;
        list.push_back(r);
      }
      rep = {{"gadget", own}, {"truncations", list}};
      out.passed = ok;
      break;
    }
    case Check::Linkage: {
      const std::size_t k = cfg.options.linkage_k, ell = cfg.options.linkage_ell;
      const TraceBoundReport r = verify_trace_bound(pr.gadget, k * (ell + 1), k, ell);
      rep = r;
      out.passed = r.passed && r.chain_ok;
      break;
    }
    case Check::SmallSets: {
      const double lambda = *ctx.gp_spectrum().lambda;
      const SmallSetAudit a = audit_small_sets(gp, lambda, cfg.options.kappa, cfg.options.small_set_trials,
                                               mix_seed(ctx.run.seed, 13));
      rep = a;
      out.asserted = a.alpha_positive;
      if (!a.alpha_positive) rep["note"] = "girth <= 4: no positive alpha satisfies the girth condition";
      out.passed = a.passed;
      if (a.alpha_positive) ctx.run.small_set_bound = a.bound;
      break;
    }
    case Check::Kahale: {
      const auto g = ctx.girth_of_gp();
      const std::size_t h_max = g ? *g / 2 : 4;
      if (h_max < 2) {
        out.asserted = false;
        rep = {{"skipped", "girth below 4 leaves no layer X_{1,V} to check"}, {"girth", g ? Json(*g) : Json(nullptr)}};
        break;
      }
      const KahaleVector s = kahale_vector(pr.splice, h_max);
      const SubsolutionReport sub = verify_subsolution(gp, s, ramanujan);
      double spread = 0.0;
      for (std::size_t h = 1; h <= h_max; ++h) spread = std::max(spread, std::abs(s.layer_sums[h] - s.layer_sums[1]));
      const bool constant = spread <= 1e-9;
      rep = {{"vector", kahale_summary(s)}, {"layer_sum_spread", spread}, {"layer_sums_constant", constant},
             {"subsolution", sub}};
      // Mass of the top nontrivial eigenvector near X0, as a diagnostic.
      try {
        LanczosOptions lo;
        lo.deflate_ones = true;
        lo.tolerance = 1e-6 * static_cast<double>(d);
        lo.seed = mix_seed(ctx.run.seed, 14);
        const auto res = lanczos_extremal(
            [&gp](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
              for (std::size_t v = 0; v < gp.num_vertices(); ++v) {
                double acc = 0.0;
                for (Vertex w : gp.neighbors(static_cast<Vertex>(v))) acc += x(w);
                y(static_cast<Eigen::Index>(v)) = acc;
              }
            },
            gp.num_vertices(), lo);
        const VertexSet x0 = pr.splice.planted_u.set_union(pr.splice.v_set);
        const auto layers = distance_layers(gp, x0, h_max);
        const Eigen::VectorXd& vec = res.vectors[0];
        const LayerMass mass = layer_mass(std::span<const double>(vec.data(), static_cast<std::size_t>(vec.size())), layers);
        rep["top_eigenvector_mass"] = mass;
        if (g && *g > 2) rep["mass_reference"] = 2.0 / (static_cast<double>(*g) - 2.0);
      } catch (const Error& e) {
        rep["top_eigenvector_mass"] = {{"error", e.what()}};
      }
      out.passed = constant && sub.passed && sub.slack_pattern_ok;
      break;
    }
  }
}

}  // namespace

AuditBundle run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto t_total = Clock::now();
  AuditBundle bundle;
  bundle.config = cfg;
  Graph host;
  std::optional<std::string> host_error;
  try {
    host = make_host(cfg.host);
  } catch (const std::exception& e) {
    host_error = std::string("host: ") + e.what();
  }
  std::optional<SpectrumReport> host_spectrum;
  for (std::uint64_t seed : cfg.seeds) {
    RunResult run;
    run.seed = seed;
    if (host_error) {
      run.error = host_error;
      bundle.runs.push_back(std::move(run));
      continue;
    }
    const auto t0 = Clock::now();
    std::optional<PipelineResult> pr;
    try {
      pr = construct_pipeline(cfg.resolved_d(), host, cfg.resolved_gamma(), seed);
    } catch (const std::exception& e) {
      run.error = std::string("construct: ") + e.what();
    }
    run.construct_seconds = seconds_since(t0);
    if (pr) {
      run.n = pr->splice.graph.num_vertices();
      run.construction = pr->report;
      run.construction["vertices"] = run.n;
      run.construction["edges"] = pr->splice.graph.num_edges();
      run.construction["gadget_edges"] = pr->gadget.graph.num_edges();
      run.construction["gadget_core_size"] = pr->gadget.u_set.size() + pr->gadget.v_set.size();
      run.construction["regular"] = pr->splice.graph.regular_degree() == cfg.resolved_d();
      RunContext ctx{cfg, host, host_spectrum, *pr, std::nullopt, std::nullopt, run};
      for (Check c : cfg.checks) {
        CheckResult out;
        out.name = to_string(c);
        const auto tc = Clock::now();
        try {
          run_check(c, ctx, out);
        } catch (const std::exception& e) {
          out.asserted = true;
          out.passed = false;
          out.error = out.name + ": " + e.what();
        }
        out.seconds = seconds_since(tc);
        run.checks.push_back(std::move(out));
      }
    }
    run.passed = !run.error;
    for (const auto& c : run.checks) {
      if (c.asserted && !c.passed) run.passed = false;
    }
    bundle.runs.push_back(std::move(run));
  }
  bundle.passed = !bundle.runs.empty();
  for (const auto& r : bundle.runs) bundle.passed = bundle.passed && r.passed;
  bundle.seconds = seconds_since(t_total);

  if (!cfg.json_out.empty()) {
    std::ofstream out(cfg.json_out);
    if (!out) throw ConfigError("cannot write " + cfg.json_out);
    out << bundle.to_json().dump(2) << '\n';
  }
  if (!cfg.csv_out.empty()) {
    std::ofstream out(cfg.csv_out);
    if (!out) throw ConfigError("cannot write " + cfg.csv_out);
    out << csv_header() << '\n';
    for (const auto& row : csv_rows(bundle)) out << row << '\n';
  }
  return bundle;
}

nlohmann::json AuditBundle::to_json(bool include_timings) const {
  Json j;
  j["name"] = config.name;
  j["config"] = {{"host", config.host.kind == HostKind::Lps
                              ? Json{{"kind", "lps"}, {"p", config.host.p}, {"q", config.host.q}}
                              : Json{{"kind", "random"}, {"n", config.host.n}, {"d", config.host.d}, {"seed", config.host.seed}}},
                 {"d", config.resolved_d()},
                 {"seeds", config.seeds}};
  try {
    j["config"]["gamma"] = config.resolved_gamma();
  } catch (const std::exception&) {
    j["config"]["gamma"] = nullptr;
  }
  Json checks = Json::array();
  for (Check c : config.checks) checks.push_back(hgr::to_string(c));
  j["config"]["checks"] = checks;
  Json runs = Json::array();
  Json timing_runs = Json::array();
  for (const auto& r : this->runs) {
    Json jr = {{"seed", r.seed}, {"passed", r.passed}};
    jr["error"] = r.error ? Json(*r.error) : Json(nullptr);
    jr["construction"] = r.construction;
    Json jc = Json::object();
    Json tc = Json::object();
    for (const auto& c : r.checks) {
      jc[c.name] = {{"asserted", c.asserted}, {"passed", c.passed}, {"report", c.report}};
      jc[c.name]["error"] = c.error ? Json(*c.error) : Json(nullptr);
      tc[c.name] = c.seconds;
    }
    jr["checks"] = jc;
    runs.push_back(jr);
    timing_runs.push_back({{"seed", r.seed}, {"construct", r.construct_seconds}, {"checks", tc}});
  }
  j["runs"] = runs;
  j["passed"] = passed;
  if (include_timings) j["timings"] = {{"total", seconds}, {"runs", timing_runs}};
  return j;
}

std::string csv_header() {
  return "name,seed,n,d,gamma,girth,lambda_host,lambda,lambda_minus_ramanujan,psi_u,small_set_bound,passed,error";
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

template <class T>
std::string cell(const std::optional<T>& v) {
  if (!v) return "";
  std::ostringstream out;
  out.precision(10);
  out << *v;
  return out.str();
}

}  // namespace

std::vector<std::string> csv_rows(const AuditBundle& bundle) {
  std::vector<std::string> rows;
  const auto& cfg = bundle.config;
  std::optional<std::size_t> gamma;
  try {
    gamma = cfg.resolved_gamma();
  } catch (const std::exception&) {
  }
  const double ramanujan = 2.0 * std::sqrt(static_cast<double>(cfg.resolved_d()) - 1.0);
  for (const auto& r : bundle.runs) {
    std::optional<double> excess;
    if (r.lambda) excess = *r.lambda - ramanujan;
    std::string error = r.error.value_or("");
    for (const auto& c : r.checks) {
      if (c.error) error += (error.empty() ? "" : "; ") + *c.error;
    }
    std::ostringstream row;
    row << csv_escape(cfg.name) << ',' << r.seed << ',' << (r.n ? std::to_string(r.n) : "") << ','
        << cfg.resolved_d() << ',' << cell(gamma) << ',' << cell(r.girth) << ',' << cell(r.lambda_host) << ','
        << cell(r.lambda) << ',' << cell(excess) << ',' << cell(r.psi_u) << ',' << cell(r.small_set_bound) << ','
        << (r.passed ? "true" : "false") << ',' << csv_escape(error);
    rows.push_back(row.str());
  }
  return rows;
}

ExperimentConfig with_override(ExperimentConfig cfg, const std::string& key, const std::string& value) {
  auto as_uint = [&](const std::string& v) -> std::uint64_t {
    try {
      std::size_t pos = 0;
      const auto x = std::stoull(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      throw ConfigError("'" + key + "' expects an integer, got '" + v + "'");
    }
  };
  if (key == "n") {
    cfg.host.n = as_uint(value);
  } else if (key == "d") {
    cfg.host.d = as_uint(value);
    cfg.d = cfg.host.d;
  } else if (key == "gamma") {
    if (value == "n^(1/3)") {
      cfg.gamma.reset();
    } else {
      cfg.gamma = as_uint(value);
    }
  } else if (key == "seed") {
    cfg.seeds = {as_uint(value)};
    cfg.host.seed = as_uint(value);
  } else if (key == "p") {
    cfg.host.p = as_uint(value);
  } else if (key == "q") {
    cfg.host.q = as_uint(value);
  } else if (key == "kappa") {
    try {
      cfg.options.kappa = std::stod(value);
    } catch (const std::exception&) {
      throw ConfigError("'kappa' expects a number, got '" + value + "'");
    }
  } else {
    throw ConfigError("cannot sweep over '" + key + "'");
  }
  cfg.name += (cfg.name.empty() ? "" : ":") + key + "=" + value;
  return cfg;
}

SweepAxis parse_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
    throw ConfigError("sweep axis must look like key=v1,v2 (got '" + text + "')");
  }
  SweepAxis axis;
  axis.key = text.substr(0, eq);
  std::stringstream rest(text.substr(eq + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    if (!item.empty()) axis.values.push_back(item);
  }
  if (axis.values.empty()) throw ConfigError("sweep axis '" + axis.key + "' has no values");
  return axis;
}

SweepResult sweep(const ExperimentConfig& base, const std::vector<SweepAxis>& grid) {
  if (grid.empty()) throw ConfigError("sweep grid is empty");
  std::vector<ExperimentConfig> points{base};
  for (const auto& axis : grid) {
    if (axis.values.empty()) throw ConfigError("sweep axis '" + axis.key + "' has no values");
    std::vector<ExperimentConfig> next;
    for (const auto& cfg : points) {
      for (const auto& v : axis.values) next.push_back(with_override(cfg, axis.key, v));
    }
    points = std::move(next);
  }
  for (auto& p : points) {
    p.json_out.clear();
    p.csv_out.clear();
  }

  SweepResult result;
  result.bundles.resize(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        result.bundles[i] = run_experiment(points[i]);
      } catch (const std::exception& e) {
        AuditBundle failed;
        failed.config = points[i];
        for (std::uint64_t seed : points[i].seeds) {
          RunResult run;
          run.seed = seed;
          run.error = std::string("config: ") + e.what();
          failed.runs.push_back(std::move(run));
        }
        result.bundles[i] = std::move(failed);
      }
    }
  };
  std::size_t threads = base.threads != 0 ? base.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, points.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << csv_header() << '\n';
  result.passed = true;
  for (const auto& b : result.bundles) {
    result.passed = result.passed && b.passed;
    for (const auto& row : csv_rows(b)) csv << row << '\n';
  }
  result.csv = csv.str();
  if (!base.csv_out.empty()) {
    std::ofstream out(base.csv_out);
    if (!out) throw ConfigError("cannot write " + base.csv_out);
    out << result.csv;
  }
  if (!base.json_out.empty()) {
    std::ofstream out(base.json_out);
    if (!out) throw ConfigError("cannot write " + base.json_out);
    Json all = Json::array();
    for (const auto& b : result.bundles) all.push_back(b.to_json());
    out << all.dump(2) << '\n';
  }
  return result;
}

}  // namespace hgr
