#include "hgr/report_json.hpp"

#include <cmath>

namespace hgr {

namespace {

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

// JSON has no infinities; keep them readable instead of silently null.
Json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

}  // namespace

void to_json(Json& j, const PipelineReport& r) {
  j = {{"d", r.d},
       {"gamma", r.gamma},
       {"host_n", r.host_n},
       {"k", r.k},
       {"girth_h_tilde", opt(r.girth_h_tilde)},
       {"girth_h", opt(r.girth_h)},
       {"girth_host", opt(r.girth_host)},
       {"guaranteed_spacing", r.guaranteed_spacing},
       {"enforced_spacing", r.enforced_spacing},
       {"min_matching_distance", opt(r.min_matching_distance)},
       {"log_girth_term", num(r.log_girth_term)},
       {"asymptotic_girth_bound", num(r.asymptotic_girth_bound)},
       {"structural_girth_bound", opt(r.structural_girth_bound)},
       {"gadget_size", r.gadget_size},
       {"pendant_count", r.pendant_count}};
}

void to_json(Json& j, const SpectrumReport& r) {
  j = {{"method", r.method},
       {"lambda_max", num(r.lambda_max)},
       {"lambda_min", num(r.lambda_min)},
       {"lambda", r.lambda ? num(*r.lambda) : Json(nullptr)},
       {"max_residual", num(r.max_residual)},
       {"iterations", r.iterations}};
  if (!r.eigenvalues.empty()) j["eigenvalues"] = r.eigenvalues;
  if (!r.complex_eigenvalues.empty()) {
    Json list = Json::array();
    for (const auto& z : r.complex_eigenvalues) list.push_back({z.real(), z.imag()});
    j["complex_eigenvalues"] = list;
  }
}

void to_json(Json& j, const MultisetMatch& r) {
  j = {{"matched", r.matched},
       {"max_distance", num(r.max_distance)},
       {"cluster_distance", num(r.cluster_distance)},
       {"left_size", r.left_size},
       {"right_size", r.right_size}};
}

void to_json(Json& j, const IharaBassReport& r) {
  j = {{"passed", r.passed}, {"n", r.n}, {"m", r.m}, {"degree", opt(r.degree)}, {"pencil", r.pencil}};
  j["regular"] = r.regular ? Json(*r.regular) : Json(nullptr);
}

void to_json(Json& j, const XRadiusReport& r) {
  j = {{"depth", r.depth},
       {"vertices", r.vertices},
       {"method", r.method},
       {"lambda_max", num(r.lambda_max)},
       {"lambda_upper", num(r.lambda_upper)},
       {"adjacency_bound", num(r.adjacency_bound)},
       {"adjacency_margin", num(r.adjacency_margin)},
       {"adjacency_passed", r.adjacency_passed},
       {"nb_radius", num(r.nb_radius)},
       {"nb_bound", num(r.nb_bound)},
       {"nb_margin", num(r.nb_margin)},
       {"nb_passed", r.nb_passed}};
}

void to_json(Json& j, const TraceBoundReport& r) {
  j = {{"k", r.k},
       {"ell", r.ell},
       {"depth", r.depth},
       {"edges_checked", r.edges_checked},
       {"max_quadratic_form", r.max_quadratic_form},
       {"worst_edge", {r.worst_edge.u, r.worst_edge.v}},
       {"bound", num(r.bound)},
       {"ratio", num(r.ratio)},
       {"passed", r.passed},
       {"free_linkages", opt(r.free_linkages)},
       {"chain_ok", r.chain_ok}};
}

void to_json(Json& j, const SubsolutionReport& r) {
  j = {{"passed", r.passed},
       {"slack_pattern_ok", r.slack_pattern_ok},
       {"mu", num(r.mu)},
       {"checked", r.checked},
       {"violations", r.violations},
       {"max_violation", num(r.max_violation)},
       {"strict_slack", r.strict_slack},
       {"strict_slack_outside_x1v", r.strict_slack_outside_x1v},
       {"equal_on_x1v", r.equal_on_x1v},
       {"min_slack_x1v", num(r.min_slack_x1v)}};
}

void to_json(Json& j, const LemmaReport& r) {
  j = {{"alpha", num(r.alpha)},
       {"beta", num(r.beta)},
       {"gamma", num(r.gamma)},
       {"ball_size", r.ball_size},
       {"min_eigenvalue", num(r.min_eigenvalue)},
       {"norm", num(r.norm)},
       {"psd", r.psd},
       {"variant_p_h_minus_1", {{"min_eigenvalue", num(r.alt_min_eigenvalue)},
                                {"norm", num(r.alt_norm)},
                                {"psd", r.alt_psd}}},
       {"g_is_eigen", r.g_is_eigen},
       {"lhs", r.lhs ? num(*r.lhs) : Json(nullptr)},
       {"rhs", r.rhs ? num(*r.rhs) : Json(nullptr)},
       {"inequality_holds", opt(r.inequality_holds)}};
}

void to_json(Json& j, const ExpansionReport& r) {
  j = {{"set_size", r.set_size},
       {"psi", num(r.psi)},
       {"neighborhood_size", r.neighborhood_size},
       {"boundary", r.boundary},
       {"internal_edges", r.internal_edges},
       {"mode", r.mode}};
  j["witness"] = std::vector<Vertex>(r.witness.begin(), r.witness.end());
}

void to_json(Json& j, const MixingAudit& r) {
  j = {{"trials", r.trials}, {"violations", r.violations}, {"min_slack", num(r.min_slack)}};
}

void to_json(Json& j, const MooreReport& r) {
  j = {{"girth", opt(r.girth)},
       {"average_degree", num(r.average_degree)},
       {"bound", num(r.bound)},
       {"passed", r.passed}};
}

void to_json(Json& j, const SmallSetAudit& r) {
  j = {{"n", r.n},
       {"d", r.d},
       {"girth", opt(r.girth)},
       {"lambda", num(r.lambda)},
       {"kappa", num(r.kappa)},
       {"alpha", num(r.alpha)},
       {"alpha_positive", r.alpha_positive},
       {"max_set_size", r.max_set_size},
       {"bound", num(r.bound)},
       {"trials", r.trials},
       {"violations", r.violations},
       {"min_ratio", num(r.min_ratio)},
       {"identity_failures", r.identity_failures},
       {"hs_count_failures", r.hs_count_failures},
       {"hs_girth_failures", r.hs_girth_failures},
       {"per_set_kappa_violations", r.per_set_kappa_violations},
       {"stated_bound", num(r.stated_bound)},
       {"stated_variant_violations", r.stated_variant_violations},
       {"passed", r.passed}};
}

void to_json(Json& j, const LayerMass& r) {
  j = {{"per_layer", r.per_layer}, {"fraction", r.fraction}, {"total", num(r.total)}};
}

Json kahale_summary(const KahaleVector& s) {
  std::size_t u = 0, v = 0, core = 0;
  for (Branch b : s.branch) {
    u += b == Branch::UBranch;
    v += b == Branch::VBranch;
    core += b == Branch::Core;
  }
  return {{"h_max", s.h_max},
          {"d", s.d},
          {"layer_sums", s.layer_sums},
          {"core_vertices", core},
          {"u_branch_vertices", u},
          {"v_branch_vertices", v}};
}

}  // namespace hgr
