#include "nodal/serialize.hpp"

#include <cmath>

namespace nodal {

using nlohmann::json;

namespace {

json header(const char* kind) { return json{{"schema", kSchemaVersion}, {"kind", kind}}; }

void expect_kind(const json& j, const std::string& kind) {
  const std::string got = document_kind(j);
  if (got != kind) throw SchemaError("expected a '" + kind + "' document, got '" + got + "'");
}

}  // namespace

std::string document_kind(const json& j) {
  if (!j.is_object() || !j.contains("schema") || !j.contains("kind")) throw SchemaError("missing schema/kind fields");
  if (j.at("schema").get<int>() != kSchemaVersion)
    throw SchemaError("unsupported schema version " + j.at("schema").dump());
  return j.at("kind").get<std::string>();
}

void to_json(json& j, const LogMagnitude& v) {
  j = json{{"sign", v.sign()}};
  if (v.is_zero())
    j["log10_abs"] = nullptr;
  else
    j["log10_abs"] = v.log10_abs();
}

void from_json(const json& j, LogMagnitude& v) {
  const int sign = j.at("sign").get<int>();
  if (sign == 0 || j.at("log10_abs").is_null())
    v = LogMagnitude::zero();
  else
    v = LogMagnitude::from_log10(j.at("log10_abs").get<double>(), sign);
}

void to_json(json& j, const Interval& v) { j = json::array({v.lo, v.hi}); }
void from_json(const json& j, Interval& v) { v = Interval{j.at(0).get<double>(), j.at(1).get<double>()}; }

void to_json(json& j, const HypothesisCheck& v) {
  j = json{{"name", v.name},           {"lhs", v.lhs},       {"rhs", v.rhs},
           {"satisfied", v.satisfied}, {"margin", v.margin}, {"limiting", v.limiting}};
}

void from_json(const json& j, HypothesisCheck& v) {
  j.at("name").get_to(v.name);
  j.at("lhs").get_to(v.lhs);
  j.at("rhs").get_to(v.rhs);
  j.at("satisfied").get_to(v.satisfied);
  j.at("margin").get_to(v.margin);
  j.at("limiting").get_to(v.limiting);
}

void to_json(json& j, const HypothesisChecklist& v) {
  j = json{{"all_satisfied", v.all_satisfied()}, {"checks", v.checks}, {"warnings", v.warnings()}};
}

void from_json(const json& j, HypothesisChecklist& v) { j.at("checks").get_to(v.checks); }

void to_json(json& j, const BarrierConfig& v) {
  j = json{{"target", to_string(v.target)},
           {"delta", v.delta},
           {"epsilon", v.epsilon ? json(*v.epsilon) : json(nullptr)},
           {"truncation_order", v.truncation_order},
           {"cns_convention", to_string(v.cns_convention)}};
}

void from_json(const json& j, BarrierConfig& v) {
  v.target = parse_target(j.at("target").get<std::string>());
  j.at("delta").get_to(v.delta);
  if (j.at("epsilon").is_null())
    v.epsilon.reset();
  else
    v.epsilon = j.at("epsilon").get<double>();
  j.at("truncation_order").get_to(v.truncation_order);
  v.cns_convention = parse_cns_convention(j.at("cns_convention").get<std::string>());
}

void to_json(json& j, const OrderContribution& v) {
  j = json{{"n", v.n},
           {"sup_value", v.sup_value},
           {"sup_deriv", v.sup_deriv},
           {"sup_over_r", v.sup_over_r},
           {"arg_value", v.arg_value},
           {"arg_deriv", v.arg_deriv},
           {"arg_over_r", v.arg_over_r},
           {"s_n", v.s_n}};
}

void from_json(const json& j, OrderContribution& v) {
  j.at("n").get_to(v.n);
  j.at("sup_value").get_to(v.sup_value);
  j.at("sup_deriv").get_to(v.sup_deriv);
  j.at("sup_over_r").get_to(v.sup_over_r);
  j.at("arg_value").get_to(v.arg_value);
  j.at("arg_deriv").get_to(v.arg_deriv);
  j.at("arg_over_r").get_to(v.arg_over_r);
  j.at("s_n").get_to(v.s_n);
}

void to_json(json& j, const SAccumulation& v) {
  j = json{{"radii", v.radii},
           {"truncation_order", v.truncation_order},
           {"per_order", v.per_order},
           {"partial_sum", v.partial_sum},
           {"tail_bound", v.tail_bound},
           {"certified_S_upper", v.certified_S_upper}};
}

void from_json(const json& j, SAccumulation& v) {
  j.at("radii").get_to(v.radii);
  j.at("truncation_order").get_to(v.truncation_order);
  j.at("per_order").get_to(v.per_order);
  j.at("partial_sum").get_to(v.partial_sum);
  j.at("tail_bound").get_to(v.tail_bound);
  j.at("certified_S_upper").get_to(v.certified_S_upper);
}

void to_json(json& j, const GridSpec& v) {
  j = json{{"half_width", v.half_width}, {"resolution", v.resolution}, {"counting_radius", v.counting_radius}};
}

void from_json(const json& j, GridSpec& v) {
  j.at("half_width").get_to(v.half_width);
  j.at("resolution").get_to(v.resolution);
  j.at("counting_radius").get_to(v.counting_radius);
}

json to_document(const BarrierCertificate& c) {
  json j = header("barrier");
  j["config"] = c.config;
  j["epsilon"] = c.epsilon;
  j["epsilon_auto"] = c.epsilon_auto;
  j["bands"] = c.bands;
  j["annulus"] = c.annulus;
  j["S"] = c.S;
  j["checklist"] = c.checklist;
  j["threshold"] = c.threshold;
  j["probability"] = c.probability;
  j["probability_appendix_form"] = c.probability_appendix_form;
  j["mu_bound_kac_rice"] = c.mu_bound_kac_rice;
  j["mu_bound_factor_ten"] = c.mu_bound_factor_ten;
  j["mu_bound"] = c.mu_bound;
  return j;
}

BarrierCertificate barrier_from_document(const json& j) {
  expect_kind(j, "barrier");
  BarrierCertificate c;
  j.at("config").get_to(c.config);
  j.at("epsilon").get_to(c.epsilon);
  j.at("epsilon_auto").get_to(c.epsilon_auto);
  j.at("bands").get_to(c.bands);
  j.at("annulus").get_to(c.annulus);
  j.at("S").get_to(c.S);
  j.at("checklist").get_to(c.checklist);
  j.at("threshold").get_to(c.threshold);
  j.at("probability").get_to(c.probability);
  j.at("probability_appendix_form").get_to(c.probability_appendix_form);
  j.at("mu_bound_kac_rice").get_to(c.mu_bound_kac_rice);
  j.at("mu_bound_factor_ten").get_to(c.mu_bound_factor_ten);
  j.at("mu_bound").get_to(c.mu_bound);
  return c;
}

json to_document(const SymmetrizationCertificate& c) {
  json j = header("symmetrization");
  j["target"] = to_string(c.target);
  j["radii"] = c.radii;
  j["T"] = c.T;
  j["t_mode"] = to_string(c.t_mode);
  j["q"] = c.q;
  j["vacuous"] = c.vacuous;
  j["used_quadrature"] = c.used_quadrature;
  j["mu_bound"] = c.mu_bound;
  j["mu_bound_factor_ten"] = c.mu_bound_factor_ten;
  j["validation"] = c.validation;
  return j;
}

SymmetrizationCertificate symmetrization_from_document(const json& j) {
  expect_kind(j, "symmetrization");
  SymmetrizationCertificate c;
  c.target = parse_target(j.at("target").get<std::string>());
  j.at("radii").get_to(c.radii);
  j.at("T").get_to(c.T);
  c.t_mode = parse_t_mode(j.at("t_mode").get<std::string>());
  j.at("q").get_to(c.q);
  j.at("vacuous").get_to(c.vacuous);
  j.at("used_quadrature").get_to(c.used_quadrature);
  j.at("mu_bound").get_to(c.mu_bound);
  j.at("mu_bound_factor_ten").get_to(c.mu_bound_factor_ten);
  j.at("validation").get_to(c.validation);
  return c;
}

json to_document(const EnsembleStats& s) {
  json j = header("ensemble");
  j["n_samples"] = s.n_samples;
  j["grid"] = s.grid;
  j["n_terms"] = s.n_terms;
  j["seed"] = s.seed;
  j["mu_hat"] = s.mu_hat;
  j["mu_se"] = s.mu_se;
  j["cns_hat"] = s.cns_hat;
  j["cns_se"] = s.cns_se;
  j["total_interior_domains"] = s.total_interior_domains;
  j["total_interior_nodal_components"] = s.total_interior_nodal_components;
  j["faber_krahn_flags"] = s.faber_krahn_flags;
  j["euler_violations"] = s.euler_violations;
  j["histogram_mass_mismatches"] = s.histogram_mass_mismatches;
  j["tree_end_histogram"] = s.tree_end_histogram;
  return j;
}

EnsembleStats ensemble_from_document(const json& j) {
  expect_kind(j, "ensemble");
  EnsembleStats s;
  j.at("n_samples").get_to(s.n_samples);
  j.at("grid").get_to(s.grid);
  j.at("n_terms").get_to(s.n_terms);
  j.at("seed").get_to(s.seed);
  j.at("mu_hat").get_to(s.mu_hat);
  j.at("mu_se").get_to(s.mu_se);
  j.at("cns_hat").get_to(s.cns_hat);
  j.at("cns_se").get_to(s.cns_se);
  j.at("total_interior_domains").get_to(s.total_interior_domains);
  j.at("total_interior_nodal_components").get_to(s.total_interior_nodal_components);
  j.at("faber_krahn_flags").get_to(s.faber_krahn_flags);
  j.at("euler_violations").get_to(s.euler_violations);
  j.at("histogram_mass_mismatches").get_to(s.histogram_mass_mismatches);
  j.at("tree_end_histogram").get_to(s.tree_end_histogram);
  return s;
}

json to_document(const NodalCensus& c, const WaveSample& sample) {
  json j = header("census");
  j["seed"] = sample.seed;
  j["index"] = sample.index;
  j["n_terms"] = sample.n_terms;
  j["xi0"] = sample.xi0;
  j["n_interior_domains"] = c.n_interior_domains;
  j["n_interior_nodal_components"] = c.n_interior_nodal_components;
  j["faber_krahn_flags"] = c.faber_krahn_flags;
  j["euler_violations"] = c.euler_violations;
  j["adjacency_is_tree"] = c.adjacency_is_tree;
  j["tree_end_histogram"] = c.tree_end_histogram;
  json comps = json::array();
  for (const auto& r : c.components) {
    if (!r.interior()) continue;
    comps.push_back(json{{"id", r.id},
                         {"sign", r.sign},
                         {"area", r.area},
                         {"parent", r.parent},
                         {"hole_count", r.hole_count},
                         {"faber_krahn_flag", r.faber_krahn_flag}});
  }
  j["interior_components"] = comps;
  return j;
}

}  // namespace nodal
