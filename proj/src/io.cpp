#include "giat/io.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace giat {

namespace {

std::vector<int> one_based(const std::vector<Index>& v) {
  std::vector<int> out;
  out.reserve(v.size());
  for (Index i : v) out.push_back(static_cast<int>(i) + 1);
  return out;
}

std::vector<Index> zero_based(const json& j) {
  std::vector<Index> out;
  for (const auto& v : j) {
    const int i = v.get<int>();
    if (i < 1) throw std::invalid_argument("variable indices are 1-based");
    out.push_back(i - 1);
  }
  return out;
}

}  // namespace

void to_json(json& j, const SubcomponentSpec& s) {
  j = json{{"size", s.size},
           {"base", std::string(to_string(s.base))},
           {"rotated", s.rotated},
           {"weight", s.weight}};
}

void from_json(const json& j, SubcomponentSpec& s) {
  s = SubcomponentSpec{};
  s.size = j.at("size").get<int>();
  s.base = base_function_from_string(j.at("base").get<std::string>());
  s.rotated = j.value("rotated", false);
  s.weight = j.value("weight", 1.0);
}

void to_json(json& j, const WeightMode& w) {
  if (w.kind == WeightMode::Kind::Balanced) j = "Balanced";
  else j = json{{"Imbalanced", {{"sigma", w.sigma}}}};
}

void from_json(const json& j, WeightMode& w) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "Balanced") w = WeightMode::balanced();
    else if (name == "Imbalanced") w = WeightMode::imbalanced();
    else throw std::invalid_argument("unknown weight_mode '" + name + "'");
    return;
  }
  if (j.is_object() && j.contains("Imbalanced")) {
    w = WeightMode::imbalanced(j.at("Imbalanced").value("sigma", 3.0));
    return;
  }
  throw std::invalid_argument("weight_mode must be \"Balanced\" or {\"Imbalanced\": {\"sigma\": s}}");
}

void to_json(json& j, const ProblemSpec& spec) {
  j = json{{"separable_dims", spec.separable_dims},
           {"separable_base", std::string(to_string(spec.separable_base))},
           {"subcomponents", spec.subcomponents},
           {"lower_bound", spec.lower_bound},
           {"upper_bound", spec.upper_bound},
           {"weight_mode", spec.weight_mode}};
}

void from_json(const json& j, ProblemSpec& spec) {
  spec = ProblemSpec{};
  spec.separable_dims = j.value("separable_dims", 0);
  if (j.contains("separable_base"))
    spec.separable_base = base_function_from_string(j.at("separable_base").get<std::string>());
  if (j.contains("subcomponents"))
    spec.subcomponents = j.at("subcomponents").get<std::vector<SubcomponentSpec>>();
  spec.lower_bound = j.value("lower_bound", -100.0);
  spec.upper_bound = j.value("upper_bound", 100.0);
  if (j.contains("weight_mode")) spec.weight_mode = j.at("weight_mode").get<WeightMode>();
}

json result_to_json(const DecompositionResult& result) {
  json groups = json::array();
  for (const auto& g : result.nonsep_groups) groups.push_back(one_based(g));
  json eps;
  if (result.eps_used.per_pair) eps = "per-pair";
  else if (std::isinf(result.eps_used.scalar)) eps = "inf";
  else eps = result.eps_used.scalar;
  return json{{"groups", groups},
              {"separable", one_based(result.sep_vars)},
              {"strategy", result.strategy},
              {"eps", eps}};
}

DecompositionResult result_from_json(const json& j) {
  DecompositionResult r;
  for (const auto& g : j.at("groups")) r.nonsep_groups.push_back(zero_based(g));
  r.sep_vars = zero_based(j.at("separable"));
  r.strategy = j.value("strategy", std::string{});
  const json& eps = j.at("eps");
  if (eps.is_string()) {
    const auto s = eps.get<std::string>();
    if (s == "per-pair") r.eps_used.per_pair = true;
    else if (s == "inf") r.eps_used.scalar = std::numeric_limits<double>::infinity();
    else throw std::invalid_argument("eps must be a number, \"inf\" or \"per-pair\"");
  } else {
    r.eps_used.scalar = eps.get<double>();
  }
  return r;
}

json truth_to_json(const GroupingTruth& truth) {
  json groups = json::array();
  for (const auto& g : truth.nonsep_groups) groups.push_back(one_based(g));
  return json{{"groups", groups}, {"separable", one_based(truth.sep_vars)}};
}

void write_accuracy_header(std::ostream& os) {
  os << "function_id,strategy,captured_sep,captured_nonsep,formed_groups,accuracy\n";
}

void write_accuracy_row(std::ostream& os, std::string_view function_id, std::string_view strategy,
                        const AccuracyReport& report) {
  os << function_id << ',' << strategy << ',' << report.captured_sep_vars << ','
     << report.captured_nonsep_vars << ',' << report.formed_nonsep_groups << ','
     << (report.exact ? 1 : 0) << '\n';
}

}  // namespace giat
