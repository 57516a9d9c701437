#include "giat/experiment.hpp"

#include <fstream>
#include <sstream>

#include "giat/io.hpp"
#include "giat/random.hpp"

namespace giat {

namespace {

std::string scheme_delta_name(PerturbationScheme::Delta d) {
  return d == PerturbationScheme::Delta::FullRange ? "FullRange" : "HalfRange";
}

PerturbationScheme scheme_from_json(const json& j) {
  PerturbationScheme s;
  const auto base = j.value("base_point_rule", std::string("LowerBounds"));
  if (base != "LowerBounds") throw UsageError("unknown base_point_rule '" + base + "'");
  const auto delta = j.value("delta_rule", std::string("FullRange"));
  if (delta == "FullRange") s.delta = PerturbationScheme::Delta::FullRange;
  else if (delta == "HalfRange") s.delta = PerturbationScheme::Delta::HalfRange;
  else throw UsageError("unknown delta_rule '" + delta + "'");
  return s;
}

ProblemEntry generated(std::string name, int sep_dims, BaseFunctionKind sep_base,
                       std::vector<SubcomponentSpec> subs,
                       WeightMode weights = WeightMode::balanced()) {
  ProblemEntry e;
  e.name = std::move(name);
  e.spec.separable_dims = sep_dims;
  e.spec.separable_base = sep_base;
  e.spec.subcomponents = std::move(subs);
  e.spec.weight_mode = weights;
  return e;
}

std::vector<SubcomponentSpec> repeat(int count, SubcomponentSpec a, SubcomponentSpec b) {
  std::vector<SubcomponentSpec> out;
  for (int i = 0; i < count; ++i) out.push_back(i % 2 == 0 ? a : b);
  return out;
}

void ensure_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw std::runtime_error("cannot create output_dir '" + dir.string() + "'");
}

std::ofstream open_output(const std::filesystem::path& file) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write '" + file.string() + "'");
  return os;
}

}  // namespace

void validate(const ExperimentConfig& config) {
  if (config.problems.empty()) throw UsageError("config needs at least one problem");
  if (config.strategies.empty()) throw UsageError("config needs at least one strategy");
  if (!(config.ft_eps > 0.0)) throw UsageError("ft_eps must be > 0");
  if (!(config.fst_alpha > 0.0)) throw UsageError("fst_alpha must be > 0");
  if (config.fst_k < 1) throw UsageError("fst_k must be >= 1");
  for (std::size_t i = 0; i < config.problems.size(); ++i) {
    const auto& p = config.problems[i];
    if (p.name.empty()) throw UsageError("problem " + std::to_string(i) + " has no name");
    for (std::size_t k = 0; k < i; ++k)
      if (config.problems[k].name == p.name) throw UsageError("duplicate problem '" + p.name + "'");
    if (p.kind == ProblemEntry::Kind::Generated) {
      try {
        giat::validate(p.spec);
      } catch (const std::invalid_argument& e) {
        throw UsageError("problem '" + p.name + "': " + e.what());
      }
    } else if (!(p.omega1 > 0.0) || !(p.omega2 > 0.0)) {
      throw UsageError("problem '" + p.name + "': example1 weights must be > 0");
    }
  }
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  try {
    c.problems.clear();
    for (const auto& pj : j.at("problems")) {
      ProblemEntry e;
      e.name = pj.at("name").get<std::string>();
      if (pj.contains("builtin")) {
        const auto builtin = pj.at("builtin").get<std::string>();
        if (builtin != "example1") throw UsageError("unknown builtin '" + builtin + "'");
        e.kind = ProblemEntry::Kind::Example1;
        e.omega1 = pj.value("omega1", 1.0);
        e.omega2 = pj.value("omega2", 1.0);
      } else {
        e.spec = pj.at("spec").get<ProblemSpec>();
      }
      if (pj.contains("seed")) e.seed = pj.at("seed").get<std::uint64_t>();
      c.problems.push_back(std::move(e));
    }
    if (j.contains("strategies")) {
      c.strategies.clear();
      for (const auto& s : j.at("strategies")) {
        try {
          c.strategies.push_back(strategy_from_string(s.get<std::string>()));
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }
    }
    c.ft_eps = j.value("ft_eps", c.ft_eps);
    c.fst_alpha = j.value("fst_alpha", c.fst_alpha);
    c.fst_k = j.value("fst_k", c.fst_k);
    if (j.contains("scheme")) c.scheme = scheme_from_json(j.at("scheme"));
    c.output_dir = j.value("output_dir", c.output_dir.string());
    c.master_seed = j.value("master_seed", c.master_seed);
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed config: ") + e.what());
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("malformed config: ") + e.what());
  }
  validate(c);
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json problems = json::array();
  for (const auto& p : c.problems) {
    json pj{{"name", p.name}};
    if (p.kind == ProblemEntry::Kind::Example1) {
      pj["builtin"] = "example1";
      pj["omega1"] = p.omega1;
      pj["omega2"] = p.omega2;
    } else {
      pj["spec"] = p.spec;
    }
    if (p.seed) pj["seed"] = *p.seed;
    problems.push_back(std::move(pj));
  }
  json strategies = json::array();
  for (Strategy s : c.strategies) strategies.push_back(std::string(to_string(s)));
  return json{{"problems", problems},
              {"strategies", strategies},
              {"ft_eps", c.ft_eps},
              {"fst_alpha", c.fst_alpha},
              {"fst_k", c.fst_k},
              {"scheme",
               {{"base_point_rule", "LowerBounds"},
                {"delta_rule", scheme_delta_name(c.scheme.delta)}}},
              {"output_dir", c.output_dir.string()},
              {"master_seed", c.master_seed}};
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

ExperimentConfig desk_suite() {
  using K = BaseFunctionKind;
  const SubcomponentSpec elliptic5{5, K::Elliptic, true, 1.0};
  const SubcomponentSpec rastrigin5{5, K::Rastrigin, true, 1.0};

  ExperimentConfig c;
  c.master_seed = 2018;
  c.output_dir = "out";
  c.problems.push_back(generated("fully_separable_sphere", 50, K::Sphere, {}));
  c.problems.push_back(generated("fully_separable_elliptic", 50, K::Elliptic, {}));
  ProblemEntry ex;
  ex.name = "example1_imbalanced";
  ex.kind = ProblemEntry::Kind::Example1;
  ex.omega1 = 1e-6;
  ex.omega2 = 1.0;
  c.problems.push_back(ex);
  c.problems.push_back(generated("ps1_elliptic", 40, K::Elliptic, {{10, K::Elliptic, true, 1.0}}));
  c.problems.push_back(
      generated("ps5_balanced", 25, K::Sphere, repeat(5, elliptic5, rastrigin5)));
  c.problems.push_back(
      generated("ps10_schwefel", 20, K::Rastrigin, repeat(10, {3, K::Schwefel12, false, 1.0},
                                                           {3, K::Schwefel12, false, 1.0})));
  c.problems.push_back(generated("ps4_imbalanced", 20, K::Sphere,
                                 repeat(4, {5, K::Elliptic, true, 1.0}, {5, K::Elliptic, true, 1.0}),
                                 WeightMode::imbalanced(3.0)));
  c.problems.push_back(generated("ps2_rosenbrock", 20, K::Sphere,
                                 repeat(2, {5, K::Rosenbrock, false, 1.0},
                                        {5, K::Rosenbrock, false, 1.0})));
  c.problems.push_back(
      generated("fully_nonseparable_elliptic", 0, K::Sphere, {{50, K::Elliptic, true, 1.0}}));
  c.problems.push_back(generated("ackley_known_failure", 20, K::Sphere,
                                 repeat(2, {5, K::Ackley, true, 1.0}, {5, K::Ackley, true, 1.0})));
  return c;
}

std::size_t find_problem(const ExperimentConfig& config, const std::string& name) {
  for (std::size_t i = 0; i < config.problems.size(); ++i)
    if (config.problems[i].name == name) return i;
  throw UsageError("unknown problem '" + name + "'");
}

std::uint64_t problem_seed(const ExperimentConfig& config, std::size_t index) {
  const auto& p = config.problems.at(index);
  return mix_seed(config.master_seed, p.seed.value_or(index));
}

ProblemInstance<double> instantiate(const ExperimentConfig& config, std::size_t index) {
  const auto& p = config.problems.at(index);
  if (p.kind == ProblemEntry::Kind::Example1) return example1<double>(p.omega1, p.omega2);
  return build_problem<double>(p.spec, problem_seed(config, index));
}

RunRecord run_strategy(const std::string& function_id, const ProblemInstance<double>& instance,
                       const InteractionData<double>& data, Strategy strategy,
                       const ExperimentConfig& config, std::uint64_t seed) {
  RunRecord rec;
  rec.function_id = function_id;
  rec.strategy = strategy;
  rec.n = data.n;
  rec.fe_used = data.fe_used;
  switch (strategy) {
    case Strategy::FT: {
      rec.result = decompose(data, nullptr, ft_threshold(config.ft_eps));
      break;
    }
    case Strategy::FST: {
      const std::uint64_t before = instance.fe_count();
      const auto decision =
          fst_threshold(instance, config.fst_k, config.fst_alpha, mix_seed(seed, 0xF57));
      rec.fe_used += instance.fe_count() - before;
      rec.result = decompose(data, nullptr, decision);
      break;
    }
    case Strategy::CRET: {
      rec.result = decompose(data, nullptr, cret_thresholds(data));
      break;
    }
    case Strategy::GIAT: {
      const auto giat = giat_threshold(data);
      rec.verdict = giat.decision.verdict;
      rec.result = decompose(data, &giat.zeta, giat.decision);
      break;
    }
  }
  rec.report = score(rec.result, ground_truth(instance));
  return rec;
}

std::vector<RunRecord> run_problem(const ExperimentConfig& config, std::size_t index) {
  const auto instance = instantiate(config, index);
  const auto data = build_interaction_data(instance, config.scheme);
  std::vector<RunRecord> out;
  for (Strategy s : config.strategies)
    out.push_back(run_strategy(config.problems[index].name, instance, data, s, config,
                               problem_seed(config, index)));
  return out;
}

json record_to_json(const RunRecord& r) {
  return json{{"function_id", r.function_id},
              {"n", r.n},
              {"verdict", std::string(to_string(r.verdict))},
              {"fe_used", r.fe_used},
              {"result", result_to_json(r.result)},
              {"accuracy",
               {{"captured_sep", r.report.captured_sep_vars},
                {"captured_nonsep", r.report.captured_nonsep_vars},
                {"formed_groups", r.report.formed_nonsep_groups},
                {"accuracy", r.report.exact ? 1 : 0}}}};
}

RunRecord cmd_decompose(const ExperimentConfig& config, const std::string& problem,
                        Strategy strategy) {
  const std::size_t index = find_problem(config, problem);
  ensure_output_dir(config.output_dir);
  ExperimentConfig single = config;
  single.strategies = {strategy};
  RunRecord rec = run_problem(single, index).front();

  const std::string stem = problem + "_" + std::string(to_string(strategy));
  open_output(config.output_dir / (stem + ".json")) << record_to_json(rec).dump(2) << '\n';
  auto csv = open_output(config.output_dir / (stem + ".csv"));
  write_accuracy_header(csv);
  write_accuracy_row(csv, rec.function_id, to_string(rec.strategy), rec.report);
  return rec;
}

CompareOutput cmd_compare(const ExperimentConfig& config) {
  validate(config);
  ensure_output_dir(config.output_dir);
  CompareOutput out;
  for (std::size_t i = 0; i < config.problems.size(); ++i) {
    auto rows = run_problem(config, i);
    out.rows.insert(out.rows.end(), rows.begin(), rows.end());
  }
  for (Strategy s : config.strategies) {
    std::size_t sum = 0;
    for (const auto& r : out.rows)
      if (r.strategy == s && r.report.exact) ++sum;
    out.accuracy_sums.emplace_back(s, sum);
  }

  auto csv = open_output(config.output_dir / "comparison.csv");
  write_accuracy_header(csv);
  for (const auto& r : out.rows) write_accuracy_row(csv, r.function_id, to_string(r.strategy), r.report);

  auto fe = open_output(config.output_dir / "fe_budget.csv");
  fe << "function_id,strategy,n,fe_used\n";
  for (const auto& r : out.rows)
    fe << r.function_id << ',' << to_string(r.strategy) << ',' << r.n << ',' << r.fe_used << '\n';

  auto summary = open_output(config.output_dir / "summary.csv");
  summary << "strategy,accuracy_sum,problems\n";
  for (const auto& [s, sum] : out.accuracy_sums)
    summary << to_string(s) << ',' << sum << ',' << config.problems.size() << '\n';
  return out;
}

DumpOutput cmd_dump_indicators(const ExperimentConfig& config, const std::string& problem) {
  const std::size_t index = find_problem(config, problem);
  const auto instance = instantiate(config, index);
  const auto data = build_interaction_data(instance, config.scheme);
  const auto giat = giat_threshold(data);

  DumpOutput out;
  if (giat.decision.verdict == Verdict::FullySeparable) {
    out.message = "fully separable; no distribution";
    return out;
  }
  if (giat.decision.verdict == Verdict::FullyNonseparable) {
    out.message = "fully nonseparable; no distribution";
    return out;
  }
  ensure_output_dir(config.output_dir);
  out.dump = dump_distribution(giat);
  out.file = config.output_dir / (problem + "_indicators.csv");
  auto os = open_output(out.file);
  write_distribution_csv(os, *out.dump);
  std::ostringstream msg;
  if (out.dump->has_gap)
    msg << "gap between Z(" << out.dump->gap_index + 1 << ") and Z(" << out.dump->gap_index + 2
        << "), ratio " << out.dump->gap_ratio;
  else
    msg << "no gap";
  out.message = msg.str();
  return out;
}

}  // namespace giat
