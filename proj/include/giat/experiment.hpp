#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "giat/evaluation.hpp"
#include "giat/grouping.hpp"
#include "giat/interaction.hpp"
#include "giat/problem.hpp"
#include "giat/thresholds.hpp"

namespace giat {

/// Bad names or arguments on the command line or in a config (CLI exit code 1).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ProblemEntry {
  enum class Kind { Generated, Example1 };
  std::string name;
  Kind kind = Kind::Generated;
  ProblemSpec spec;            // Generated
  double omega1 = 1.0;         // Example1
  double omega2 = 1.0;
  std::optional<std::uint64_t> seed;
};

struct ExperimentConfig {
  std::vector<ProblemEntry> problems;
  std::vector<Strategy> strategies{Strategy::FT, Strategy::FST, Strategy::CRET, Strategy::GIAT};
  double ft_eps = 1e-3;
  double fst_alpha = 1e-10;
  int fst_k = 10;
  PerturbationScheme scheme;
  std::filesystem::path output_dir = "out";
  std::uint64_t master_seed = 0;
};

void validate(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Reduced-dimension analogues of the CEC'2010/2013 categories; ten problems.
ExperimentConfig desk_suite();

std::size_t find_problem(const ExperimentConfig& config, const std::string& name);
/// Per-problem seed mixed from master_seed and the entry's seed (or its position).
std::uint64_t problem_seed(const ExperimentConfig& config, std::size_t index);
ProblemInstance<double> instantiate(const ExperimentConfig& config, std::size_t index);

struct RunRecord {
  std::string function_id;
  Strategy strategy = Strategy::GIAT;
  Verdict verdict = Verdict::Partial;
  DecompositionResult result;
  AccuracyReport report;
  Index n = 0;
  std::uint64_t fe_used = 0;
};

/// One strategy on prebuilt interaction data. FST draws its samples from `instance`.
RunRecord run_strategy(const std::string& function_id, const ProblemInstance<double>& instance,
                       const InteractionData<double>& data, Strategy strategy,
                       const ExperimentConfig& config, std::uint64_t seed);

std::vector<RunRecord> run_problem(const ExperimentConfig& config, std::size_t index);

nlohmann::json record_to_json(const RunRecord& record);

/// Writes <out>/<problem>_<strategy>.json and .csv.
RunRecord cmd_decompose(const ExperimentConfig& config, const std::string& problem,
                        Strategy strategy);

struct CompareOutput {
  std::vector<RunRecord> rows;
  std::vector<std::pair<Strategy, std::size_t>> accuracy_sums;
};

/// Writes <out>/comparison.csv, <out>/summary.csv and <out>/fe_budget.csv.
CompareOutput cmd_compare(const ExperimentConfig& config);

struct DumpOutput {
  std::optional<DistributionDump> dump;  // empty when a pre-check decided
  std::string message;
  std::filesystem::path file;
};

/// Writes <out>/<problem>_indicators.csv unless GIAT's verdict is fully (non)separable.
DumpOutput cmd_dump_indicators(const ExperimentConfig& config, const std::string& problem);

}  // namespace giat
