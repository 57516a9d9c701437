#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "giat/experiment.hpp"

namespace {

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string strategy;
  std::string problem;
};

giat::ExperimentConfig resolve(const Options& opt) {
  giat::ExperimentConfig config = opt.config.empty() ? giat::desk_suite() : giat::load_config(opt.config);
  if (!opt.out.empty()) config.output_dir = opt.out;
  if (opt.seed) config.master_seed = *opt.seed;
  return config;
}

giat::Strategy parse_strategy(const std::string& name) {
  try {
    return giat::strategy_from_string(name);
  } catch (const std::invalid_argument& e) {
    throw giat::UsageError(e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable-interaction grouping with adaptive thresholds"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config, "experiment config (JSON); defaults to the desk suite");
    cmd->add_option("--out", opt.out, "output directory (overrides output_dir)");
    cmd->add_option("--seed", opt.seed, "master seed (overrides master_seed)");
  };

  auto* decompose = app.add_subcommand("decompose", "decompose one problem with one strategy");
  add_common(decompose);
  decompose->add_option("--problem", opt.problem, "problem name")->required();
  decompose->add_option("--strategy", opt.strategy, "FT, FST, CRET or GIAT")->required();

  auto* compare = app.add_subcommand("compare", "run every problem x strategy, write accuracy CSVs");
  add_common(compare);
  compare->add_option("--strategy", opt.strategy, "restrict to one strategy");

  auto* dump = app.add_subcommand("dump-indicators", "write the sorted indicator distribution");
  add_common(dump);
  dump->add_option("--problem", opt.problem, "problem name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    giat::ExperimentConfig config = resolve(opt);
    if (*decompose) {
      const auto rec = giat::cmd_decompose(config, opt.problem, parse_strategy(opt.strategy));
      std::cout << rec.function_id << ' ' << giat::to_string(rec.strategy)
                << " verdict=" << giat::to_string(rec.verdict) << " groups="
                << rec.report.formed_nonsep_groups << " captured_sep=" << rec.report.captured_sep_vars
                << " captured_nonsep=" << rec.report.captured_nonsep_vars
                << " accuracy=" << (rec.report.exact ? 1 : 0) << " fe=" << rec.fe_used << '\n';
    } else if (*compare) {
      if (!opt.strategy.empty()) config.strategies = {parse_strategy(opt.strategy)};
      const auto result = giat::cmd_compare(config);
      std::cout << "wrote " << result.rows.size() << " rows to "
                << (config.output_dir / "comparison.csv").string() << '\n';
      std::cout << "summary";
      for (const auto& [s, sum] : result.accuracy_sums)
        std::cout << ' ' << giat::to_string(s) << '=' << sum << '/' << config.problems.size();
      std::cout << '\n';
    } else if (*dump) {
      const auto result = giat::cmd_dump_indicators(config, opt.problem);
      if (!result.dump) {
        std::cerr << result.message << '\n';
        return kRuntimeError;
      }
      std::cout << "wrote " << result.file.string() << ": " << result.message << '\n';
    }
  } catch (const giat::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return 0;
}
