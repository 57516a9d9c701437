#include <array>
#include <stdexcept>
#include <string>
#include <utility>

#include "giat/base_functions.hpp"
#include "giat/thresholds.hpp"

namespace giat {

namespace {

constexpr std::array<std::pair<BaseFunctionKind, std::string_view>, 6> kBaseNames{{
    {BaseFunctionKind::Sphere, "Sphere"},
    {BaseFunctionKind::Elliptic, "Elliptic"},
    {BaseFunctionKind::Rastrigin, "Rastrigin"},
    {BaseFunctionKind::Ackley, "Ackley"},
    {BaseFunctionKind::Schwefel12, "Schwefel12"},
    {BaseFunctionKind::Rosenbrock, "Rosenbrock"},
}};

constexpr std::array<std::pair<Strategy, std::string_view>, 4> kStrategyNames{{
    {Strategy::FT, "FT"},
    {Strategy::FST, "FST"},
    {Strategy::CRET, "CRET"},
    {Strategy::GIAT, "GIAT"},
}};

}  // namespace

std::string_view to_string(BaseFunctionKind kind) {
  for (const auto& [k, name] : kBaseNames)
    if (k == kind) return name;
  return "?";
}

BaseFunctionKind base_function_from_string(std::string_view name) {
  for (const auto& [k, n] : kBaseNames)
    if (n == name) return k;
  throw std::invalid_argument("unknown base function '" + std::string(name) + "'");
}

std::string_view to_string(Strategy s) {
  for (const auto& [k, name] : kStrategyNames)
    if (k == s) return name;
  return "?";
}

Strategy strategy_from_string(std::string_view name) {
  for (const auto& [k, n] : kStrategyNames)
    if (n == name) return k;
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

std::string_view to_string(Basis b) { return b == Basis::RawTau ? "RawTau" : "Indicator"; }

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Partial: return "Partial";
    case Verdict::FullySeparable: return "FullySeparable";
    case Verdict::FullyNonseparable: return "FullyNonseparable";
  }
  return "?";
}

}  // namespace giat
