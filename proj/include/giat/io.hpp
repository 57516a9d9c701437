#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "giat/evaluation.hpp"
#include "giat/grouping.hpp"
#include "giat/problem.hpp"

namespace giat {

using json = nlohmann::json;

// ProblemSpec <-> JSON; field names match the struct. See docs/problem_spec.md.
void to_json(json& j, const SubcomponentSpec& s);
void from_json(const json& j, SubcomponentSpec& s);
void to_json(json& j, const WeightMode& w);
void from_json(const json& j, WeightMode& w);
void to_json(json& j, const ProblemSpec& spec);
void from_json(const json& j, ProblemSpec& spec);

/// {"groups": [[...]], "separable": [...], "strategy": "...", "eps": ...}, 1-based indices.
/// eps is a number, "inf", or "per-pair".
json result_to_json(const DecompositionResult& result);
DecompositionResult result_from_json(const json& j);

json truth_to_json(const GroupingTruth& truth);

void write_accuracy_header(std::ostream& os);
void write_accuracy_row(std::ostream& os, std::string_view function_id, std::string_view strategy,
                        const AccuracyReport& report);

}  // namespace giat
