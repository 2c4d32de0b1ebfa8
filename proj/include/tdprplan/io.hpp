#pragma once

#include <string>

#include "tdprplan/types.hpp"

namespace tdprplan {

/// Loads and fully validates a planning problem. `config_path` is a JSON
/// system description (see README for the schema); `scenarios_path` is a
/// CSV `plant,scenario,day,hour,value_mw`. The demand table and optional
/// scenario probabilities are referenced from the config, relative to its
/// directory. Throws ValidationError naming the offending field.
PlanningProblem load_problem(const std::string& config_path,
                             const std::string& scenarios_path);

/// Parses just the scenario CSV (probabilities default to uniform).
ScenarioSet load_scenarios(const std::string& scenarios_path);

/// Writes config.json, scenarios.csv and demand.csv into `dir` such that
/// load_problem on them reproduces an equal PlanningProblem.
void save_problem(const PlanningProblem& problem, const std::string& dir);

/// Fixed-format decimal rendering used by every CSV/JSON writer so that
/// identical values always produce identical bytes and round-trip exactly.
std::string format_value(double v);

}  // namespace tdprplan
