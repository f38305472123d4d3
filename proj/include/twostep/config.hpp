#pragma once

#include "twostep/model.hpp"
#include "twostep/scenarios.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace twostep
{

enum class Command
{
	simulate,
	sweep,
	spectrum,
	effective,
};

enum class SweepKind
{
	deformation,  ///< axis gamma
	perturbation, ///< axes delta_omega1, delta_omega2
	stirap,       ///< axis delta2
	spike,        ///< axis ratio
};

std::string to_string(Command c);
std::string to_string(SweepKind k);

struct Sampling
{
	std::optional<int> samples_per_period;
	std::optional<double> horizon;
	std::optional<double> substep;
};

/// A validated run request. Exactly one of `scenario` or `system` is set.
struct RunPlan
{
	Command command = Command::simulate;
	std::optional<ScenarioKind> scenario;
	nlohmann::json params = nlohmann::json::object();

	std::optional<SystemSpec> system;
	std::optional<SystemSpec> system_b;
	std::optional<std::pair<double, double>> durations;
	nlohmann::json target;   ///< level reference, null if absent
	nlohmann::json target_b; ///< level reference, null if absent
	nlohmann::json initial_level;
	int n = 0;
	IntervalRule rule;

	Sampling sampling;
	std::optional<SweepKind> sweep;
	std::map<std::string, std::vector<double>> axes;
	std::optional<double> t_s;
};

/// Parses and validates a JSON config. Unknown keys are rejected by name.
RunPlan parse_config(const std::string& text);

/// The scenario a plan describes, with sampling overrides applied. Inline
/// systems get durations from `durations` or from the target gaps.
Scenario plan_scenario(const RunPlan& plan);

} // namespace twostep
