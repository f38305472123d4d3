#pragma once

#include "twostep/effective.hpp"
#include "twostep/model.hpp"
#include "twostep/propagation.hpp"
#include "twostep/spectral.hpp"
#include "twostep/waveform.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace twostep
{

enum class ScenarioKind
{
	rydberg_ladder,
	rydberg_superposition,
	blockade_pair,
	counterintuitive_vee,
	rb_star,
	ne_five,
	ne_four,
	stirap,
};

std::string to_string(ScenarioKind kind);
/// Accepts the dashed names, e.g. "rydberg-ladder".
ScenarioKind scenario_kind_from_string(const std::string& name);
const std::vector<ScenarioKind>& all_scenario_kinds();

/// A runnable application: either a two-step schedule or a static system
/// with waveform-driven edges (stirap).
struct Scenario
{
	std::optional<ScenarioKind> kind; ///< empty for an inline system
	std::optional<ModulationSchedule> schedule;
	SystemSpec base{{0.0, 0.0}, {}};
	std::vector<DrivenEdge> drives;
	double t_start = 0.0;
	double t_final = 0.0;
	double substep = 0.0; ///< waveform scenarios only
	std::size_t initial = 0;
	std::vector<std::size_t> targets;     ///< levels the scenario is meant to populate
	std::size_t interval_target_a = 1;    ///< level whose gap sets tau_a
	std::size_t interval_target_b = 1;    ///< level whose gap sets tau_b
	std::optional<double> declared_ts;    ///< transfer time quoted for the scenario, if any
	double horizon = 0.0;
	int samples_per_period = 4;
	IntervalRule rule;
	nlohmann::json resolved; ///< every resolved parameter, for the run sidecar

	[[nodiscard]] const SystemSpec& system() const { return schedule ? schedule->step_a() : base; }
	[[nodiscard]] std::size_t dimension() const { return system().dimension(); }
};

/// Builds a scenario from per-kind parameters; omitted keys take the
/// reference values and unknown keys are rejected by name.
Scenario build_scenario(ScenarioKind kind, const nlohmann::json& params = nlohmann::json::object());

/// Schedule for an arbitrary pair of systems with durations from the dressed
/// gaps of the given targets (one per step).
ModulationSchedule gap_schedule(const SystemSpec& a, const SystemSpec& b, std::size_t target_a, std::size_t target_b,
                                int n, const IntervalRule& rule);

struct ScenarioRun
{
	PopulationTrace trace;
	double substep = 0.0;
	double convergence_delta = 0.0;
};

/// Runs the scenario over [0, horizon] (schedules) or its waveform window.
ScenarioRun simulate(const Scenario& s, bool keep_amplitudes = false);

/// Mixing angle of the two upper levels: half the principal arctan of 2 Omega3 / delta,
/// pi/4 at delta = 0.
double superposition_angle(double omega3, double delta);

/// Level index from a 1-based integer or a label.
std::size_t resolve_level(const SystemSpec& spec, const nlohmann::json& ref);

Labeling labeling_from_string(const std::string& s);
GapSign gap_sign_from_string(const std::string& s);
std::string to_string(Labeling l);
std::string to_string(GapSign g);

} // namespace twostep
