#include "twostep/config.hpp"
#include "twostep/errors.hpp"

#include "params.hpp"

#include <cmath>

namespace twostep
{

namespace
{

std::vector<double> axis_values(const std::string& name, const nlohmann::json& v)
{
	std::vector<double> out;
	if(v.is_array())
	{
		for(const auto& x : v)
		{
			if(!x.is_number())
				throw ValidationError("axis \"" + name + "\" must hold numbers");
			out.push_back(x.get<double>());
		}
	}
	else if(v.is_object())
	{
		detail::Params p(v, "axis " + name);
		const double from = p.number("from", 0.0);
		const double to = p.number("to", 0.0);
		const int count = p.integer("count", 0);
		p.finish();
		if(count < 1)
			throw ValidationError("axis \"" + name + "\" needs count >= 1");
		for(int k = 0; k < count; ++k)
			out.push_back(count == 1 ? from : from + (to - from) * k / (count - 1));
	}
	else
		throw ValidationError("axis \"" + name + "\" must be an array or {from, to, count}");
	if(out.empty())
		throw ValidationError("axis \"" + name + "\" is empty");
	for(double x : out)
		if(!std::isfinite(x))
			throw ValidationError("axis \"" + name + "\" has a non-finite value");
	return out;
}

SweepKind sweep_kind(const std::map<std::string, std::vector<double>>& axes)
{
	auto only = [&](std::initializer_list<const char*> names) {
		if(axes.size() != names.size())
			return false;
		for(const char* n : names)
			if(!axes.count(n))
				return false;
		return true;
	};
	if(only({"gamma"}))
		return SweepKind::deformation;
	if(only({"delta_omega1", "delta_omega2"}))
		return SweepKind::perturbation;
	if(only({"delta2"}))
		return SweepKind::stirap;
	if(only({"ratio"}))
		return SweepKind::spike;
	for(const auto& [name, _] : axes)
		if(name != "gamma" && name != "delta_omega1" && name != "delta_omega2" && name != "delta2" && name != "ratio")
			throw ValidationError("unknown sweep axis \"" + name + "\"");
	throw ValidationError("sweep axes must be one of: gamma | delta_omega1 + delta_omega2 | delta2 | ratio");
}

} // namespace

std::string to_string(Command c)
{
	switch(c)
	{
	case Command::simulate: return "simulate";
	case Command::sweep: return "sweep";
	case Command::spectrum: return "spectrum";
	case Command::effective: return "effective";
	}
	return "?";
}

std::string to_string(SweepKind k)
{
	switch(k)
	{
	case SweepKind::deformation: return "deformation";
	case SweepKind::perturbation: return "perturbation";
	case SweepKind::stirap: return "stirap";
	case SweepKind::spike: return "spike";
	}
	return "?";
}

RunPlan parse_config(const std::string& text)
{
	nlohmann::json j;
	try
	{
		j = nlohmann::json::parse(text);
	}
	catch(const nlohmann::json::parse_error& e)
	{
		throw ValidationError(std::string("malformed JSON config: ") + e.what());
	}
	if(!j.is_object())
		throw ValidationError("config must be a JSON object");

	detail::Params p(j, "config");
	RunPlan plan;
	const std::string cmd = p.text("command", "");
	if(cmd == "simulate")
		plan.command = Command::simulate;
	else if(cmd == "sweep")
		plan.command = Command::sweep;
	else if(cmd == "spectrum")
		plan.command = Command::spectrum;
	else if(cmd == "effective")
		plan.command = Command::effective;
	else
		throw ValidationError("config: \"command\" must be simulate, sweep, spectrum or effective");

	const nlohmann::json* scenario = p.raw("scenario");
	const nlohmann::json* system = p.raw("system");
	if((scenario != nullptr) == (system != nullptr))
		throw ValidationError("config: give exactly one of \"scenario\" or \"system\"");

	if(scenario)
	{
		if(!scenario->is_string())
			throw ValidationError("config: \"scenario\" must be a string");
		plan.scenario = scenario_kind_from_string(scenario->get<std::string>());
		if(const nlohmann::json* params = p.raw("params"))
		{
			if(!params->is_object())
				throw ValidationError("config: \"params\" must be an object");
			plan.params = *params;
		}
		for(const char* k : {"system_b", "durations", "target", "target_b", "initial_level", "n", "labeling", "gap_sign"})
			if(j.contains(k))
				throw ValidationError(std::string("config: \"") + k + "\" is only valid with an inline system; use params");
	}
	else
	{
		if(j.contains("params"))
			throw ValidationError("config: \"params\" is only valid with a scenario");
		plan.system = system_from_json(*system);
		if(const nlohmann::json* b = p.raw("system_b"))
			plan.system_b = system_from_json(*b);
		if(const nlohmann::json* d = p.raw("durations"))
		{
			if(!d->is_array() || d->size() != 2 || !(*d)[0].is_number() || !(*d)[1].is_number())
				throw ValidationError("config: \"durations\" must be [tau_a, tau_b]");
			plan.durations = {(*d)[0].get<double>(), (*d)[1].get<double>()};
		}
		if(const nlohmann::json* t = p.raw("target"))
			plan.target = *t;
		if(const nlohmann::json* t = p.raw("target_b"))
			plan.target_b = *t;
		if(const nlohmann::json* t = p.raw("initial_level"))
			plan.initial_level = *t;
		plan.n = p.integer("n", 0);
		plan.rule.labeling = labeling_from_string(p.text("labeling", "bare-overlap"));
		plan.rule.sign = gap_sign_from_string(p.text("gap_sign", "positive"));
		if(!plan.durations && plan.target.is_null())
			throw ValidationError("config: an inline system needs \"durations\" or a \"target\"");
	}

	if(const nlohmann::json* s = p.raw("sampling"))
	{
		detail::Params sp(*s, "sampling");
		if(s->contains("samples_per_period"))
			plan.sampling.samples_per_period = sp.integer("samples_per_period", 4);
		if(s->contains("horizon"))
			plan.sampling.horizon = sp.number("horizon", 0.0);
		if(s->contains("substep"))
			plan.sampling.substep = sp.number("substep", 0.0);
		sp.finish();
		if(plan.sampling.samples_per_period && *plan.sampling.samples_per_period < 2)
			throw ValidationError("sampling: samples_per_period must be >= 2");
		if(plan.sampling.horizon && !(*plan.sampling.horizon > 0.0))
			throw ValidationError("sampling: horizon must be positive");
		if(plan.sampling.substep && !(*plan.sampling.substep > 0.0))
			throw ValidationError("sampling: substep must be positive");
	}

	if(const nlohmann::json* axes = p.raw("axes"))
	{
		if(!axes->is_object())
			throw ValidationError("config: \"axes\" must be an object");
		for(const auto& [name, v] : axes->items())
			plan.axes[name] = axis_values(name, v);
	}
	if(j.contains("t_s"))
	{
		plan.t_s = p.number("t_s", 0.0);
		if(!(*plan.t_s > 0.0))
			throw ValidationError("config: \"t_s\" must be positive");
	}
	p.finish();

	if(plan.command == Command::sweep)
	{
		if(plan.axes.empty())
			throw ValidationError("config: a sweep needs \"axes\"");
		if(!plan.scenario)
			throw ValidationError("config: a sweep needs a scenario");
		plan.sweep = sweep_kind(plan.axes);
		const ScenarioKind k = *plan.scenario;
		if(*plan.sweep == SweepKind::stirap && k != ScenarioKind::stirap)
			throw ValidationError("config: the delta2 axis needs the stirap scenario");
		if(*plan.sweep == SweepKind::spike && k != ScenarioKind::rydberg_ladder)
			throw ValidationError("config: the ratio axis needs the rydberg-ladder scenario");
		if((*plan.sweep == SweepKind::perturbation || *plan.sweep == SweepKind::deformation) &&
		   k == ScenarioKind::stirap)
			throw ValidationError("config: this sweep needs a two-step scenario");
	}
	else if(!plan.axes.empty())
		throw ValidationError("config: \"axes\" is only valid for sweeps");

	// Build once so scenario-level mistakes surface at parse time.
	if(plan.command != Command::sweep || *plan.sweep == SweepKind::deformation ||
	   *plan.sweep == SweepKind::perturbation)
		(void)plan_scenario(plan);
	if(plan.command == Command::effective && plan.scenario == ScenarioKind::stirap)
		throw ValidationError("config: effective needs a two-step scenario or system");
	return plan;
}

Scenario plan_scenario(const RunPlan& plan)
{
	if(plan.scenario)
	{
		nlohmann::json params = plan.params;
		auto put = [&](const char* key, const nlohmann::json& v) {
			if(params.contains(key))
				throw ValidationError(std::string("config: \"") + key + "\" given both in params and in sampling");
			params[key] = v;
		};
		const bool waveform = *plan.scenario == ScenarioKind::stirap;
		if(plan.sampling.samples_per_period)
		{
			if(waveform)
				throw ValidationError("config: samples_per_period does not apply to stirap");
			put("samples_per_period", *plan.sampling.samples_per_period);
		}
		if(plan.sampling.horizon)
		{
			if(waveform)
				throw ValidationError("config: horizon does not apply to stirap; set params t_final");
			put("horizon", *plan.sampling.horizon);
		}
		if(plan.sampling.substep && waveform)
			put("substep", *plan.sampling.substep);
		return build_scenario(*plan.scenario, params);
	}

	const SystemSpec& a = *plan.system;
	const SystemSpec b = plan.system_b ? *plan.system_b : a;
	if(a.dimension() != b.dimension())
		throw ValidationError("config: system and system_b differ in dimension");
	Scenario s;
	s.base = a;
	s.rule = plan.rule;
	s.initial = plan.initial_level.is_null() ? 0 : resolve_level(a, plan.initial_level);
	if(!plan.target.is_null())
	{
		s.interval_target_a = resolve_level(a, plan.target);
		s.interval_target_b = plan.target_b.is_null() ? s.interval_target_a : resolve_level(a, plan.target_b);
		s.targets = {s.interval_target_a};
	}
	if(plan.durations)
		s.schedule = ModulationSchedule(a, b, plan.durations->first, plan.durations->second);
	else
		s.schedule = gap_schedule(a, b, s.interval_target_a, s.interval_target_b, plan.n, plan.rule);
	s.samples_per_period = plan.sampling.samples_per_period.value_or(4);
	s.horizon = plan.sampling.horizon ? *plan.sampling.horizon
	                                  : rabi_horizon(extract_effective(*s.schedule), s.initial, 1.5, 600.0);
	const auto& sch = *s.schedule;
	s.resolved = {{"kind", "inline"},
	              {"step_a", to_json(sch.step_a())},
	              {"step_b", to_json(sch.step_b())},
	              {"tau_a", sch.tau_a()},
	              {"tau_b", sch.tau_b()},
	              {"period", sch.period()},
	              {"horizon", s.horizon},
	              {"horizon_rule", plan.sampling.horizon ? "explicit" : "effective Rabi periods"},
	              {"samples_per_period", s.samples_per_period},
	              {"initial_level", a.labels()[s.initial]},
	              {"n", plan.n},
	              {"labeling", to_string(plan.rule.labeling)},
	              {"gap_sign", to_string(plan.rule.sign)}};
	if(!s.targets.empty())
		s.resolved["target"] = a.labels()[s.interval_target_a];
	return s;
}

} // namespace twostep
