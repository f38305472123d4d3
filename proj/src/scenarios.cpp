#include "twostep/scenarios.hpp"
#include "twostep/errors.hpp"

#include "params.hpp"

#include <cmath>
#include <numbers>

namespace twostep
{

namespace
{

struct KindName
{
	ScenarioKind kind;
	const char* name;
};

constexpr KindName kind_names[] = {
    {ScenarioKind::rydberg_ladder, "rydberg-ladder"},
    {ScenarioKind::rydberg_superposition, "rydberg-superposition"},
    {ScenarioKind::blockade_pair, "blockade-pair"},
    {ScenarioKind::counterintuitive_vee, "counterintuitive-vee"},
    {ScenarioKind::rb_star, "rb-star"},
    {ScenarioKind::ne_five, "ne-five"},
    {ScenarioKind::ne_four, "ne-four"},
    {ScenarioKind::stirap, "stirap"},
};

// Step pair plus the choices that differ between kinds.
struct Draft
{
	Draft(SystemSpec step_a, SystemSpec step_b) : a(std::move(step_a)), b(std::move(step_b)) {}

	SystemSpec a;
	SystemSpec b;
	std::string target = "3";
	std::optional<std::string> target_b;
	IntervalRule rule;
	std::optional<double> ts;
	// Levels watched besides the interval target; empty means {target}.
	std::vector<std::string> watch;
};

SystemSpec flip_edges(const SystemSpec& s, const std::vector<std::pair<std::size_t, std::size_t>>& edges, double value)
{
	SystemSpec out = s;
	for(auto [i, j] : edges)
		out = out.with_coupling(i, j, value);
	return out;
}

Draft ladder(detail::Params& p)
{
	const double d1 = p.number("delta1", 60.0);
	const double d2 = p.number("delta2", 30.0);
	const double o1 = p.number("omega1", 1.0);
	const double o2 = p.number("omega2", 2.0);
	const std::string mod = p.text("modulated", "omega1");
	SystemSpec a({0.0, d1, d2}, {{0, 1, o1}, {1, 2, o2}});
	Draft d{a, a};
	if(mod == "omega1")
		d.b = a.with_coupling(0, 1, p.number("modulated_value", -o1));
	else if(mod == "omega2")
		d.b = a.with_coupling(1, 2, p.number("modulated_value", -o2));
	else if(mod == "delta1")
		d.b = a.with_detuning(1, p.number("modulated_value", -d1));
	else if(mod == "delta2")
		d.b = a.with_detuning(2, p.number("modulated_value", -d2));
	else if(mod != "none")
		throw ValidationError(p.context() + ": \"modulated\" must be omega1, omega2, delta1, delta2 or none");
	d.ts = p.number("t_s", 37.2);
	return d;
}

Draft superposition(detail::Params& p)
{
	const double d1 = p.number("delta1", 60.0);
	const double d2 = p.number("delta2", 30.0);
	const double d3 = p.number("delta3", 28.8);
	const double o1 = p.number("omega1", 1.0);
	const double o2 = p.number("omega2", 2.0);
	const double o3 = p.number("omega3", 2.0);
	SystemSpec a({0.0, d1, d2, d3}, {{0, 1, o1}, {1, 2, o2}, {2, 3, o3}});
	Draft d{a, a.with_coupling(0, 1, p.number("modulated_value", -o1))};
	d.watch = {"3", "4"};
	d.ts = p.number("t_s", 44.6);
	p.set_resolved("theta", superposition_angle(o3, d2 - d3));
	return d;
}

Draft blockade(detail::Params& p)
{
	const double d1 = p.number("delta1", -23.0);
	const double v = p.number("v", 39.0);
	const double om = p.number("omega_eff", 1.0);
	const double ratio = p.number("ratio_b", 0.5);
	const std::string convention = p.text("convention", "plus");
	std::vector<double> diag;
	if(convention == "plus")
		diag = {0.0, d1, v + 2.0 * d1};
	else if(convention == "minus")
		diag = {0.0, -d1, v - 2.0 * d1};
	else
		throw ValidationError(p.context() + ": \"convention\" must be plus or minus");
	const double c = std::numbers::sqrt2 * om;
	SystemSpec a(diag, {{0, 1, c}, {1, 2, c}}, {"gg", "T", "rr"});
	Draft d{a, a.scaled_couplings(ratio)};
	d.target = "rr";
	d.watch = {"T", "rr"};
	d.rule = {Labeling::bare_overlap, GapSign::magnitude};
	return d;
}

Draft vee(detail::Params& p)
{
	const double d1 = p.number("delta1", -48.0);
	const double o1 = p.number("omega1", 1.0);
	SystemSpec a({0.0, d1, 0.0}, {{0, 1, o1}, {0, 2, o1}});
	Draft d{a, flip_edges(a, {{0, 1}, {0, 2}}, p.number("modulated_value", -o1))};
	d.target = "2";
	d.target_b = "3";
	d.watch = {"2", "3"};
	d.rule = {Labeling::energy_order, GapSign::positive};
	return d;
}

Draft rb_star(detail::Params& p)
{
	const double d1 = p.number("delta1", 30.0);
	const double d2 = p.number("delta2", 53.0);
	const double d3 = p.number("delta3", 100.0);
	const double o1 = p.number("omega1", 1.0);
	SystemSpec a({0.0, d1, d2, d3}, {{0, 1, o1}, {0, 2, o1}, {0, 3, o1}});
	Draft d{a, flip_edges(a, {{0, 1}, {0, 2}, {0, 3}}, p.number("modulated_value", -o1))};
	d.target = "2";
	return d;
}

Draft ne_five(detail::Params& p)
{
	const double d1 = p.number("delta1", 33.0);
	const double d2 = p.number("delta2", 9.0);
	const double d3 = p.number("delta3", 36.0);
	const double d4 = p.number("delta4", 6.0);
	const double o1 = p.number("omega1", 1.0);
	const double o2 = p.number("omega2", 2.0);
	const std::string layout = p.text("layout", "two-photon");
	std::vector<double> diag;
	if(layout == "two-photon")
		diag = {0.0, d1, d2, d3, d4};
	else if(layout == "single-photon")
		diag = {0.0, d1, d1 + d2, d3, d3 + d4};
	else
		throw ValidationError(p.context() + ": \"layout\" must be two-photon or single-photon");
	SystemSpec a(diag, {{0, 1, o1}, {0, 3, o1}, {1, 2, o2}, {3, 4, o2}}, {"1", "2", "3", "2'", "3'"});
	Draft d{a, flip_edges(a, {{0, 1}, {0, 3}}, p.number("modulated_value", -o1))};
	return d;
}

Draft ne_four(detail::Params& p)
{
	const double d1 = p.number("delta1", 60.0);
	const double d2 = p.number("delta2", 30.0);
	const double d3 = p.number("delta3", 28.0);
	const double o1 = p.number("omega1", 1.0);
	const double o2 = p.number("omega2", 2.0);
	SystemSpec a({0.0, d1, d2, d3}, {{0, 1, o1}, {1, 2, o2}, {1, 3, o2}}, {"1", "2", "3", "3'"});
	Draft d{a, a.with_coupling(0, 1, p.number("modulated_value", -o1))};
	return d;
}

nlohmann::json labels_of(const SystemSpec& s, const std::vector<std::size_t>& levels)
{
	nlohmann::json out = nlohmann::json::array();
	for(auto k : levels)
		out.push_back(s.labels()[k]);
	return out;
}

nlohmann::json dressed_json(const SystemSpec& s)
{
	const DressedSpectrum ds = eigendecompose(build_hamiltonian(s));
	return {{"energies", std::vector<double>(ds.eigenvalues.begin(), ds.eigenvalues.end())},
	        {"bare_map", labels_of(s, ds.bare_map)},
	        {"overlaps", ds.overlaps},
	        {"ambiguous", ds.ambiguous}};
}

Scenario build_stirap(detail::Params& p)
{
	const double d1 = p.number("delta1", 30.0);
	const double d2 = p.number("delta2", 0.0);
	const double o1 = p.number("omega1", 1.0);
	const double o2 = p.number("omega2", 1.0);
	const double width = p.number("width", 200.0);
	const double delay = p.number("delay", width);

	Scenario s;
	s.kind = ScenarioKind::stirap;
	s.base = SystemSpec({0.0, d1, d2}, {{0, 1, 0.0}, {1, 2, 0.0}});
	s.drives = {DrivenEdge{0, 1, GaussianPulse{o1, width, delay}}, DrivenEdge{1, 2, GaussianPulse{o2, width, 0.0}}};
	for(const auto& dr : s.drives)
		validate(dr.shape);
	s.t_start = p.number("t_start", -3.0 * width);
	s.t_final = p.number("t_final", 4.0 * width);
	s.substep = p.number("substep", 0.05);
	if(!(s.t_final > s.t_start))
		throw ValidationError(p.context() + ": t_final must exceed t_start");
	if(!(s.substep > 0.0))
		throw ValidationError(p.context() + ": substep must be positive");

	const nlohmann::json* init = p.raw("initial_level");
	s.initial = init ? resolve_level(s.base, *init) : 0;
	const nlohmann::json* tgt = p.raw("target");
	s.targets = {tgt ? resolve_level(s.base, *tgt) : 2};
	s.interval_target_a = s.interval_target_b = s.targets[0];
	p.set_resolved("initial_level", s.base.labels()[s.initial]);
	p.set_resolved("target", s.base.labels()[s.targets[0]]);
	p.finish();

	s.resolved = {{"kind", "stirap"},
	              {"params", p.resolved()},
	              {"system", to_json(s.base)},
	              {"window", {s.t_start, s.t_final}},
	              {"substep", s.substep},
	              {"targets", labels_of(s.base, s.targets)}};
	return s;
}

} // namespace

std::string to_string(ScenarioKind kind)
{
	for(const auto& kn : kind_names)
		if(kn.kind == kind)
			return kn.name;
	throw ValidationError("unknown scenario kind");
}

ScenarioKind scenario_kind_from_string(const std::string& name)
{
	for(const auto& kn : kind_names)
		if(name == kn.name)
			return kn.kind;
	throw ValidationError("unknown scenario kind \"" + name + "\"");
}

const std::vector<ScenarioKind>& all_scenario_kinds()
{
	static const std::vector<ScenarioKind> kinds = [] {
		std::vector<ScenarioKind> v;
		for(const auto& kn : kind_names)
			v.push_back(kn.kind);
		return v;
	}();
	return kinds;
}

Labeling labeling_from_string(const std::string& s)
{
	if(s == "bare-overlap")
		return Labeling::bare_overlap;
	if(s == "energy-order")
		return Labeling::energy_order;
	throw ValidationError("labeling must be bare-overlap or energy-order, got \"" + s + "\"");
}

GapSign gap_sign_from_string(const std::string& s)
{
	if(s == "positive")
		return GapSign::positive;
	if(s == "magnitude")
		return GapSign::magnitude;
	throw ValidationError("gap_sign must be positive or magnitude, got \"" + s + "\"");
}

std::string to_string(Labeling l)
{
	return l == Labeling::bare_overlap ? "bare-overlap" : "energy-order";
}

std::string to_string(GapSign g)
{
	return g == GapSign::positive ? "positive" : "magnitude";
}

std::size_t resolve_level(const SystemSpec& spec, const nlohmann::json& ref)
{
	if(ref.is_number_integer())
	{
		const auto k = ref.get<long long>();
		if(k < 1 || static_cast<std::size_t>(k) > spec.dimension())
			throw ValidationError("level " + std::to_string(k) + " out of range 1.." + std::to_string(spec.dimension()));
		return static_cast<std::size_t>(k - 1);
	}
	if(ref.is_string())
	{
		const auto k = spec.find_label(ref.get<std::string>());
		if(k == SystemSpec::npos)
			throw ValidationError("no level labelled \"" + ref.get<std::string>() + "\"");
		return k;
	}
	throw ValidationError("a level must be a 1-based index or a label");
}

ModulationSchedule gap_schedule(const SystemSpec& a, const SystemSpec& b, std::size_t target_a, std::size_t target_b,
                                int n, const IntervalRule& rule)
{
	const double tau_a = transition_interval(build_hamiltonian(a), target_a, n, rule);
	const double tau_b = transition_interval(build_hamiltonian(b), target_b, n, rule);
	return ModulationSchedule(a, b, tau_a, tau_b);
}

Scenario build_scenario(ScenarioKind kind, const nlohmann::json& params)
{
	const std::string name = to_string(kind);
	detail::Params p(params, "scenario " + name);
	try
	{
		if(kind == ScenarioKind::stirap)
			return build_stirap(p);

		Draft d = [&] {
			switch(kind)
			{
			case ScenarioKind::rydberg_ladder: return ladder(p);
			case ScenarioKind::rydberg_superposition: return superposition(p);
			case ScenarioKind::blockade_pair: return blockade(p);
			case ScenarioKind::counterintuitive_vee: return vee(p);
			case ScenarioKind::rb_star: return rb_star(p);
			case ScenarioKind::ne_five: return ne_five(p);
			case ScenarioKind::ne_four: return ne_four(p);
			default: throw ValidationError("unhandled scenario kind");
			}
		}();

		if(!p.boolean("modulation", true))
			d.b = d.a;
		const int n = p.integer("n", 0);
		d.rule.labeling = labeling_from_string(p.text("labeling", to_string(d.rule.labeling)));
		d.rule.sign = gap_sign_from_string(p.text("gap_sign", to_string(d.rule.sign)));

		Scenario s;
		s.kind = kind;
		const nlohmann::json* tgt = p.raw("target");
		s.interval_target_a = resolve_level(d.a, tgt ? *tgt : nlohmann::json(d.target));
		const nlohmann::json* tgt_b = p.raw("target_b");
		if(tgt_b)
			s.interval_target_b = resolve_level(d.a, *tgt_b);
		else if(d.target_b && !tgt)
			s.interval_target_b = resolve_level(d.a, *d.target_b);
		else
			s.interval_target_b = s.interval_target_a;
		const nlohmann::json* init = p.raw("initial_level");
		s.initial = init ? resolve_level(d.a, *init) : 0;
		if(s.interval_target_a == s.initial || s.interval_target_b == s.initial)
			throw ValidationError("target must differ from the initial level");

		if(d.watch.empty())
			s.targets = {s.interval_target_a};
		else
			for(const auto& w : d.watch)
				s.targets.push_back(resolve_level(d.a, w));

		s.rule = d.rule;
		s.schedule = gap_schedule(d.a, d.b, s.interval_target_a, s.interval_target_b, n, d.rule);
		s.base = d.a;
		s.declared_ts = d.ts;
		s.samples_per_period = p.integer("samples_per_period", 4);
		if(s.samples_per_period < 2)
			throw ValidationError("samples_per_period must be >= 2");

		std::string horizon_rule = "explicit";
		const double cap = p.number("horizon_cap", 600.0);
		const double periods = p.number("rabi_periods", 1.5);
		if(!(periods > 0.0))
			throw ValidationError("rabi_periods must be positive");
		if(const nlohmann::json* h = p.raw("horizon"))
		{
			if(!h->is_number() || !(h->get<double>() > 0.0))
				throw ValidationError("horizon must be a positive number");
			s.horizon = h->get<double>();
		}
		else
		{
			s.horizon = rabi_horizon(extract_effective(*s.schedule), s.initial, periods, cap);
			horizon_rule = "effective Rabi periods";
		}
		p.set_resolved("horizon", s.horizon);
		p.set_resolved("initial_level", d.a.labels()[s.initial]);
		p.set_resolved("target", d.a.labels()[s.interval_target_a]);
		p.set_resolved("target_b", d.a.labels()[s.interval_target_b]);
		p.finish();

		const auto& sch = *s.schedule;
		s.resolved = {{"kind", name},
		              {"params", p.resolved()},
		              {"step_a", to_json(sch.step_a())},
		              {"step_b", to_json(sch.step_b())},
		              {"tau_a", sch.tau_a()},
		              {"tau_b", sch.tau_b()},
		              {"period", sch.period()},
		              {"dressed_a", dressed_json(sch.step_a())},
		              {"dressed_b", dressed_json(sch.step_b())},
		              {"horizon", s.horizon},
		              {"horizon_rule", horizon_rule},
		              {"samples_per_period", s.samples_per_period},
		              {"targets", labels_of(d.a, s.targets)},
		              {"mld_min_ratio", mld_diagnostics(sch.step_a()).min_ratio}};
		if(s.declared_ts)
			s.resolved["declared_ts"] = *s.declared_ts;
		return s;
	}
	catch(const ValidationError& e)
	{
		const std::string msg = e.what();
		if(msg.rfind(p.context(), 0) == 0)
			throw;
		throw ValidationError(p.context() + ": " + msg);
	}
}

ScenarioRun simulate(const Scenario& s, bool keep_amplitudes)
{
	const QuantumState psi0 = QuantumState::basis(s.dimension(), s.initial);
	if(s.schedule)
	{
		const int periods = periods_for(*s.schedule, s.horizon);
		return {stroboscopic_evolve(*s.schedule, psi0, periods, s.samples_per_period, keep_amplitudes), 0.0, 0.0};
	}
	WaveformOptions opt;
	opt.t_start = s.t_start;
	opt.t_final = s.t_final;
	opt.substep = s.substep;
	WaveformRun run = waveform_evolve(s.base, s.drives, psi0, opt);
	return {std::move(run.trace), run.substep, run.convergence_delta};
}

double superposition_angle(double omega3, double delta)
{
	if(omega3 == 0.0 && delta == 0.0)
		throw ValidationError("superposition angle undefined for zero coupling and zero detuning");
	if(delta == 0.0)
		return std::numbers::pi / 4.0;
	return 0.5 * std::atan(2.0 * omega3 / delta);
}

} // namespace twostep
