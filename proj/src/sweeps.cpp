#include "twostep/sweeps.hpp"
#include "twostep/errors.hpp"

#include <algorithm>
#include <cmath>

namespace twostep
{

namespace
{

std::vector<double> to_vector(std::span<const double> v)
{
	return {v.begin(), v.end()};
}

void require_values(std::span<const double> v, const char* axis)
{
	if(v.empty())
		throw ValidationError(std::string("sweep axis ") + axis + " is empty");
	for(double x : v)
		if(!std::isfinite(x))
			throw ValidationError(std::string("sweep axis ") + axis + " has a non-finite value");
}

std::string level_name(const Scenario& s, std::size_t level)
{
	return "P" + s.system().labels()[level];
}

double coupling_of(const SystemSpec& s, std::size_t i, std::size_t j)
{
	const auto k = s.find_edge(i, j);
	if(k == SystemSpec::npos)
		throw ValidationError("scenario has no coupling between levels " + std::to_string(i + 1) + " and " +
		                      std::to_string(j + 1));
	return s.couplings()[k].value;
}

SystemSpec offset_ladder(const SystemSpec& s, double d1, double d2)
{
	return s.with_coupling(0, 1, coupling_of(s, 0, 1) + d1).with_coupling(1, 2, coupling_of(s, 1, 2) + d2);
}

} // namespace

std::size_t SweepGrid::result_column(const std::string& name) const
{
	const auto it = std::find(result_names.begin(), result_names.end(), name);
	if(it == result_names.end())
		throw ValidationError("sweep has no result column \"" + name + "\"");
	return static_cast<std::size_t>(it - result_names.begin());
}

SweepGrid stirap_sweep(std::span<const double> delta2, const nlohmann::json& params, Exec exec)
{
	require_values(delta2, "delta2");
	if(params.contains("delta2"))
		throw ValidationError("stirap sweep sets delta2 itself");
	const Scenario probe = build_scenario(ScenarioKind::stirap, params);

	SweepGrid g;
	g.axis_names = {"delta2"};
	g.axis_values = {to_vector(delta2)};
	g.result_names = {level_name(probe, probe.targets[0]) + "_final"};
	g.points.resize(delta2.size());
	g.results.resize(delta2.size());
	for_each_index(delta2.size(), exec, [&](std::size_t k) {
		nlohmann::json p = params;
		p["delta2"] = delta2[k];
		const Scenario s = build_scenario(ScenarioKind::stirap, p);
		const ScenarioRun run = simulate(s);
		const auto last = static_cast<Eigen::Index>(run.trace.size() - 1);
		g.points[k] = {delta2[k]};
		g.results[k] = {run.trace.populations(last, static_cast<Eigen::Index>(s.targets[0]))};
	});
	return g;
}

SweepGrid perturbation_sweep(const Scenario& s, std::span<const double> d_omega1, std::span<const double> d_omega2,
                             double t_s, Exec exec)
{
	require_values(d_omega1, "delta_omega1");
	require_values(d_omega2, "delta_omega2");
	if(!s.schedule || s.dimension() != 3)
		throw ValidationError("perturbation sweep needs a three-level two-step scenario");
	if(!(t_s > 0.0))
		throw ValidationError("t_s must be positive");
	const ModulationSchedule& sch = *s.schedule;
	const QuantumState psi0 = QuantumState::basis(s.dimension(), s.initial);
	const std::size_t target = s.interval_target_a;

	SweepGrid g;
	g.axis_names = {"delta_omega1", "delta_omega2"};
	g.axis_values = {to_vector(d_omega1), to_vector(d_omega2)};
	g.result_names = {level_name(s, target) + "_ts"};
	const std::size_t n2 = d_omega2.size();
	const std::size_t total = d_omega1.size() * n2;
	g.points.resize(total);
	g.results.resize(total);
	for_each_index(total, exec, [&](std::size_t k) {
		const double a = d_omega1[k / n2];
		const double b = d_omega2[k % n2];
		const ModulationSchedule perturbed(offset_ladder(sch.step_a(), a, b), offset_ladder(sch.step_b(), a, b),
		                                   sch.tau_a(), sch.tau_b());
		const Vector psi = evolve_to(perturbed, psi0, t_s);
		g.points[k] = {a, b};
		g.results[k] = {std::norm(psi(static_cast<Eigen::Index>(target)))};
	});
	return g;
}

SweepGrid deformation_sweep(const Scenario& s, std::span<const double> gamma, double t_s, Exec exec,
                            const DeformationOptions& options)
{
	require_values(gamma, "gamma");
	if(!s.schedule)
		throw ValidationError("deformation sweep needs a two-step scenario");
	if(!(t_s > 0.0))
		throw ValidationError("t_s must be positive");
	const ModulationSchedule& sch = *s.schedule;
	const SystemSpec& a = sch.step_a();
	const SystemSpec& b = sch.step_b();
	if(a.detunings() != b.detunings())
		throw ValidationError("deformation sweep needs a coupling-only modulation");

	struct Modulated
	{
		std::size_t i, j;
		double high, low;
	};
	std::vector<Modulated> edges;
	for(const auto& c : a.couplings())
	{
		const double low = coupling_of(b, c.i, c.j);
		if(low != c.value)
			edges.push_back({c.i, c.j, c.value, low});
	}
	if(b.couplings().size() != a.couplings().size())
		throw ValidationError("deformation sweep needs both steps on the same coupling graph");
	if(edges.empty())
		throw ValidationError("deformation sweep needs at least one modulated coupling");

	const double window = options.window > 0.0 ? options.window : 2.0 * t_s;
	const std::size_t target = s.interval_target_a;
	const QuantumState psi0 = QuantumState::basis(s.dimension(), s.initial);

	SweepGrid g;
	g.axis_names = {"gamma"};
	g.axis_values = {to_vector(gamma)};
	const std::string name = level_name(s, target);
	g.result_names = {name + "_ts", name + "_max", "t_max", "substep"};
	g.points.resize(gamma.size());
	g.results.resize(gamma.size());
	for_each_index(gamma.size(), exec, [&](std::size_t k) {
		const double gm = gamma[k];
		if(!(gm > 0.0))
			throw ValidationError("hardness gamma must be positive");
		std::vector<DrivenEdge> drives;
		for(const auto& e : edges)
			drives.push_back({e.i, e.j, SoftSquare{e.high, e.low, sch.tau_a(), sch.tau_b(), gm}});

		WaveformOptions opt;
		opt.substep = options.substep > 0.0 ? options.substep : std::min(sch.period() / 20.0, 0.02 / gm);
		opt.t_final = t_s;
		const WaveformRun at_ts = waveform_evolve(a, drives, psi0, opt);

		opt.t_final = window;
		opt.sample_interval = sch.period() / s.samples_per_period;
		const WaveformRun full = waveform_evolve(a, drives, psi0, opt);
		const Extremum best = trace_extremum(full.trace, target);

		const auto last = static_cast<Eigen::Index>(at_ts.trace.size() - 1);
		g.points[k] = {gm};
		g.results[k] = {at_ts.trace.populations(last, static_cast<Eigen::Index>(target)), best.value, best.time,
		                at_ts.substep};
	});
	return g;
}

double delta2_for_ratio(const nlohmann::json& ladder_params, double ratio)
{
	if(!(ratio > 1.0))
		throw ValidationError("gap ratio must exceed 1");
	if(ladder_params.contains("delta2"))
		throw ValidationError("spike scan sets delta2 itself");
	const SystemSpec ref = build_scenario(ScenarioKind::rydberg_ladder, ladder_params).schedule->step_a();
	const double d1 = ref.detunings()[1];
	const double o2 = std::abs(coupling_of(ref, 1, 2));
	if(!(d1 > 0.0))
		throw ValidationError("spike scan needs a positive delta1");

	auto ratio_at = [&](double d2) {
		return spike_distance(eigendecompose(build_hamiltonian(ref.with_detuning(2, d2)))).ratio;
	};
	// The gap ratio falls roughly like delta1 / delta2 below the crossing.
	double lo = d1 / (ratio + 1.0);
	double hi = std::min(d1 - 3.0 * o2, d1 / std::max(ratio - 0.1, 1.0));
	if(!(hi > lo))
		throw ValidationError("gap ratio too close to 1 for this ladder");
	if(ratio_at(lo) < ratio || ratio_at(hi) > ratio)
		throw ValidationError("could not bracket the requested gap ratio");
	for(int it = 0; it < 200 && hi - lo > 1e-13 * d1; ++it)
	{
		const double mid = 0.5 * (lo + hi);
		(ratio_at(mid) > ratio ? lo : hi) = mid;
	}
	return 0.5 * (lo + hi);
}

SweepGrid spike_scan(std::span<const double> ratios, const nlohmann::json& ladder_params, Exec exec)
{
	require_values(ratios, "ratio");
	SweepGrid g;
	g.axis_names = {"ratio"};
	g.axis_values = {to_vector(ratios)};
	g.result_names = {"delta2", "spike_distance", "P2_max", "P3_max", "horizon"};
	g.points.resize(ratios.size());
	g.results.resize(ratios.size());
	for_each_index(ratios.size(), exec, [&](std::size_t k) {
		nlohmann::json p = ladder_params;
		p["delta2"] = delta2_for_ratio(ladder_params, ratios[k]);
		const Scenario s = build_scenario(ScenarioKind::rydberg_ladder, p);
		const SpikeDistance sd = spike_distance(eigendecompose(build_hamiltonian(s.schedule->step_a())));
		const ScenarioRun run = simulate(s);
		g.points[k] = {ratios[k]};
		g.results[k] = {p["delta2"].get<double>(), sd.distance, trace_extremum(run.trace, 1).value,
		                trace_extremum(run.trace, 2).value, s.horizon};
	});
	return g;
}

} // namespace twostep
