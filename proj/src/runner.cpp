#include "twostep/runner.hpp"
#include "twostep/errors.hpp"
#include "twostep/format.hpp"
#include "twostep/sweeps.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace twostep
{

namespace
{

void write_file(const std::filesystem::path& path, const std::string& text)
{
	std::ofstream f(path, std::ios::binary);
	if(!f)
		throw ValidationError("cannot write " + path.string());
	f << text;
	if(!f)
		throw ValidationError("failed writing " + path.string());
}

void prepare_dir(const std::filesystem::path& dir)
{
	std::error_code ec;
	std::filesystem::create_directories(dir, ec);
	if(ec || !std::filesystem::is_directory(dir))
		throw ValidationError("output directory " + dir.string() + " is not writable");
}

std::string scenario_name(const RunPlan& plan)
{
	return plan.scenario ? to_string(*plan.scenario) : "inline";
}

nlohmann::json step_report(const SystemSpec& spec, const Scenario& s, int n)
{
	const DressedSpectrum ds = eigendecompose(build_hamiltonian(spec));
	const auto& labels = spec.labels();
	nlohmann::json bare = nlohmann::json::array();
	for(auto k : ds.bare_map)
		bare.push_back(labels[k]);

	nlohmann::json tau = nlohmann::json::object();
	for(std::size_t k = 0; k < spec.dimension(); ++k)
	{
		if(k == s.initial)
			continue;
		try
		{
			// Intervals are measured from level 1's dressed state, as in the schedules.
			tau[labels[k]] = k == 0 ? nlohmann::json() : nlohmann::json(transition_interval(ds, k, n, s.rule));
		}
		catch(const ValidationError&)
		{
			tau[labels[k]] = nullptr;
		}
	}

	const MldReport mld = mld_diagnostics(spec);
	nlohmann::json edges = nlohmann::json::array();
	for(const auto& e : mld.edges)
		edges.push_back({{"levels", {labels[e.i], labels[e.j]}},
		                 {"ratio", std::isfinite(e.ratio) ? nlohmann::json(e.ratio) : nlohmann::json("inf")},
		                 {"flagged", e.flagged}});

	nlohmann::json pert = nullptr;
	try
	{
		const PerturbativeThreeLevel p = perturbative_three_level(spec, 1.0);
		pert = {{"alpha", p.alpha}, {"xi1", p.xi1}, {"xi2", p.xi2}, {"x1", p.x1}, {"x2", p.x2},
		        {"E1", p.e1},       {"E2", p.e2},   {"E3", p.e3}};
	}
	catch(const Error&)
	{
	}

	return {{"system", to_json(spec)},
	        {"eigenvalues", std::vector<double>(ds.eigenvalues.begin(), ds.eigenvalues.end())},
	        {"bare_map", bare},
	        {"overlaps", ds.overlaps},
	        {"ambiguous", ds.ambiguous},
	        {"suggested_tau", tau},
	        {"mld", {{"edges", edges},
	                 {"min_ratio", std::isfinite(mld.min_ratio) ? nlohmann::json(mld.min_ratio) : nlohmann::json("inf")},
	                 {"threshold", mld.threshold},
	                 {"flagged", mld.flagged}}},
	        {"perturbative", pert}};
}

int plan_n(const RunPlan& plan)
{
	if(plan.scenario)
		return plan.params.value("n", 0);
	return plan.n;
}

void run_simulate(const RunPlan& plan, const std::filesystem::path& dir, std::ostream& out)
{
	const Scenario s = plan_scenario(plan);
	const ScenarioRun r = simulate(s);
	prepare_dir(dir);
	std::ostringstream csv;
	write_trace_csv(csv, r.trace);

	nlohmann::json maxima = nlohmann::json::object();
	for(std::size_t k = 0; k < s.dimension(); ++k)
	{
		const Extremum e = trace_extremum(r.trace, k);
		maxima[s.system().labels()[k]] = {{"value", e.value}, {"time", e.time}};
	}
	nlohmann::json meta = {{"command", "simulate"},
	                       {"scenario", scenario_name(plan)},
	                       {"resolved", s.resolved},
	                       {"levels", s.system().labels()},
	                       {"window", {r.trace.times.front(), r.trace.times.back()}},
	                       {"samples", r.trace.size()},
	                       {"maxima", maxima},
	                       {"outputs", {{"trace", "trace.csv"}}}};
	if(!s.schedule)
	{
		meta["substep"] = r.substep;
		meta["convergence_delta"] = r.convergence_delta;
	}
	write_file(dir / "trace.csv", csv.str());
	write_file(dir / "run.json", dump_json(meta));
	out << (dir / "trace.csv").string() << '\n' << (dir / "run.json").string() << '\n';
}

void run_sweep(const RunPlan& plan, const std::filesystem::path& dir, std::ostream& out)
{
	SweepGrid g;
	nlohmann::json resolved;
	nlohmann::json extra = nlohmann::json::object();
	switch(*plan.sweep)
	{
	case SweepKind::stirap:
		g = stirap_sweep(plan.axes.at("delta2"), plan.params);
		resolved = build_scenario(ScenarioKind::stirap, plan.params).resolved;
		break;
	case SweepKind::spike:
		g = spike_scan(plan.axes.at("ratio"), plan.params);
		resolved = build_scenario(ScenarioKind::rydberg_ladder, plan.params).resolved;
		break;
	case SweepKind::perturbation:
	case SweepKind::deformation: {
		const Scenario s = plan_scenario(plan);
		const auto ts = plan.t_s ? plan.t_s : s.declared_ts;
		if(!ts)
			throw ValidationError("config: this sweep needs \"t_s\" (the scenario declares none)");
		extra["t_s"] = *ts;
		resolved = s.resolved;
		if(*plan.sweep == SweepKind::perturbation)
			g = perturbation_sweep(s, plan.axes.at("delta_omega1"), plan.axes.at("delta_omega2"), *ts);
		else
		{
			DeformationOptions opt;
			opt.substep = plan.sampling.substep.value_or(0.0);
			g = deformation_sweep(s, plan.axes.at("gamma"), *ts, Exec::parallel, opt);
			extra["window"] = {0.0, 2.0 * *ts};
		}
		break;
	}
	}
	prepare_dir(dir);
	std::ostringstream csv;
	write_sweep_csv(csv, g);
	nlohmann::json meta = {{"command", "sweep"},
	                       {"scenario", scenario_name(plan)},
	                       {"sweep", to_string(*plan.sweep)},
	                       {"axes", plan.axes},
	                       {"results", g.result_names},
	                       {"points", g.size()},
	                       {"resolved", resolved},
	                       {"outputs", {{"sweep", "sweep.csv"}}}};
	meta.update(extra);
	write_file(dir / "sweep.csv", csv.str());
	write_file(dir / "run.json", dump_json(meta));
	out << (dir / "sweep.csv").string() << '\n' << (dir / "run.json").string() << '\n';
}

} // namespace

nlohmann::json spectrum_report(const RunPlan& plan)
{
	const Scenario s = plan_scenario(plan);
	const int n = plan_n(plan);
	nlohmann::json j = {{"command", "spectrum"},
	                    {"scenario", scenario_name(plan)},
	                    {"n", n},
	                    {"labeling", to_string(s.rule.labeling)},
	                    {"gap_sign", to_string(s.rule.sign)}};
	if(s.schedule)
	{
		j["step_a"] = step_report(s.schedule->step_a(), s, n);
		j["step_b"] = step_report(s.schedule->step_b(), s, n);
		j["tau_a"] = s.schedule->tau_a();
		j["tau_b"] = s.schedule->tau_b();
	}
	else
		j["system"] = step_report(s.base, s, n);
	return j;
}

nlohmann::json effective_report(const RunPlan& plan)
{
	const Scenario s = plan_scenario(plan);
	if(!s.schedule)
		throw ValidationError("effective needs a two-step schedule");
	const ModulationSchedule& sch = *s.schedule;
	const EffectiveModel m = extract_effective(sch);
	if(!m.branch_valid)
		std::cerr << "warning: an eigenphase of U(T) lies within 0.1 of the branch cut\n";

	const ScenarioRun full = simulate(s);
	const QuantumState psi0 = QuantumState::basis(s.dimension(), s.initial);
	const PopulationTrace eff = effective_trace(m, psi0, full.trace.times);

	nlohmann::json analytic = nullptr;
	try
	{
		const PerturbativeThreeLevel p = perturbative_three_level(sch.step_a(), sch.tau_a());
		const double omega1 = sch.step_a().couplings()[sch.step_a().find_edge(0, 1)].value;
		const double phi1 = analytic_phi1(p, omega1);
		const double phi1p = analytic_phi1_prime(p, omega1);
		const bool upper = !s.targets.empty() && s.interval_target_a == 2;
		analytic = {{"phi1", phi1},
		            {"phi1_prime", phi1p},
		            {"channel", upper ? "1-3" : "1-2"},
		            {"omega_eff", std::abs(upper ? phi1p : phi1) / sch.period()},
		            {"approximate", true}};
	}
	catch(const Error&)
	{
	}

	nlohmann::json couplings = nlohmann::json::object();
	const auto& labels = sch.step_a().labels();
	for(std::size_t k = 0; k < s.dimension(); ++k)
		if(k != s.initial)
			couplings[labels[s.initial] + "-" + labels[k]] =
			    std::abs(m.h_eff(static_cast<Eigen::Index>(s.initial), static_cast<Eigen::Index>(k)));

	return {{"command", "effective"},
	        {"scenario", scenario_name(plan)},
	        {"period", m.period},
	        {"tau_a", sch.tau_a()},
	        {"tau_b", sch.tau_b()},
	        {"h_eff", matrix_json(m.h_eff)},
	        {"quasienergies", std::vector<double>(m.quasienergies.begin(), m.quasienergies.end())},
	        {"residual", m.residual},
	        {"branch_valid", m.branch_valid},
	        {"coupling_magnitudes", couplings},
	        {"analytic", analytic},
	        {"horizon", s.horizon},
	        {"full_vs_effective", compare_traces(full.trace, eff)}};
}

void run(const RunPlan& plan, const std::filesystem::path& out_dir, std::ostream& out)
{
	switch(plan.command)
	{
	case Command::simulate: run_simulate(plan, out_dir, out); break;
	case Command::sweep: run_sweep(plan, out_dir, out); break;
	case Command::spectrum: out << dump_json(spectrum_report(plan)); break;
	case Command::effective: out << dump_json(effective_report(plan)); break;
	}
}

} // namespace twostep
