#include "twostep/errors.hpp"
#include "twostep/scenarios.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace twostep;

namespace
{

double coupling(const SystemSpec& s, std::size_t i, std::size_t j)
{
	return s.couplings()[s.find_edge(i, j)].value;
}

} // namespace

TEST_CASE("kind names round-trip")
{
	for(auto k : all_scenario_kinds())
		CHECK(scenario_kind_from_string(to_string(k)) == k);
	CHECK_THROWS_AS(scenario_kind_from_string("rydberg"), ValidationError);
}

TEST_CASE("rydberg ladder defaults")
{
	const Scenario s = build_scenario(ScenarioKind::rydberg_ladder);
	REQUIRE(s.schedule);
	const auto& a = s.schedule->step_a();
	const auto& b = s.schedule->step_b();
	CHECK(a.detunings() == std::vector<double>{0.0, 60.0, 30.0});
	CHECK(coupling(a, 0, 1) == 1.0);
	CHECK(coupling(a, 1, 2) == 2.0);
	CHECK(coupling(b, 0, 1) == -1.0);
	CHECK(b.with_coupling(0, 1, 1.0) == a);
	CHECK(s.interval_target_a == 2);
	CHECK(s.schedule->tau_a() == doctest::Approx(transition_interval(build_hamiltonian(a), 2, 0)));
	CHECK(s.schedule->tau_a() == doctest::Approx(0.10513).epsilon(1e-4));
	CHECK(*s.declared_ts == 37.2);
	CHECK(s.resolved["params"]["delta1"] == 60.0);
	CHECK(s.resolved.contains("dressed_a"));
}

TEST_CASE("ladder modulation of each control parameter changes only that parameter")
{
	const SystemSpec ref = build_scenario(ScenarioKind::rydberg_ladder).schedule->step_a();
	SUBCASE("omega2")
	{
		const auto s = build_scenario(ScenarioKind::rydberg_ladder, {{"modulated", "omega2"}});
		CHECK(s.schedule->step_b() == ref.with_coupling(1, 2, -2.0));
	}
	SUBCASE("delta1")
	{
		const auto s = build_scenario(ScenarioKind::rydberg_ladder, {{"modulated", "delta1"}, {"modulated_value", 45.0}});
		CHECK(s.schedule->step_b() == ref.with_detuning(1, 45.0));
	}
	SUBCASE("delta2")
	{
		const auto s = build_scenario(ScenarioKind::rydberg_ladder, {{"modulated", "delta2"}, {"modulated_value", 10.0}});
		CHECK(s.schedule->step_b() == ref.with_detuning(2, 10.0));
		// durations come from each step's own gap
		CHECK(s.schedule->tau_b() ==
		      doctest::Approx(transition_interval(build_hamiltonian(ref.with_detuning(2, 10.0)), 2, 0)));
	}
	SUBCASE("none")
	{
		const auto s = build_scenario(ScenarioKind::rydberg_ladder, {{"modulation", false}});
		CHECK(s.schedule->step_b() == s.schedule->step_a());
	}
}

TEST_CASE("blockade pair")
{
	const Scenario plus = build_scenario(ScenarioKind::blockade_pair);
	const auto& a = plus.schedule->step_a();
	CHECK(a.labels() == std::vector<std::string>{"gg", "T", "rr"});
	CHECK(a.detunings() == std::vector<double>{0.0, -23.0, -7.0});
	CHECK(coupling(a, 0, 1) == doctest::Approx(std::numbers::sqrt2));
	CHECK(coupling(a, 1, 2) == doctest::Approx(std::numbers::sqrt2));
	CHECK(coupling(plus.schedule->step_b(), 0, 1) == doctest::Approx(0.5 * std::numbers::sqrt2));
	CHECK(coupling(plus.schedule->step_b(), 1, 2) == doctest::Approx(0.5 * std::numbers::sqrt2));
	CHECK(plus.rule.sign == GapSign::magnitude);

	const Scenario minus = build_scenario(ScenarioKind::blockade_pair, {{"convention", "minus"}});
	CHECK(minus.schedule->step_a().detunings() == std::vector<double>{0.0, 23.0, 85.0});

	const Scenario t = build_scenario(ScenarioKind::blockade_pair, {{"target", "T"}});
	CHECK(t.interval_target_a == 1);
	CHECK_THROWS_AS(build_scenario(ScenarioKind::blockade_pair, {{"convention", "rotated"}}), ValidationError);
}

TEST_CASE("counterintuitive vee uses one target per step")
{
	const Scenario s = build_scenario(ScenarioKind::counterintuitive_vee);
	const auto& a = s.schedule->step_a();
	CHECK(a.detunings() == std::vector<double>{0.0, -48.0, 0.0});
	CHECK(s.interval_target_a == 1);
	CHECK(s.interval_target_b == 2);
	CHECK(s.rule.labeling == Labeling::energy_order);
	const DressedSpectrum da = eigendecompose(build_hamiltonian(a));
	const DressedSpectrum db = eigendecompose(build_hamiltonian(s.schedule->step_b()));
	CHECK(s.schedule->tau_a() == doctest::Approx(std::numbers::pi / (da.eigenvalues(1) - da.eigenvalues(0))));
	CHECK(s.schedule->tau_b() == doctest::Approx(std::numbers::pi / (db.eigenvalues(2) - db.eigenvalues(0))));
}

TEST_CASE("selective-transition systems")
{
	const Scenario star = build_scenario(ScenarioKind::rb_star, {{"target", 4}});
	CHECK(star.schedule->step_a().detunings() == std::vector<double>{0.0, 30.0, 53.0, 100.0});
	CHECK(star.targets == std::vector<std::size_t>{3});
	for(std::size_t k = 1; k < 4; ++k)
		CHECK(coupling(star.schedule->step_b(), 0, k) == -1.0);

	const Scenario five = build_scenario(ScenarioKind::ne_five, {{"target", "3'"}});
	CHECK(five.schedule->step_a().labels() == std::vector<std::string>{"1", "2", "3", "2'", "3'"});
	CHECK(five.schedule->step_a().detunings() == std::vector<double>{0.0, 33.0, 9.0, 36.0, 6.0});
	CHECK(five.interval_target_a == 4);
	const Scenario five_single = build_scenario(ScenarioKind::ne_five, {{"layout", "single-photon"}});
	CHECK(five_single.schedule->step_a().detunings() == std::vector<double>{0.0, 33.0, 42.0, 36.0, 42.0});

	const Scenario four = build_scenario(ScenarioKind::ne_four);
	CHECK(four.schedule->step_a().detunings() == std::vector<double>{0.0, 60.0, 30.0, 28.0});
	CHECK(coupling(four.schedule->step_a(), 1, 3) == 2.0);
}

TEST_CASE("every two-step scenario is Hermitian and in the large-detuning regime")
{
	for(auto k : all_scenario_kinds())
	{
		if(k == ScenarioKind::stirap)
			continue;
		const Scenario s = build_scenario(k);
		for(const SystemSpec* step : {&s.schedule->step_a(), &s.schedule->step_b()})
		{
			const Matrix m = build_hamiltonian(*step).matrix();
			CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() == 0.0);
			const MldReport r = mld_diagnostics(*step);
			if(k == ScenarioKind::counterintuitive_vee)
			{
				CHECK(r.flagged);
				CHECK(r.edges[0].ratio >= 10.0);
			}
			else if(k == ScenarioKind::rydberg_superposition)
			{
				// the two upper levels are meant to mix; only that edge is near-resonant
				CHECK(r.edges[0].ratio >= 10.0);
				CHECK(r.edges[1].ratio >= 10.0);
				CHECK(r.edges[2].flagged);
			}
			else
				CHECK_FALSE(r.flagged);
		}
		CHECK(s.horizon > 0.0);
	}
}

TEST_CASE("stirap scenario")
{
	const Scenario s = build_scenario(ScenarioKind::stirap);
	CHECK_FALSE(s.schedule);
	CHECK(s.t_start == -600.0);
	CHECK(s.t_final == 800.0);
	REQUIRE(s.drives.size() == 2);
	CHECK(waveform_value(s.drives[0].shape, 200.0) == 1.0);
	CHECK(waveform_value(s.drives[1].shape, 0.0) == 1.0);
	CHECK_THROWS_AS(build_scenario(ScenarioKind::stirap, {{"n", 1}}), ValidationError);
}

TEST_CASE("parameter errors name the offending key")
{
	CHECK_THROWS_WITH_AS(build_scenario(ScenarioKind::rydberg_ladder, {{"detla1", 5.0}}), doctest::Contains("detla1"),
	                     ValidationError);
	CHECK_THROWS_AS(build_scenario(ScenarioKind::rydberg_ladder, {{"delta1", "sixty"}}), ValidationError);
	CHECK_THROWS_AS(build_scenario(ScenarioKind::rydberg_ladder, {{"target", 7}}), ValidationError);
	CHECK_THROWS_AS(build_scenario(ScenarioKind::rydberg_ladder, {{"target", 1}}), ValidationError);
	CHECK_THROWS_AS(build_scenario(ScenarioKind::rydberg_ladder, {{"modulated", "phase"}}), ValidationError);
	CHECK_THROWS_AS(build_scenario(ScenarioKind::rydberg_ladder, {{"samples_per_period", 1}}), ValidationError);
}

TEST_CASE("superposition angle")
{
	CHECK(superposition_angle(2.0, 0.0) == doctest::Approx(std::numbers::pi / 4.0));
	CHECK(superposition_angle(2.0, 1.2) == doctest::Approx(0.640).epsilon(1e-3));
	CHECK(std::abs(superposition_angle(2.0, 1e9)) < 1e-8);
	CHECK(superposition_angle(-2.0, 1.2) == doctest::Approx(-superposition_angle(2.0, 1.2)));
	for(double d : {-5.0, -0.1, 0.3, 7.0})
		for(double o : {-3.0, 0.5, 2.0})
		{
			const double th = superposition_angle(o, d);
			CHECK(th > -std::numbers::pi / 4.0);
			CHECK(th <= std::numbers::pi / 4.0);
		}
	CHECK_THROWS_AS(superposition_angle(0.0, 0.0), ValidationError);

	const Scenario s = build_scenario(ScenarioKind::rydberg_superposition);
	CHECK(s.resolved["params"]["theta"].get<double>() == doctest::Approx(superposition_angle(2.0, 1.2)));
}
