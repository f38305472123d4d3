#include "twostep/errors.hpp"
#include "twostep/sweeps.hpp"

#include <doctest.h>

#include <cmath>

using namespace twostep;

TEST_CASE("perturbation sweep")
{
	const Scenario s = build_scenario(ScenarioKind::rydberg_ladder);
	const std::vector<double> d1{-0.05, 0.0, 0.05};
	const std::vector<double> d2{-0.05, 0.0, 0.025, 0.05};
	const SweepGrid g = perturbation_sweep(s, d1, d2, 37.2, Exec::serial);
	REQUIRE(g.size() == d1.size() * d2.size());
	// last axis runs fastest
	CHECK(g.points[1] == std::vector<double>{-0.05, 0.0});
	CHECK(g.points[4] == std::vector<double>{0.0, -0.05});

	const Vector ideal = evolve_to(*s.schedule, QuantumState::basis(3, 0), 37.2);
	CHECK(g.results[5][0] == doctest::Approx(std::norm(ideal(2))).epsilon(1e-12));
	CHECK(g.results[5][0] >= 0.98);
	CHECK(g.result_names == std::vector<std::string>{"P3_ts"});

	const SweepGrid p = perturbation_sweep(s, d1, d2, 37.2, Exec::parallel);
	CHECK(p.results == g.results);
	CHECK(p.points == g.points);

	CHECK_THROWS_AS(perturbation_sweep(s, {}, d2, 37.2), ValidationError);
	CHECK_THROWS_AS(perturbation_sweep(s, d1, d2, 0.0), ValidationError);
	CHECK_THROWS_AS(perturbation_sweep(build_scenario(ScenarioKind::rb_star), d1, d2, 1.0), ValidationError);
}

TEST_CASE("gap ratio solve")
{
	for(double r : {1.5, 3.0, 4.2, 8.0})
	{
		const double d2 = delta2_for_ratio(nlohmann::json::object(), r);
		const SystemSpec s({0.0, 60.0, d2}, {{0, 1, 1.0}, {1, 2, 2.0}});
		CHECK(spike_distance(eigendecompose(build_hamiltonian(s))).ratio == doctest::Approx(r).epsilon(1e-10));
	}
	CHECK_THROWS_AS(delta2_for_ratio(nlohmann::json::object(), 0.5), ValidationError);
	CHECK_THROWS_AS(delta2_for_ratio({{"delta2", 3.0}}, 2.0), ValidationError);
}

TEST_CASE("spike scan is identical serial and parallel")
{
	const std::vector<double> r{2.0, 3.0, 4.0};
	const SweepGrid a = spike_scan(r, nlohmann::json::object(), Exec::serial);
	const SweepGrid b = spike_scan(r, nlohmann::json::object(), Exec::parallel);
	CHECK(a.results == b.results);
	const auto p3 = a.result_column("P3_max");
	CHECK(a.results[0][p3] > 0.95);
	CHECK(a.results[1][p3] < 0.8);
	CHECK_THROWS_AS(static_cast<void>(a.result_column("P4_max")), ValidationError);
}

TEST_CASE("stirap sweep")
{
	const std::vector<double> d2{0.0, 5.0};
	const SweepGrid g = stirap_sweep(d2, {{"substep", 0.1}}, Exec::serial);
	CHECK(g.results[0][0] >= 0.9);
	CHECK(g.results[1][0] <= 0.5 * g.results[0][0]);

	const SweepGrid dark = stirap_sweep(d2, {{"omega1", 0.0}, {"omega2", 0.0}, {"substep", 1.0}});
	CHECK(dark.results[0][0] == 0.0);
	CHECK(dark.results[1][0] == 0.0);
}

TEST_CASE("deformation sweep approaches the square wave")
{
	const Scenario s = build_scenario(ScenarioKind::rydberg_ladder);
	const double t_s = 6.0;
	const Vector ideal = evolve_to(*s.schedule, QuantumState::basis(3, 0), t_s);
	const std::vector<double> gamma{100.0, 2000.0};
	const SweepGrid g = deformation_sweep(s, gamma, t_s, Exec::serial);
	const auto col = g.result_column("P3_ts");
	CHECK(std::abs(g.results[1][col] - std::norm(ideal(2))) < std::abs(g.results[0][col] - std::norm(ideal(2))));
	CHECK(g.results[1][col] == doctest::Approx(std::norm(ideal(2))).epsilon(0.01));
	CHECK(g.results[0][g.result_column("t_max")] <= 2.0 * t_s);

	CHECK_THROWS_AS(deformation_sweep(build_scenario(ScenarioKind::rydberg_ladder, {{"modulation", false}}), gamma, t_s),
	                ValidationError);
	CHECK_THROWS_AS(deformation_sweep(s, std::vector<double>{-1.0}, t_s), ValidationError);
}
