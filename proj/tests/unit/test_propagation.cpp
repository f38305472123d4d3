#include "twostep/errors.hpp"
#include "twostep/propagation.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace twostep;

namespace
{

SystemSpec ladder(double o1 = 1.0)
{
	return SystemSpec({0.0, 60.0, 30.0}, {{0, 1, o1}, {1, 2, 2.0}});
}

ModulationSchedule reference_schedule()
{
	const SystemSpec a = ladder(1.0);
	const SystemSpec b = ladder(-1.0);
	return ModulationSchedule(a, b, transition_interval(build_hamiltonian(a), 2, 0),
	                          transition_interval(build_hamiltonian(b), 2, 0));
}

} // namespace

TEST_CASE("trivial propagators")
{
	const HamiltonianMatrix h = build_hamiltonian(ladder());
	CHECK((step_propagator(h, 0.0) - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
	CHECK((step_propagator(HamiltonianMatrix(Matrix::Zero(3, 3)), 12.0) - Matrix::Identity(3, 3))
	          .cwiseAbs()
	          .maxCoeff() == 0.0);
	CHECK_THROWS_AS(step_propagator(h, -1e-3), ValidationError);
}

TEST_CASE("two-level Rabi oscillation follows the closed form")
{
	const double omega = 0.7;
	const HamiltonianMatrix h = build_hamiltonian(SystemSpec({0.0, 0.0}, {{0, 1, omega}}));
	const Vector psi0 = QuantumState::basis(2, 0).amplitudes();
	for(double t : {0.1, 0.9, std::numbers::pi / (2.0 * omega), 5.3, 40.0})
	{
		const Vector psi = step_propagator(h, t) * psi0;
		CHECK(std::norm(psi(1)) == doctest::Approx(oracle::rabi_p2(omega, t)).epsilon(1e-12));
	}
	const Vector swap = step_propagator(h, std::numbers::pi / (2.0 * omega)) * psi0;
	CHECK(std::norm(swap(1)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("propagators are unitary to 1e-12")
{
	std::mt19937 rng(11);
	std::uniform_real_distribution<double> u(-50.0, 50.0);
	for(int trial = 0; trial < 20; ++trial)
	{
		const SystemSpec s({0.0, u(rng), u(rng), u(rng)}, {{0, 1, u(rng) / 10}, {1, 2, u(rng) / 10}, {0, 3, u(rng) / 10}});
		CHECK(unitarity_defect(step_propagator(build_hamiltonian(s), std::abs(u(rng)))) <= 1e-12);
	}
	CHECK(unitarity_defect(period_propagator(reference_schedule())) <= 1e-12);
}

TEST_CASE("period propagator")
{
	SUBCASE("identical steps reduce to one step over the period")
	{
		const ModulationSchedule s(ladder(), ladder(), 0.03, 0.07);
		CHECK((period_propagator(s) - step_propagator(build_hamiltonian(ladder()), 0.1)).cwiseAbs().maxCoeff() <
		      1e-12);
	}
	SUBCASE("step_a acts first")
	{
		const ModulationSchedule s(ladder(1.0), ladder(-1.0), 0.03, 0.07);
		const Matrix expect = step_propagator(build_hamiltonian(ladder(-1.0)), 0.07) *
		                      step_propagator(build_hamiltonian(ladder(1.0)), 0.03);
		CHECK((period_propagator(s) - expect).cwiseAbs().maxCoeff() < 1e-14);
	}
	SUBCASE("1-3 element of the sign-flip schedule is small and matches 4 x1 cos(alpha)")
	{
		const Matrix u = period_propagator(reference_schedule());
		const PerturbativeThreeLevel p = perturbative_three_level(ladder(), 1.0);
		const double predicted = std::abs(4.0 * p.x1 * std::cos(p.alpha));
		CHECK(std::abs(u(0, 2)) == doctest::Approx(predicted).epsilon(0.3));
		CHECK(std::abs(u(0, 2)) < 0.05);
	}
	SUBCASE("vanishing second step approaches the first step")
	{
		const Matrix ua = step_propagator(build_hamiltonian(ladder(1.0)), 0.05);
		double prev = 1.0;
		for(double tb : {1e-2, 1e-4, 1e-6})
		{
			const double diff =
			    (period_propagator(ModulationSchedule(ladder(1.0), ladder(-1.0), 0.05, tb)) - ua).cwiseAbs().maxCoeff();
			CHECK(diff < prev);
			prev = diff;
		}
		CHECK(prev < 1e-4);
	}
}

TEST_CASE("stroboscopic evolution")
{
	const ModulationSchedule sch = reference_schedule();
	const QuantumState psi0 = QuantumState::basis(3, 0);

	SUBCASE("final state equals U(T)^n psi0, with samples inside both steps")
	{
		const int n = 40;
		const PopulationTrace tr = stroboscopic_evolve(sch, psi0, n, 6, true);
		CHECK(tr.size() == static_cast<std::size_t>(6 * n + 1));
		const Matrix u = period_propagator(sch);
		Vector psi = psi0.amplitudes();
		for(int k = 0; k < n; ++k)
			psi = u * psi;
		CHECK((tr.amplitudes.back() - psi).cwiseAbs().maxCoeff() < 1e-9);
		CHECK(tr.times.back() == doctest::Approx(n * sch.period()));
		// one sample lands exactly on the step boundary of the first period
		CHECK(tr.times[3] == doctest::Approx(sch.tau_a()));
		for(std::size_t k = 1; k < tr.size(); ++k)
			CHECK(tr.times[k] > tr.times[k - 1]);
	}
	SUBCASE("composition over 2m periods")
	{
		const int m = 25;
		const PopulationTrace half = stroboscopic_evolve(sch, psi0, m, 4, true);
		const PopulationTrace whole = stroboscopic_evolve(sch, psi0, 2 * m, 4, true);
		const Matrix um = [&] {
			Matrix u = Matrix::Identity(3, 3);
			const Matrix p = period_propagator(sch);
			for(int k = 0; k < m; ++k)
				u = p * u;
			return u;
		}();
		CHECK((um * half.amplitudes.back() - whole.amplitudes.back()).cwiseAbs().maxCoeff() < 1e-9);
	}
	SUBCASE("norm and populations stay physical")
	{
		const PopulationTrace tr = stroboscopic_evolve(sch, psi0, 300, 4, true);
		CHECK(norm_drift(tr) <= 1e-9);
		CHECK(tr.populations.minCoeff() >= 0.0);
		CHECK(tr.populations.maxCoeff() <= 1.0 + 1e-12);
	}
	SUBCASE("sign-flip modulation reaches the upper level near 37.2")
	{
		const PopulationTrace tr = stroboscopic_evolve(sch, psi0, periods_for(sch, 60.0), 4);
		const Extremum e = trace_extremum(tr, 2);
		CHECK(e.value >= 0.98);
		CHECK(e.time == doctest::Approx(37.2).epsilon(0.02));
	}
	SUBCASE("argument checks")
	{
		CHECK_THROWS_AS(stroboscopic_evolve(sch, psi0, 0), ValidationError);
		CHECK_THROWS_AS(stroboscopic_evolve(sch, psi0, 1, 1), ValidationError);
		CHECK_THROWS_AS(stroboscopic_evolve(sch, QuantumState::basis(2, 0), 1), ValidationError);
	}
}

TEST_CASE("static ladder stays frozen within the perturbative bound")
{
	const SystemSpec a = ladder();
	const double tau = transition_interval(build_hamiltonian(a), 2, 0);
	const ModulationSchedule sch(a, a, tau, tau);
	const PopulationTrace tr = stroboscopic_evolve(sch, QuantumState::basis(3, 0), periods_for(sch, 200.0), 8);
	const PerturbativeThreeLevel p = perturbative_three_level(a, 1.0);
	const double bound = 4.0 * std::pow(std::abs(p.x1) + std::abs(p.x2), 2);
	CHECK(1.0 - tr.populations.col(0).minCoeff() <= bound);
	CHECK(1.0 - tr.populations.col(0).minCoeff() > 0.0);
}

TEST_CASE("evolve_to agrees with the sampled trace")
{
	const ModulationSchedule sch = reference_schedule();
	const QuantumState psi0 = QuantumState::basis(3, 0);
	const PopulationTrace tr = stroboscopic_evolve(sch, psi0, 30, 4, true);
	for(std::size_t k : {std::size_t{0}, std::size_t{1}, std::size_t{2}, std::size_t{37}, tr.size() - 1})
		CHECK((evolve_to(sch, psi0, tr.times[k]) - tr.amplitudes[k]).cwiseAbs().maxCoeff() < 1e-10);
	// a time inside the second step
	const double t = 5.0 * sch.period() + sch.tau_a() + 0.3 * sch.tau_b();
	const Vector direct = step_propagator(build_hamiltonian(sch.step_b()), 0.3 * sch.tau_b()) *
	                      step_propagator(build_hamiltonian(sch.step_a()), sch.tau_a()) *
	                      evolve_to(sch, psi0, 5.0 * sch.period());
	CHECK((evolve_to(sch, psi0, t) - direct).cwiseAbs().maxCoeff() < 1e-10);
	CHECK_THROWS_AS(evolve_to(sch, psi0, -1.0), ValidationError);
}

TEST_CASE("trace extremum")
{
	TraceRecorder flat(2);
	Vector ground(2);
	ground << 1.0, 0.0;
	for(double t : {0.5, 1.0, 1.5})
		flat.record(t, ground);
	const PopulationTrace tr = std::move(flat).finish();
	const Extremum e = trace_extremum(tr, 1);
	CHECK(e.value == 0.0);
	CHECK(e.time == 0.5);

	TraceRecorder twin(2);
	Vector half(2);
	half << std::sqrt(0.5), std::sqrt(0.5);
	twin.record(0.0, ground);
	twin.record(1.0, half);
	twin.record(2.0, ground);
	twin.record(3.0, half);
	const Extremum tie = trace_extremum(std::move(twin).finish(), 1);
	CHECK(tie.time == 1.0);

	TraceRecorder bad(2);
	bad.record(1.0, ground);
	CHECK_THROWS_AS(bad.record(1.0, ground), NumericError);
}
