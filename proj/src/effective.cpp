#include "twostep/effective.hpp"
#include "twostep/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace twostep
{

EffectiveModel extract_effective(const Matrix& u, double period)
{
	if(!(period > 0.0))
		throw ValidationError("period must be positive");
	if(u.rows() != u.cols() || u.rows() == 0)
		throw ValidationError("propagator must be a non-empty square matrix");
	const double defect = unitarity_defect(u);
	if(defect > 1e-10)
	{
		std::ostringstream os;
		os << "propagator is not unitary (defect " << defect << ")";
		throw ValidationError(os.str());
	}

	// A unitary is normal, so its Schur form is diagonal up to rounding and the
	// Schur vectors stay orthonormal even on degenerate eigenphases.
	const Eigen::ComplexSchur<Matrix> schur(u);
	const Matrix& q = schur.matrixU();
	const auto d = u.rows();
	Eigen::VectorXd e(d);
	bool valid = true;
	for(Eigen::Index k = 0; k < d; ++k)
	{
		const double arg = std::arg(schur.matrixT()(k, k));
		if(std::abs(arg) > std::numbers::pi - 0.1)
			valid = false;
		e(k) = -arg / period;
	}
	Matrix h = q * e.cast<cplx>().asDiagonal() * q.adjoint();
	h = (h + h.adjoint()) / 2.0;

	EffectiveModel m;
	m.h_eff = h;
	m.period = period;
	m.branch_valid = valid;
	m.residual = (step_propagator(HamiltonianMatrix(h), period) - u).cwiseAbs().maxCoeff();
	std::sort(e.begin(), e.end());
	m.quasienergies = e;
	return m;
}

EffectiveModel extract_effective(const ModulationSchedule& schedule)
{
	return extract_effective(period_propagator(schedule), schedule.period());
}

double analytic_phi1(const PerturbativeThreeLevel& p, double omega1)
{
	if(p.xi1 == 0.0 || p.xi2 == 0.0)
		throw NumericError("dressed detuning vanishes; perturbative phase undefined");
	const double s = std::sin(p.alpha);
	const double c = std::cos(p.alpha);
	return 4.0 * omega1 * (s * s / p.xi1 + c * c / p.xi2);
}

double analytic_phi1_prime(const PerturbativeThreeLevel& p, double omega1)
{
	if(p.xi1 == 0.0 || p.xi2 == 0.0)
		throw NumericError("dressed detuning vanishes; perturbative phase undefined");
	return 2.0 * omega1 * std::sin(2.0 * p.alpha) / p.xi1;
}

PopulationTrace effective_trace(const EffectiveModel& model, const QuantumState& psi0, const std::vector<double>& times)
{
	if(psi0.dimension() != static_cast<std::size_t>(model.h_eff.rows()))
		throw ValidationError("initial state dimension does not match the effective model");
	const DressedSpectrum s = eigendecompose(HamiltonianMatrix(model.h_eff));
	const Vector c0 = s.eigenvectors.adjoint() * psi0.amplitudes();
	TraceRecorder rec(psi0.dimension());
	Vector c(c0.size());
	for(double t : times)
	{
		if(t < 0.0)
			throw ValidationError("effective trace times must be non-negative");
		for(Eigen::Index k = 0; k < c0.size(); ++k)
			c(k) = c0(k) * std::polar(1.0, -s.eigenvalues(k) * t);
		rec.record(t, s.eigenvectors * c);
	}
	return std::move(rec).finish();
}

PopulationTrace effective_trace(const EffectiveModel& model, const QuantumState& psi0, double t_final, int samples)
{
	if(samples < 2)
		throw ValidationError("effective trace needs at least 2 samples");
	if(!(t_final > 0.0))
		throw ValidationError("t_final must be positive");
	std::vector<double> times(static_cast<std::size_t>(samples));
	for(int k = 0; k < samples; ++k)
		times[static_cast<std::size_t>(k)] = t_final * k / (samples - 1);
	return effective_trace(model, psi0, times);
}

double compare_traces(const PopulationTrace& a, const PopulationTrace& b)
{
	if(a.empty() || b.empty())
		throw ValidationError("cannot compare empty traces");
	if(a.dimension() != b.dimension())
		throw ValidationError("traces have different dimensions");
	const double lo = b.times.front();
	const double hi = b.times.back();
	if(a.times.back() < lo || a.times.front() > hi)
		throw ValidationError("traces cover disjoint time ranges");

	double worst = 0.0;
	for(std::size_t k = 0; k < a.size(); ++k)
	{
		const double t = a.times[k];
		if(t < lo || t > hi)
			continue;
		auto it = std::lower_bound(b.times.begin(), b.times.end(), t);
		auto idx = static_cast<std::size_t>(it - b.times.begin());
		if(idx == b.size() || (idx > 0 && t - b.times[idx - 1] <= b.times[idx] - t))
			--idx;
		const double diff = (a.populations.row(static_cast<Eigen::Index>(k)) -
		                     b.populations.row(static_cast<Eigen::Index>(idx)))
		                        .cwiseAbs()
		                        .maxCoeff();
		worst = std::max(worst, diff);
	}
	return worst;
}

double rabi_horizon(const EffectiveModel& model, std::size_t initial_level, double multiple, double cap)
{
	if(initial_level >= static_cast<std::size_t>(model.h_eff.rows()))
		throw ValidationError("initial level out of range");
	const Eigen::SelfAdjointEigenSolver<Matrix> es(model.h_eff);
	const auto row = es.eigenvectors().row(static_cast<Eigen::Index>(initial_level)).cwiseAbs2().eval();
	std::vector<Eigen::Index> order(static_cast<std::size_t>(row.size()));
	for(Eigen::Index k = 0; k < row.size(); ++k)
		order[static_cast<std::size_t>(k)] = k;
	std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return row(x) > row(y); });
	const double gap = std::abs(es.eigenvalues()(order[0]) - es.eigenvalues()(order[1]));
	if(gap < 1e-12)
		return cap;
	return std::min(cap, multiple * 2.0 * std::numbers::pi / gap);
}

} // namespace twostep
