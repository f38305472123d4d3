#include "twostep/propagation.hpp"
#include "twostep/errors.hpp"

#include <algorithm>
#include <cmath>

namespace twostep
{

TraceRecorder::TraceRecorder(std::size_t dimension, bool keep_amplitudes)
    : dim_(dimension), keep_amps_(keep_amplitudes)
{
}

void TraceRecorder::record(double t, const Vector& psi)
{
	if(!times_.empty() && !(t > times_.back()))
		throw NumericError("trace times must be strictly increasing");
	times_.push_back(t);
	for(Eigen::Index k = 0; k < psi.size(); ++k)
		pops_.push_back(std::norm(psi(k)));
	if(keep_amps_)
		amps_.push_back(psi);
}

PopulationTrace TraceRecorder::finish() &&
{
	PopulationTrace out;
	out.times = std::move(times_);
	const auto rows = static_cast<Eigen::Index>(out.times.size());
	out.populations = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
	    pops_.data(), rows, static_cast<Eigen::Index>(dim_));
	out.amplitudes = std::move(amps_);
	return out;
}

Matrix step_propagator(const DressedSpectrum& s, double t)
{
	if(t < 0.0)
		throw ValidationError("propagation time must be non-negative");
	const auto d = s.eigenvalues.size();
	Vector phases(d);
	for(Eigen::Index k = 0; k < d; ++k)
		phases(k) = std::polar(1.0, -s.eigenvalues(k) * t);
	return s.eigenvectors * phases.asDiagonal() * s.eigenvectors.adjoint();
}

Matrix step_propagator(const HamiltonianMatrix& h, double t)
{
	if(t < 0.0)
		throw ValidationError("propagation time must be non-negative");
	return step_propagator(eigendecompose(h), t);
}

Matrix period_propagator(const ModulationSchedule& schedule)
{
	const Matrix ua = step_propagator(build_hamiltonian(schedule.step_a()), schedule.tau_a());
	const Matrix ub = step_propagator(build_hamiltonian(schedule.step_b()), schedule.tau_b());
	return ub * ua;
}

double unitarity_defect(const Matrix& u)
{
	return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

int periods_for(const ModulationSchedule& schedule, double horizon)
{
	return std::max(1, static_cast<int>(std::ceil(horizon / schedule.period() - 1e-12)));
}

PopulationTrace stroboscopic_evolve(const ModulationSchedule& schedule, const QuantumState& psi0, int n_periods,
                                    int samples_per_period, bool keep_amplitudes)
{
	if(n_periods < 1)
		throw ValidationError("need at least one period");
	if(samples_per_period < 2)
		throw ValidationError("samples_per_period must be >= 2");
	if(psi0.dimension() != schedule.dimension())
		throw ValidationError("initial state dimension does not match the schedule");

	const int ka = samples_per_period / 2;
	const int kb = samples_per_period - ka;
	const auto sa = eigendecompose(build_hamiltonian(schedule.step_a()));
	const auto sb = eigendecompose(build_hamiltonian(schedule.step_b()));
	const Matrix ua = step_propagator(sa, schedule.tau_a() / ka);
	const Matrix ub = step_propagator(sb, schedule.tau_b() / kb);
	const Matrix u_period = step_propagator(sb, schedule.tau_b()) * step_propagator(sa, schedule.tau_a());

	TraceRecorder rec(schedule.dimension(), keep_amplitudes);
	Vector psi = psi0.amplitudes();
	Vector check = psi;
	rec.record(0.0, psi);
	const double period = schedule.period();
	double drift = 0.0;
	for(int m = 0; m < n_periods; ++m)
	{
		const double t0 = m * period;
		for(int s = 1; s <= ka; ++s)
		{
			psi = ua * psi;
			rec.record(t0 + schedule.tau_a() * s / ka, psi);
		}
		for(int s = 1; s <= kb; ++s)
		{
			psi = ub * psi;
			const double t = s == kb ? (m + 1) * period : t0 + schedule.tau_a() + schedule.tau_b() * s / kb;
			rec.record(t, psi);
		}
		drift = std::max(drift, std::abs(psi.norm() - 1.0));
		check = u_period * check;
	}
	if(drift > 1e-8)
		throw NumericError("norm drift " + std::to_string(drift) + " exceeds 1e-8");
	if((psi - check).cwiseAbs().maxCoeff() > 1e-9)
		throw NumericError("sub-sampled evolution disagrees with the period propagator");
	return std::move(rec).finish();
}

Vector evolve_to(const ModulationSchedule& schedule, const QuantumState& psi0, double t)
{
	if(t < 0.0)
		throw ValidationError("evolution time must be non-negative");
	const auto sa = eigendecompose(build_hamiltonian(schedule.step_a()));
	const auto sb = eigendecompose(build_hamiltonian(schedule.step_b()));
	const Matrix ua = step_propagator(sa, schedule.tau_a());
	const Matrix u_period = step_propagator(sb, schedule.tau_b()) * ua;

	const double period = schedule.period();
	const auto m = static_cast<long>(std::floor(t / period));
	const double rest = t - static_cast<double>(m) * period;
	Vector psi = psi0.amplitudes();
	for(long k = 0; k < m; ++k)
		psi = u_period * psi;
	if(rest <= schedule.tau_a())
		return step_propagator(sa, rest) * psi;
	return step_propagator(sb, rest - schedule.tau_a()) * (ua * psi);
}

Extremum trace_extremum(const PopulationTrace& trace, std::size_t level)
{
	if(trace.empty())
		throw ValidationError("trace is empty");
	if(level >= trace.dimension())
		throw ValidationError("level out of range for trace");
	const auto col = trace.populations.col(static_cast<Eigen::Index>(level));
	const double best = col.maxCoeff();
	for(Eigen::Index k = 0; k < col.size(); ++k)
		if(col(k) >= best - 1e-12)
			return {col(k), trace.times[static_cast<std::size_t>(k)]};
	return {best, trace.times.front()};
}

double norm_drift(const PopulationTrace& trace)
{
	double drift = 0.0;
	if(!trace.amplitudes.empty())
	{
		for(const auto& a : trace.amplitudes)
			drift = std::max(drift, std::abs(a.norm() - 1.0));
		return drift;
	}
	for(Eigen::Index k = 0; k < trace.populations.rows(); ++k)
		drift = std::max(drift, std::abs(std::sqrt(trace.populations.row(k).sum()) - 1.0));
	return drift;
}

} // namespace twostep
