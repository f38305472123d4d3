#pragma once

#include "twostep/model.hpp"
#include "twostep/spectral.hpp"

#include <cstddef>
#include <vector>

namespace twostep
{

/// Sampled populations of one evolution run. Row k of `populations` belongs to times[k].
struct PopulationTrace
{
	std::vector<double> times;
	Eigen::MatrixXd populations;
	std::vector<Vector> amplitudes; ///< empty unless requested

	[[nodiscard]] std::size_t size() const { return times.size(); }
	[[nodiscard]] std::size_t dimension() const { return static_cast<std::size_t>(populations.cols()); }
	[[nodiscard]] bool empty() const { return times.empty(); }
};

/// Incremental builder so samplers don't have to know the final length up front.
class TraceRecorder
{
public:
	TraceRecorder(std::size_t dimension, bool keep_amplitudes = false);
	void record(double t, const Vector& psi);
	[[nodiscard]] PopulationTrace finish() &&;

private:
	std::size_t dim_;
	bool keep_amps_;
	std::vector<double> times_;
	std::vector<double> pops_;
	std::vector<Vector> amps_;
};

/// exp(-i H t) by spectral decomposition.
Matrix step_propagator(const HamiltonianMatrix& h, double t);
Matrix step_propagator(const DressedSpectrum& s, double t);

/// U(T) = exp(-i H_b tau_b) exp(-i H_a tau_a).
Matrix period_propagator(const ModulationSchedule& schedule);

/// max |U^dagger U - I|
double unitarity_defect(const Matrix& u);

/// Evolve through n_periods of the schedule, sampling samples_per_period
/// points per period spread over both steps (plus the initial state).
PopulationTrace stroboscopic_evolve(const ModulationSchedule& schedule, const QuantumState& psi0, int n_periods,
                                    int samples_per_period = 4, bool keep_amplitudes = false);

/// Number of whole periods needed to cover a time horizon.
int periods_for(const ModulationSchedule& schedule, double horizon);

/// Exact state of the piecewise-constant evolution at an arbitrary time t >= 0.
Vector evolve_to(const ModulationSchedule& schedule, const QuantumState& psi0, double t);

struct Extremum
{
	double value = 0.0;
	double time = 0.0;
};

/// Largest sampled population of a level and the earliest time within 1e-12 of it.
Extremum trace_extremum(const PopulationTrace& trace, std::size_t level);

/// max_t |1 - ||psi(t)||| over a trace that kept amplitudes, or over row sums otherwise.
double norm_drift(const PopulationTrace& trace);

} // namespace twostep
