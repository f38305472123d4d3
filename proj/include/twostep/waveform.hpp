#pragma once

#include "twostep/model.hpp"
#include "twostep/propagation.hpp"

#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace twostep
{

/// Square wave: `high` for tau_high then `low` for tau_low, repeating.
struct IdealSquare
{
	double high = 1.0;
	double low = -1.0;
	double tau_high = 1.0;
	double tau_low = 1.0;
};

/// Logistic-smoothed square wave with hardness gamma; recovers IdealSquare as gamma grows.
struct SoftSquare
{
	double high = 1.0;
	double low = -1.0;
	double tau_high = 1.0;
	double tau_low = 1.0;
	double hardness = 100.0;
};

/// peak * exp(-(t - center)^2 / width^2)
struct GaussianPulse
{
	double peak = 1.0;
	double width = 1.0;
	double center = 0.0;
};

using Waveform = std::variant<IdealSquare, SoftSquare, GaussianPulse>;

void validate(const Waveform& w);
double waveform_value(const Waveform& w, double t);
/// Repetition period, if the shape is periodic.
std::optional<double> waveform_period(const Waveform& w);

/// A coupling edge whose strength follows a waveform; replaces the base value.
struct DrivenEdge
{
	std::size_t i = 0;
	std::size_t j = 0;
	Waveform shape;
};

/// Counter-intuitively ordered Gaussian pair: `first` edge peaks at `delay`,
/// `second` edge peaks at 0, both with the same peak and width.
std::vector<DrivenEdge> gaussian_pair(double peak, double width, double delay, std::pair<std::size_t, std::size_t> first,
                                      std::pair<std::size_t, std::size_t> second);

struct WaveformOptions
{
	double t_start = 0.0;
	double t_final = 1.0;
	double substep = 1e-3;
	double sample_interval = 0.0; ///< 0 records every substep
	double tolerance = 1e-6;      ///< on final populations between successive halvings
	int max_halvings = 4;
	bool check_convergence = true;
};

struct WaveformRun
{
	PopulationTrace trace;
	double substep = 0.0;           ///< substep actually used
	double convergence_delta = 0.0; ///< final-population change at the last halving
};

/// Midpoint-sampled piecewise-constant evolution with the driven edges
/// following their waveforms and every other parameter taken from `base`.
/// With convergence checking on, the substep is halved until the final
/// populations move by less than `tolerance`.
WaveformRun waveform_evolve(const SystemSpec& base, std::span<const DrivenEdge> drives, const QuantumState& psi0,
                            const WaveformOptions& options);

} // namespace twostep
