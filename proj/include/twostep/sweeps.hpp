#pragma once

#include "twostep/parallel.hpp"
#include "twostep/scenarios.hpp"

#include <json.hpp>

#include <span>
#include <string>
#include <vector>

namespace twostep
{

/// Results of a parameter sweep, one row per grid point in row-major grid
/// order (last axis fastest).
struct SweepGrid
{
	std::vector<std::string> axis_names;
	std::vector<std::vector<double>> axis_values;
	std::vector<std::string> result_names;
	std::vector<std::vector<double>> points;  ///< axis coordinates per row
	std::vector<std::vector<double>> results; ///< result columns per row

	[[nodiscard]] std::size_t size() const { return points.size(); }
	/// Column index of a named result; throws if absent.
	[[nodiscard]] std::size_t result_column(const std::string& name) const;
};

/// Final target population of the Gaussian-pair scenario for each delta2.
/// `params` are stirap scenario parameters except delta2.
SweepGrid stirap_sweep(std::span<const double> delta2, const nlohmann::json& params = nlohmann::json::object(),
                       Exec exec = Exec::parallel);

/// Adds (dOmega1, dOmega2) to the 1-2 and 2-3 couplings of both steps, keeps
/// the unperturbed durations, and records the target population at t_s.
SweepGrid perturbation_sweep(const Scenario& s, std::span<const double> d_omega1, std::span<const double> d_omega2,
                             double t_s, Exec exec = Exec::parallel);

struct DeformationOptions
{
	double substep = 0.0; ///< 0 picks min(T / 20, 0.02 / gamma)
	double window = 0.0;  ///< 0 means 2 t_s
};

/// Replaces the square-wave modulation by its logistic-smoothed version of
/// hardness gamma. Results: target population at t_s, its maximum over the
/// window and the time of that maximum.
SweepGrid deformation_sweep(const Scenario& s, std::span<const double> gamma, double t_s, Exec exec = Exec::parallel,
                            const DeformationOptions& options = {});

/// Detuning delta2 of the ladder giving the requested dressed gap ratio.
double delta2_for_ratio(const nlohmann::json& ladder_params, double ratio);

/// Ladder transfer maxima as the dressed gap ratio is scanned; delta2 is
/// solved per point. `ladder_params` must not set delta2.
SweepGrid spike_scan(std::span<const double> ratios, const nlohmann::json& ladder_params = nlohmann::json::object(),
                     Exec exec = Exec::parallel);

} // namespace twostep
