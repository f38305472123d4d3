#pragma once

#include "twostep/model.hpp"
#include "twostep/propagation.hpp"
#include "twostep/spectral.hpp"

#include <optional>
#include <string>
#include <vector>

namespace twostep
{

/// Closed-form per-period rotation angles of the ladder, for comparison with extraction.
struct AnalyticCoupling
{
	double phi1 = 0.0;       ///< 1<->2 channel
	double phi1_prime = 0.0; ///< 1<->3 channel
	double omega_eff = 0.0;  ///< |phi| / T of the selected channel
	std::string channel;     ///< "1-2" or "1-3"
};

/// Generator of the one-period propagator, U(T) = exp(-i H_eff T).
struct EffectiveModel
{
	Matrix h_eff;
	double period = 0.0;
	bool branch_valid = true; ///< every eigenphase at least 0.1 away from the branch cut
	double residual = 0.0;    ///< max |exp(-i H_eff T) - U|
	Eigen::VectorXd quasienergies;
	std::optional<AnalyticCoupling> analytic;
};

/// Principal-branch logarithm of a unitary. Throws ValidationError if U is not
/// unitary within 1e-10.
EffectiveModel extract_effective(const Matrix& u, double period);
EffectiveModel extract_effective(const ModulationSchedule& schedule);

double analytic_phi1(const PerturbativeThreeLevel& p, double omega1);
double analytic_phi1_prime(const PerturbativeThreeLevel& p, double omega1);

/// Evolution under the constant H_eff, uniformly sampled on [0, t_final].
PopulationTrace effective_trace(const EffectiveModel& model, const QuantumState& psi0, double t_final, int samples);
/// Same, at explicit non-negative increasing times.
PopulationTrace effective_trace(const EffectiveModel& model, const QuantumState& psi0, const std::vector<double>& times);

/// Max population difference over a's samples, each matched to the nearest
/// sample of b. Samples of a outside b's time range are skipped.
double compare_traces(const PopulationTrace& a, const PopulationTrace& b);

/// Evolution time covering `multiple` effective Rabi periods of the two
/// quasienergy states that carry most of the initial level, capped at `cap`.
double rabi_horizon(const EffectiveModel& model, std::size_t initial_level, double multiple = 1.5,
                    double cap = 5000.0);

} // namespace twostep
