#pragma once

#include "twostep/model.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace twostep
{

/// Eigenstructure of one step Hamiltonian, with each dressed state labelled
/// by the bare level it overlaps most.
struct DressedSpectrum
{
	Eigen::VectorXd eigenvalues;     ///< ascending
	Matrix eigenvectors;             ///< column k belongs to eigenvalues(k)
	std::vector<std::size_t> bare_map; ///< dressed index -> bare level
	std::vector<double> overlaps;    ///< |<bare_map[k]|dressed k>|^2
	bool ambiguous = false;          ///< some overlap <= 0.5

	/// Dressed index labelled with the given bare level.
	[[nodiscard]] std::size_t dressed_of(std::size_t bare) const;
	/// Dressed energy labelled with the given bare level.
	[[nodiscard]] double energy_of(std::size_t bare) const;
	[[nodiscard]] double overlap_of(std::size_t bare) const;
};

DressedSpectrum eigendecompose(const HamiltonianMatrix& h);

/// How a level index is turned into a dressed energy when choosing an interval.
enum class Labeling
{
	bare_overlap, ///< dressed state of maximum overlap with the bare level
	energy_order, ///< k-th lowest dressed energy
};

/// What to do with a negative dressed gap.
enum class GapSign
{
	positive, ///< reject non-positive gaps
	magnitude, ///< use |gap|, reject only a vanishing gap
};

struct IntervalRule
{
	Labeling labeling = Labeling::bare_overlap;
	GapSign sign = GapSign::positive;
};

/// Dressed energy gap between the level-k state and the ground (level 0)
/// state under the given labelling rule.
double dressed_gap(const DressedSpectrum& s, std::size_t level, const IntervalRule& rule = {});

/// Step duration (2n+1) pi / gap that makes the target dressed state pick up
/// an odd multiple of pi relative to the ground state.
double transition_interval(const HamiltonianMatrix& h, std::size_t target, int n, const IntervalRule& rule = {});
double transition_interval(const DressedSpectrum& s, std::size_t target, int n, const IntervalRule& rule = {});

struct SpikeDistance
{
	double ratio = 0.0;    ///< (E2 - E1) / (E3 - E1)
	double distance = 0.0; ///< distance to the nearest of 3, 5, 7, ...
};

/// Gap ratio of a three-level spectrum and its distance to the odd-integer
/// values where the 1<->3 channel collapses.
SpikeDistance spike_distance(const DressedSpectrum& s);
/// Distance of a bare ratio to {3, 5, 7, ...}.
double odd_spike_distance(double ratio);

/// Closed-form second-order results for the three-level ladder.
struct PerturbativeThreeLevel
{
	double alpha = 0.0; ///< mixing angle of the upper pair, |alpha| <= pi/4
	double xi1 = 0.0;
	double xi2 = 0.0;
	double x1 = 0.0;
	double x2 = 0.0;
	double e1 = 0.0;
	double e2 = 0.0;
	double e3 = 0.0;
	double theta1 = 0.0; ///< (e2 - e1) * duration
	double theta2 = 0.0; ///< (e3 - e1) * duration
	double phi = 0.0;    ///< theta1 wrapped into (-pi, pi]
	double omega1 = 0.0;
	double omega2 = 0.0;

	/// Normalised perturbative eigenvectors in the bare basis, columns ordered E1, E2, E3.
	[[nodiscard]] Matrix eigenvectors() const;
};

/// Requires the ladder topology 1-2-3 with level 1 at zero detuning and
/// both small parameters below 0.1.
PerturbativeThreeLevel perturbative_three_level(const SystemSpec& spec, double duration);

} // namespace twostep
