#include "twostep/spectral.hpp"
#include "twostep/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>

namespace twostep
{

std::size_t DressedSpectrum::dressed_of(std::size_t bare) const
{
	for(std::size_t k = 0; k < bare_map.size(); ++k)
		if(bare_map[k] == bare)
			return k;
	throw ValidationError("bare level " + std::to_string(bare + 1) + " is out of range");
}

double DressedSpectrum::energy_of(std::size_t bare) const
{
	return eigenvalues(static_cast<Eigen::Index>(dressed_of(bare)));
}

double DressedSpectrum::overlap_of(std::size_t bare) const
{
	return overlaps[dressed_of(bare)];
}

DressedSpectrum eigendecompose(const HamiltonianMatrix& h)
{
	const Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
	if(es.info() != Eigen::Success)
		throw NumericError("Hermitian eigensolver did not converge");

	DressedSpectrum s;
	s.eigenvalues = es.eigenvalues();
	s.eigenvectors = es.eigenvectors();
	const auto d = s.eigenvectors.rows();

	// Fix the phase: the largest-magnitude component of each column is real and positive.
	for(Eigen::Index k = 0; k < d; ++k)
	{
		auto col = s.eigenvectors.col(k);
		Eigen::Index arg = 0;
		col.cwiseAbs().maxCoeff(&arg);
		const cplx pivot = col(arg);
		col *= std::conj(pivot) / std::abs(pivot);
		col(arg) = std::abs(col(arg));
	}

	// Greedy assignment on descending overlap; ties go to the lower bare index.
	const Eigen::MatrixXd ov = s.eigenvectors.cwiseAbs2();
	std::vector<std::tuple<double, Eigen::Index, Eigen::Index>> pairs;
	pairs.reserve(static_cast<std::size_t>(d * d));
	for(Eigen::Index b = 0; b < d; ++b)
		for(Eigen::Index k = 0; k < d; ++k)
			pairs.emplace_back(ov(b, k), b, k);
	std::stable_sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
		if(std::get<0>(x) != std::get<0>(y))
			return std::get<0>(x) > std::get<0>(y);
		if(std::get<1>(x) != std::get<1>(y))
			return std::get<1>(x) < std::get<1>(y);
		return std::get<2>(x) < std::get<2>(y);
	});

	const auto n = static_cast<std::size_t>(d);
	s.bare_map.assign(n, SystemSpec::npos);
	s.overlaps.assign(n, 0.0);
	std::vector<bool> bare_used(n, false);
	std::vector<bool> dressed_used(n, false);
	for(const auto& [o, b, k] : pairs)
	{
		const auto bi = static_cast<std::size_t>(b);
		const auto ki = static_cast<std::size_t>(k);
		if(bare_used[bi] || dressed_used[ki])
			continue;
		bare_used[bi] = dressed_used[ki] = true;
		s.bare_map[ki] = bi;
		s.overlaps[ki] = o;
	}
	s.ambiguous = std::any_of(s.overlaps.begin(), s.overlaps.end(), [](double o) { return o <= 0.5; });
	return s;
}

namespace
{

double level_energy(const DressedSpectrum& s, std::size_t level, Labeling labeling)
{
	if(level >= static_cast<std::size_t>(s.eigenvalues.size()))
		throw ValidationError("level " + std::to_string(level + 1) + " is out of range");
	if(labeling == Labeling::energy_order)
		return s.eigenvalues(static_cast<Eigen::Index>(level));
	if(s.overlap_of(level) <= 0.5)
	{
		std::ostringstream os;
		os << "dressed labelling of level " << level + 1 << " is ambiguous (overlap " << s.overlap_of(level) << ")";
		throw ValidationError(os.str());
	}
	return s.energy_of(level);
}

} // namespace

double dressed_gap(const DressedSpectrum& s, std::size_t level, const IntervalRule& rule)
{
	const double ground = level_energy(s, 0, rule.labeling);
	const double target = level_energy(s, level, rule.labeling);
	return target - ground;
}

double transition_interval(const DressedSpectrum& s, std::size_t target, int n, const IntervalRule& rule)
{
	if(n < 0)
		throw ValidationError("interval multiplier n must be >= 0");
	if(target == 0)
		throw ValidationError("target level must differ from the ground level");
	double gap = dressed_gap(s, target, rule);
	if(rule.sign == GapSign::magnitude)
		gap = std::abs(gap);
	if(!(gap > 1e-12))
	{
		std::ostringstream os;
		os.precision(12);
		os << "non-positive dressed gap between level " << target + 1 << " (E=" << level_energy(s, target, rule.labeling)
		   << ") and level 1 (E=" << level_energy(s, 0, rule.labeling) << ")";
		throw ValidationError(os.str());
	}
	return (2.0 * n + 1.0) * std::numbers::pi / gap;
}

double transition_interval(const HamiltonianMatrix& h, std::size_t target, int n, const IntervalRule& rule)
{
	return transition_interval(eigendecompose(h), target, n, rule);
}

double odd_spike_distance(double ratio)
{
	if(ratio <= 3.0)
		return 3.0 - ratio;
	// nearest odd integer >= 3
	const double k = std::round((ratio - 1.0) / 2.0);
	return std::abs(ratio - (2.0 * std::max(k, 1.0) + 1.0));
}

SpikeDistance spike_distance(const DressedSpectrum& s)
{
	if(s.eigenvalues.size() != 3)
		throw ValidationError("spike distance needs a three-level spectrum");
	const double g2 = dressed_gap(s, 1);
	const double g3 = dressed_gap(s, 2);
	if(std::abs(g3) < 1e-12 || std::abs(g2) < 1e-12)
		throw ValidationError("degenerate dressed gaps in spike distance");
	SpikeDistance out;
	out.ratio = g2 / g3;
	out.distance = odd_spike_distance(out.ratio);
	return out;
}

} // namespace twostep
