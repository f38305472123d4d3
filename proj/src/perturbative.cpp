#include "twostep/errors.hpp"
#include "twostep/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace twostep
{

namespace
{

bool is_ladder(const SystemSpec& spec)
{
	return spec.dimension() == 3 && spec.couplings().size() == 2 && spec.find_edge(0, 1) != SystemSpec::npos
	       && spec.find_edge(1, 2) != SystemSpec::npos;
}

double wrap_phase(double x)
{
	double r = std::remainder(x, 2.0 * std::numbers::pi);
	if(r <= -std::numbers::pi)
		r += 2.0 * std::numbers::pi;
	return r;
}

} // namespace

PerturbativeThreeLevel perturbative_three_level(const SystemSpec& spec, double duration)
{
	if(!is_ladder(spec))
		throw ValidationError("perturbative analysis needs the 1-2-3 ladder topology");
	if(spec.detunings()[0] != 0.0)
		throw ValidationError("perturbative analysis expects level 1 at zero detuning");

	PerturbativeThreeLevel p;
	const double d1 = spec.detunings()[1];
	const double d2 = spec.detunings()[2];
	p.omega1 = spec.couplings()[spec.find_edge(0, 1)].value;
	p.omega2 = spec.couplings()[spec.find_edge(1, 2)].value;

	// 2 alpha on the principal branch; the degenerate upper pair takes +-pi/2 by the sign of omega2.
	double two_alpha = 0.0;
	if(d2 != d1)
		two_alpha = std::atan(2.0 * p.omega2 / (d2 - d1));
	else if(p.omega2 != 0.0)
		two_alpha = std::copysign(std::numbers::pi / 2.0, p.omega2);
	p.alpha = two_alpha / 2.0;

	const double root = std::sqrt((d1 - d2) * (d1 - d2) + 4.0 * p.omega2 * p.omega2);
	p.xi1 = 0.5 * (d1 + d2 - root);
	p.xi2 = 0.5 * (d1 + d2 + root);
	const double scale = std::max({std::abs(d1), std::abs(d2), std::abs(p.omega2), 1.0});
	if(std::abs(p.xi1) <= 1e-12 * scale || std::abs(p.xi2) <= 1e-12 * scale)
		throw NumericError("perturbation theory is singular: a dressed detuning vanishes");

	p.x1 = p.omega1 * std::sin(p.alpha) / p.xi1;
	p.x2 = p.omega1 * std::cos(p.alpha) / p.xi2;
	if(std::abs(p.x1) >= 0.1 || std::abs(p.x2) >= 0.1)
		throw ValidationError("outside the large-detuning regime: |x1|=" + std::to_string(std::abs(p.x1))
		                      + ", |x2|=" + std::to_string(std::abs(p.x2)));

	p.e1 = -p.xi1 * p.x1 * p.x1 - p.xi2 * p.x2 * p.x2;
	p.e2 = p.xi1 * (1.0 + p.x1 * p.x1);
	p.e3 = p.xi2 * (1.0 + p.x2 * p.x2);
	p.theta1 = (p.e2 - p.e1) * duration;
	p.theta2 = (p.e3 - p.e1) * duration;
	p.phi = wrap_phase(p.theta1);
	return p;
}

Matrix PerturbativeThreeLevel::eigenvectors() const
{
	const double s = std::sin(alpha);
	const double c = std::cos(alpha);
	Vector one(3), xi_a(3), xi_b(3);
	one << 1.0, 0.0, 0.0;
	xi_a << 0.0, s, c;
	xi_b << 0.0, c, -s;

	Matrix v(3, 3);
	v.col(0) = one - x1 * xi_a - x2 * xi_b;
	v.col(1) = xi_a + x1 * one;
	v.col(2) = xi_b + x2 * one;
	for(Eigen::Index k = 0; k < 3; ++k)
		v.col(k).normalize();
	return v;
}

} // namespace twostep
