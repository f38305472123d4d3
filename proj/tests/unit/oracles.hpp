#pragma once

// Independent reference computations for the tests. Nothing here uses the
// library's eigensolver.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle
{

/// Roots of det(lambda I - A) for a real symmetric 3x3 matrix, ascending,
/// by sign-change scanning and bisection of the characteristic polynomial.
inline std::array<double, 3> symmetric_cubic_roots(const std::array<std::array<double, 3>, 3>& a)
{
	const double tr = a[0][0] + a[1][1] + a[2][2];
	const double minors = a[0][0] * a[1][1] - a[0][1] * a[1][0] + a[0][0] * a[2][2] - a[0][2] * a[2][0] +
	                      a[1][1] * a[2][2] - a[1][2] * a[2][1];
	const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
	                   a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
	                   a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
	auto p = [&](double x) { return ((x - tr) * x + minors) * x - det; };

	double r = 0.0;
	for(const auto& row : a)
		r = std::max(r, std::abs(row[0]) + std::abs(row[1]) + std::abs(row[2]));
	r += 1.0;
	std::array<double, 3> roots{};
	int found = 0;
	const int grid = 200000;
	double x0 = -r;
	double p0 = p(x0);
	for(int k = 1; k <= grid && found < 3; ++k)
	{
		const double x1 = -r + 2.0 * r * k / grid;
		const double p1 = p(x1);
		if(p0 == 0.0)
			roots[found++] = x0;
		else if(p0 * p1 < 0.0)
		{
			double lo = x0, hi = x1;
			for(int it = 0; it < 200; ++it)
			{
				const double mid = 0.5 * (lo + hi);
				(p(lo) * p(mid) <= 0.0 ? hi : lo) = mid;
			}
			roots[found++] = 0.5 * (lo + hi);
		}
		x0 = x1;
		p0 = p1;
	}
	return roots;
}

/// Two-level Rabi problem H = omega (|1><2| + h.c.): P2(t) = sin^2(omega t).
inline double rabi_p2(double omega, double t)
{
	const double s = std::sin(omega * t);
	return s * s;
}

} // namespace oracle
