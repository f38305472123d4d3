#include "twostep/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace twostep
{

std::string fmt12(double v)
{
	if(v == 0.0)
		return "0";
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.12g", v);
	return buf;
}

nlohmann::json round12(const nlohmann::json& j)
{
	if(j.is_number_float())
	{
		const double v = j.get<double>();
		if(!std::isfinite(v))
			return j;
		return std::strtod(fmt12(v).c_str(), nullptr);
	}
	if(j.is_array() || j.is_object())
	{
		nlohmann::json out = j;
		for(auto& x : out)
			x = round12(x);
		return out;
	}
	return j;
}

std::string dump_json(const nlohmann::json& j)
{
	return round12(j).dump(2) + "\n";
}

void write_trace_csv(std::ostream& os, const PopulationTrace& trace)
{
	os << 't';
	for(std::size_t k = 1; k <= trace.dimension(); ++k)
		os << ",P" << k;
	os << '\n';
	for(std::size_t k = 0; k < trace.size(); ++k)
	{
		os << fmt12(trace.times[k]);
		for(Eigen::Index c = 0; c < trace.populations.cols(); ++c)
			os << ',' << fmt12(trace.populations(static_cast<Eigen::Index>(k), c));
		os << '\n';
	}
}

void write_sweep_csv(std::ostream& os, const SweepGrid& grid)
{
	bool first = true;
	for(const auto& n : grid.axis_names)
	{
		os << (first ? "" : ",") << n;
		first = false;
	}
	for(const auto& n : grid.result_names)
		os << ',' << n;
	os << '\n';
	for(std::size_t k = 0; k < grid.size(); ++k)
	{
		first = true;
		for(double x : grid.points[k])
		{
			os << (first ? "" : ",") << fmt12(x);
			first = false;
		}
		for(double x : grid.results[k])
			os << ',' << fmt12(x);
		os << '\n';
	}
}

nlohmann::json matrix_json(const Matrix& m)
{
	nlohmann::json re = nlohmann::json::array();
	nlohmann::json im = nlohmann::json::array();
	for(Eigen::Index r = 0; r < m.rows(); ++r)
	{
		std::vector<double> a, b;
		for(Eigen::Index c = 0; c < m.cols(); ++c)
		{
			a.push_back(m(r, c).real());
			b.push_back(m(r, c).imag());
		}
		re.push_back(a);
		im.push_back(b);
	}
	return {{"real", re}, {"imag", im}};
}

} // namespace twostep
