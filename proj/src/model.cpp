#include "twostep/model.hpp"
#include "twostep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twostep
{

namespace
{

std::string edge_name(std::size_t i, std::size_t j)
{
	return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

} // namespace

SystemSpec::SystemSpec(std::vector<double> detunings, std::vector<Coupling> couplings,
                       std::vector<std::string> labels)
    : detunings_(std::move(detunings)), couplings_(std::move(couplings)), labels_(std::move(labels))
{
	const std::size_t d = detunings_.size();
	if(d < 2)
		throw ValidationError("system needs at least 2 levels, got " + std::to_string(d));
	for(double x : detunings_)
		if(!std::isfinite(x))
			throw ValidationError("detunings must be finite");
	if(labels_.empty())
	{
		for(std::size_t k = 0; k < d; ++k)
			labels_.push_back(std::to_string(k + 1));
	}
	if(labels_.size() != d)
		throw ValidationError("label count " + std::to_string(labels_.size()) + " does not match dimension "
		                      + std::to_string(d));

	for(std::size_t e = 0; e < couplings_.size(); ++e)
	{
		const auto& c = couplings_[e];
		if(c.i >= d || c.j >= d)
			throw ValidationError("coupling " + edge_name(c.i, c.j) + " has a level index out of range 1.."
			                      + std::to_string(d));
		if(c.i == c.j)
			throw ValidationError("coupling " + edge_name(c.i, c.j) + " joins a level to itself");
		if(!std::isfinite(c.value))
			throw ValidationError("coupling " + edge_name(c.i, c.j) + " is not finite");
		for(std::size_t f = 0; f < e; ++f)
		{
			const auto& o = couplings_[f];
			if((o.i == c.i && o.j == c.j) || (o.i == c.j && o.j == c.i))
				throw ValidationError("duplicate coupling on edge " + edge_name(c.i, c.j));
		}
	}
}

std::size_t SystemSpec::find_edge(std::size_t i, std::size_t j) const
{
	for(std::size_t e = 0; e < couplings_.size(); ++e)
	{
		const auto& c = couplings_[e];
		if((c.i == i && c.j == j) || (c.i == j && c.j == i))
			return e;
	}
	return npos;
}

std::size_t SystemSpec::find_label(const std::string& label) const
{
	auto it = std::find(labels_.begin(), labels_.end(), label);
	return it == labels_.end() ? npos : static_cast<std::size_t>(it - labels_.begin());
}

SystemSpec SystemSpec::with_coupling(std::size_t i, std::size_t j, double value) const
{
	const std::size_t e = find_edge(i, j);
	if(e == npos)
		throw ValidationError("no coupling on edge " + edge_name(i, j));
	auto couplings = couplings_;
	couplings[e].value = value;
	return SystemSpec(detunings_, std::move(couplings), labels_);
}

SystemSpec SystemSpec::scaled_couplings(double c) const
{
	auto couplings = couplings_;
	for(auto& x : couplings)
		x.value *= c;
	return SystemSpec(detunings_, std::move(couplings), labels_);
}

SystemSpec SystemSpec::with_detuning(std::size_t k, double value) const
{
	if(k >= dimension())
		throw ValidationError("level index out of range");
	auto detunings = detunings_;
	detunings[k] = value;
	return SystemSpec(std::move(detunings), couplings_, labels_);
}

bool operator==(const Coupling& a, const Coupling& b)
{
	return a.i == b.i && a.j == b.j && a.value == b.value;
}

bool operator==(const SystemSpec& a, const SystemSpec& b)
{
	return a.detunings_ == b.detunings_ && a.couplings_ == b.couplings_ && a.labels_ == b.labels_;
}

HamiltonianMatrix::HamiltonianMatrix(Matrix m) : m_(std::move(m))
{
	if(m_.rows() != m_.cols())
		throw ValidationError("Hamiltonian must be square");
	if((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, m_.cwiseAbs().maxCoeff()))
		throw ValidationError("Hamiltonian is not Hermitian");
}

double HamiltonianMatrix::norm() const
{
	return m_.operatorNorm();
}

ModulationSchedule::ModulationSchedule(SystemSpec step_a, SystemSpec step_b, double tau_a, double tau_b)
    : step_a_(std::move(step_a)), step_b_(std::move(step_b)), tau_a_(tau_a), tau_b_(tau_b)
{
	if(step_a_.dimension() != step_b_.dimension())
		throw ValidationError("schedule steps have different dimensions: " + std::to_string(step_a_.dimension())
		                      + " vs " + std::to_string(step_b_.dimension()));
	if(!(tau_a_ > 0.0) || !(tau_b_ > 0.0) || !std::isfinite(tau_a_) || !std::isfinite(tau_b_))
		throw ValidationError("step durations must be finite and strictly positive");
}

QuantumState::QuantumState(Vector amplitudes) : amps_(std::move(amplitudes))
{
	if(amps_.size() == 0)
		throw ValidationError("empty state");
	if(std::abs(amps_.norm() - 1.0) > 1e-10)
		throw ValidationError("state is not normalised (norm " + std::to_string(amps_.norm()) + ")");
}

QuantumState QuantumState::basis(std::size_t dimension, std::size_t level)
{
	if(level >= dimension)
		throw ValidationError("basis level out of range");
	Vector v = Vector::Zero(static_cast<Eigen::Index>(dimension));
	v(static_cast<Eigen::Index>(level)) = 1.0;
	return QuantumState(std::move(v));
}

Eigen::VectorXd QuantumState::populations() const
{
	return amps_.cwiseAbs2();
}

HamiltonianMatrix build_hamiltonian(const SystemSpec& spec)
{
	const auto d = static_cast<Eigen::Index>(spec.dimension());
	Matrix upper = Matrix::Zero(d, d);
	for(const auto& c : spec.couplings())
	{
		const auto lo = static_cast<Eigen::Index>(std::min(c.i, c.j));
		const auto hi = static_cast<Eigen::Index>(std::max(c.i, c.j));
		upper(lo, hi) = c.value;
	}
	// M + M^dagger is Hermitian bit-for-bit; the diagonal is set afterwards so it stays exact.
	Matrix m = upper + upper.adjoint();
	for(Eigen::Index k = 0; k < d; ++k)
		m(k, k) = spec.detunings()[static_cast<std::size_t>(k)];
	return HamiltonianMatrix(std::move(m));
}

MldReport mld_diagnostics(const SystemSpec& spec, double threshold)
{
	if(spec.couplings().empty())
		throw ValidationError("MLD diagnostics need at least one coupling");
	MldReport report;
	report.threshold = threshold;
	report.min_ratio = std::numeric_limits<double>::infinity();
	for(const auto& c : spec.couplings())
	{
		EdgeRatio er;
		er.i = c.i;
		er.j = c.j;
		const double gap = std::abs(spec.detunings()[c.j] - spec.detunings()[c.i]);
		er.ratio = c.value == 0.0 ? std::numeric_limits<double>::infinity() : gap / std::abs(c.value);
		er.flagged = er.ratio < threshold;
		report.flagged = report.flagged || er.flagged;
		report.min_ratio = std::min(report.min_ratio, er.ratio);
		report.edges.push_back(er);
	}
	return report;
}

nlohmann::json to_json(const SystemSpec& spec)
{
	nlohmann::json couplings = nlohmann::json::array();
	for(const auto& c : spec.couplings())
		couplings.push_back({c.i + 1, c.j + 1, c.value});
	return {{"labels", spec.labels()}, {"detunings", spec.detunings()}, {"couplings", couplings}};
}

SystemSpec system_from_json(const nlohmann::json& j)
{
	if(!j.is_object())
		throw ValidationError("system must be a JSON object");
	for(const auto& [key, _] : j.items())
		if(key != "labels" && key != "detunings" && key != "couplings")
			throw ValidationError("unknown key in system: \"" + key + "\"");
	if(!j.contains("detunings") || !j.at("detunings").is_array())
		throw ValidationError("system needs a \"detunings\" array");

	std::vector<double> detunings;
	for(const auto& x : j.at("detunings"))
	{
		if(!x.is_number())
			throw ValidationError("detunings must be numbers");
		detunings.push_back(x.get<double>());
	}

	std::vector<Coupling> couplings;
	if(j.contains("couplings"))
	{
		for(const auto& e : j.at("couplings"))
		{
			if(!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer()
			   || !e[2].is_number())
				throw ValidationError("each coupling must be [i, j, value] with 1-based integer indices");
			const auto i = e[0].get<long long>();
			const auto k = e[1].get<long long>();
			if(i < 1 || k < 1)
				throw ValidationError("coupling indices are 1-based");
			couplings.push_back({static_cast<std::size_t>(i - 1), static_cast<std::size_t>(k - 1), e[2].get<double>()});
		}
	}

	std::vector<std::string> labels;
	if(j.contains("labels"))
		labels = j.at("labels").get<std::vector<std::string>>();
	return SystemSpec(std::move(detunings), std::move(couplings), std::move(labels));
}

} // namespace twostep
