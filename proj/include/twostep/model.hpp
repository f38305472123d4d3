#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace twostep
{

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// One laser coupling between two levels. Indices are 0-based internally;
/// the JSON form uses 1-based indices.
struct Coupling
{
	std::size_t i = 0;
	std::size_t j = 0;
	double value = 0.0;
};

/// Static multilevel system in the interaction picture: diagonal detunings
/// plus real couplings on an edge list. Energies are in units of the
/// reference coupling, times in its inverse.
class SystemSpec
{
public:
	SystemSpec(std::vector<double> detunings, std::vector<Coupling> couplings,
	           std::vector<std::string> labels = {});

	[[nodiscard]] std::size_t dimension() const { return detunings_.size(); }
	[[nodiscard]] const std::vector<double>& detunings() const { return detunings_; }
	[[nodiscard]] const std::vector<Coupling>& couplings() const { return couplings_; }
	[[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }

	/// Index of the edge joining i and j (either order), or npos.
	[[nodiscard]] std::size_t find_edge(std::size_t i, std::size_t j) const;
	/// Level index for a display label, or npos.
	[[nodiscard]] std::size_t find_label(const std::string& label) const;

	/// Copy with the coupling on edge (i, j) replaced.
	[[nodiscard]] SystemSpec with_coupling(std::size_t i, std::size_t j, double value) const;
	/// Copy with every coupling multiplied by c.
	[[nodiscard]] SystemSpec scaled_couplings(double c) const;
	/// Copy with detuning of level k replaced.
	[[nodiscard]] SystemSpec with_detuning(std::size_t k, double value) const;

	static constexpr std::size_t npos = static_cast<std::size_t>(-1);

	friend bool operator==(const SystemSpec& a, const SystemSpec& b);

private:
	std::vector<double> detunings_;
	std::vector<Coupling> couplings_;
	std::vector<std::string> labels_;
};

bool operator==(const Coupling& a, const Coupling& b);

/// Hermitian matrix built from a SystemSpec.
class HamiltonianMatrix
{
public:
	explicit HamiltonianMatrix(Matrix m);

	[[nodiscard]] const Matrix& matrix() const { return m_; }
	[[nodiscard]] std::size_t dimension() const { return static_cast<std::size_t>(m_.rows()); }
	[[nodiscard]] double norm() const;

private:
	Matrix m_;
};

/// Two piecewise-constant Hamiltonians alternating with durations tau_a, tau_b.
/// step_a acts first in every period.
class ModulationSchedule
{
public:
	ModulationSchedule(SystemSpec step_a, SystemSpec step_b, double tau_a, double tau_b);

	[[nodiscard]] const SystemSpec& step_a() const { return step_a_; }
	[[nodiscard]] const SystemSpec& step_b() const { return step_b_; }
	[[nodiscard]] double tau_a() const { return tau_a_; }
	[[nodiscard]] double tau_b() const { return tau_b_; }
	[[nodiscard]] double period() const { return tau_a_ + tau_b_; }
	[[nodiscard]] std::size_t dimension() const { return step_a_.dimension(); }

private:
	SystemSpec step_a_;
	SystemSpec step_b_;
	double tau_a_;
	double tau_b_;
};

/// Normalised state vector.
class QuantumState
{
public:
	explicit QuantumState(Vector amplitudes);
	/// Bare basis state |level> (0-based).
	static QuantumState basis(std::size_t dimension, std::size_t level);

	[[nodiscard]] const Vector& amplitudes() const { return amps_; }
	[[nodiscard]] std::size_t dimension() const { return static_cast<std::size_t>(amps_.size()); }
	[[nodiscard]] Eigen::VectorXd populations() const;

private:
	Vector amps_;
};

HamiltonianMatrix build_hamiltonian(const SystemSpec& spec);

struct EdgeRatio
{
	std::size_t i = 0;
	std::size_t j = 0;
	double ratio = 0.0; ///< |detuning difference| / |coupling|; +inf for a zero coupling
	bool flagged = false;
};

struct MldReport
{
	std::vector<EdgeRatio> edges;
	double min_ratio = 0.0;
	double threshold = 10.0;
	bool flagged = false; ///< true if any edge is below threshold
};

/// Detuning-to-coupling ratio along every coupled transition.
MldReport mld_diagnostics(const SystemSpec& spec, double threshold = 10.0);

nlohmann::json to_json(const SystemSpec& spec);
SystemSpec system_from_json(const nlohmann::json& j);

} // namespace twostep
