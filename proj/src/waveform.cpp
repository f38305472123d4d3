#include "twostep/waveform.hpp"
#include "twostep/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace twostep
{

namespace
{

template <class... Ts>
struct overloaded : Ts...
{
	using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double wrap_time(double t, double period)
{
	return t - period * std::floor(t / period);
}

void check_positive(double x, const char* what)
{
	if(!(x > 0.0) || !std::isfinite(x))
		throw ValidationError(std::string(what) + " must be finite and positive");
}

} // namespace

void validate(const Waveform& w)
{
	std::visit(overloaded{[](const IdealSquare& s) {
		                      check_positive(s.tau_high, "square-wave tau_high");
		                      check_positive(s.tau_low, "square-wave tau_low");
	                      },
	                      [](const SoftSquare& s) {
		                      check_positive(s.tau_high, "square-wave tau_high");
		                      check_positive(s.tau_low, "square-wave tau_low");
		                      check_positive(s.hardness, "hardness gamma");
	                      },
	                      [](const GaussianPulse& g) { check_positive(g.width, "pulse width"); }},
	           w);
}

double waveform_value(const Waveform& w, double t)
{
	return std::visit(
	    overloaded{[t](const IdealSquare& s) {
		               const double u = wrap_time(t, s.tau_high + s.tau_low);
		               return u < s.tau_high ? s.high : s.low;
	               },
	               [t](const SoftSquare& s) {
		               // t is reduced modulo the period, not divided by it.
		               const double period = s.tau_high + s.tau_low;
		               const double u = wrap_time(t, period);
		               const double swing = s.high - s.low;
		               if(u < s.tau_high / 2.0)
			               return s.low + swing / (1.0 + std::exp(-s.hardness * u));
		               if(u <= period - s.tau_low / 2.0)
			               return s.low + swing / (1.0 + std::exp(s.hardness * (u - s.tau_high)));
		               return s.low + swing / (1.0 + std::exp(-s.hardness * (u - period)));
	               },
	               [t](const GaussianPulse& g) {
		               const double z = (t - g.center) / g.width;
		               return g.peak * std::exp(-z * z);
	               }},
	    w);
}

std::optional<double> waveform_period(const Waveform& w)
{
	return std::visit(overloaded{[](const IdealSquare& s) -> std::optional<double> { return s.tau_high + s.tau_low; },
	                             [](const SoftSquare& s) -> std::optional<double> { return s.tau_high + s.tau_low; },
	                             [](const GaussianPulse&) -> std::optional<double> { return std::nullopt; }},
	                  w);
}

std::vector<DrivenEdge> gaussian_pair(double peak, double width, double delay, std::pair<std::size_t, std::size_t> first,
                                      std::pair<std::size_t, std::size_t> second)
{
	return {DrivenEdge{first.first, first.second, GaussianPulse{peak, width, delay}},
	        DrivenEdge{second.first, second.second, GaussianPulse{peak, width, 0.0}}};
}

namespace
{

struct Stepper
{
	Matrix base;
	std::span<const DrivenEdge> drives;

	Matrix propagator(double t_mid, double dt) const
	{
		Matrix h = base;
		for(const auto& d : drives)
		{
			const double v = waveform_value(d.shape, t_mid);
			h(static_cast<Eigen::Index>(d.i), static_cast<Eigen::Index>(d.j)) = v;
			h(static_cast<Eigen::Index>(d.j), static_cast<Eigen::Index>(d.i)) = v;
		}
		const Eigen::SelfAdjointEigenSolver<Matrix> es(h);
		const auto& w = es.eigenvalues();
		Vector phases(w.size());
		for(Eigen::Index k = 0; k < w.size(); ++k)
			phases(k) = std::polar(1.0, -w(k) * dt);
		return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
	}
};

std::optional<double> common_period(std::span<const DrivenEdge> drives)
{
	std::optional<double> period;
	for(const auto& d : drives)
	{
		const auto p = waveform_period(d.shape);
		if(!p)
			return std::nullopt;
		if(period && std::abs(*p - *period) > 1e-12 * *period)
			return std::nullopt;
		period = p;
	}
	return period;
}

struct SingleRun
{
	PopulationTrace trace;
	Eigen::VectorXd final_pops;
	double substep = 0.0;
};

SingleRun run_once(const Stepper& stepper, const QuantumState& psi0, const WaveformOptions& opt, double h,
                   std::optional<double> period)
{
	const double span = opt.t_final - opt.t_start;
	double dt = 0.0;
	long steps = 0;
	if(period)
	{
		// Align the grid with the period so every period reuses the same propagators.
		const auto slots = static_cast<long>(std::ceil(*period / h - 1e-9));
		dt = *period / static_cast<double>(slots);
		steps = static_cast<long>(std::floor(span / dt + 1e-9));
	}
	else
	{
		steps = std::max(1L, static_cast<long>(std::ceil(span / h - 1e-9)));
		dt = span / static_cast<double>(steps);
	}
	const long slots = period ? static_cast<long>(std::llround(*period / dt)) : 0;
	std::vector<Matrix> cache(static_cast<std::size_t>(slots));
	std::vector<bool> cached(static_cast<std::size_t>(slots), false);

	const long stride =
	    opt.sample_interval > 0.0 ? std::max(1L, static_cast<long>(std::llround(opt.sample_interval / dt))) : 1L;

	TraceRecorder rec(psi0.dimension());
	Vector psi = psi0.amplitudes();
	Vector next(psi.size());
	rec.record(opt.t_start, psi);
	double t = opt.t_start;
	for(long q = 0; q < steps; ++q)
	{
		const double t_mid = opt.t_start + (static_cast<double>(q) + 0.5) * dt;
		if(period)
		{
			const auto slot = static_cast<std::size_t>(q % slots);
			if(!cached[slot])
			{
				cache[slot] = stepper.propagator(t_mid, dt);
				cached[slot] = true;
			}
			next.noalias() = cache[slot] * psi;
		}
		else
		{
			next.noalias() = stepper.propagator(t_mid, dt) * psi;
		}
		psi.swap(next);
		t = opt.t_start + static_cast<double>(q + 1) * dt;
		if((q + 1) % stride == 0 && q + 1 < steps)
			rec.record(t, psi);
	}
	const double rest = opt.t_final - t;
	if(rest > 1e-12 * std::max(1.0, std::abs(opt.t_final)))
		psi = stepper.propagator(t + rest / 2.0, rest) * psi;
	rec.record(std::max(opt.t_final, t), psi);

	if(std::abs(psi.norm() - 1.0) > 1e-8)
		throw NumericError("norm drift exceeds 1e-8 in waveform evolution");
	SingleRun out;
	out.final_pops = psi.cwiseAbs2();
	out.trace = std::move(rec).finish();
	out.substep = dt;
	return out;
}

} // namespace

WaveformRun waveform_evolve(const SystemSpec& base, std::span<const DrivenEdge> drives, const QuantumState& psi0,
                            const WaveformOptions& options)
{
	if(psi0.dimension() != base.dimension())
		throw ValidationError("initial state dimension does not match the system");
	if(!(options.t_final > options.t_start))
		throw ValidationError("t_final must exceed t_start");
	if(!(options.substep > 0.0))
		throw ValidationError("substep must be positive");
	for(const auto& d : drives)
	{
		if(d.i >= base.dimension() || d.j >= base.dimension() || d.i == d.j)
			throw ValidationError("driven edge out of range");
		validate(d.shape);
	}

	const Stepper stepper{build_hamiltonian(base).matrix(), drives};
	const auto period = common_period(drives);

	SingleRun prev = run_once(stepper, psi0, options, options.substep, period);
	if(!options.check_convergence)
		return {std::move(prev.trace), prev.substep, 0.0};

	double h = options.substep;
	double delta = 0.0;
	for(int k = 1; k <= options.max_halvings; ++k)
	{
		h /= 2.0;
		SingleRun cur = run_once(stepper, psi0, options, h, period);
		delta = (cur.final_pops - prev.final_pops).cwiseAbs().maxCoeff();
		if(delta < options.tolerance)
			return {std::move(cur.trace), cur.substep, delta};
		prev = std::move(cur);
	}
	std::ostringstream os;
	os << "waveform evolution did not converge after " << options.max_halvings << " halvings (final change " << delta
	   << ", tolerance " << options.tolerance << ")";
	throw NumericError(os.str());
}

} // namespace twostep
