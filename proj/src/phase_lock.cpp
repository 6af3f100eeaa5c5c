#include "bcsbec/phase_lock.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace bcsbec {

CouplingTensor::CouplingTensor(int modes) : M_(modes) {
	if (modes < 1 || modes > 6) throw std::invalid_argument("coupling tensor supports 1..6 modes");
	data_.assign(static_cast<std::size_t>(M_) * M_ * M_ * M_, 0.0);
}

void CouplingTensor::symmetrize() {
	std::vector<double> out(data_.size());
	for (int n = 0; n < M_; ++n)
		for (int m = 0; m < M_; ++m)
			for (int t = 0; t < M_; ++t)
				for (int s = 0; s < M_; ++s) {
					const auto& g = *this;
					out[index(n, m, t, s)] = 0.125 * (g(n, m, t, s) + g(m, n, t, s) + g(n, m, s, t) + g(m, n, s, t)
						+ g(t, s, n, m) + g(s, t, n, m) + g(t, s, m, n) + g(s, t, m, n));
				}
	data_ = std::move(out);
}

double CouplingTensor::max_asymmetry() const {
	double worst = 0.0;
	for (int n = 0; n < M_; ++n)
		for (int m = 0; m < M_; ++m)
			for (int t = 0; t < M_; ++t)
				for (int s = 0; s < M_; ++s) {
					const double v = (*this)(n, m, t, s);
					worst = std::max({worst, std::abs(v - (*this)(m, n, t, s)), std::abs(v - (*this)(n, m, s, t)),
						std::abs(v - (*this)(t, s, n, m))});
				}
	return worst;
}

CouplingTensor box_mode_tensor(int modes, double length, double g, int intervals) {
	if (intervals < 2 || intervals % 2 != 0) throw std::invalid_argument("Simpson rule needs an even interval count");
	if (!(length > 0.0)) throw std::invalid_argument("box length must be positive");
	CouplingTensor out(modes);
	const double h = length / intervals;
	std::vector<std::vector<double>> u(modes, std::vector<double>(intervals + 1));
	std::vector<double> w(intervals + 1);
	for (int i = 0; i <= intervals; ++i) {
		const double x = i * h;
		w[i] = (i == 0 || i == intervals) ? h / 3.0 : (i % 2 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
		for (int n = 0; n < modes; ++n) u[n][i] = std::sqrt(2.0 / length) * std::sin((n + 1) * std::numbers::pi * x / length);
	}
	for (int n = 0; n < modes; ++n)
		for (int m = 0; m < modes; ++m)
			for (int t = 0; t < modes; ++t)
				for (int s = 0; s < modes; ++s) {
					double sum = 0.0;
					for (int i = 0; i <= intervals; ++i) sum += w[i] * u[n][i] * u[m][i] * u[t][i] * u[s][i];
					out(n, m, t, s) = g * sum;
				}
	out.symmetrize();
	return out;
}

std::vector<double> box_mode_energies(int modes, double length) {
	std::vector<double> e(modes);
	for (int n = 0; n < modes; ++n) {
		const double k = (n + 1) * std::numbers::pi / length;
		e[n] = 0.5 * k * k;
	}
	return e;
}

CouplingTensor random_coupling_tensor(int modes, std::uint64_t seed) {
	CouplingTensor out(modes);
	SeededUniform uniform(seed);
	for (int n = 0; n < modes; ++n)
		for (int m = 0; m < modes; ++m)
			for (int t = 0; t < modes; ++t)
				for (int s = 0; s < modes; ++s) out(n, m, t, s) = 2.0 * uniform() - 1.0;
	out.symmetrize();
	return out;
}

namespace {

void check_sizes(const PhaseLockModel& model, std::span<const double> phases, std::span<const double> amps) {
	const auto M = static_cast<std::size_t>(model.coupling.modes());
	if (phases.size() != M || amps.size() != M || model.energies.size() != M)
		throw std::invalid_argument("phase-lock vectors must match the mode count");
}

// h_p = sum_{m,t,s} g_{pm,ts} conj(z_m) z_t z_s
std::vector<std::complex<double>> contracted(const CouplingTensor& g, const std::vector<std::complex<double>>& z) {
	const int M = g.modes();
	std::vector<std::complex<double>> h(M, 0.0);
	for (int p = 0; p < M; ++p)
		for (int m = 0; m < M; ++m) {
			const std::complex<double> zm = std::conj(z[m]);
			for (int t = 0; t < M; ++t)
				for (int s = 0; s < M; ++s) h[p] += g(p, m, t, s) * zm * z[t] * z[s];
		}
	return h;
}

std::vector<std::complex<double>> amplitudes_to_z(std::span<const double> phases, std::span<const double> amps) {
	std::vector<std::complex<double>> z(phases.size());
	for (std::size_t i = 0; i < z.size(); ++i) z[i] = std::polar(1.0, phases[i]) * amps[i];
	return z;
}

} // namespace

double PhaseLockModel::free_energy(std::span<const double> phases, std::span<const double> amps) const {
	check_sizes(*this, phases, amps);
	const int M = coupling.modes();
	double f = 0.0;
	for (int n = 0; n < M; ++n) f += (energies[n] - mu) * amps[n] * amps[n];
	for (int n = 0; n < M; ++n)
		for (int m = 0; m < M; ++m)
			for (int t = 0; t < M; ++t)
				for (int s = 0; s < M; ++s)
					f += 0.5 * coupling(n, m, t, s) * amps[n] * amps[m] * amps[t] * amps[s]
						* std::cos(phases[t] + phases[s] - phases[n] - phases[m]);
	return f;
}

PhaseLockModel::Gradient PhaseLockModel::gradient(std::span<const double> phases, std::span<const double> amps) const {
	check_sizes(*this, phases, amps);
	const auto z = amplitudes_to_z(phases, amps);
	const auto h = contracted(coupling, z);
	const std::size_t M = z.size();
	Gradient g{std::vector<double>(M), std::vector<double>(M)};
	const std::complex<double> i(0.0, 1.0);
	for (std::size_t p = 0; p < M; ++p) {
		g.phases[p] = 2.0 * std::real(std::conj(h[p]) * i * z[p]);
		g.amplitudes[p] = 2.0 * (energies[p] - mu) * amps[p] + 2.0 * std::real(std::conj(h[p]) * std::polar(1.0, phases[p]));
	}
	return g;
}

double PhaseLockModel::stationarity_residual(std::span<const double> phases, std::span<const double> amps) const {
	check_sizes(*this, phases, amps);
	const int M = coupling.modes();
	double norm2 = 0.0;
	for (int n = 0; n < M; ++n) {
		std::complex<double> lhs = 0.0;
		for (int m = 0; m < M; ++m) {
			const double sn = std::sin(phases[n] - phases[m]);
			for (int t = 0; t < M; ++t)
				for (int s = 0; s < M; ++s)
					lhs += coupling(n, m, t, s) * amps[n] * amps[m] * amps[t] * amps[s]
						* std::polar(1.0, phases[s] - phases[t]) * sn;
		}
		norm2 += std::norm(lhs);
	}
	return std::sqrt(norm2);
}

double folded_phase_spread(std::span<const double> phases, std::span<const double> amps, double empty_threshold) {
	const double pi = std::numbers::pi;
	std::optional<double> ref;
	double lo = 0.0, hi = 0.0;
	for (std::size_t i = 0; i < phases.size(); ++i) {
		if (amps[i] * amps[i] < empty_threshold) continue;
		if (!ref) {
			ref = phases[i];
			continue;
		}
		// difference modulo pi, mapped into [-pi/2, pi/2)
		const double d = std::fmod(std::fmod(phases[i] - *ref + 0.5 * pi, pi) + pi, pi) - 0.5 * pi;
		lo = std::min(lo, d);
		hi = std::max(hi, d);
	}
	return hi - lo;
}

DescentResult descend_phases(const PhaseLockModel& model, std::uint64_t seed, const DescentOptions& opts) {
	const int M = model.coupling.modes();
	SeededUniform uniform(seed);
	std::vector<double> phi(M), a(M);
	for (int n = 0; n < M; ++n) phi[n] = 2.0 * std::numbers::pi * uniform();
	for (int n = 0; n < M; ++n) a[n] = 0.1 + 0.9 * uniform();
	auto renormalize = [&] {
		double s = 0.0;
		for (double x : a) s += x * x;
		const double f = std::sqrt(opts.particle_number / s);
		for (double& x : a) x *= f;
	};
	renormalize();

	DescentResult r;
	for (r.steps = 0; r.steps < opts.max_steps; ++r.steps) {
		auto g = model.gradient(phi, a);
		// project the amplitude gradient onto the tangent space of the sphere
		double ga = 0.0, aa = 0.0;
		for (int n = 0; n < M; ++n) ga += g.amplitudes[n] * a[n], aa += a[n] * a[n];
		double norm2 = 0.0;
		for (int n = 0; n < M; ++n) {
			g.amplitudes[n] -= ga / aa * a[n];
			norm2 += g.phases[n] * g.phases[n] + g.amplitudes[n] * g.amplitudes[n];
		}
		r.gradient_norm = std::sqrt(norm2);
		if (r.gradient_norm <= opts.gradient_tolerance) {
			r.converged = true;
			break;
		}
		for (int n = 0; n < M; ++n) {
			phi[n] -= opts.step * g.phases[n];
			a[n] -= opts.step * g.amplitudes[n];
		}
		renormalize();
	}
	r.raw_phases = phi;
	r.free_energy = model.free_energy(phi, a);
	// fold (a, phi) -> (-a, phi - pi) so every phase lies within pi/2 of the first occupied one
	const double threshold = opts.empty_mode_fraction * opts.particle_number;
	r.phase_spread = folded_phase_spread(phi, a, threshold);
	r.phases = phi;
	r.amplitudes = a;
	int ref = -1;
	for (int n = 0; n < M; ++n)
		if (a[n] * a[n] >= threshold) {
			ref = n;
			break;
		}
	if (ref >= 0) {
		const double pi = std::numbers::pi;
		for (int n = 0; n < M; ++n) {
			double d = std::remainder(phi[n] - phi[ref], 2.0 * pi);
			if (d > 0.5 * pi) d -= pi, r.amplitudes[n] = -a[n];
			else if (d < -0.5 * pi) d += pi, r.amplitudes[n] = -a[n];
			r.phases[n] = std::remainder(phi[ref], 2.0 * pi) + d;
		}
	}
	return r;
}

PhaseLockReport variational_phase_lock(int modes, int g_sign, std::uint64_t seed, const PhaseLockOptions& opts) {
	if (modes < 2 || modes > 6) throw std::invalid_argument("phase locking supports 2..6 modes");
	if (g_sign < -1 || g_sign > 1) throw std::invalid_argument("coupling sign must be -1, 0 or +1");
	PhaseLockModel model{box_mode_tensor(modes, opts.box_length, g_sign * opts.coupling_magnitude),
		box_mode_energies(modes, opts.box_length), opts.mu};

	PhaseLockReport rep;
	rep.modes = modes;
	rep.g_sign = g_sign;
	SeededUniform uniform(seed ^ 0x9e3779b97f4a7c15ULL);
	std::vector<double> amps(modes);
	for (double& x : amps) x = 0.1 + 0.9 * uniform();
	const double common = 2.0 * std::numbers::pi * uniform();
	const std::vector<double> equal(modes, common);
	const auto g = model.gradient(equal, amps);
	double n2 = 0.0;
	for (double x : g.phases) n2 += x * x;
	rep.equal_phase_gradient_norm = std::sqrt(n2);
	rep.equal_phase_stationarity = model.stationarity_residual(equal, amps);
	rep.descent = descend_phases(model, seed, opts.descent);
	return rep;
}

} // namespace bcsbec
