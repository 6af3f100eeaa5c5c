#include "bcsbec/josephson_chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <lapacke.h>

#include "bcsbec/core_model.hpp"

namespace bcsbec {

double charging_energy(double epsilon, double area, double width) {
	if (!(epsilon > 0.0) || !(area > 0.0) || !(width > 0.0))
		throw std::invalid_argument("capacitor inputs must be positive");
	const double C = epsilon * area / width;
	const double e = constants::elementary_charge;
	return e * e / (2.0 * C) / e;  // J -> eV
}

double tunneling_strength(double G, double U, double Delta_j, double Delta_j1) {
	if (G < 0.0 || !(U > 0.0) || !(Delta_j > 0.0) || !(Delta_j1 > 0.0))
		throw std::invalid_argument("tunnelling strength needs G >= 0 and positive U, Delta");
	return G * G / (U * (Delta_j + Delta_j1));
}

double josephson_energy(double G, double U, double Delta_j, double Delta_j1) {
	return tunneling_strength(G, U, Delta_j, Delta_j1) * U * U * Delta_j * Delta_j1;
}

double josephson_energy_equal(double G, double gap) {
	if (G < 0.0 || gap < 0.0) throw std::invalid_argument("josephson energy needs G, gap >= 0");
	return 0.5 * G * G * gap;
}

double sigma_phi2(double E_c, double E_J) {
	if (E_c < 0.0 || E_J < 0.0) throw std::invalid_argument("energies must be non-negative");
	if (E_J == 0.0) return std::numeric_limits<double>::infinity();
	return std::sqrt(2.0 * E_c / E_J);
}

VarianceSources variance_sources(double E_c, double E_J) {
	VarianceSources v;
	v.stated = sigma_phi2(E_c, E_J);
	v.oscillator = oscillator_variance_exact(E_c, E_J);
	v.wavefunction = E_J == 0.0 ? std::numeric_limits<double>::infinity() : std::sqrt(E_c / (2.0 * E_J));
	v.discrepancy = std::abs(v.stated - v.oscillator) > 1e-12 * std::abs(v.oscillator);
	return v;
}

double odlro(std::size_t j, std::size_t l, std::span<const double> Delta_bars, double sigma2, OdlroOptions opts) {
	if (j >= Delta_bars.size() || l >= Delta_bars.size()) throw std::out_of_range("segment index outside chain");
	if (sigma2 < 0.0) throw std::invalid_argument("sigma^2 must be non-negative");
	const double dist = j > l ? static_cast<double>(j - l) : static_cast<double>(l - j);
	const double pref = opts.unit_self_correlation ? 1.0 : 2.0 * std::numbers::pi;
	return pref * Delta_bars[j] * Delta_bars[l] * std::exp(-dist * sigma2);
}

double delta_bar(double U, double Delta_j, double N_j) {
	if (!(N_j > 0.0)) throw std::invalid_argument("segment particle number must be positive");
	return U * Delta_j / N_j;
}

std::string to_string(Coherence c) {
	switch (c) {
		case Coherence::global: return "global";
		case Coherence::local: return "local";
		case Coherence::boundary: return "boundary";
	}
	return "unknown";
}

Coherence coherence_classify(double E_c, double E_J, double rel_tol) {
	if (!(E_c > 0.0)) throw std::invalid_argument("charging energy must be positive");
	const double threshold = 2.0 * E_c;
	if (std::abs(E_J - threshold) <= rel_tol * threshold) return Coherence::boundary;
	return E_J > threshold ? Coherence::global : Coherence::local;
}

double oscillator_ground_energy_exact(double E_c, double E_J) {
	return 0.5 * std::sqrt(32.0 * E_c * E_J);
}

double oscillator_variance_exact(double E_c, double E_J) {
	if (E_J == 0.0) return std::numeric_limits<double>::infinity();
	return std::sqrt(8.0 * E_c / E_J);
}

OscillatorResult oscillator_oracle(double E_c, double E_J, OscillatorGrid grid) {
	if (!(E_c > 0.0) || !(E_J > 0.0)) throw std::invalid_argument("oscillator oracle needs E_c, E_J > 0");
	if (grid.points < 5) throw std::invalid_argument("oscillator grid needs at least 5 points");
	const double sigma = std::sqrt(oscillator_variance_exact(E_c, E_J));
	const double span = grid.span > 0.0 ? grid.span : 14.0 * sigma;
	const int n = grid.points;
	// interior points of [-span, span] with Dirichlet ends
	const double h = 2.0 * span / (n + 1);
	const double kin = 16.0 * E_c / (h * h);
	std::vector<double> diag(n), off(n - 1);
	for (int i = 0; i < n; ++i) {
		const double x = -span + (i + 1) * h;
		diag[i] = 2.0 * kin + 0.5 * E_J * x * x;
	}
	std::fill(off.begin(), off.end(), -kin);

	lapack_int found = 0;
	std::vector<double> w(n), z(n);
	std::vector<lapack_int> isuppz(2);
	const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(), 0.0, 0.0, 1, 1,
		0.0, &found, w.data(), z.data(), n, isuppz.data());
	OscillatorResult r;
	r.spacing = h;
	if (info != 0 || found != 1) {
		r.message = "tridiagonal eigensolver failed";
		return r;
	}
	double norm = 0.0, second = 0.0, peak = 0.0;
	for (int i = 0; i < n; ++i) {
		const double x = -span + (i + 1) * h;
		const double p = z[i] * z[i];
		norm += p;
		second += x * x * p;
		peak = std::max(peak, p);
	}
	r.ground_energy = w[0];
	r.variance = second / norm;
	r.boundary_density = std::max(z[0] * z[0], z[n - 1] * z[n - 1]) / peak;
	r.converged = r.boundary_density < 1e-12;
	if (!r.converged) r.message = "grid span too small: boundary density above 1e-12";
	return r;
}

void ChainSpec::validate() const {
	if (segments < 2) throw std::invalid_argument("chain needs at least two segments");
	if (!(E_c > 0.0)) throw std::invalid_argument("charging energy must be positive");
	if (E_J < 0.0) throw std::invalid_argument("Josephson energy must be non-negative");
	if (constituents) {
		if (constituents->Delta.size() != static_cast<std::size_t>(segments))
			throw std::invalid_argument("one order-parameter magnitude per segment required");
		for (double e : junction_energies()) {
			if (std::abs(e - E_J) > 1e-12 * std::max(std::abs(E_J), std::abs(e)))
				throw std::invalid_argument("E_J inconsistent with its constituents");
		}
	}
}

std::vector<double> ChainSpec::junction_energies() const {
	std::vector<double> out;
	if (!constituents) {
		out.assign(segments - 1, E_J);
		return out;
	}
	const auto& c = *constituents;
	for (int j = 0; j + 1 < segments; ++j) out.push_back(josephson_energy(c.G, c.U, c.Delta[j], c.Delta[j + 1]));
	return out;
}

ChainGroundState chain_ground_state(const ChainSpec& chain) {
	chain.validate();
	ChainGroundState g;
	g.sigma2 = sigma_phi2(chain.E_c, chain.E_J);
	g.width = std::sqrt(chain.E_J / (8.0 * chain.E_c));
	g.mean_relative_phase = 0.0;
	return g;
}

std::vector<double> odlro_matrix(std::span<const double> Delta_bars, double sigma2, OdlroOptions opts) {
	const std::size_t N = Delta_bars.size();
	std::vector<double> out(N * N);
	for (std::size_t j = 0; j < N; ++j)
		for (std::size_t l = 0; l < N; ++l) out[j * N + l] = odlro(j, l, Delta_bars, sigma2, opts);
	return out;
}

double odlro_log_slope(std::span<const double> Delta_bars, double sigma2) {
	// regress log(rho_jl / (Dbar_j Dbar_l)) on |j - l| over all pairs
	const std::size_t N = Delta_bars.size();
	if (N < 2) throw std::invalid_argument("slope needs at least two segments");
	double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, cnt = 0.0;
	for (std::size_t j = 0; j < N; ++j)
		for (std::size_t l = 0; l < N; ++l) {
			const double x = j > l ? static_cast<double>(j - l) : static_cast<double>(l - j);
			const double y = std::log(odlro(j, l, Delta_bars, sigma2)) - std::log(Delta_bars[j] * Delta_bars[l]);
			sx += x, sy += y, sxx += x * x, sxy += x * y, cnt += 1.0;
		}
	return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

} // namespace bcsbec
