#include "bcsbec/coherent_state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bcsbec {

std::string to_string(AngleConvention c) {
	return c == AngleConvention::literal ? "literal-arctan" : "half-angle";
}

double pair_angle(double eps, double mode_gap, AngleConvention convention) {
	if (convention == AngleConvention::half_angle) return 0.5 * std::atan2(mode_gap, eps);
	if (eps == 0.0) return mode_gap == 0.0 ? 0.0 : 0.5 * std::numbers::pi;
	return std::atan(mode_gap / eps);
}

PairEnsemble::PairEnsemble(std::vector<PairMode> modes, double phi, GapContext gap, AngleConvention convention)
	: modes_(std::move(modes)), phi_(phi), omega_(0.0), gap_(gap), convention_(convention)
{
	for (const auto& m : modes_) {
		if (convention_ == AngleConvention::half_angle && (m.theta < 0.0 || m.theta > 0.5 * std::numbers::pi))
			throw std::invalid_argument("pair angle outside [0, pi/2]");
		omega_ += m.theta * m.theta;
	}
}

PairEnsemble PairEnsemble::from_momenta(std::span<const double> ks, const PhysicalParams& params, double mu,
	double Delta0, double phi, AngleConvention convention) {
	std::vector<PairMode> modes;
	modes.reserve(ks.size());
	for (double k : ks) {
		const double eps = continuum_dispersion(k, params) - mu;
		const double gap = Delta0 * nsr_form_factor(k, params.k0);
		modes.push_back({k, eps, pair_angle(eps, gap, convention)});
	}
	return PairEnsemble(std::move(modes), phi, GapContext{Delta0, params.U, params.k0}, convention);
}

PairEnsemble PairEnsemble::from_energies(std::span<const double> eps, double Delta0, double phi,
	AngleConvention convention) {
	std::vector<PairMode> modes;
	modes.reserve(eps.size());
	for (double e : eps) modes.push_back({0.0, e, pair_angle(e, Delta0, convention)});
	return PairEnsemble(std::move(modes), phi, GapContext{Delta0, 0.0, 1.0}, convention);
}

std::vector<double> PairEnsemble::thetas() const {
	std::vector<double> t;
	t.reserve(modes_.size());
	for (const auto& m : modes_) t.push_back(m.theta);
	return t;
}

double PairEnsemble::mode_gap(std::size_t i) const {
	return gap_.Delta0 * nsr_form_factor(modes_.at(i).k, gap_.k0);
}

double PairEnsemble::xi(std::size_t i) const {
	const double e = modes_.at(i).eps;
	const double g = mode_gap(i);
	return std::hypot(e, g);
}

BosonEnsemble::BosonEnsemble(std::vector<double> amplitudes, double phi)
	: amplitudes_(std::move(amplitudes)), phi_(phi), omega_(0.0)
{
	for (double a : amplitudes_) {
		if (a < 0.0) throw std::invalid_argument("boson amplitudes must be non-negative");
		omega_ += a * a;
	}
}

std::complex<double> bec_overlap(const BosonEnsemble& ens, double dphi) {
	const std::complex<double> phase = std::polar(1.0, dphi);
	std::complex<double> out = 1.0;
	for (double a : ens.amplitudes()) out *= std::exp(-a * a * (1.0 - phase));
	return out;
}

std::complex<double> bcs_overlap(std::span<const double> thetas, double dphi) {
	const std::complex<double> phase = std::polar(1.0, dphi);
	std::complex<double> out = 1.0;
	for (double t : thetas) {
		if (t < -1e-15 || t > 0.5 * std::numbers::pi + 1e-15) throw std::invalid_argument("pair angle outside [0, pi/2]");
		const double c = std::cos(t), s = std::sin(t);
		out *= c * c + phase * (s * s);
	}
	return out;
}

EtaStatistics eta_statistics(const PairEnsemble& ens) {
	if (ens.size() == 0) throw std::invalid_argument("eta statistics of an empty ensemble");
	if (!(ens.omega() > 0.0)) throw std::invalid_argument("eta statistics need Omega > 0");
	double mean = 0.0, var = 0.0;
	for (std::size_t i = 0; i < ens.size(); ++i) {
		const double t2 = ens.modes()[i].theta * ens.modes()[i].theta;
		if (t2 == 0.0) continue;
		const double eps = ens.modes()[i].eps;
		const double g = ens.mode_gap(i);
		const double xi = std::hypot(eps, g);
		// 1 - eps/xi, written without cancellation for eps > 0
		const double occupancy = eps > 0.0 ? g * g / (xi * (xi + eps)) : 1.0 - eps / xi;
		mean += t2 * occupancy;
		var += t2 * t2 * g * g / (xi * xi);
	}
	const double om = ens.omega();
	return {mean / om, var / (om * om)};
}

} // namespace bcsbec
