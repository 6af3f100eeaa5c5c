#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "bcsbec/core_model.hpp"

namespace bcsbec {

/// Mixing-angle convention for the pair amplitudes.
///
/// half_angle: cos(2 theta) = eps/xi, i.e. theta = atan2(gap_k, eps)/2 in [0, pi/2];
///             this is the convention under which <n_k> = 1 - eps/xi = 2 sin^2(theta).
/// literal:    theta = arctan(gap_k / eps), kept for comparison only.
enum class AngleConvention { half_angle, literal };

std::string to_string(AngleConvention c);

double pair_angle(double eps, double mode_gap, AngleConvention convention = AngleConvention::half_angle);

struct PairMode {
	double k = 0.0;
	double eps = 0.0;    ///< eps_k - mu
	double theta = 0.0;
};

/// Energy gap Delta0 at k = 0 together with the form-factor scale; the gap seen
/// by mode k is Delta0 * Gamma(k).
struct GapContext {
	double Delta0 = 0.0;
	double U = 0.0;
	double k0 = 1.0;
};

class PairEnsemble {
public:
	PairEnsemble(std::vector<PairMode> modes, double phi, GapContext gap,
		AngleConvention convention = AngleConvention::half_angle);

	/// Modes at the given momenta with angles derived from (eps, Delta0 Gamma(k)).
	static PairEnsemble from_momenta(std::span<const double> ks, const PhysicalParams& params, double mu,
		double Delta0, double phi = 0.0, AngleConvention convention = AngleConvention::half_angle);

	/// Modes with prescribed (eps, theta); the gap context is only used by eta_statistics.
	static PairEnsemble from_energies(std::span<const double> eps, double Delta0, double phi = 0.0,
		AngleConvention convention = AngleConvention::half_angle);

	const std::vector<PairMode>& modes() const { return modes_; }
	std::size_t size() const { return modes_.size(); }
	double phi() const { return phi_; }
	double omega() const { return omega_; }
	const GapContext& gap() const { return gap_; }
	AngleConvention convention() const { return convention_; }
	std::vector<double> thetas() const;

	double mode_gap(std::size_t i) const;
	double xi(std::size_t i) const;

private:
	std::vector<PairMode> modes_;
	double phi_;
	double omega_;
	GapContext gap_;
	AngleConvention convention_;
};

class BosonEnsemble {
public:
	BosonEnsemble(std::vector<double> amplitudes, double phi);

	const std::vector<double>& amplitudes() const { return amplitudes_; }
	double phi() const { return phi_; }
	double omega() const { return omega_; }

private:
	std::vector<double> amplitudes_;
	double phi_;
	double omega_;
};

/// <phi'|phi> = prod_n exp[-alpha_n^2 (1 - e^{i dphi})], dphi = phi - phi'.
std::complex<double> bec_overlap(const BosonEnsemble& ens, double dphi);

/// <phi'|phi> = prod_k (cos^2 theta_k + e^{i dphi} sin^2 theta_k).
std::complex<double> bcs_overlap(std::span<const double> thetas, double dphi);

struct EtaStatistics {
	double mean = 0.0;
	double variance = 0.0;
};

/// Ground-state mean and variance of eta = (1/Omega) sum theta_k^2 n_k.
EtaStatistics eta_statistics(const PairEnsemble& ens);

} // namespace bcsbec
