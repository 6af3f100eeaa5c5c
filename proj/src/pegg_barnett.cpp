#include "bcsbec/pegg_barnett.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/distributions/poisson.hpp>

namespace bcsbec {

PeggBarnettOperators pegg_barnett_operators(int s, double theta0) {
	if (s < 1) throw std::invalid_argument("Pegg-Barnett dimension needs s >= 1");
	const int d = s + 1;
	PeggBarnettOperators ops;
	ops.s = s;
	ops.theta0 = theta0;
	ops.phase_states.resize(d, d);
	Eigen::VectorXd thetas(d);
	const double norm = 1.0 / std::sqrt(static_cast<double>(d));
	for (int m = 0; m < d; ++m) {
		thetas[m] = theta0 + 2.0 * std::numbers::pi * m / d;
		for (int n = 0; n < d; ++n) ops.phase_states(n, m) = std::polar(norm, n * thetas[m]);
	}
	const Eigen::MatrixXcd& V = ops.phase_states;
	Eigen::VectorXcd factors(d);
	for (int m = 0; m < d; ++m) factors[m] = std::polar(1.0, thetas[m]);
	ops.phase_factor = V * factors.asDiagonal() * V.adjoint();
	ops.phase = V * thetas.cast<std::complex<double>>().asDiagonal() * V.adjoint();
	ops.number = Eigen::VectorXd::LinSpaced(d, 0.0, static_cast<double>(s));
	return ops;
}

double PeggBarnettOperators::unitarity_error() const {
	const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dimension(), dimension());
	return (phase_factor * phase_factor.adjoint() - id).operatorNorm();
}

double PeggBarnettOperators::hermiticity_error() const {
	return (phase - phase.adjoint()).operatorNorm();
}

Eigen::VectorXcd truncated_coherent_state(int s, double Omega, double phase) {
	if (!(Omega > 0.0)) throw std::invalid_argument("coherent state needs Omega > 0");
	Eigen::VectorXcd psi(s + 1);
	for (int n = 0; n <= s; ++n) {
		const double log_mag = -0.5 * Omega + 0.5 * n * std::log(Omega) - 0.5 * std::lgamma(n + 1.0);
		psi[n] = std::polar(std::exp(log_mag), n * phase);
	}
	psi.normalize();
	return psi;
}

CommutatorReport pegg_barnett_commutator(const PeggBarnettOperators& ops, double Omega, std::optional<double> state_phase) {
	if (!(Omega > 0.0)) throw std::invalid_argument("Pegg-Barnett report needs Omega > 0");
	CommutatorReport r;
	r.state_phase = state_phase.value_or(ops.theta0 + std::numbers::pi);
	const Eigen::VectorXcd psi = truncated_coherent_state(ops.s, Omega, r.state_phase);
	const Eigen::VectorXcd n_psi = ops.number.cast<std::complex<double>>().cwiseProduct(psi);
	const Eigen::VectorXcd t_psi = ops.phase * psi;
	// <[theta, N]> = <theta psi|N psi> - <N psi|theta psi>
	r.commutator = t_psi.dot(n_psi) - n_psi.dot(t_psi);
	r.deviation = std::abs(r.commutator + std::complex<double>(0.0, 1.0));
	const boost::math::poisson_distribution<double> poisson(Omega);
	r.truncation_error = boost::math::cdf(boost::math::complement(poisson, static_cast<double>(ops.s)));
	r.truncation_warning = ops.s < 4.0 * Omega;
	return r;
}

} // namespace bcsbec
