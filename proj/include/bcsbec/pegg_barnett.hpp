#pragma once

#include <complex>
#include <optional>

#include <Eigen/Dense>

namespace bcsbec {

/// Pegg-Barnett phase operators on the (s+1)-dimensional number space.
///
/// Phase states |theta_m> = (s+1)^{-1/2} sum_n e^{i n theta_m} |n>, with
/// theta_m = theta0 + 2 pi m/(s+1) on the branch [theta0, theta0 + 2 pi).
struct PeggBarnettOperators {
	int s = 1;
	double theta0 = 0.0;
	Eigen::MatrixXcd phase_states;  ///< column m is |theta_m>
	Eigen::MatrixXcd phase_factor;  ///< e^{i theta}
	Eigen::MatrixXcd phase;         ///< theta (Hermitian)
	Eigen::VectorXd number;         ///< diagonal of N

	int dimension() const { return s + 1; }
	double unitarity_error() const;    ///< || e^{i theta} e^{i theta}^+ - 1 ||_2
	double hermiticity_error() const;  ///< || theta - theta^+ ||_2
};

PeggBarnettOperators pegg_barnett_operators(int s, double theta0 = 0.0);

struct CommutatorReport {
	std::complex<double> commutator;  ///< <alpha| [theta, N] |alpha>
	double deviation = 0.0;           ///< |<[theta, N]> + i|
	double truncation_error = 0.0;    ///< Poisson weight beyond level s, before renormalization
	bool truncation_warning = false;  ///< s < 4 Omega
	double state_phase = 0.0;
};

/// Coherent state of mean occupation Omega truncated to s+1 levels and renormalized.
Eigen::VectorXcd truncated_coherent_state(int s, double Omega, double phase);

/// Commutator expectation on the truncated coherent state. The state phase
/// defaults to theta0 + pi, the centre of the branch.
CommutatorReport pegg_barnett_commutator(const PeggBarnettOperators& ops, double Omega,
	std::optional<double> state_phase = std::nullopt);

} // namespace bcsbec
