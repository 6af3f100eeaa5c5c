#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "bcsbec/coherent_state.hpp"

namespace bcsbec {

/// Brute-force model of M pair modes on the 2^M pair-occupancy space.
///
/// Basis state x has pair mode k occupied iff bit k of x is set. Pair operators
/// on different modes commute, so no fermionic signs enter. Operators are stored
/// sparse (every one of them has at most one entry per column) but are exact.
class FockOracle {
public:
	using Sparse = Eigen::SparseMatrix<double>;
	static constexpr int max_modes = 12;

	explicit FockOracle(std::span<const double> thetas);
	explicit FockOracle(const PairEnsemble& ens) : FockOracle(ens.thetas()) {}

	int modes() const { return static_cast<int>(thetas_.size()); }
	std::size_t dimension() const { return std::size_t{1} << thetas_.size(); }
	const std::vector<double>& thetas() const { return thetas_; }
	double omega() const { return omega_; }

	/// prod_k (cos theta_k + e^{i phi} sin theta_k S_-^(k)) |vac>
	Eigen::VectorXcd state(double phi) const;

	/// Amplitude <x|phi> of one pair-basis state.
	std::complex<double> amplitude(std::uint32_t x, double phi) const;

	const Sparse& pair_create(int k) const { return create_.at(k); }       ///< S_-^(k) = c+_{k up} c+_{-k down}
	const Sparse& pair_annihilate(int k) const { return annihilate_.at(k); } ///< S_+^(k)
	const Sparse& mode_number(int k) const { return number_.at(k); }        ///< electrons in the pair (0 or 2)
	const Sparse& total_number() const { return total_number_; }
	const Sparse& b() const { return b_; }
	const Sparse& b_dagger() const { return b_dag_; }

	/// [b, b+] as a matrix.
	Sparse commutator_b_bdag() const;

	struct EtaValues {
		double commutator = 0.0;  ///< <[b, b+]>
		double mean = 0.0;        ///< <eta> = 1 - <[b, b+]>
		double variance = 0.0;    ///< <eta^2> - <eta>^2
		double norm = 0.0;        ///< <phi|phi>
	};
	EtaValues eta_values(double phi) const;

	/// <psi| A |psi> for a real operator.
	static std::complex<double> expectation(const Sparse& A, const Eigen::VectorXcd& psi);
	static Eigen::VectorXcd apply(const Sparse& A, const Eigen::VectorXcd& psi);

private:
	std::vector<double> thetas_;
	double omega_ = 0.0;
	std::vector<Sparse> create_, annihilate_, number_;
	Sparse total_number_, b_, b_dag_;
};

/// Electron configuration of 2M spin orbitals: bit 2k is (k, up), bit 2k+1 is (-k, down).
/// Returns <phi|config>, which vanishes unless every pair is either empty or full.
std::complex<double> bcs_electron_overlap(const FockOracle& oracle, std::uint64_t config, double phi);

struct NumberPhaseCheck {
	double max_deviation = 0.0;  ///< max |<phi|N|n> - 2i d/dphi <phi|n>|
	double max_overlap = 0.0;    ///< max |<phi|n>| over the checked configurations
	std::size_t configurations = 0;
};

/// Compares <phi|N|n> with 2i times the central difference of <phi|n> on the
/// interior points of a uniform phi grid, for every electron configuration with
/// n_target particles.
NumberPhaseCheck number_phase_derivative_check(const FockOracle& oracle, int n_target, std::span<const double> phi_grid);

} // namespace bcsbec
