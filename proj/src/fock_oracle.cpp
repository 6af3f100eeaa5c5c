#include "bcsbec/fock_oracle.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace bcsbec {

namespace {

using Triplet = Eigen::Triplet<double>;

FockOracle::Sparse from_triplets(std::size_t dim, const std::vector<Triplet>& t) {
	FockOracle::Sparse m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
	m.setFromTriplets(t.begin(), t.end());
	return m;
}

} // namespace

FockOracle::FockOracle(std::span<const double> thetas) : thetas_(thetas.begin(), thetas.end()) {
	if (thetas_.empty()) throw std::invalid_argument("Fock oracle needs at least one mode");
	if (thetas_.size() > static_cast<std::size_t>(max_modes))
		throw std::invalid_argument("Fock oracle limited to 12 pair modes");
	for (double t : thetas_) omega_ += t * t;

	const std::size_t dim = dimension();
	const int M = modes();
	create_.reserve(M);
	annihilate_.reserve(M);
	number_.reserve(M);
	std::vector<Triplet> total;
	for (std::uint32_t x = 0; x < dim; ++x)
		total.emplace_back(x, x, 2.0 * std::popcount(x));
	total_number_ = from_triplets(dim, total);

	std::vector<Triplet> bt;
	for (int k = 0; k < M; ++k) {
		const std::uint32_t bit = 1u << k;
		std::vector<Triplet> c, n;
		for (std::uint32_t x = 0; x < dim; ++x) {
			if (x & bit) n.emplace_back(x, x, 2.0);
			else c.emplace_back(x | bit, x, 1.0);
		}
		create_.push_back(from_triplets(dim, c));
		annihilate_.push_back(create_.back().transpose());
		number_.push_back(from_triplets(dim, n));
	}
	// b = Omega^{-1/2} sum_k theta_k S_+^(k)
	b_ = Sparse(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
	if (omega_ > 0.0) {
		for (int k = 0; k < M; ++k) b_ += (thetas_[k] / std::sqrt(omega_)) * annihilate_[k];
	}
	b_dag_ = b_.transpose();
}

std::complex<double> FockOracle::amplitude(std::uint32_t x, double phi) const {
	std::complex<double> a = 1.0;
	const std::complex<double> e = std::polar(1.0, phi);
	for (int k = 0; k < modes(); ++k) {
		if (x & (1u << k)) a *= e * std::sin(thetas_[k]);
		else a *= std::cos(thetas_[k]);
	}
	return a;
}

Eigen::VectorXcd FockOracle::state(double phi) const {
	Eigen::VectorXcd psi(static_cast<Eigen::Index>(dimension()));
	for (std::uint32_t x = 0; x < dimension(); ++x) psi[x] = amplitude(x, phi);
	return psi;
}

FockOracle::Sparse FockOracle::commutator_b_bdag() const {
	Sparse bbd = b_ * b_dag_;
	Sparse bdb = b_dag_ * b_;
	return bbd - bdb;
}

Eigen::VectorXcd FockOracle::apply(const Sparse& A, const Eigen::VectorXcd& psi) {
	const Eigen::VectorXd re = A * psi.real();
	const Eigen::VectorXd im = A * psi.imag();
	Eigen::VectorXcd out(psi.size());
	out.real() = re;
	out.imag() = im;
	return out;
}

std::complex<double> FockOracle::expectation(const Sparse& A, const Eigen::VectorXcd& psi) {
	return psi.dot(apply(A, psi));
}

FockOracle::EtaValues FockOracle::eta_values(double phi) const {
	const Eigen::VectorXcd psi = state(phi);
	const Sparse comm = commutator_b_bdag();
	Sparse id(comm.rows(), comm.cols());
	id.setIdentity();
	const Sparse eta = id - comm;
	const Eigen::VectorXcd eta_psi = apply(eta, psi);
	EtaValues v;
	v.norm = psi.squaredNorm();
	v.commutator = expectation(comm, psi).real();
	v.mean = psi.dot(eta_psi).real();
	v.variance = eta_psi.squaredNorm() - v.mean * v.mean;  // eta is Hermitian
	return v;
}

std::complex<double> bcs_electron_overlap(const FockOracle& oracle, std::uint64_t config, double phi) {
	// <phi|config> = conj(<config|phi>)
	std::uint32_t pairs = 0;
	for (int k = 0; k < oracle.modes(); ++k) {
		const bool up = (config >> (2 * k)) & 1u;
		const bool down = (config >> (2 * k + 1)) & 1u;
		if (up != down) return 0.0;
		if (up) pairs |= 1u << k;
	}
	return std::conj(oracle.amplitude(pairs, phi));
}

NumberPhaseCheck number_phase_derivative_check(const FockOracle& oracle, int n_target, std::span<const double> phi_grid) {
	if (phi_grid.size() < 5) throw std::invalid_argument("phase grid needs at least 5 points");
	if (n_target < 0) throw std::invalid_argument("particle number must be non-negative");
	const double h = phi_grid[1] - phi_grid[0];
	for (std::size_t i = 1; i + 1 < phi_grid.size(); ++i) {
		if (std::abs((phi_grid[i + 1] - phi_grid[i]) - h) > 1e-9 * std::abs(h))
			throw std::invalid_argument("phase grid must be uniform");
	}
	NumberPhaseCheck out;
	const int orbitals = 2 * oracle.modes();
	const std::uint64_t count = std::uint64_t{1} << orbitals;
	const std::complex<double> two_i(0.0, 2.0);
	for (std::uint64_t c = 0; c < count; ++c) {
		if (std::popcount(c) != n_target) continue;
		++out.configurations;
		for (std::size_t i = 1; i + 1 < phi_grid.size(); ++i) {
			const std::complex<double> ov = bcs_electron_overlap(oracle, c, phi_grid[i]);
			const std::complex<double> lhs = static_cast<double>(n_target) * ov;  // <phi|N|n>
			const std::complex<double> d = (bcs_electron_overlap(oracle, c, phi_grid[i + 1])
				- bcs_electron_overlap(oracle, c, phi_grid[i - 1])) / (2.0 * h);
			out.max_deviation = std::max(out.max_deviation, std::abs(lhs - two_i * d));
			out.max_overlap = std::max(out.max_overlap, std::abs(ov));
		}
	}
	return out;
}

} // namespace bcsbec
