#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "bcsbec/coherent_state.hpp"
#include "bcsbec/fock_oracle.hpp"
#include "bcsbec/phase_lock.hpp"
#include "oracles.hpp"

using namespace bcsbec;
using doctest::Approx;
using cd = std::complex<double>;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> random_thetas(int M, std::uint64_t seed) {
	SeededUniform u(seed);
	std::vector<double> t;
	for (int i = 0; i < M; ++i) t.push_back(0.5 * pi * u());
	return t;
}

PairEnsemble random_ensemble(int M, std::uint64_t seed) {
	SeededUniform u(seed);
	std::vector<double> eps;
	for (int i = 0; i < M; ++i) eps.push_back(4.0 * u() - 2.0);
	return PairEnsemble::from_energies(eps, 0.1 + u(), 2.0 * pi * u());
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("angle conventions") {
	CHECK(pair_angle(0.0, 1.0) == Approx(pi / 4));
	CHECK(pair_angle(1.0, 0.0) == 0.0);
	CHECK(pair_angle(-1.0, 0.0) == Approx(pi / 2));
	CHECK(pair_angle(0.0, 1.0, AngleConvention::literal) == Approx(pi / 2));
	CHECK(pair_angle(1.0, 1.0, AngleConvention::literal) == Approx(pi / 4));
	for (double eps : {-3.0, -0.2, 0.0, 0.4, 5.0}) {
		const double g = 0.7;
		const double t = pair_angle(eps, g);
		CHECK(std::cos(2 * t) == Approx(eps / std::hypot(eps, g)).epsilon(1e-14));
		CHECK(2 * std::sin(t) * std::sin(t) == Approx(1 - eps / std::hypot(eps, g)).epsilon(1e-14));
	}
}

TEST_CASE("pair ensemble invariants") {
	const auto ens = random_ensemble(12, 3);
	double om = 0.0;
	for (const auto& m : ens.modes()) {
		CHECK(m.theta >= 0.0);
		CHECK(m.theta <= pi / 2);
		om += m.theta * m.theta;
	}
	CHECK(ens.omega() == Approx(om).epsilon(1e-14));
	CHECK_THROWS_AS(PairEnsemble({{0.0, 1.0, 2.0}}, 0.0, {1.0, 0.0, 1.0}), std::invalid_argument);

	const PhysicalParams p = default_dimensionless_params();
	const std::vector<double> ks{0.1, 0.5, 0.84, 1.5};
	const auto mom = PairEnsemble::from_momenta(ks, p, 0.7, 0.3);
	for (std::size_t i = 0; i < ks.size(); ++i) {
		CHECK(mom.mode_gap(i) == Approx(0.3 * nsr_form_factor(ks[i], 1.0)).epsilon(1e-15));
		CHECK(mom.modes()[i].eps == Approx(ks[i] * ks[i] - 0.7).epsilon(1e-15));
	}
}

TEST_CASE("boson overlap") {
	const BosonEnsemble one({1.0}, 0.0);
	CHECK(std::abs(bec_overlap(one, 0.0) - 1.0) < 1e-15);
	CHECK(std::abs(bec_overlap(one, pi)) == Approx(std::exp(-2.0)).epsilon(1e-14));
	CHECK(std::abs(bec_overlap(one, pi)) == Approx(0.135335283).epsilon(1e-9));

	const BosonEnsemble many(std::vector<double>(200, 0.3), 0.0);
	const double dphi = pi / 2;
	std::vector<cd> factors(200, std::exp(-0.09 * (1.0 - std::polar(1.0, dphi))));
	const double log_oracle = oracle::log_abs_product(factors);
	CHECK(std::log(std::abs(bec_overlap(many, dphi))) == Approx(log_oracle).epsilon(1e-12));
	CHECK(log_oracle == Approx(-200 * 0.09).epsilon(1e-12));
	CHECK(many.omega() == Approx(18.0).epsilon(1e-14));
	CHECK_THROWS(BosonEnsemble({-0.1}, 0.0));
}

TEST_CASE("bcs overlap") {
	const auto th = random_thetas(7, 11);
	CHECK(std::abs(bcs_overlap(th, 0.0) - 1.0) < 1e-14);
	CHECK(std::abs(bcs_overlap(std::vector<double>{pi / 4}, pi)) < 1e-15);
	CHECK_THROWS(bcs_overlap(std::vector<double>{2.0}, 0.3));

	SUBCASE("magnitude bounded by one") {
		for (int s = 0; s < 20; ++s) {
			const auto t = random_thetas(1 + s % 9, 100 + s);
			for (double d : {0.1, 1.0, 2.5, pi}) CHECK(std::abs(bcs_overlap(t, d)) < 1.0);
			CHECK(std::abs(bcs_overlap(t, 2 * pi)) == Approx(1.0).epsilon(1e-14));
		}
		CHECK(std::abs(bcs_overlap(std::vector<double>{0.0, pi / 2, 0.0}, 1.3)) == Approx(1.0).epsilon(1e-15));
	}
	SUBCASE("exponential decay at constant angle") {
		const double t = pi / 4, d = pi / 2;
		const double rate = -std::log(std::abs(cd(std::cos(t) * std::cos(t)) + std::polar(1.0, d) * (std::sin(t) * std::sin(t))));
		for (int M : {1, 10, 50, 200}) {
			const std::vector<double> th(M, t);
			CHECK(-std::log(std::abs(bcs_overlap(th, d))) / M == Approx(rate).epsilon(1e-12));
		}
	}
	SUBCASE("matches Fock-space inner products") {
		const auto t = random_thetas(10, 5);
		const FockOracle o(t);
		const double phi = 0.4, phi_p = phi - 1.0;
		const cd exact = o.state(phi_p).dot(o.state(phi));
		CHECK(std::abs(bcs_overlap(t, 1.0) - exact) <= 1e-12);
	}
}

TEST_CASE("eta statistics") {
	SUBCASE("single mode at the Fermi surface") {
		const auto ens = PairEnsemble::from_energies(std::vector<double>{0.0}, 0.5);
		CHECK(eta_statistics(ens).mean == Approx(1.0).epsilon(1e-15));
	}
	SUBCASE("dilute limit") {
		const auto ens = PairEnsemble::from_energies(std::vector<double>{1e4, 2e4, 5e4}, 1.0);
		const auto s = eta_statistics(ens);
		CHECK(s.mean < 1e-8);
		CHECK(s.variance < 1e-8);
		CHECK(s.mean >= 0.0);
	}
	SUBCASE("single mode occupancy equals 2 sin^2 theta") {
		for (double eps : {-1.0, -0.1, 0.3, 2.0}) {
			const auto ens = PairEnsemble::from_energies(std::vector<double>{eps}, 0.6);
			const double t = ens.modes()[0].theta;
			CHECK(eta_statistics(ens).mean == Approx(2 * std::sin(t) * std::sin(t)).epsilon(1e-14));
		}
	}
	CHECK_THROWS(eta_statistics(PairEnsemble({}, 0.0, {1.0, 0.0, 1.0})));
	CHECK_THROWS(eta_statistics(PairEnsemble::from_energies(std::vector<double>{1.0}, 0.0)));
}

TEST_CASE("fock oracle, one mode") {
	const double t = 0.37, phi = 0.9;
	const FockOracle o(std::vector<double>{t});
	const auto psi = o.state(phi);
	CHECK(std::abs(psi[0] - std::cos(t)) < 1e-15);
	CHECK(std::abs(psi[1] - std::polar(std::sin(t), phi)) < 1e-15);
	const Eigen::MatrixXd comm = Eigen::MatrixXd(o.commutator_b_bdag());
	Eigen::MatrixXd expected(2, 2);
	expected << 1, 0, 0, -1;
	CHECK(max_abs(comm - expected) < 1e-15);
	const Eigen::MatrixXd one_minus_2n = Eigen::MatrixXd::Identity(2, 2) - Eigen::MatrixXd(o.mode_number(0));
	CHECK(max_abs(comm - one_minus_2n) < 1e-15);

	const auto ens = PairEnsemble::from_energies(std::vector<double>{0.4}, 0.7);
	const FockOracle o2(ens);
	CHECK(o2.eta_values(0.0).mean == Approx(1.0 - 0.4 / std::hypot(0.4, 0.7)).epsilon(1e-14));
}

TEST_CASE("fock oracle operators") {
	const auto th = random_thetas(6, 21);
	const FockOracle o(th);
	CHECK(o.dimension() == 64);
	for (int k = 0; k < o.modes(); ++k) {
		const Eigen::MatrixXd sp = Eigen::MatrixXd(o.pair_annihilate(k));
		CHECK(max_abs(sp * sp) == 0.0);
		const Eigen::MatrixXd sm = Eigen::MatrixXd(o.pair_create(k));
		CHECK(max_abs(sm.transpose() - sp) == 0.0);
	}
	Eigen::MatrixXd b = Eigen::MatrixXd::Zero(64, 64);
	for (int k = 0; k < o.modes(); ++k) b += th[k] / std::sqrt(o.omega()) * Eigen::MatrixXd(o.pair_annihilate(k));
	CHECK(max_abs(Eigen::MatrixXd(o.b()) - b) < 1e-15);
	CHECK(max_abs(Eigen::MatrixXd(o.b_dagger()) - b.transpose()) < 1e-15);
	for (double phi : {0.0, 1.0, 4.0}) CHECK(o.state(phi).squaredNorm() == Approx(1.0).epsilon(1e-14));
	CHECK_THROWS(FockOracle(std::vector<double>(13, 0.3)));
}

TEST_CASE("eta statistics agree with the Fock oracle") {
	for (int M = 1; M <= 12; ++M) {
		const auto ens = random_ensemble(M, 40 + M);
		const auto a = eta_statistics(ens);
		const auto f = FockOracle(ens).eta_values(ens.phi());
		CHECK(std::abs(a.mean - f.mean) <= 1e-12);
		CHECK(std::abs(a.variance - f.variance) <= 1e-12);
		CHECK(std::abs(f.commutator - (1.0 - a.mean)) <= 1e-12);
		CHECK(f.norm == Approx(1.0).epsilon(1e-14));
	}
}

TEST_CASE("number-phase derivative") {
	const FockOracle o(random_thetas(4, 8));
	auto grid = [](double h) {
		std::vector<double> g;
		for (int i = -3; i <= 3; ++i) g.push_back(1.1 + i * h);
		return g;
	};
	const auto c1 = number_phase_derivative_check(o, 4, grid(1e-3));
	const auto c2 = number_phase_derivative_check(o, 4, grid(5e-4));
	CHECK(c1.max_deviation <= 1e-5);
	CHECK(c1.max_overlap > 0.01);
	CHECK(c1.max_deviation / c2.max_deviation == Approx(4.0).epsilon(0.05));
	CHECK(c1.configurations == 70);

	for (int n : {1, 3, 5}) {
		const auto odd = number_phase_derivative_check(o, n, grid(1e-3));
		CHECK(odd.max_overlap == 0.0);
		CHECK(odd.max_deviation == 0.0);
	}
	CHECK_THROWS(number_phase_derivative_check(o, 2, std::vector<double>{0.0, 0.1, 0.2, 0.3}));
	CHECK_THROWS(number_phase_derivative_check(o, 2, std::vector<double>{0.0, 0.1, 0.25, 0.3, 0.4}));
}

TEST_CASE("electron overlap needs paired occupation") {
	const FockOracle o(std::vector<double>{0.3, 0.8});
	// pair 0 full, pair 1 empty
	CHECK(std::abs(bcs_electron_overlap(o, 0b0011, 0.2) - std::conj(o.amplitude(0b01, 0.2))) < 1e-16);
	CHECK(bcs_electron_overlap(o, 0b0001, 0.2) == cd(0.0));
	CHECK(bcs_electron_overlap(o, 0b0110, 0.2) == cd(0.0));
}
