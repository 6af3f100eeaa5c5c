#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "bcsbec/pegg_barnett.hpp"

using namespace bcsbec;
using doctest::Approx;
using cd = std::complex<double>;

TEST_CASE("s = 1 phase factor by hand") {
	const auto ops = pegg_barnett_operators(1);
	Eigen::Matrix2cd expected;
	expected << 0, 1, 1, 0;
	CHECK((ops.phase_factor - expected).cwiseAbs().maxCoeff() < 1e-15);
	CHECK(ops.dimension() == 2);
	CHECK(ops.number(0) == 0.0);
	CHECK(ops.number(1) == 1.0);
}

TEST_CASE("phase operator from its spectral sum") {
	for (double theta0 : {0.0, -std::numbers::pi, 0.4}) {
		const int s = 9;
		const auto ops = pegg_barnett_operators(s, theta0);
		Eigen::MatrixXcd theta = Eigen::MatrixXcd::Zero(s + 1, s + 1);
		for (int m = 0; m <= s; ++m) {
			const double tm = theta0 + 2.0 * std::numbers::pi * m / (s + 1);
			Eigen::VectorXcd v(s + 1);
			for (int n = 0; n <= s; ++n) v(n) = std::polar(1.0 / std::sqrt(s + 1.0), n * tm);
			theta += tm * v * v.adjoint();
		}
		CHECK((ops.phase - theta).cwiseAbs().maxCoeff() < 1e-12);
	}
}

TEST_CASE("unitary and hermitian at every s") {
	for (int s : {1, 2, 7, 64, 256}) {
		const auto ops = pegg_barnett_operators(s);
		CHECK(ops.unitarity_error() <= 1e-12);
		CHECK(ops.hermiticity_error() <= 1e-12);
	}
	CHECK_THROWS(pegg_barnett_operators(0));
}

TEST_CASE("truncated coherent state") {
	const auto v = truncated_coherent_state(40, 4.0, 0.3);
	CHECK(v.squaredNorm() == Approx(1.0).epsilon(1e-14));
	// Poisson weights with mean 4
	CHECK(std::norm(v(2)) == Approx(std::exp(-4.0) * 8.0).epsilon(1e-10));
	CHECK(std::arg(v(1)) == Approx(0.3).epsilon(1e-14));
	CHECK_THROWS(truncated_coherent_state(10, 0.0, 0.0));
}

TEST_CASE("commutator approaches -i") {
	double prev = 1.0;
	for (int s : {64, 128, 256}) {
		const auto r = pegg_barnett_commutator(pegg_barnett_operators(s), 4.0);
		CHECK(r.deviation <= 0.05);
		CHECK(r.deviation < prev);
		CHECK_FALSE(r.truncation_warning);
		CHECK(r.truncation_error < 1e-40);
		CHECK(r.state_phase == Approx(std::numbers::pi));
		prev = r.deviation;
	}
}

TEST_CASE("small s raises the truncation warning") {
	const auto r = pegg_barnett_commutator(pegg_barnett_operators(2), 4.0);
	CHECK(r.truncation_warning);
	CHECK(r.truncation_error > 0.1);
	CHECK_FALSE(pegg_barnett_commutator(pegg_barnett_operators(16), 4.0).truncation_warning);
}

TEST_CASE("state at the branch cut is far from canonical") {
	const auto ops = pegg_barnett_operators(64);
	const auto centre = pegg_barnett_commutator(ops, 4.0);
	const auto cut = pegg_barnett_commutator(ops, 4.0, 0.0);
	CHECK(cut.deviation > 10.0 * centre.deviation);
}
