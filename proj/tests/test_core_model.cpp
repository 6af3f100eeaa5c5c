#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bcsbec/core_model.hpp"

using namespace bcsbec;
using doctest::Approx;

TEST_CASE("continuum dispersion") {
	const PhysicalParams p = default_dimensionless_params();
	CHECK(continuum_dispersion(0.0, p) == 0.0);
	CHECK(continuum_dispersion(p.fermi_wavevector(), p) == Approx(p.fermi_energy()).epsilon(1e-15));
	CHECK(continuum_dispersion(p.k0, p) == Approx(p.eps0()).epsilon(1e-15));
	CHECK_THROWS_AS(continuum_dispersion(-1e-3, p), std::invalid_argument);

	double prev = 0.0, prev_slope = 0.0;
	for (int i = 1; i <= 200; ++i) {
		const double k = 0.05 * i;
		const double e = continuum_dispersion(k, p);
		const double slope = (e - prev) / 0.05;
		CHECK(e > prev);
		if (i > 1) CHECK(slope > prev_slope);
		prev = e;
		prev_slope = slope;
	}
}

TEST_CASE("fermi quantities at the default filling") {
	const PhysicalParams p = default_dimensionless_params();
	const double kF = std::cbrt(3.0 * std::numbers::pi * std::numbers::pi * 2e-2);
	CHECK(p.fermi_wavevector() == Approx(kF).epsilon(1e-15));
	CHECK(p.fermi_energy() == Approx(kF * kF).epsilon(1e-15));
	CHECK(p.eps0() == 1.0);
}

TEST_CASE("lattice dispersion") {
	const LatticeConstants lat{0.7, 1.3};
	CHECK(lattice_dispersion({0.0, 0.0, 0.0}, lat) == 0.0);
	CHECK(lattice_dispersion({std::numbers::pi / lat.a, 0.0, 0.0}, lat) == Approx(2.0 * lat.t).epsilon(1e-15));
	CHECK(lattice_dispersion({std::numbers::pi / lat.a, std::numbers::pi / lat.a, std::numbers::pi / lat.a}, lat) ==
		Approx(6.0 * lat.t).epsilon(1e-15));

	SUBCASE("small-k limit matches the continuum with m = hbar^2/(a^2 t)") {
		const PhysicalParams p = PhysicalParams::from_lattice(1.0, lat, 1.0, 0.0, 2e-2);
		CHECK(p.mass == Approx(1.0 / (lat.a * lat.a * lat.t)).epsilon(1e-15));
		for (double ka : {1e-3, 5e-4, 1e-4, 1e-5}) {
			const double k = ka / lat.a;
			const double cont = continuum_dispersion(k, p);
			const double latt = dispersion(k, p, DispersionForm::lattice);
			CHECK(std::abs(latt - cont) / cont <= ka * ka / 10.0);
		}
	}
}

TEST_CASE("lattice and continuum mass must agree") {
	PhysicalParams p = PhysicalParams::from_lattice(1.0, {1.0, 1.0}, 1.0, 0.0, 2e-2);
	CHECK_NOTHROW(p.validate());
	p.mass *= 1.01;
	CHECK_THROWS_AS(p.validate(), std::invalid_argument);
	CHECK_THROWS_AS(dispersion(0.1, default_dimensionless_params(), DispersionForm::lattice), std::invalid_argument);
}

TEST_CASE("parameter validation") {
	PhysicalParams p = default_dimensionless_params();
	CHECK_NOTHROW(p.validate());
	p.k0 = 0.0;
	CHECK_THROWS(p.validate());
	p = default_dimensionless_params();
	p.density = -1.0;
	CHECK_THROWS(p.validate());
	p = default_dimensionless_params();
	p.U = -1.0;
	CHECK_THROWS(p.validate());
}

TEST_CASE("form factor") {
	CHECK(nsr_form_factor(0.0, 1.0) == 1.0);
	CHECK(nsr_form_factor(1.0, 1.0) == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
	CHECK(nsr_form_factor(3.0, 1.0) == Approx(1.0 / std::sqrt(10.0)).epsilon(1e-15));
	CHECK(nsr_form_factor(2.82, 1.41) == Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
	double prev = 1.0;
	for (int i = 1; i < 1000; ++i) {
		const double g = nsr_form_factor(0.01 * i, 1.0);
		CHECK(g < prev);
		CHECK(g <= 1.0);
		prev = g;
	}
}

TEST_CASE("critical coupling") {
	PhysicalParams p;
	p.hbar = 1.0;
	p.mass = 1.0;
	p.k0 = 1.0;
	CHECK(critical_coupling(p) == Approx(4.0 * std::numbers::pi).epsilon(1e-15));
	CHECK(critical_coupling(default_dimensionless_params()) == Approx(8.0 * std::numbers::pi).epsilon(1e-15));

	SUBCASE("homogeneous of degree -1 in k0") {
		for (double lambda : {0.5, 2.0, 3.7}) {
			PhysicalParams q = p;
			q.k0 *= lambda;
			CHECK(critical_coupling(q) == Approx(critical_coupling(p) / lambda).epsilon(1e-15));
		}
	}
}

TEST_CASE("unit system") {
	const UnitSystem phys(UnitMode::physical);
	const double me = constants::electron_mass;
	const double expected = constants::hbar_eVs * constants::hbar_eVs * 1.41 * 1.41 / (2.0 * me);
	CHECK(phys.energy_scale_eV() == Approx(expected).epsilon(1e-14));
	CHECK(phys.energy_scale_eV() == Approx(7.575).epsilon(1e-3));

	SUBCASE("round trip is the identity") {
		PhysicalParams d = default_dimensionless_params();
		d.U = 1.7 * critical_coupling(d);
		const PhysicalParams back = phys.to_dimensionless(phys.to_physical(d));
		CHECK(back.mass == Approx(d.mass).epsilon(1e-14));
		CHECK(back.k0 == Approx(d.k0).epsilon(1e-14));
		CHECK(back.U == Approx(d.U).epsilon(1e-14));
		CHECK(back.density == Approx(d.density).epsilon(1e-14));
		CHECK(back.hbar == 1.0);
		for (double e : {1e-6, 0.3, 12.0}) CHECK(phys.energy_from_physical(phys.energy_to_physical(e)) == Approx(e).epsilon(1e-14));
	}

	SUBCASE("physical parameters keep the dimensionless ratios") {
		PhysicalParams d = default_dimensionless_params();
		d.U = 2.0 * critical_coupling(d);
		const PhysicalParams p = phys.to_physical(d);
		CHECK(p.eps0() == Approx(phys.energy_scale_eV()).epsilon(1e-13));
		CHECK(p.U / critical_coupling(p) == Approx(2.0).epsilon(1e-13));
		CHECK(p.fermi_energy() / p.eps0() == Approx(d.fermi_energy()).epsilon(1e-13));
	}

	SUBCASE("dimensionless mode outputs unchanged values") {
		const UnitSystem dim(UnitMode::dimensionless);
		CHECK(dim.energy_for_output(0.25) == 0.25);
		CHECK(phys.energy_for_output(0.25) == Approx(0.25 * phys.energy_scale_eV()).epsilon(1e-15));
	}

	CHECK(unit_mode_from_string("physical") == UnitMode::physical);
	CHECK(to_string(UnitMode::dimensionless) == "dimensionless");
	CHECK_THROWS_AS(unit_mode_from_string("furlongs"), std::invalid_argument);
}
