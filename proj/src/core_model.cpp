#include "bcsbec/core_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bcsbec {

double PhysicalParams::fermi_wavevector() const {
	return std::cbrt(3.0 * std::numbers::pi * std::numbers::pi * density);
}

double PhysicalParams::fermi_energy() const {
	const double kf = fermi_wavevector();
	return hbar * hbar * kf * kf / (2.0 * mass);
}

void PhysicalParams::validate() const {
	if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
	if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
	if (!(k0 > 0.0)) throw std::invalid_argument("cutoff momentum k0 must be positive");
	if (!(density > 0.0)) throw std::invalid_argument("density must be positive");
	if (!(U >= 0.0)) throw std::invalid_argument("attraction U must be non-negative");
	if (lattice) {
		if (!(lattice->t > 0.0) || !(lattice->a > 0.0))
			throw std::invalid_argument("lattice constants t and a must be positive");
		const double m_lattice = hbar * hbar / (lattice->a * lattice->a * lattice->t);
		if (std::abs(m_lattice - mass) > 1e-12 * mass)
			throw std::invalid_argument("mass inconsistent with hbar^2/(a^2 t)");
	}
}

PhysicalParams PhysicalParams::from_lattice(double hbar, LatticeConstants lat, double k0, double U, double density) {
	PhysicalParams p;
	p.hbar = hbar;
	p.lattice = lat;
	p.mass = hbar * hbar / (lat.a * lat.a * lat.t);
	p.k0 = k0;
	p.U = U;
	p.density = density;
	p.validate();
	return p;
}

PhysicalParams default_dimensionless_params() {
	return PhysicalParams{};
}

std::string to_string(UnitMode mode) {
	return mode == UnitMode::physical ? "physical" : "dimensionless";
}

UnitMode unit_mode_from_string(const std::string& name) {
	if (name == "dimensionless") return UnitMode::dimensionless;
	if (name == "physical") return UnitMode::physical;
	throw std::invalid_argument("unknown unit mode: " + name);
}

UnitSystem::UnitSystem(UnitMode mode, double k0_per_angstrom, double mass)
	: mode_(mode), k0_(k0_per_angstrom), mass_(mass)
{
	if (!(k0_ > 0.0) || !(mass_ > 0.0)) throw std::invalid_argument("unit system needs positive k0 and mass");
	energy_scale_ = constants::hbar_eVs * constants::hbar_eVs * k0_ * k0_ / (2.0 * mass_);
}

PhysicalParams UnitSystem::to_physical(const PhysicalParams& d) const {
	if (d.hbar != 1.0) throw std::invalid_argument("dimensionless parameters must have hbar = 1");
	PhysicalParams p;
	p.hbar = constants::hbar_eVs;
	p.mass = 2.0 * mass_ * d.mass;
	p.k0 = wavevector_to_physical(d.k0);
	p.U = coupling_to_physical(d.U);
	p.density = density_to_physical(d.density);
	if (d.lattice) p.lattice = LatticeConstants{energy_to_physical(d.lattice->t), d.lattice->a / k0_};
	return p;
}

PhysicalParams UnitSystem::to_dimensionless(const PhysicalParams& p) const {
	if (std::abs(p.hbar - constants::hbar_eVs) > 1e-12 * constants::hbar_eVs)
		throw std::invalid_argument("physical parameters must use hbar in eV s");
	PhysicalParams d;
	d.hbar = 1.0;
	d.mass = p.mass / (2.0 * mass_);
	d.k0 = wavevector_from_physical(p.k0);
	d.U = coupling_from_physical(p.U);
	d.density = density_from_physical(p.density);
	if (p.lattice) d.lattice = LatticeConstants{energy_from_physical(p.lattice->t), p.lattice->a * k0_};
	return d;
}

double continuum_dispersion(double k, const PhysicalParams& params) {
	if (k < 0.0) throw std::invalid_argument("wavevector magnitude must be non-negative");
	return params.hbar * params.hbar * k * k / (2.0 * params.mass);
}

double lattice_dispersion(const std::array<double, 3>& k, const LatticeConstants& lattice) {
	double sum = 0.0;
	for (double ki : k) {
		// 1 - cos(x) = 2 sin^2(x/2) avoids cancellation at small k
		const double s = std::sin(0.5 * ki * lattice.a);
		sum += 2.0 * s * s;
	}
	return lattice.t * sum;
}

double dispersion(double k, const PhysicalParams& params, DispersionForm form) {
	if (k < 0.0) throw std::invalid_argument("wavevector magnitude must be non-negative");
	if (form == DispersionForm::continuum) return continuum_dispersion(k, params);
	if (!params.lattice) throw std::invalid_argument("lattice dispersion requested without lattice constants");
	return lattice_dispersion({k, 0.0, 0.0}, *params.lattice);
}

double nsr_form_factor(double k, double k0) {
	if (k < 0.0 || !(k0 > 0.0)) throw std::invalid_argument("form factor needs k >= 0 and k0 > 0");
	const double x = k / k0;
	return 1.0 / std::sqrt(1.0 + x * x);
}

double critical_coupling(const PhysicalParams& params) {
	if (!(params.mass > 0.0) || !(params.k0 > 0.0)) throw std::invalid_argument("critical coupling needs m, k0 > 0");
	return 4.0 * std::numbers::pi * params.hbar * params.hbar / (params.mass * params.k0);
}

} // namespace bcsbec
