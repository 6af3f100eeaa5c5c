#pragma once

#include <array>
#include <optional>
#include <string>

namespace bcsbec {

/// Tight-binding constants of the cubic lattice (hopping t, lattice constant a).
struct LatticeConstants {
	double t = 1.0;
	double a = 1.0;
};

/// Model parameters shared by every module.
///
/// All quantities are expressed in one consistent unit system: either the
/// dimensionless one (hbar = 1, lengths in 1/k0, energies in eps0) or the
/// physical one (eV, angstrom, seconds). The reference energy eps0 is always
/// derived from (hbar, mass, k0) and never stored.
struct PhysicalParams {
	double hbar = 1.0;
	double mass = 0.5;
	double k0 = 1.0;
	double U = 0.0;        ///< attraction magnitude, energy x volume
	double density = 2e-2; ///< both spins, inverse volume
	std::optional<LatticeConstants> lattice;

	double eps0() const { return hbar * hbar * k0 * k0 / (2.0 * mass); }
	double fermi_wavevector() const;
	double fermi_energy() const;

	/// Throws std::invalid_argument when an invariant is broken.
	void validate() const;

	/// Builds parameters whose mass is hbar^2 / (a^2 t).
	static PhysicalParams from_lattice(double hbar, LatticeConstants lat, double k0, double U, double density);
};

/// Dimensionless defaults (hbar = k0 = eps0 = 1) with the n = 2e-2 k0^3 filling.
PhysicalParams default_dimensionless_params();

enum class UnitMode { dimensionless, physical };

std::string to_string(UnitMode mode);
UnitMode unit_mode_from_string(const std::string& name);

/// Physical constants in the eV / angstrom / second system.
namespace constants {
	inline constexpr double hbar_eVs = 6.582119569e-16;
	inline constexpr double electron_mass_eV = 0.51099895000e6;  // m_e c^2
	inline constexpr double c_angstrom_per_s = 2.99792458e18;
	inline constexpr double electron_mass = electron_mass_eV / (c_angstrom_per_s * c_angstrom_per_s);  // eV s^2 / A^2
	inline constexpr double elementary_charge = 1.602176634e-19;  // C
	inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F / m
	inline constexpr double reference_k0 = 1.41;  // 1/angstrom
}

/// Converts between the dimensionless and the physical (eV, angstrom) systems.
///
/// The physical scale is fixed by the cutoff momentum k0 and the carrier mass:
/// one dimensionless energy unit equals eps0 = hbar^2 k0^2 / 2m electronvolts.
class UnitSystem {
public:
	UnitSystem(UnitMode mode, double k0_per_angstrom = constants::reference_k0,
		double mass = constants::electron_mass);

	UnitMode mode() const { return mode_; }
	double energy_scale_eV() const { return energy_scale_; }
	double length_scale_angstrom() const { return 1.0 / k0_; }

	double energy_to_physical(double e) const { return e * energy_scale_; }
	double energy_from_physical(double e_eV) const { return e_eV / energy_scale_; }
	double wavevector_to_physical(double k) const { return k * k0_; }
	double wavevector_from_physical(double k) const { return k / k0_; }
	double density_to_physical(double n) const { return n * k0_ * k0_ * k0_; }
	double density_from_physical(double n) const { return n / (k0_ * k0_ * k0_); }
	double coupling_to_physical(double u) const { return u * energy_scale_ / (k0_ * k0_ * k0_); }
	double coupling_from_physical(double u) const { return u * (k0_ * k0_ * k0_) / energy_scale_; }

	/// Energy expressed in the output units of this system's mode.
	double energy_for_output(double e) const { return mode_ == UnitMode::physical ? energy_to_physical(e) : e; }
	double energy_from_output(double e) const { return mode_ == UnitMode::physical ? energy_from_physical(e) : e; }

	/// Parameters expressed in this system for dimensionless input parameters.
	PhysicalParams to_physical(const PhysicalParams& dimensionless) const;
	PhysicalParams to_dimensionless(const PhysicalParams& physical) const;

private:
	UnitMode mode_;
	double k0_;
	double mass_;
	double energy_scale_;
};

enum class DispersionForm { continuum, lattice };

/// hbar^2 k^2 / 2m. Throws for negative k.
double continuum_dispersion(double k, const PhysicalParams& params);

/// t * sum_i [1 - cos(k_i a)] on the simple cubic lattice.
double lattice_dispersion(const std::array<double, 3>& k, const LatticeConstants& lattice);

/// Dispatches on the form; the lattice form evaluates k along the x axis.
double dispersion(double k, const PhysicalParams& params, DispersionForm form);

/// Separable form factor Gamma(k) = 1 / sqrt(1 + k^2/k0^2).
double nsr_form_factor(double k, double k0);

/// Two-body threshold U_c = 4 pi hbar^2 / (m k0).
double critical_coupling(const PhysicalParams& params);

} // namespace bcsbec
