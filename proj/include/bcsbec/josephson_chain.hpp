#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bcsbec {

/// Parallel-plate junction: E_c = e^2 / 2C with C = epsilon S / d (SI inputs), in eV.
double charging_energy(double epsilon, double area, double width);

/// Pair-tunnelling strength g = G^2 / (U [Delta_j + Delta_{j+1}]).
double tunneling_strength(double G, double U, double Delta_j, double Delta_j1);

/// E_J = g U^2 Delta_j Delta_{j+1}; for equal segments this is G^2 U Delta / 2.
double josephson_energy(double G, double U, double Delta_j, double Delta_j1);

/// Equal-segment E_J = G^2 * gap / 2 with gap = U Delta the energy gap.
double josephson_energy_equal(double G, double gap);

/// sigma_phi^2 = sqrt(2 E_c / E_J); infinite when E_J = 0 (decoupled segments).
double sigma_phi2(double E_c, double E_J);

/// Competing variance estimates for one relative phase coordinate.
struct VarianceSources {
	double stated;        ///< sqrt(2 E_c / E_J), used for classification
	double oscillator;    ///< sqrt(8 E_c / E_J), harmonic ground state of -16 E_c d^2 + (E_J/2) phi^2
	double wavefunction;  ///< sqrt(E_c / (2 E_J)), from the Gaussian exp[-sqrt(E_J/8E_c) phi^2]
	bool discrepancy;     ///< true when the stated value differs from the oscillator one
};
VarianceSources variance_sources(double E_c, double E_J);

struct OdlroOptions {
	bool unit_self_correlation = false;  ///< drop the 2 pi prefactor so rho_jj = Delta_j^2
};

/// rho_jl = 2 pi Dbar_j Dbar_l exp(-|j - l| sigma^2).
double odlro(std::size_t j, std::size_t l, std::span<const double> Delta_bars, double sigma2, OdlroOptions opts = {});

/// Dbar_j = U Delta_j / N_j.
double delta_bar(double U, double Delta_j, double N_j);

enum class Coherence { global, local, boundary };
std::string to_string(Coherence c);

/// global iff E_J > 2 E_c, local iff E_J < 2 E_c, boundary within relative tolerance.
Coherence coherence_classify(double E_c, double E_J, double rel_tol = 1e-9);

struct OscillatorGrid {
	double span = 0.0;   ///< half-width of [-span, span]; 0 picks 14 oscillator widths
	int points = 16001;
};

struct OscillatorResult {
	double ground_energy = 0.0;
	double variance = 0.0;         ///< <phi^2>
	double boundary_density = 0.0; ///< |psi|^2 at the grid edge relative to its maximum
	double spacing = 0.0;
	bool converged = false;        ///< boundary density below 1e-12
	std::string message;
};

/// Ground state of H = -16 E_c d^2/dphi^2 + (E_J/2) phi^2 on a uniform grid with a
/// second-order finite-difference kinetic term (Dirichlet ends).
OscillatorResult oscillator_oracle(double E_c, double E_J, OscillatorGrid grid = {});

/// Closed forms for the literal oscillator: omega = sqrt(32 E_c E_J), E_0 = omega/2,
/// <phi^2> = sqrt(8 E_c/E_J).
double oscillator_ground_energy_exact(double E_c, double E_J);
double oscillator_variance_exact(double E_c, double E_J);

/// N-segment chain with optional microscopic constituents.
struct ChainSpec {
	int segments = 2;
	double E_c = 1.0;
	double E_J = 0.0;
	struct Constituents {
		double G = 0.0;
		double U = 0.0;
		std::vector<double> Delta;  ///< per segment, dimensionless
	};
	std::optional<Constituents> constituents;

	/// Junction energies E_J(j, j+1) from the constituents.
	std::vector<double> junction_energies() const;
	void validate() const;
};

struct ChainGroundState {
	double sigma2 = 0.0;
	double width = 0.0;  ///< Gaussian exponent sqrt(E_J / 8 E_c)
	double mean_relative_phase = 0.0;
};

ChainGroundState chain_ground_state(const ChainSpec& chain);

/// ODLRO of every segment pair; row-major N x N.
std::vector<double> odlro_matrix(std::span<const double> Delta_bars, double sigma2, OdlroOptions opts = {});

/// Least-squares slope of log rho_{0,r} against r.
double odlro_log_slope(std::span<const double> Delta_bars, double sigma2);

} // namespace bcsbec
