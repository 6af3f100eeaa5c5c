#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bcsbec/core_model.hpp"
#include "bcsbec/quadrature.hpp"

namespace bcsbec {

enum class SolveStatus {
	converged,
	below_resolution,  ///< gap smaller than the resolution floor; mu from the normal state
	no_convergence,
	invalid_input,
};

std::string to_string(SolveStatus status);

/// Self-consistent (mu, Delta0) for one (U, n). Delta0 is the energy gap at k = 0;
/// the momentum-resolved gap is Delta0 * Gamma(k).
struct GapSolution {
	double U = 0.0;
	double density = 0.0;
	double mu = 0.0;
	double Delta0 = 0.0;
	double residual_gap = 0.0;
	double residual_number = 0.0;
	int iterations = 0;
	bool converged = false;
	SolveStatus status = SolveStatus::no_convergence;
	double quadrature_error = 0.0;  ///< change of the residuals under panel doubling
	std::string message;

	// normalization context
	double eps0 = 1.0;
	double eps_F = 1.0;
	double U_c = 1.0;

	double U_over_Uc() const { return U / U_c; }
	bool usable() const { return status == SolveStatus::converged || status == SolveStatus::below_resolution; }
};

struct SolverOptions {
	int max_iterations = 500;   ///< outer (chemical potential) iterations
	int max_inner_iterations = 200;
	double tol_gap = 1e-10;
	double tol_number = 1e-8;
	double gap_floor = 1e-12;   ///< in units of eps0
};

/// Gap and number integrals evaluated on one shared radial grid.
struct PairingIntegrals {
	double gap = 0.0;     ///< \int d^3k/(2pi)^3 Gamma^2 / E_k
	double number = 0.0;  ///< \int d^3k/(2pi)^3 (1 - xi_k/E_k)
};

PairingIntegrals pairing_integrals(double Delta0, double mu, const PhysicalParams& params, const QuadratureSpec& quad);

/// 1 - (U/2) \int Gamma^2 / sqrt((eps_k - mu)^2 + Delta0^2 Gamma^2), with U = params.U.
double gap_residual(double Delta0, double mu, const PhysicalParams& params, const QuadratureSpec& quad);

/// [n - \int (1 - (eps_k - mu)/E_k)] / n, with n = params.density.
double number_residual(double Delta0, double mu, const PhysicalParams& params, const QuadratureSpec& quad);

/// Both residuals together with the quadrature error estimate and the tail share.
struct ResidualReport {
	double gap = 0.0;
	double number = 0.0;
	double gap_error = 0.0;
	double number_error = 0.0;
	double number_tail = 0.0;
	bool quadrature_converged = false;
};
ResidualReport residual_report(double Delta0, double mu, const PhysicalParams& params, const QuadratureSpec& quad);

/// \int d^3k/(2pi)^3 Gamma^2 / (2 eps_k + E)
double bound_state_integral(double E, const PhysicalParams& params, const QuadratureSpec& quad);

/// Binding energy E_b >= 0 of the two-body problem at coupling params.U;
/// absent below the threshold, zero at it.
std::optional<double> bound_state_energy(const PhysicalParams& params, const QuadratureSpec& quad);

/// Gap that solves the gap equation at fixed mu; 0 when it lies below the floor.
double gap_at_fixed_mu(double mu, const PhysicalParams& params, const QuadratureSpec& quad,
	const SolverOptions& opts = {}, int* evaluations = nullptr);

/// Solves gap and number equations at (params.U, params.density).
/// A warm-start chemical potential only narrows the initial bracket.
GapSolution solve_self_consistent(const PhysicalParams& params, const QuadratureSpec& quad,
	const SolverOptions& opts = {}, std::optional<double> warm_mu = std::nullopt);

/// One solution per coupling; each point warm-starts from its converged predecessor.
/// Failures are recorded inline.
std::vector<GapSolution> sweep_coupling(std::span<const double> U_grid, const PhysicalParams& params,
	const QuadratureSpec& quad, const SolverOptions& opts = {});

/// Couplings U_c * [lo, hi] on a uniform grid of `points` values.
std::vector<double> coupling_grid(const PhysicalParams& params, double lo_over_Uc, double hi_over_Uc, int points);

/// Bisection in U/U_c for the sign change of mu between two couplings.
/// Returns U/U_c at the crossing to within `tol`.
std::optional<double> locate_mu_zero(double lo_over_Uc, double hi_over_Uc, const PhysicalParams& params,
	const QuadratureSpec& quad, const SolverOptions& opts = {}, double tol = 1e-7);

} // namespace bcsbec
