#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bcsbec/core_model.hpp"
#include "bcsbec/gap_solver.hpp"
#include "bcsbec/josephson_chain.hpp"
#include "bcsbec/quadrature.hpp"

namespace bcsbec {

enum class Pairing { bcs, bec, boundary };
std::string to_string(Pairing p);

struct RegimeLabel {
	Pairing pairing = Pairing::boundary;
	Coherence coherence = Coherence::boundary;
	bool operator==(const RegimeLabel&) const = default;
};

std::string to_string(const RegimeLabel& label);

/// Solver setup shared by every cell of a diagram.
///
/// E_c and G are given in the diagram energy unit: eps0 in dimensionless mode,
/// micro-eV in physical mode. G carries the square root of that unit so that
/// E_J = G^2 gap / 2 is an energy.
struct DiagramSettings {
	UnitSystem units{UnitMode::dimensionless};
	PhysicalParams params = default_dimensionless_params();  ///< U is overwritten per point
	QuadratureSpec quad;
	SolverOptions solver;
	double mu_tolerance = 1e-12;         ///< |mu| / eps_F below this is the BCS-BEC boundary
	double coherence_tolerance = 1e-9;

	/// Diagram energy units per dimensionless energy unit.
	double energy_unit() const;
};

struct DiagramCell {
	double U = 0.0;
	double U_over_Uc = 0.0;
	double density = 0.0;
	double E_c = 0.0;
	double G = 0.0;

	double mu = 0.0;       ///< dimensionless
	double Delta0 = 0.0;   ///< dimensionless
	double mu_over_epsF = 0.0;
	double gap = 0.0;      ///< Delta0 in the diagram energy unit
	double E_J = 0.0;
	double sigma2 = 0.0;

	SolveStatus status = SolveStatus::no_convergence;
	bool labeled = false;
	RegimeLabel label;
	std::string message;
};

Pairing classify_pairing(double mu, double eps_F, double rel_tol);

/// Labels one (E_c, G) point on top of an existing gap solution.
DiagramCell classify_solution(const GapSolution& solution, double E_c, double G, const DiagramSettings& settings);

/// Solves the gap equations at U and labels the point.
DiagramCell classify_point(double U, double E_c, double G, const DiagramSettings& settings);

/// G* = sqrt(4 E_c / gap), so that E_J(G*) = 2 E_c. Absent when the gap is not positive.
std::optional<double> critical_hopping(double gap, double E_c);

/// Solves at U first; absent when the gap is below resolution or the solve fails.
std::optional<double> critical_hopping(double U, double E_c, const DiagramSettings& settings);

/// Bisection on G for E_J(G) = 2 E_c, stopped once |E_J - 2 E_c| / 2 E_c <= rel_tol.
/// The upper end is doubled until it brackets the crossing.
std::optional<double> bisect_boundary(double gap, double E_c, double G_hi, double rel_tol = 1e-9);

struct DiagramSweep {
	std::vector<GapSolution> solutions;  ///< one per U, in grid order
	std::vector<DiagramCell> cells;      ///< row-major: U, then E_c, then G
};

/// Grids must be non-empty and strictly increasing.
DiagramSweep sweep_diagram(std::span<const double> U_grid, std::span<const double> E_c_grid,
	std::span<const double> G_grid, const DiagramSettings& settings);

struct BoundaryPoint {
	double U_over_Uc = 0.0;
	double mu_over_epsF = 0.0;
	double gap = 0.0;
	double E_c = 0.0;
	double G_closed = 0.0;
	double G_bisect = 0.0;
	double E_J_rel_error = 0.0;  ///< |E_J(G_bisect) - 2 E_c| / 2 E_c
	bool found = false;
	std::string message;
};

/// Coherence boundary G*(mu) at fixed E_c along the solved couplings.
std::vector<BoundaryPoint> boundary_curve(std::span<const GapSolution> solutions, double E_c,
	const DiagramSettings& settings, double G_hi, double rel_tol = 1e-9);

struct MuAxisPoint {
	double mu_over_epsF = 0.0;
	double U_over_Uc = 0.0;
	double gap = 0.0;  ///< diagram energy unit
};

/// Re-expresses a coupling sweep on the given mu/eps_F values by linear interpolation
/// in mu, which is monotone along the sweep. Targets outside the swept range are dropped.
std::vector<MuAxisPoint> mu_axis(std::span<const GapSolution> solutions, std::span<const double> mu_over_epsF,
	const DiagramSettings& settings);

} // namespace bcsbec
