#include "bcsbec/phase_diagram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcsbec {

std::string to_string(Pairing p) {
	switch (p) {
		case Pairing::bcs: return "BCS";
		case Pairing::bec: return "BEC";
		case Pairing::boundary: return "boundary";
	}
	return "unknown";
}

std::string to_string(const RegimeLabel& label) {
	return to_string(label.pairing) + "/" + to_string(label.coherence);
}

double DiagramSettings::energy_unit() const {
	return units.mode() == UnitMode::physical ? units.energy_scale_eV() * 1e6 : 1.0;
}

Pairing classify_pairing(double mu, double eps_F, double rel_tol) {
	if (std::abs(mu) <= rel_tol * eps_F) return Pairing::boundary;
	return mu > 0.0 ? Pairing::bcs : Pairing::bec;
}

DiagramCell classify_solution(const GapSolution& solution, double E_c, double G, const DiagramSettings& settings) {
	if (!(E_c > 0.0)) throw std::invalid_argument("charging energy must be positive");
	if (G < 0.0) throw std::invalid_argument("hopping must be non-negative");
	DiagramCell c;
	c.U = solution.U;
	c.U_over_Uc = solution.U_over_Uc();
	c.density = solution.density;
	c.E_c = E_c;
	c.G = G;
	c.status = solution.status;
	c.message = solution.message;
	if (!solution.usable()) return c;

	c.mu = solution.mu;
	c.Delta0 = solution.Delta0;
	c.mu_over_epsF = solution.mu / solution.eps_F;
	c.gap = solution.Delta0 * settings.energy_unit();
	c.E_J = josephson_energy_equal(G, c.gap);
	c.sigma2 = sigma_phi2(E_c, c.E_J);
	c.label.pairing = classify_pairing(solution.mu, solution.eps_F, settings.mu_tolerance);
	c.label.coherence = coherence_classify(E_c, c.E_J, settings.coherence_tolerance);
	c.labeled = true;
	return c;
}

DiagramCell classify_point(double U, double E_c, double G, const DiagramSettings& settings) {
	if (!(U > 0.0)) throw std::invalid_argument("coupling must be positive");
	PhysicalParams p = settings.params;
	p.U = U;
	return classify_solution(solve_self_consistent(p, settings.quad, settings.solver), E_c, G, settings);
}

std::optional<double> critical_hopping(double gap, double E_c) {
	if (!(E_c > 0.0)) throw std::invalid_argument("charging energy must be positive");
	if (!(gap > 0.0)) return std::nullopt;
	return std::sqrt(4.0 * E_c / gap);
}

std::optional<double> critical_hopping(double U, double E_c, const DiagramSettings& settings) {
	PhysicalParams p = settings.params;
	p.U = U;
	const GapSolution s = solve_self_consistent(p, settings.quad, settings.solver);
	if (s.status != SolveStatus::converged) return std::nullopt;
	return critical_hopping(s.Delta0 * settings.energy_unit(), E_c);
}

std::optional<double> bisect_boundary(double gap, double E_c, double G_hi, double rel_tol) {
	if (!(E_c > 0.0)) throw std::invalid_argument("charging energy must be positive");
	if (!(gap > 0.0)) return std::nullopt;
	const double target = 2.0 * E_c;
	auto mismatch = [&](double G) { return (josephson_energy_equal(G, gap) - target) / target; };
	double lo = 0.0;
	double hi = G_hi > 0.0 ? G_hi : 1.0;
	for (int i = 0; mismatch(hi) < 0.0; ++i) {
		if (i > 2000) return std::nullopt;
		lo = hi;
		hi *= 2.0;
	}
	for (int i = 0; i < 400; ++i) {
		const double mid = 0.5 * (lo + hi);
		const double m = mismatch(mid);
		if (std::abs(m) <= rel_tol) return mid;
		(m < 0.0 ? lo : hi) = mid;
	}
	return std::nullopt;
}

namespace {

void require_sorted(std::span<const double> grid, const char* name) {
	if (grid.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
	for (std::size_t i = 1; i < grid.size(); ++i)
		if (!(grid[i] > grid[i - 1])) throw std::invalid_argument(std::string(name) + " grid must be strictly increasing");
}

} // namespace

DiagramSweep sweep_diagram(std::span<const double> U_grid, std::span<const double> E_c_grid,
	std::span<const double> G_grid, const DiagramSettings& settings) {
	require_sorted(U_grid, "U");
	require_sorted(E_c_grid, "E_c");
	require_sorted(G_grid, "G");
	DiagramSweep out;
	out.solutions = sweep_coupling(U_grid, settings.params, settings.quad, settings.solver);
	out.cells.reserve(U_grid.size() * E_c_grid.size() * G_grid.size());
	for (const GapSolution& s : out.solutions)
		for (double E_c : E_c_grid)
			for (double G : G_grid) out.cells.push_back(classify_solution(s, E_c, G, settings));
	return out;
}

std::vector<BoundaryPoint> boundary_curve(std::span<const GapSolution> solutions, double E_c,
	const DiagramSettings& settings, double G_hi, double rel_tol) {
	std::vector<BoundaryPoint> out;
	out.reserve(solutions.size());
	for (const GapSolution& s : solutions) {
		BoundaryPoint b;
		b.U_over_Uc = s.U_over_Uc();
		b.E_c = E_c;
		if (s.status != SolveStatus::converged) {
			b.message = s.status == SolveStatus::below_resolution ? "no finite G* at tolerance" : s.message;
			out.push_back(b);
			continue;
		}
		b.mu_over_epsF = s.mu / s.eps_F;
		b.gap = s.Delta0 * settings.energy_unit();
		const auto closed = critical_hopping(b.gap, E_c);
		const auto bis = bisect_boundary(b.gap, E_c, G_hi, rel_tol);
		if (!closed || !bis) {
			b.message = "no finite G* at tolerance";
			out.push_back(b);
			continue;
		}
		b.G_closed = *closed;
		b.G_bisect = *bis;
		b.E_J_rel_error = std::abs(josephson_energy_equal(*bis, b.gap) - 2.0 * E_c) / (2.0 * E_c);
		b.found = true;
		out.push_back(b);
	}
	return out;
}

std::vector<MuAxisPoint> mu_axis(std::span<const GapSolution> solutions, std::span<const double> mu_over_epsF,
	const DiagramSettings& settings) {
	std::vector<const GapSolution*> ok;
	for (const GapSolution& s : solutions)
		if (s.usable()) ok.push_back(&s);
	for (std::size_t i = 1; i < ok.size(); ++i)
		if (!(ok[i]->mu < ok[i - 1]->mu)) throw std::invalid_argument("mu is not strictly decreasing along the sweep");

	std::vector<MuAxisPoint> out;
	for (double target : mu_over_epsF) {
		for (std::size_t i = 1; i < ok.size(); ++i) {
			const double m0 = ok[i - 1]->mu / ok[i - 1]->eps_F;
			const double m1 = ok[i]->mu / ok[i]->eps_F;
			if (target > m0 || target < m1) continue;
			const double w = (m0 - target) / (m0 - m1);
			MuAxisPoint p;
			p.mu_over_epsF = target;
			p.U_over_Uc = ok[i - 1]->U_over_Uc() + w * (ok[i]->U_over_Uc() - ok[i - 1]->U_over_Uc());
			p.gap = settings.energy_unit() * (ok[i - 1]->Delta0 + w * (ok[i]->Delta0 - ok[i - 1]->Delta0));
			out.push_back(p);
			break;
		}
	}
	return out;
}

} // namespace bcsbec
