#include "bcsbec/gap_solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/tools/toms748_solve.hpp>

namespace bcsbec {

namespace {

std::optional<RadialFeature> fermi_feature(double Delta0, double mu, const PhysicalParams& p) {
	if (mu <= 0.0) return std::nullopt;
	const double kmu = std::sqrt(2.0 * p.mass * mu) / p.hbar;
	const double gamma = nsr_form_factor(kmu, p.k0);
	// energy width Delta0*Gamma translated through d(eps)/dk = hbar^2 k / m
	const double width = Delta0 * gamma * p.mass / (p.hbar * p.hbar * kmu);
	return RadialFeature{kmu, width};
}

struct PairingIntegrand {
	const PhysicalParams& p;
	double Delta0;
	double mu;

	double xi(double k) const { return p.hbar * p.hbar * k * k / (2.0 * p.mass) - mu; }
	double gamma2(double k) const {
		const double x = k / p.k0;
		return 1.0 / (1.0 + x * x);
	}
	double gap(double k) const {
		const double g2 = gamma2(k);
		const double e = xi(k);
		return g2 / std::sqrt(e * e + Delta0 * Delta0 * g2);
	}
	double number(double k) const {
		const double g2 = gamma2(k);
		const double e = xi(k);
		const double d2 = Delta0 * Delta0 * g2;
		const double E = std::sqrt(e * e + d2);
		if (e > 0.0) return d2 / (E * (E + e));  // 1 - e/E without cancellation
		return 1.0 - e / E;
	}
};

// Absolute resolution of the root finders: a few ulps of the bracket.
struct RelativeBracket {
	double abs_floor;
	bool operator()(double a, double b) const {
		return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b)) + abs_floor;
	}
};

} // namespace

std::string to_string(SolveStatus status) {
	switch (status) {
		case SolveStatus::converged: return "converged";
		case SolveStatus::below_resolution: return "gap below resolution";
		case SolveStatus::no_convergence: return "no convergence";
		case SolveStatus::invalid_input: return "invalid input";
	}
	return "unknown";
}

PairingIntegrals pairing_integrals(double Delta0, double mu, const PhysicalParams& params, const QuadratureSpec& quad) {
	if (Delta0 < 0.0) throw std::invalid_argument("Delta0 must be non-negative");
	const RadialGrid grid(quad, params.k0, fermi_feature(Delta0, mu, params));
	const PairingIntegrand f{params, Delta0, mu};
	PairingIntegrals out;
	const auto k = grid.nodes();
	const auto w = grid.weights();
	for (std::size_t i = 0; i < grid.size(); ++i) {
		out.gap += w[i] * f.gap(k[i]);
		out.number += w[i] * f.number(k[i]);
	}
	return out;
}

double gap_residual(double Delta0, double mu, const PhysicalParams& params, const QuadratureSpec& quad) {
	if (Delta0 < 0.0) throw std::invalid_argument("Delta0 must be non-negative");
	if (params.U == 0.0) return 1.0;
	const RadialGrid grid(quad, params.k0, fermi_feature(Delta0, mu, params));
	const PairingIntegrand f{params, Delta0, mu};
	return 1.0 - 0.5 * params.U * grid.integrate([&](double k) { return f.gap(k); });
}

double number_residual(double Delta0, double mu, const PhysicalParams& params, const QuadratureSpec& quad) {
	if (Delta0 < 0.0) throw std::invalid_argument("Delta0 must be non-negative");
	const RadialGrid grid(quad, params.k0, fermi_feature(Delta0, mu, params));
	const PairingIntegrand f{params, Delta0, mu};
	const double n = grid.integrate([&](double k) { return f.number(k); });
	return (params.density - n) / params.density;
}

ResidualReport residual_report(double Delta0, double mu, const PhysicalParams& params, const QuadratureSpec& quad) {
	const PairingIntegrand f{params, Delta0, mu};
	const auto feature = fermi_feature(Delta0, mu, params);
	const auto gap = integrate_radial(quad, params.k0, feature, [&](double k) { return f.gap(k); });
	const auto num = integrate_radial(quad, params.k0, feature, [&](double k) { return f.number(k); });
	ResidualReport r;
	r.gap = 1.0 - 0.5 * params.U * gap.value;
	r.gap_error = 0.5 * params.U * gap.error;
	r.number = (params.density - num.value) / params.density;
	r.number_error = num.error / params.density;
	r.number_tail = num.tail / params.density;
	r.quadrature_converged = gap.converged && num.converged;
	return r;
}

double bound_state_integral(double E, const PhysicalParams& p, const QuadratureSpec& quad) {
	if (E < 0.0) throw std::invalid_argument("binding energy must be non-negative");
	const RadialGrid grid(quad, p.k0);
	const double c = p.hbar * p.hbar / p.mass;  // 2 eps_k = c k^2
	return grid.integrate([&](double k) {
		const double x = k / p.k0;
		const double g2 = 1.0 / (1.0 + x * x);
		const double denom = c * k * k + E;
		return g2 / denom;
	});
}

std::optional<double> bound_state_energy(const PhysicalParams& p, const QuadratureSpec& quad) {
	if (!(p.U > 0.0)) throw std::invalid_argument("bound state requires U > 0");
	const double Uc = critical_coupling(p);
	auto f = [&](double E) { return 1.0 - p.U * bound_state_integral(E, p, quad); };
	const double f0 = f(0.0);
	if (f0 >= 0.0) {
		if (p.U >= Uc * (1.0 - 1e-12)) return 0.0;
		return std::nullopt;
	}
	double hi = p.eps0();
	double fhi = f(hi);
	while (fhi <= 0.0) {
		hi *= 4.0;
		fhi = f(hi);
		if (!std::isfinite(hi)) throw std::runtime_error("bound state bracket diverged");
	}
	std::uintmax_t iters = 200;
	const auto [a, b] = boost::math::tools::toms748_solve(f, 0.0, hi, f0, fhi, RelativeBracket{0.0}, iters);
	return 0.5 * (a + b);
}

double gap_at_fixed_mu(double mu, const PhysicalParams& p, const QuadratureSpec& quad, const SolverOptions& opts,
	int* evaluations) {
	const double floor = opts.gap_floor * p.eps0();
	int count = 0;
	auto f = [&](double s) {
		++count;
		return gap_residual(std::exp(s), mu, p, quad);
	};
	const double s_lo = std::log(floor);
	const double f_lo = f(s_lo);
	if (f_lo >= 0.0) {
		if (evaluations) *evaluations += count;
		return 0.0;
	}
	double s_hi = std::log(std::max({p.eps0(), std::abs(mu), floor}));
	double f_hi = f(s_hi);
	while (f_hi <= 0.0) {
		s_hi += std::log(4.0);
		f_hi = f(s_hi);
		if (s_hi > 700.0) throw std::runtime_error("gap bracket diverged");
	}
	std::uintmax_t iters = static_cast<std::uintmax_t>(opts.max_inner_iterations);
	const auto [a, b] = boost::math::tools::toms748_solve(f, s_lo, s_hi, f_lo, f_hi,
		[](double x, double y) { return std::abs(y - x) <= 2e-15; }, iters);
	if (evaluations) *evaluations += count;
	return std::exp(0.5 * (a + b));
}

GapSolution solve_self_consistent(const PhysicalParams& p, const QuadratureSpec& quad, const SolverOptions& opts,
	std::optional<double> warm_mu) {
	GapSolution sol;
	sol.U = p.U;
	sol.density = p.density;
	try {
		p.validate();
		quad.validate();
		if (!(p.U > 0.0)) throw std::invalid_argument("self-consistent solve requires U > 0");
	} catch (const std::exception& e) {
		sol.status = SolveStatus::invalid_input;
		sol.message = e.what();
		return sol;
	}
	sol.eps0 = p.eps0();
	sol.eps_F = p.fermi_energy();
	sol.U_c = critical_coupling(p);

	// Below mu_lo the gap equation has no nontrivial solution and the density vanishes.
	double mu_lo = 0.0;
	if (const auto eb = bound_state_energy(p, quad)) mu_lo = -0.5 * *eb;

	int outer = 0;
	auto h = [&](double mu) {
		++outer;
		if (outer > opts.max_iterations) throw std::runtime_error("outer iteration budget exhausted");
		const double d = gap_at_fixed_mu(mu, p, quad, opts);
		return number_residual(d, mu, p, quad);
	};

	try {
		double a = mu_lo, b = std::max(sol.eps_F, mu_lo + sol.eps_F);
		double fa = 1.0, fb = 0.0;
		bool bracketed = false;
		if (warm_mu && *warm_mu > mu_lo) {
			const double delta = 0.05 * (std::abs(*warm_mu) + sol.eps_F);
			const double wa = std::max(mu_lo, *warm_mu - delta), wb = *warm_mu + delta;
			const double fwa = wa == mu_lo ? 1.0 : h(wa);
			const double fwb = h(wb);
			if (fwa > 0.0 && fwb < 0.0) {
				a = wa, fa = fwa, b = wb, fb = fwb;
				bracketed = true;
			}
		}
		if (!bracketed) {
			fb = h(b);
			while (fb >= 0.0) {
				a = b, fa = fb;
				b = mu_lo + 2.0 * (b - mu_lo);
				fb = h(b);
			}
		}
		std::uintmax_t iters = static_cast<std::uintmax_t>(opts.max_iterations);
		const auto [ra, rb] = boost::math::tools::toms748_solve(h, a, b, fa, fb,
			RelativeBracket{1e-16 * sol.eps0}, iters);
		sol.mu = 0.5 * (ra + rb);
		sol.iterations = outer;
		sol.Delta0 = gap_at_fixed_mu(sol.mu, p, quad, opts);
	} catch (const std::exception& e) {
		sol.status = SolveStatus::no_convergence;
		sol.iterations = outer;
		sol.message = e.what();
		return sol;
	}

	const ResidualReport r = residual_report(sol.Delta0, sol.mu, p, quad);
	sol.residual_gap = gap_residual(sol.Delta0, sol.mu, p, quad);
	sol.residual_number = number_residual(sol.Delta0, sol.mu, p, quad);
	sol.quadrature_error = std::max(std::abs(r.gap - sol.residual_gap), std::abs(r.number - sol.residual_number));

	if (sol.Delta0 == 0.0) {
		sol.status = SolveStatus::below_resolution;
		sol.converged = false;
		sol.message = "gap below resolution floor";
		return sol;
	}
	sol.converged = std::abs(sol.residual_gap) <= opts.tol_gap && std::abs(sol.residual_number) <= opts.tol_number;
	sol.status = sol.converged ? SolveStatus::converged : SolveStatus::no_convergence;
	if (!sol.converged) sol.message = "residuals above tolerance";
	return sol;
}

std::vector<GapSolution> sweep_coupling(std::span<const double> U_grid, const PhysicalParams& params,
	const QuadratureSpec& quad, const SolverOptions& opts) {
	std::vector<GapSolution> out;
	out.reserve(U_grid.size());
	std::optional<double> warm;
	for (std::size_t i = 0; i < U_grid.size(); ++i) {
		if (i > 0 && U_grid[i] < U_grid[i - 1]) throw std::invalid_argument("coupling grid must be sorted ascending");
		PhysicalParams p = params;
		p.U = U_grid[i];
		GapSolution s = solve_self_consistent(p, quad, opts, warm);
		warm = s.usable() ? std::optional<double>(s.mu) : std::nullopt;
		out.push_back(std::move(s));
	}
	return out;
}

std::vector<double> coupling_grid(const PhysicalParams& params, double lo, double hi, int points) {
	if (points < 0) throw std::invalid_argument("negative grid size");
	const double Uc = critical_coupling(params);
	std::vector<double> grid;
	grid.reserve(points);
	for (int i = 0; i < points; ++i) {
		const double r = points == 1 ? lo : lo + (hi - lo) * i / (points - 1);
		grid.push_back(r * Uc);
	}
	return grid;
}

std::optional<double> locate_mu_zero(double lo, double hi, const PhysicalParams& params, const QuadratureSpec& quad,
	const SolverOptions& opts, double tol) {
	const double Uc = critical_coupling(params);
	auto mu_at = [&](double r) {
		PhysicalParams p = params;
		p.U = r * Uc;
		const GapSolution s = solve_self_consistent(p, quad, opts);
		if (!s.usable()) throw std::runtime_error("solver failed during mu-zero bisection: " + s.message);
		return s.mu;
	};
	double mlo = mu_at(lo), mhi = mu_at(hi);
	if ((mlo > 0.0) == (mhi > 0.0)) return std::nullopt;
	while (hi - lo > tol) {
		const double mid = 0.5 * (lo + hi);
		const double m = mu_at(mid);
		if ((m > 0.0) == (mlo > 0.0)) lo = mid, mlo = m;
		else hi = mid, mhi = m;
	}
	return 0.5 * (lo + hi);
}

} // namespace bcsbec
