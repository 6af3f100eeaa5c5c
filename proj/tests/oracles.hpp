#pragma once

// Brute-force references used only by the tests. They share no code with the
// library's quadrature or root finders.

#include <complex>
#include <span>
#include <vector>

namespace oracle {

/// Model constants in the dimensionless system: hbar = 1, m = 1/2, k0 = 1.
struct Model {
	double mass = 0.5;
	double k0 = 1.0;
	double density = 2e-2;
};

double critical_coupling(const Model& m);

/// Midpoint rule on k = k0 tan(pi u / 2), u in (0, 1), with `points` cells.
/// Integrates \int d^3k/(2pi)^3 f(k); nodes and weights are cached per (k0, points).
class MidpointGrid {
public:
	MidpointGrid(double k0, long points);

	template <class F>
	double integrate(F&& f) const {
		double sum = 0.0, comp = 0.0;
		for (std::size_t i = 0; i < k_.size(); ++i) {
			const double y = w_[i] * f(k_[i]) - comp;
			const double s = sum + y;
			comp = (s - sum) - y;
			sum = s;
		}
		return sum;
	}

	static const MidpointGrid& cached(double k0, long points);

private:
	std::vector<double> k_, w_;
};

struct Integrals {
	double gap = 0.0;     // \int Gamma^2 / E
	double number = 0.0;  // \int (1 - xi/E)
};
Integrals pairing_integrals(double Delta0, double mu, const Model& m, long points = 1000000);

/// \int Gamma^2 / (2 eps + E)
double bound_state_integral(double E, const Model& m, long points = 1000000);

/// Bisection on E for U * bound_state_integral(E) = 1.
double bound_state_bisection(double U, const Model& m, long points = 1000000);

struct Solution {
	double mu = 0.0;
	double Delta0 = 0.0;
};

/// Outer bisection on mu for the number equation; inner damped fixed point
/// Delta <- Delta [1 + (U/2) I(Delta) ] / 2 (damping 0.5) for the gap equation.
Solution damped_fixed_point(double U, const Model& m, long points, double mu_lo, double mu_hi);

/// Product of per-mode factors accumulated through logarithms.
double log_abs_product(std::span<const std::complex<double>> factors);

} // namespace oracle

