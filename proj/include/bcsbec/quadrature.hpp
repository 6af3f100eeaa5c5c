#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bcsbec {

/// Controls the radial quadrature used for every isotropic momentum integral.
struct QuadratureSpec {
	std::string scheme = "gauss-legendre-20";
	int panels = 2;        ///< Gauss panels per grading interval
	double k_max = 40.0;   ///< in units of k0; [k_max, inf) is mapped onto (0, 1]
	double abs_tol = 1e-13;
	double rel_tol = 1e-10;

	QuadratureSpec refined() const {
		QuadratureSpec q = *this;
		q.panels *= 2;
		return q;
	}
	void validate() const;
};

/// A narrow structure in the integrand (e.g. the Fermi-surface peak).
struct RadialFeature {
	double center;
	double width;
};

/// Nodes and weights for  \int d^3k/(2 pi)^3 f(|k|) = \int_0^\infty dk k^2/(2 pi^2) f(k).
///
/// The half line is split at a fixed ladder of multiples of k0, at k_max*k0 and
/// (optionally) at a geometrically graded set of points around a feature. Each
/// interval carries `panels` Gauss-Legendre panels; the tail beyond k_max*k0 uses
/// the substitution k = k_max*k0 / x.
class RadialGrid {
public:
	RadialGrid(const QuadratureSpec& spec, double k0, std::optional<RadialFeature> feature = std::nullopt);

	std::span<const double> nodes() const { return nodes_; }
	std::span<const double> weights() const { return weights_; }
	std::size_t tail_begin() const { return tail_begin_; }
	std::size_t size() const { return nodes_.size(); }

	template <class F>
	double integrate(F&& f) const {
		double sum = 0.0;
		for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(nodes_[i]);
		return sum;
	}

	template <class F>
	double integrate_tail(F&& f) const {
		double sum = 0.0;
		for (std::size_t i = tail_begin_; i < nodes_.size(); ++i) sum += weights_[i] * f(nodes_[i]);
		return sum;
	}

private:
	void add_interval(double a, double b, int panels);
	void add_tail(double k_cut, int panels);

	std::vector<double> nodes_;
	std::vector<double> weights_;
	std::size_t tail_begin_ = 0;
};

/// Breakpoints used by RadialGrid, exposed for inspection.
std::vector<double> radial_breakpoints(const QuadratureSpec& spec, double k0, std::optional<RadialFeature> feature);

struct IntegralEstimate {
	double value = 0.0;
	double error = 0.0;  ///< |I(panels) - I(2 panels)|
	double tail = 0.0;   ///< contribution of [k_max k0, inf)
	bool converged = false;
};

template <class F>
IntegralEstimate integrate_radial(const QuadratureSpec& spec, double k0, std::optional<RadialFeature> feature, F&& f) {
	const RadialGrid coarse(spec, k0, feature);
	const RadialGrid fine(spec.refined(), k0, feature);
	IntegralEstimate out;
	out.value = fine.integrate(f);
	out.error = std::abs(out.value - coarse.integrate(f));
	out.tail = fine.integrate_tail(f);
	out.converged = out.error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
	return out;
}

} // namespace bcsbec
