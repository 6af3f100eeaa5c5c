#include "bcsbec/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

namespace bcsbec {

namespace {

constexpr unsigned gauss_order = 20;

struct GaussRule {
	std::array<double, gauss_order> x;
	std::array<double, gauss_order> w;
};

const GaussRule& gauss_rule() {
	static const GaussRule rule = [] {
		using boost::math::quadrature::gauss;
		const auto& abscissa = gauss<double, gauss_order>::abscissa();
		const auto& weight = gauss<double, gauss_order>::weights();
		GaussRule r{};
		const std::size_t half = abscissa.size();
		for (std::size_t i = 0; i < half; ++i) {
			r.x[half - 1 - i] = -abscissa[i];
			r.w[half - 1 - i] = weight[i];
			r.x[half + i] = abscissa[i];
			r.w[half + i] = weight[i];
		}
		return r;
	}();
	return rule;
}

constexpr double radial_measure = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi);

} // namespace

void QuadratureSpec::validate() const {
	if (scheme != "gauss-legendre-20") throw std::invalid_argument("unsupported quadrature scheme: " + scheme);
	if (panels < 1) throw std::invalid_argument("quadrature needs at least one panel");
	if (!(k_max > 0.0)) throw std::invalid_argument("quadrature k_max must be positive");
	if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw std::invalid_argument("quadrature tolerances must be positive");
}

std::vector<double> radial_breakpoints(const QuadratureSpec& spec, double k0, std::optional<RadialFeature> feature) {
	const double k_cut = spec.k_max * k0;
	std::vector<double> pts{0.0, k_cut};
	for (int j = -8; k0 * std::ldexp(1.0, j) < k_cut; ++j) pts.push_back(k0 * std::ldexp(1.0, j));

	if (feature && feature->center > 0.0 && feature->center < k_cut) {
		const double c = feature->center;
		pts.push_back(c);
		double w = std::max(feature->width, 1e-15 * c);
		if (feature->width > 0.0) {
			for (; w < c; w *= 4.0) {
				pts.push_back(c - w);
				if (c + w < k_cut) pts.push_back(c + w);
			}
		}
	}
	std::sort(pts.begin(), pts.end());
	// merge points closer than a relative 1e-15 of the larger one
	std::vector<double> out;
	for (double p : pts) {
		if (out.empty() || p - out.back() > 1e-15 * std::max(1.0, std::abs(p))) out.push_back(p);
	}
	return out;
}

RadialGrid::RadialGrid(const QuadratureSpec& spec, double k0, std::optional<RadialFeature> feature) {
	spec.validate();
	if (!(k0 > 0.0)) throw std::invalid_argument("radial grid needs k0 > 0");
	const auto pts = radial_breakpoints(spec, k0, feature);
	nodes_.reserve((pts.size() + 1) * spec.panels * gauss_order);
	weights_.reserve(nodes_.capacity());
	for (std::size_t i = 0; i + 1 < pts.size(); ++i) add_interval(pts[i], pts[i + 1], spec.panels);
	tail_begin_ = nodes_.size();
	add_tail(pts.back(), 2 * spec.panels);
}

void RadialGrid::add_interval(double a, double b, int panels) {
	const auto& rule = gauss_rule();
	const double h = (b - a) / panels;
	for (int p = 0; p < panels; ++p) {
		const double lo = a + p * h;
		const double mid = lo + 0.5 * h;
		for (unsigned i = 0; i < gauss_order; ++i) {
			const double k = mid + 0.5 * h * rule.x[i];
			nodes_.push_back(k);
			weights_.push_back(0.5 * h * rule.w[i] * k * k * radial_measure);
		}
	}
}

void RadialGrid::add_tail(double k_cut, int panels) {
	// k = k_cut / x,  dk = k_cut / x^2 dx,  x in (0, 1]
	const auto& rule = gauss_rule();
	const double h = 1.0 / panels;
	for (int p = 0; p < panels; ++p) {
		const double mid = (p + 0.5) * h;
		for (unsigned i = 0; i < gauss_order; ++i) {
			const double x = mid + 0.5 * h * rule.x[i];
			const double k = k_cut / x;
			nodes_.push_back(k);
			weights_.push_back(0.5 * h * rule.w[i] * (k_cut / (x * x)) * k * k * radial_measure);
		}
	}
}

} // namespace bcsbec
