#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "bcsbec/phase_diagram.hpp"

using namespace bcsbec;
using doctest::Approx;

namespace {

DiagramSettings physical_settings() {
	DiagramSettings s;
	s.units = UnitSystem(UnitMode::physical);
	return s;
}

double Uc() { return critical_coupling(default_dimensionless_params()); }

std::vector<double> linspace(double a, double b, int n) {
	std::vector<double> v;
	for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
	return v;
}

} // namespace

TEST_CASE("pairing labels") {
	CHECK(classify_pairing(0.3, 1.0, 1e-12) == Pairing::bcs);
	CHECK(classify_pairing(-0.3, 1.0, 1e-12) == Pairing::bec);
	CHECK(classify_pairing(1e-14, 1.0, 1e-12) == Pairing::boundary);
	CHECK(to_string(RegimeLabel{Pairing::bec, Coherence::local}) == "BEC/local");
}

TEST_CASE("classify point") {
	const DiagramSettings s;
	SUBCASE("no hopping is always local") {
		for (double r : {0.7, 1.5, 3.0}) {
			const auto c = classify_point(r * Uc(), 0.01, 0.0, s);
			REQUIRE(c.labeled);
			CHECK(c.label.coherence == Coherence::local);
			CHECK(c.E_J == 0.0);
			CHECK(std::isinf(c.sigma2));
		}
	}
	SUBCASE("BCS side with strong hopping is globally coherent") {
		const auto c = classify_point(1.2 * Uc(), 0.01, 2.0, s);
		CHECK(c.label == RegimeLabel{Pairing::bcs, Coherence::global});
		CHECK(c.E_J == Approx(2.0 * c.gap).epsilon(1e-15));
	}
	SUBCASE("BEC side with weak hopping is local") {
		const auto c = classify_point(3.0 * Uc(), 0.01, 0.01, s);
		CHECK(c.label == RegimeLabel{Pairing::bec, Coherence::local});
	}
	CHECK_THROWS(classify_point(0.0, 0.01, 1.0, s));
	CHECK_THROWS(classify_point(Uc(), 0.0, 1.0, s));
}

TEST_CASE("critical hopping") {
	const DiagramSettings s;
	const double gap = 0.8, Ec = 0.05;
	const double G = *critical_hopping(gap, Ec);
	CHECK(josephson_energy_equal(G, gap) / (2 * Ec) == Approx(1.0).epsilon(1e-12));
	CHECK(*critical_hopping(gap, 4 * Ec) == Approx(2 * G).epsilon(1e-15));
	CHECK_FALSE(critical_hopping(0.0, Ec).has_value());
	CHECK_FALSE(critical_hopping(0.05 * Uc(), Ec, s).has_value());
	CHECK(critical_hopping(2.0 * Uc(), Ec, s).has_value());

	SUBCASE("bisection agrees with the closed form") {
		for (double g_hi : {1e-3, 1.0, 50.0}) {
			const auto b = bisect_boundary(gap, Ec, g_hi);
			REQUIRE(b.has_value());
			CHECK(std::abs(josephson_energy_equal(*b, gap) - 2 * Ec) / (2 * Ec) <= 1e-9);
			CHECK(*b == Approx(G).epsilon(1e-9));
		}
	}
	SUBCASE("G* decreases as mu decreases") {
		const auto sols = sweep_coupling(coupling_grid(s.params, 0.5, 4.0, 50), s.params, s.quad, s.solver);
		double prev = INFINITY;
		for (const auto& sol : sols) {
			const double g = *critical_hopping(sol.Delta0, Ec);
			CHECK(g < prev);
			prev = g;
		}
	}
}

TEST_CASE("sweep grid contract") {
	const DiagramSettings s;
	const std::vector<double> U{1.0 * Uc(), 2.0 * Uc()}, E{0.01, 0.02}, G{0.0, 0.5, 1.0};
	const auto sw = sweep_diagram(U, E, G, s);
	REQUIRE(sw.cells.size() == 12);
	REQUIRE(sw.solutions.size() == 2);
	CHECK(sw.cells[0].U == U[0]);
	CHECK(sw.cells[0].E_c == E[0]);
	CHECK(sw.cells[1].G == G[1]);
	CHECK(sw.cells[3].E_c == E[1]);
	CHECK(sw.cells[6].U == U[1]);

	SUBCASE("1x1x1 reduces to classify_point") {
		const std::vector<double> u1{U[1]}, e1{E[0]}, g1{G[2]};
		const auto one = sweep_diagram(u1, e1, g1, s);
		const auto direct = classify_point(U[1], E[0], G[2], s);
		REQUIRE(one.cells.size() == 1);
		CHECK(one.cells[0].mu == Approx(direct.mu).epsilon(1e-12));
		CHECK(one.cells[0].label == direct.label);
	}
	const std::vector<double> empty;
	CHECK_THROWS(sweep_diagram(U, E, empty, s));
	const std::vector<double> unsorted{0.5, 0.1};
	CHECK_THROWS(sweep_diagram(U, E, unsorted, s));
}

TEST_CASE("diagram invariants in physical units") {
	const DiagramSettings s = physical_settings();
	const auto U = coupling_grid(s.params, 0.5, 4.0, 20);
	const std::vector<double> E{20.0, 50.0};
	const auto G = linspace(0.0, 0.1, 41);
	const auto sw = sweep_diagram(U, E, G, s);

	std::set<std::string> labels;
	for (const auto& c : sw.cells) {
		REQUIRE(c.labeled);
		// relabel from stored values
		const Pairing p = classify_pairing(c.mu_over_epsF, 1.0, s.mu_tolerance);
		CHECK(p == c.label.pairing);
		CHECK(coherence_classify(c.E_c, c.E_J, s.coherence_tolerance) == c.label.coherence);
		if (c.E_c == 50.0) labels.insert(to_string(c.label));
	}
	CHECK(labels == std::set<std::string>{"BCS/global", "BCS/local", "BEC/global", "BEC/local"});

	// G-monotonicity: along G at fixed (U, E_c) coherence never goes global -> local
	const std::size_t nG = G.size();
	for (std::size_t row = 0; row < sw.cells.size() / nG; ++row) {
		bool global = false;
		for (std::size_t k = 0; k < nG; ++k) {
			const auto& c = sw.cells[row * nG + k];
			if (global) CHECK(c.label.coherence != Coherence::local);
			global = global || c.label.coherence == Coherence::global;
		}
	}
	// pairing never returns from BEC to BCS as U grows
	bool bec = false;
	for (const auto& sol : sw.solutions) {
		if (bec) CHECK(sol.mu < 0.0);
		bec = bec || sol.mu < 0.0;
	}
}

TEST_CASE("boundary curve") {
	const DiagramSettings s = physical_settings();
	const auto sols = sweep_coupling(coupling_grid(s.params, 0.5, 4.0, 30), s.params, s.quad, s.solver);
	const auto curve = boundary_curve(sols, 50.0, s, 0.1);
	REQUIRE(curve.size() == 30);
	for (std::size_t i = 0; i < curve.size(); ++i) {
		REQUIRE(curve[i].found);
		CHECK(curve[i].E_J_rel_error <= 1e-9);
		CHECK(curve[i].G_bisect == Approx(curve[i].G_closed).epsilon(1e-9));
		if (i > 0) {
			CHECK(curve[i].mu_over_epsF < curve[i - 1].mu_over_epsF);
			CHECK(curve[i].G_closed < curve[i - 1].G_closed);
		}
	}

	std::vector<GapSolution> weak{solve_self_consistent([&] {
		PhysicalParams p = s.params;
		p.U = 0.05 * Uc();
		return p;
	}(), s.quad)};
	const auto none = boundary_curve(weak, 50.0, s, 0.1);
	CHECK_FALSE(none[0].found);
	CHECK(none[0].message == "no finite G* at tolerance");
}

TEST_CASE("uniform mu axis by monotone interpolation") {
	const DiagramSettings s;
	const auto sols = sweep_coupling(coupling_grid(s.params, 0.5, 4.0, 40), s.params, s.quad, s.solver);
	const std::vector<double> axis{0.9, 0.5, 0.0, -1.0, -5.0, -50.0};
	const auto pts = mu_axis(sols, axis, s);
	REQUIRE(pts.size() == 5);
	for (std::size_t i = 1; i < pts.size(); ++i) {
		CHECK(pts[i].U_over_Uc > pts[i - 1].U_over_Uc);
		CHECK(pts[i].gap > pts[i - 1].gap);
	}
	// the interpolated mu = 0 coupling sits next to the bisected zero
	const auto z = locate_mu_zero(1.5, 2.0, s.params, s.quad, s.solver);
	CHECK(pts[2].U_over_Uc == Approx(*z).epsilon(1e-2));
}
