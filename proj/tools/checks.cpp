#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "bcsbec/coherent_state.hpp"
#include "bcsbec/fock_oracle.hpp"
#include "bcsbec/josephson_chain.hpp"
#include "bcsbec/pegg_barnett.hpp"
#include "bcsbec/phase_lock.hpp"
#include "cli.hpp"

namespace bcsbec::cli {

namespace {

std::string fmt(double v) { return format_double(v); }

CheckResult result(std::string name, bool passed, std::string measurement) {
	CheckResult r;
	r.name = std::move(name);
	r.passed = passed;
	r.measurement = std::move(measurement);
	return r;
}

CheckResult overlap_decay(const RunConfig&) {
	const double theta = std::numbers::pi / 4.0, dphi = std::numbers::pi / 2.0;
	const double c2 = std::cos(theta) * std::cos(theta), s2 = std::sin(theta) * std::sin(theta);
	const double expected = -std::log(std::abs(c2 + std::polar(1.0, dphi) * s2));
	double worst = 0.0;
	for (int M = 1; M <= 200; ++M) {
		const std::vector<double> th(M, theta);
		worst = std::max(worst, std::abs(-std::log(std::abs(bcs_overlap(th, dphi))) / M - expected));
	}
	return result("overlap-decay", worst <= 1e-12, "max rate error " + fmt(worst) + " (tol 1e-12)");
}

CheckResult eta_oracle(const RunConfig& c) {
	SeededUniform rng(c.seed);
	double worst = 0.0;
	for (int e = 0; e < 20; ++e) {
		const int M = 1 + static_cast<int>(rng() * 10);
		std::vector<double> eps;
		for (int i = 0; i < M; ++i) eps.push_back(4.0 * rng() - 2.0);
		const auto ens = PairEnsemble::from_energies(eps, 0.05 + rng(), 2.0 * std::numbers::pi * rng());
		const FockOracle oracle(ens);
		const auto a = eta_statistics(ens);
		const auto f = oracle.eta_values(ens.phi());
		const double phi2 = 2.0 * std::numbers::pi * rng();
		const auto ov = bcs_overlap(ens.thetas(), ens.phi() - phi2);
		const std::complex<double> ov_f = oracle.state(phi2).dot(oracle.state(ens.phi()));
		worst = std::max({worst, std::abs(a.mean - f.mean), std::abs(a.variance - f.variance), std::abs(ov - ov_f)});
	}
	return result("eta-oracle", worst <= 1e-12, "max abs error over 20 ensembles " + fmt(worst) + " (tol 1e-12)");
}

CheckResult number_phase(const RunConfig& c) {
	SeededUniform rng(c.seed);
	std::vector<double> thetas;
	for (int i = 0; i < 4; ++i) thetas.push_back(0.1 + 1.3 * rng());
	const FockOracle oracle(thetas);
	auto worst_at = [&](double h, bool odd) {
		double dev = 0.0, overlap = 0.0;
		std::vector<double> grid;
		for (int i = -4; i <= 4; ++i) grid.push_back(0.7 + i * h);
		for (int n = 0; n <= 8; ++n) {
			if ((n % 2 == 1) != odd) continue;
			const auto r = number_phase_derivative_check(oracle, n, grid);
			dev = std::max(dev, r.max_deviation);
			overlap = std::max(overlap, r.max_overlap);
		}
		return std::pair{dev, overlap};
	};
	const auto [d1, o1] = worst_at(1e-3, false);
	const auto [d2, o2] = worst_at(5e-4, false);
	const auto [dodd, oodd] = worst_at(1e-3, true);
	const double ratio = d1 / d2;
	const bool pass = d1 <= 1e-5 && ratio > 3.5 && ratio < 4.5 && oodd == 0.0 && dodd == 0.0;
	return result("number-phase", pass,
		"deviation " + fmt(d1) + " at h=1e-3 (tol 1e-5), ratio on halving " + fmt(ratio) + ", max odd overlap " + fmt(oodd));
}

CheckResult pegg_barnett(const RunConfig& c) {
	const int s = c.pegg_barnett_s;
	double prev = 0.0;
	bool decreasing = true, warning = false;
	std::string m;
	double first = 0.0;
	for (int k = 0; k < 3; ++k) {
		const int sk = s << k;
		const auto r = pegg_barnett_commutator(pegg_barnett_operators(sk), c.omega);
		if (k == 0) first = r.deviation;
		else decreasing = decreasing && r.deviation < prev;
		prev = r.deviation;
		warning = warning || r.truncation_warning;
		m += (k ? ", " : "") + std::string("s=") + std::to_string(sk) + ": " + fmt(r.deviation);
	}
	CheckResult res = result("pegg-barnett", first <= 0.05 && decreasing, "|<[theta,N]> + i| " + m + " (tol 0.05, decreasing)");
	if (warning) {
		res.warning = true;
		res.note = "s below 4 Omega, truncated number distribution carries visible weight";
	}
	return res;
}

CheckResult phase_lock(const RunConfig& c) {
	SeededUniform rng(c.seed);
	double worst_stat = 0.0;
	for (int t = 0; t < 10; ++t) {
		const int M = 2 + t % 4;
		PhaseLockModel model{random_coupling_tensor(M, c.seed + 100 + t), std::vector<double>(M), 0.0};
		std::vector<double> amps, phases(M, 2.0 * std::numbers::pi * rng());
		for (int n = 0; n < M; ++n) {
			model.energies[n] = rng();
			amps.push_back(0.2 + rng());
		}
		worst_stat = std::max(worst_stat, model.stationarity_residual(phases, amps));
	}
	double worst_spread = 0.0;
	bool converged = true;
	for (int i = 0; i < 5; ++i) {
		const auto r = variational_phase_lock(5, -1, c.seed + i);
		worst_spread = std::max(worst_spread, r.descent.phase_spread);
		converged = converged && r.descent.converged;
	}
	return result("phase-lock", worst_stat <= 1e-12 && worst_spread < 1e-4 && converged,
		"equal-phase stationarity " + fmt(worst_stat) + " (tol 1e-12), spread over 5 seeds " + fmt(worst_spread) +
			" (tol 1e-4)");
}

CheckResult oscillator(const RunConfig&) {
	const double exact = oscillator_variance_exact(1.0, 1.0);
	const auto fine = oscillator_oracle(1.0, 1.0, {0.0, 16001});
	const auto coarse = oscillator_oracle(1.0, 1.0, {0.0, 8000});
	const double e_f = std::abs(fine.variance - exact) / exact;
	const double e_c = std::abs(coarse.variance - exact) / exact;
	const double ratio = e_c / e_f;
	const auto v = variance_sources(1.0, 1.0);
	return result("oscillator", fine.converged && e_f <= 1e-6 && ratio > 3.5 && ratio < 4.5,
		"<phi^2> " + fmt(fine.variance) + " vs sqrt(8 E_c/E_J) " + fmt(exact) + " rel " + fmt(e_f) + " (tol 1e-6), order ratio " +
			fmt(ratio) + "; stated sqrt(2 E_c/E_J) " + fmt(v.stated) + (v.discrepancy ? " [discrepancy]" : ""));
}

CheckResult odlro_slope(const RunConfig&) {
	const double s2 = sigma_phi2(1.0, 3.0);
	const std::vector<double> bars{1.0, 0.8, 1.3, 0.9, 1.1, 1.0};
	const double slope = odlro_log_slope(bars, s2);
	const bool boundary = coherence_classify(1.0, 2.0) == Coherence::boundary &&
		coherence_classify(1.0, 2.0 * (1 + 1e-6)) == Coherence::global && coherence_classify(1.0, 2.0 * (1 - 1e-6)) == Coherence::local;
	const double err = std::abs(slope + s2);
	return result("odlro-slope", err <= 1e-12 && boundary,
		"slope " + fmt(slope) + " vs -sigma^2 " + fmt(-s2) + " (tol 1e-12), boundary at E_J = 2 E_c " + (boundary ? "yes" : "no"));
}

using CheckFn = CheckResult (*)(const RunConfig&);

const std::vector<std::pair<CheckInfo, CheckFn>>& registry() {
	static const std::vector<std::pair<CheckInfo, CheckFn>> r{
		{{"overlap-decay", "per-mode decay of the coherent-state overlap, theta = pi/4, dphi = pi/2, M <= 200"}, overlap_decay},
		{{"eta-oracle", "analytic eta mean, variance and overlap against the 2^M Fock oracle"}, eta_oracle},
		{{"number-phase", "<phi|N|n> = 2i d/dphi <phi|n> by central differences, M = 4"}, number_phase},
		{{"pegg-barnett", "|<[theta, N]> + i| at s, 2s, 4s for the coherent state of pair number Omega"}, pegg_barnett},
		{{"phase-lock", "equal-phase stationarity for random couplings and attractive descent spread"}, phase_lock},
		{{"oscillator", "grid ground state of the relative-phase oscillator against closed form"}, oscillator},
		{{"odlro-slope", "log-ODLRO slope against -sigma^2 and the E_J = 2 E_c boundary"}, odlro_slope},
	};
	return r;
}

} // namespace

const std::vector<CheckInfo>& check_inventory() {
	static const std::vector<CheckInfo> list = [] {
		std::vector<CheckInfo> l;
		for (const auto& [info, fn] : registry()) l.push_back(info);
		return l;
	}();
	return list;
}

std::vector<CheckResult> run_checks(const RunConfig& config) {
	std::vector<CheckResult> out;
	for (const auto& [info, fn] : registry()) out.push_back(fn(config));
	return out;
}

} // namespace bcsbec::cli
