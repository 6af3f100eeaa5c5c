#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "bcsbec/coherent_state.hpp"
#include "bcsbec/fock_oracle.hpp"
#include "bcsbec/gap_solver.hpp"
#include "bcsbec/josephson_chain.hpp"
#include "bcsbec/pegg_barnett.hpp"
#include "bcsbec/phase_diagram.hpp"
#include "bcsbec/phase_lock.hpp"

namespace bcsbec::cli {

using nlohmann::json;

std::string sha256_hex(const std::string& bytes) {
	unsigned char md[EVP_MAX_MD_SIZE];
	unsigned int len = 0;
	if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
		throw std::runtime_error("SHA-256 digest failed");
	std::ostringstream os;
	for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
	return os.str();
}

std::string format_double(double v) {
	if (std::isnan(v)) return "nan";
	if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.17g", v);
	return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
	for (const auto& h : header) add(h);
	end_row();
	rows_ = 0;
}

void CsvTable::separator() {
	if (cell_ >= columns_) throw std::logic_error("too many CSV cells in row");
	if (cell_ > 0) text_ += ',';
	++cell_;
}

CsvTable& CsvTable::add(double v) {
	separator();
	text_ += format_double(v);
	return *this;
}

CsvTable& CsvTable::add(long long v) {
	separator();
	text_ += std::to_string(v);
	return *this;
}

CsvTable& CsvTable::add(const std::string& v) {
	separator();
	text_ += v;
	return *this;
}

void CsvTable::end_row() {
	if (cell_ != columns_) throw std::logic_error("incomplete CSV row");
	text_ += '\n';
	cell_ = 0;
	++rows_;
}

void RunConfig::resolve_defaults() {
	const bool physical = units == UnitMode::physical;
	if (E_c.empty()) {
		if (subcommand == "chain") E_c = {1.0};
		else E_c = {physical ? 50.0 : 0.01};
	}
	if (!g_min) g_min = 0.0;
	if (!g_max) g_max = physical ? 0.1 : 2.0;
	if (!modes) {
		if (subcommand == "overlap") modes = 200;
		else if (subcommand == "phase-lock") modes = 5;
		else modes = 10;
	}
}

void RunConfig::validate() const {
	auto fail = [](const std::string& m) { throw std::invalid_argument(m); };
	if (points < 1) fail("--points must be at least 1");
	if (!(lo > 0.0) || hi < lo) fail("coupling range needs 0 < lo <= hi");
	if (!(density > 0.0)) fail("--density must be positive");
	if (!(coupling > 0.0)) fail("--coupling must be positive");
	if (!(tol_gap > 0.0) || !(tol_number > 0.0)) fail("tolerances must be positive");
	if (g_points < 1) fail("G grid is empty");
	if (g_min && *g_min < 0.0) fail("--g-min must be non-negative");
	if (g_min && g_max && *g_max < *g_min) fail("--g-max below --g-min");
	if (g_points > 1 && g_min && g_max && !(*g_max > *g_min)) fail("G grid needs g-max > g-min");
	for (double e : E_c)
		if (!(e > 0.0)) fail("--ec values must be positive");
	std::set<double> unique(E_c.begin(), E_c.end());
	if (unique.size() != E_c.size()) fail("--ec values must be distinct");
	if (modes && *modes < 1) fail("--modes must be at least 1");
	if (subcommand == "phase-lock" && modes && (*modes < 2 || *modes > 6)) fail("phase-lock supports 2..6 modes");
	if ((subcommand == "oracle" || subcommand == "eta") && modes && *modes > FockOracle::max_modes)
		fail("at most 12 modes for the Fock oracle");
	if (!(omega > 0.0)) fail("--omega must be positive");
	if (pegg_barnett_s < 1 || pegg_barnett_s > 4096) fail("--pegg-barnett-s must be in 1..4096");
	if (ensembles < 1) fail("--ensembles must be at least 1");
	if (segments < 2) fail("--segments must be at least 2");
	if (E_J < 0.0) fail("--ej must be non-negative");
	if (!(delta_bar > 0.0)) fail("--delta-bar must be positive");
	if (g_sign < -1 || g_sign > 1) fail("--sign must be -1, 0 or 1");
	if (seeds < 1) fail("--seeds must be at least 1");
}

void to_json(json& j, const RunConfig& c) {
	j = json{
		{"subcommand", c.subcommand},
		{"units", to_string(c.units)},
		{"out", c.out_dir},
		{"config", c.config_file},
		{"seed", c.seed},
		{"tol_gap", c.tol_gap},
		{"tol_number", c.tol_number},
		{"points", c.points},
		{"lo", c.lo},
		{"hi", c.hi},
		{"density", c.density},
		{"coupling", c.coupling},
		{"ec", c.E_c},
		{"g_min", c.g_min ? json(*c.g_min) : json(nullptr)},
		{"g_max", c.g_max ? json(*c.g_max) : json(nullptr)},
		{"g_points", c.g_points},
		{"modes", c.modes ? json(*c.modes) : json(nullptr)},
		{"theta", c.theta},
		{"dphi", c.dphi},
		{"omega", c.omega},
		{"pegg_barnett_s", c.pegg_barnett_s},
		{"ensembles", c.ensembles},
		{"segments", c.segments},
		{"ej", c.E_J},
		{"delta_bar", c.delta_bar},
		{"sign", c.g_sign},
		{"seeds", c.seeds},
	};
}

namespace {

using Clock = std::chrono::steady_clock;

class Run {
public:
	Run(const RunConfig& config, std::ostream& out) : config_(config), out_(out), start_(Clock::now()) {
		started_utc_ = utc_now();
	}

	void add_file(const std::string& name, const CsvTable& table) { files_.push_back({name, table.text(), table.rows()}); }
	json& summary() { return summary_; }

	/// Writes every CSV and `<stem>.meta.json` into the output directory.
	void finish(const std::string& stem, int exit_code) {
		namespace fs = std::filesystem;
		const fs::path dir(config_.out_dir);
		fs::create_directories(dir);
		json outputs = json::array();
		for (const auto& f : files_) {
			std::ofstream os(dir / f.name, std::ios::binary);
			if (!os) throw std::runtime_error("cannot write " + (dir / f.name).string());
			os << f.text;
			outputs.push_back({{"file", f.name}, {"sha256", sha256_hex(f.text)}, {"rows", f.rows}});
			out_ << "wrote " << (dir / f.name).string() << " (" << f.rows << " rows)\n";
		}
		const double seconds = std::chrono::duration<double>(Clock::now() - start_).count();
		json meta{
			{"tool", "bcsbec"},
			{"version", tool_version},
			{"subcommand", config_.subcommand},
			{"config", config_},
			{"unit_mode", to_string(config_.units)},
			{"tolerances",
				{{"tol_gap", config_.tol_gap}, {"tol_number", config_.tol_number}, {"quadrature", quadrature_json()}}},
			{"started_utc", started_utc_},
			{"wall_clock_seconds", seconds},
			{"exit_code", exit_code},
			{"outputs", outputs},
			{"summary", summary_},
		};
		std::ofstream ms(dir / (stem + ".meta.json"));
		ms << meta.dump(2) << '\n';
	}

private:
	static std::string utc_now() {
		const std::time_t t = std::time(nullptr);
		std::tm tm{};
		gmtime_r(&t, &tm);
		char buf[32];
		std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
		return buf;
	}

	static json quadrature_json() {
		const QuadratureSpec q;
		return {{"scheme", q.scheme}, {"panels", q.panels}, {"k_max", q.k_max}, {"abs_tol", q.abs_tol}, {"rel_tol", q.rel_tol}};
	}

	struct File {
		std::string name;
		std::string text;
		std::size_t rows;
	};
	const RunConfig& config_;
	std::ostream& out_;
	Clock::time_point start_;
	std::string started_utc_;
	std::vector<File> files_;
	json summary_ = json::object();
};

PhysicalParams model_params(const RunConfig& c) {
	PhysicalParams p = default_dimensionless_params();
	p.density = c.density;
	return p;
}

SolverOptions solver_options(const RunConfig& c) {
	SolverOptions o;
	o.tol_gap = c.tol_gap;
	o.tol_number = c.tol_number;
	return o;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
	std::vector<double> g;
	for (int i = 0; i < points; ++i) g.push_back(points == 1 ? lo : lo + (hi - lo) * i / (points - 1));
	return g;
}

std::string energy_unit_name(UnitMode m) { return m == UnitMode::physical ? "eV" : "eps0"; }

int cmd_gap_sweep(const RunConfig& c, std::ostream& out) {
	Run run(c, out);
	const PhysicalParams p = model_params(c);
	const QuadratureSpec quad;
	const SolverOptions opts = solver_options(c);
	const auto sols = sweep_coupling(coupling_grid(p, c.lo, c.hi, c.points), p, quad, opts);

	CsvTable t({"U_over_Uc", "mu_over_epsF", "Delta0_over_epsF", "Delta0_over_eps0", "residual_gap", "residual_number",
		"converged"});
	int failures = 0;
	for (const auto& s : sols) {
		t.add(s.U_over_Uc()).add(s.mu / s.eps_F).add(s.Delta0 / s.eps_F).add(s.Delta0 / s.eps0);
		t.add(s.residual_gap).add(s.residual_number).add(s.status == SolveStatus::converged);
		t.end_row();
		if (s.status == SolveStatus::no_convergence || s.status == SolveStatus::invalid_input) {
			++failures;
			out << "no convergence at U/U_c = " << format_double(s.U_over_Uc()) << ": " << s.message << '\n';
		}
	}
	run.add_file("gap_sweep.csv", t);

	json crossings = json::array();
	for (std::size_t i = 1; i < sols.size(); ++i) {
		if (!sols[i - 1].usable() || !sols[i].usable()) continue;
		if ((sols[i - 1].mu > 0.0) == (sols[i].mu > 0.0)) continue;
		if (auto z = locate_mu_zero(sols[i - 1].U_over_Uc(), sols[i].U_over_Uc(), p, quad, opts)) {
			crossings.push_back(*z);
			out << "mu = 0 at U/U_c = " << format_double(*z) << '\n';
		}
	}
	run.summary() = {{"mu_zero_crossings_U_over_Uc", crossings}, {"failed_points", failures}};
	const int code = failures ? exit_no_convergence : exit_ok;
	run.finish("gap_sweep", code);
	return code;
}

int cmd_bound_state(const RunConfig& c, std::ostream& out) {
	Run run(c, out);
	const PhysicalParams p = model_params(c);
	const UnitSystem units(c.units);
	CsvTable t({"U_over_Uc", "bound", "E_b_over_eps0", "E_b"});
	for (double U : coupling_grid(p, c.lo, c.hi, c.points)) {
		PhysicalParams q = p;
		q.U = U;
		const auto Eb = bound_state_energy(q, QuadratureSpec{});
		t.add(U / critical_coupling(p)).add(Eb.has_value()).add(Eb.value_or(0.0)).add(units.energy_for_output(Eb.value_or(0.0)));
		t.end_row();
	}
	run.add_file("bound_state.csv", t);
	run.summary() = {{"energy_unit", energy_unit_name(c.units)}, {"U_c", critical_coupling(p)}};
	run.finish("bound_state", exit_ok);
	return exit_ok;
}

int cmd_phase_diagram(const RunConfig& c, std::ostream& out) {
	Run run(c, out);
	DiagramSettings settings;
	settings.units = UnitSystem(c.units);
	settings.params = model_params(c);
	settings.solver = solver_options(c);
	const auto U_grid = coupling_grid(settings.params, c.lo, c.hi, c.points);
	const auto G_grid = linear_grid(*c.g_min, *c.g_max, c.g_points);
	std::vector<double> E_c = c.E_c;
	std::sort(E_c.begin(), E_c.end());
	const DiagramSweep sweep = sweep_diagram(U_grid, E_c, G_grid, settings);

	CsvTable t({"U_over_Uc", "mu_over_epsF", "Delta0_over_eps0", "gap", "E_c", "G", "E_J", "sigma2", "pairing",
		"coherence", "status"});
	int failures = 0;
	for (const auto& cell : sweep.cells) {
		t.add(cell.U_over_Uc).add(cell.mu_over_epsF).add(cell.Delta0).add(cell.gap).add(cell.E_c).add(cell.G);
		t.add(cell.E_J).add(cell.sigma2);
		t.add(cell.labeled ? to_string(cell.label.pairing) : "unlabeled");
		t.add(cell.labeled ? to_string(cell.label.coherence) : "unlabeled");
		t.add(to_string(cell.status));
		t.end_row();
	}
	for (const auto& s : sweep.solutions)
		if (!s.usable()) ++failures;
	run.add_file("phase_diagram.csv", t);

	CsvTable b({"E_c", "U_over_Uc", "mu_over_epsF", "gap", "G_closed", "G_bisect", "E_J_rel_error", "found"});
	json regions = json::object();
	for (double e : E_c) {
		for (const auto& bp : boundary_curve(sweep.solutions, e, settings, *c.g_max)) {
			b.add(e).add(bp.U_over_Uc).add(bp.mu_over_epsF).add(bp.gap).add(bp.G_closed).add(bp.G_bisect);
			b.add(bp.E_J_rel_error).add(bp.found);
			b.end_row();
		}
		std::set<std::string> labels;
		for (const auto& cell : sweep.cells)
			if (cell.E_c == e && cell.labeled) labels.insert(to_string(cell.label));
		regions[format_double(e)] = labels;
	}
	run.add_file("boundary.csv", b);
	run.summary() = {{"energy_unit", c.units == UnitMode::physical ? "micro-eV" : "eps0"},
		{"G_unit", c.units == UnitMode::physical ? "sqrt(micro-eV)" : "sqrt(eps0)"}, {"labels_by_E_c", regions},
		{"failed_couplings", failures}};
	const int code = failures ? exit_no_convergence : exit_ok;
	run.finish("phase_diagram", code);
	return code;
}

int cmd_overlap(const RunConfig& c, std::ostream& out) {
	Run run(c, out);
	CsvTable t({"M", "abs_overlap", "log_abs_overlap", "decay_rate", "expected_rate"});
	const double expected =
		-std::log(std::abs(std::cos(c.theta) * std::cos(c.theta) + std::polar(1.0, c.dphi) * std::sin(c.theta) * std::sin(c.theta)));
	for (int M = 1; M <= *c.modes; ++M) {
		const std::vector<double> thetas(M, c.theta);
		const auto ov = bcs_overlap(thetas, c.dphi);
		const double la = std::log(std::abs(ov));
		t.add(M).add(std::abs(ov)).add(la).add(-la / M).add(expected);
		t.end_row();
	}
	run.add_file("overlap.csv", t);
	run.finish("overlap", exit_ok);
	return exit_ok;
}

int cmd_eta(const RunConfig& c, std::ostream& out) {
	Run run(c, out);
	PhysicalParams p = model_params(c);
	p.U = c.coupling * critical_coupling(p);
	const GapSolution s = solve_self_consistent(p, QuadratureSpec{}, solver_options(c));
	if (!s.usable()) {
		out << "no convergence: " << s.message << '\n';
		run.finish("eta", exit_no_convergence);
		return exit_no_convergence;
	}
	const int M = *c.modes;
	std::vector<double> ks;
	for (int i = 0; i < M; ++i) ks.push_back(2.0 * p.fermi_wavevector() * (i + 0.5) / M);
	CsvTable t({"M", "k", "theta", "omega", "eta_mean", "eta_variance", "eta_mean_fock", "eta_variance_fock"});
	for (int m = 1; m <= M; ++m) {
		const auto ens = PairEnsemble::from_momenta(std::span(ks).first(m), p, s.mu, s.Delta0);
		const auto stats = eta_statistics(ens);
		const auto fock = FockOracle(ens).eta_values(0.0);
		t.add(m).add(ks[m - 1]).add(ens.modes().back().theta).add(ens.omega()).add(stats.mean).add(stats.variance);
		t.add(fock.mean).add(fock.variance);
		t.end_row();
	}
	run.add_file("eta.csv", t);
	run.summary() = {{"mu", s.mu}, {"Delta0", s.Delta0}, {"U_over_Uc", c.coupling}};
	run.finish("eta", exit_ok);
	return exit_ok;
}

int cmd_oracle(const RunConfig& c, std::ostream& out) {
	Run run(c, out);
	SeededUniform rng(c.seed);
	const int max_modes = *c.modes;
	CsvTable t({"index", "M", "Delta0", "eta_mean", "eta_mean_fock", "eta_variance", "eta_variance_fock", "overlap_re",
		"overlap_re_fock", "overlap_im", "overlap_im_fock", "max_abs_error"});
	double worst = 0.0;
	for (int e = 0; e < c.ensembles; ++e) {
		const int M = 1 + static_cast<int>(rng() * max_modes);
		const double Delta0 = 0.05 + rng();
		std::vector<double> eps;
		for (int i = 0; i < M; ++i) eps.push_back(4.0 * rng() - 2.0);
		const double phi = 2.0 * std::numbers::pi * rng();
		const double phi2 = 2.0 * std::numbers::pi * rng();
		const auto ens = PairEnsemble::from_energies(eps, Delta0, phi);
		const FockOracle oracle(ens);
		const auto a = eta_statistics(ens);
		const auto f = oracle.eta_values(phi);
		const auto ov = bcs_overlap(ens.thetas(), phi - phi2);
		const std::complex<double> ov_f = oracle.state(phi2).dot(oracle.state(phi));
		const double err = std::max({std::abs(a.mean - f.mean), std::abs(a.variance - f.variance), std::abs(ov - ov_f)});
		worst = std::max(worst, err);
		t.add(e).add(M).add(Delta0).add(a.mean).add(f.mean).add(a.variance).add(f.variance);
		t.add(ov.real()).add(ov_f.real()).add(ov.imag()).add(ov_f.imag()).add(err);
		t.end_row();
	}
	run.add_file("oracle.csv", t);
	const bool pass = worst <= 1e-12;
	out << (pass ? "PASS" : "FAIL") << " oracle: max abs error " << format_double(worst) << '\n';
	run.summary() = {{"max_abs_error", worst}, {"tolerance", 1e-12}};
	const int code = pass ? exit_ok : exit_check_failed;
	run.finish("oracle", code);
	return code;
}

int cmd_pegg_barnett(const RunConfig& c, std::ostream& out) {
	Run run(c, out);
	CsvTable t({"s", "commutator_re", "commutator_im", "deviation", "truncation_error", "truncation_warning"});
	for (int s : {c.pegg_barnett_s, 2 * c.pegg_barnett_s, 4 * c.pegg_barnett_s}) {
		const auto r = pegg_barnett_commutator(pegg_barnett_operators(s), c.omega);
		t.add(s).add(r.commutator.real()).add(r.commutator.imag()).add(r.deviation).add(r.truncation_error);
		t.add(r.truncation_warning);
		t.end_row();
		if (r.truncation_warning)
			out << "warning: s = " << s << " is small against Omega = " << format_double(c.omega)
				<< "; truncated weight " << format_double(r.truncation_error) << '\n';
	}
	run.add_file("pegg_barnett.csv", t);
	run.finish("pegg_barnett", exit_ok);
	return exit_ok;
}

int cmd_chain(const RunConfig& c, std::ostream& out) {
	Run run(c, out);
	ChainSpec chain;
	chain.segments = c.segments;
	chain.E_c = c.E_c.front();
	chain.E_J = c.E_J;
	const ChainGroundState g = chain_ground_state(chain);
	const std::vector<double> bars(c.segments, c.delta_bar);

	CsvTable t({"j", "l", "distance", "rho"});
	if (std::isfinite(g.sigma2)) {
		const auto rho = odlro_matrix(bars, g.sigma2);
		for (int j = 0; j < c.segments; ++j)
			for (int l = 0; l < c.segments; ++l) {
				t.add(j).add(l).add(std::abs(j - l)).add(rho[j * c.segments + l]);
				t.end_row();
			}
	}
	run.add_file("chain.csv", t);

	const auto v = variance_sources(chain.E_c, chain.E_J);
	CsvTable s({"E_c", "E_J", "sigma2_stated", "sigma2_oscillator", "sigma2_oscillator_grid", "sigma2_wavefunction",
		"discrepancy", "coherence", "odlro_log_slope"});
	double grid_var = std::nan("");
	if (chain.E_J > 0.0) grid_var = oscillator_oracle(chain.E_c, chain.E_J).variance;
	const double slope = std::isfinite(g.sigma2) ? odlro_log_slope(bars, g.sigma2) : std::nan("");
	s.add(chain.E_c).add(chain.E_J).add(v.stated).add(v.oscillator).add(grid_var).add(v.wavefunction).add(v.discrepancy);
	s.add(to_string(coherence_classify(chain.E_c, chain.E_J))).add(slope);
	s.end_row();
	run.add_file("chain_summary.csv", s);
	if (!std::isfinite(g.sigma2)) out << "E_J = 0: phase variance diverges, segments are decoupled\n";
	if (v.discrepancy)
		out << "sigma^2 used for classification " << format_double(v.stated) << ", oscillator value "
			<< format_double(v.oscillator) << " (sources disagree)\n";
	run.finish("chain", exit_ok);
	return exit_ok;
}

int cmd_phase_lock(const RunConfig& c, std::ostream& out) {
	Run run(c, out);
	CsvTable t({"seed", "modes", "sign", "equal_phase_stationarity", "equal_phase_gradient_norm", "steps", "converged",
		"free_energy", "phase_spread"});
	bool all_converged = true;
	for (int i = 0; i < c.seeds; ++i) {
		const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(i);
		const auto r = variational_phase_lock(*c.modes, c.g_sign, seed);
		t.add(static_cast<long long>(seed)).add(*c.modes).add(c.g_sign).add(r.equal_phase_stationarity);
		t.add(r.equal_phase_gradient_norm).add(static_cast<long long>(r.descent.steps)).add(r.descent.converged);
		t.add(r.descent.free_energy).add(r.descent.phase_spread);
		t.end_row();
		all_converged = all_converged && r.descent.converged;
	}
	run.add_file("phase_lock.csv", t);
	const int code = all_converged ? exit_ok : exit_no_convergence;
	run.finish("phase_lock", code);
	return code;
}

int cmd_checks(const RunConfig& c, std::ostream& out) {
	if (c.list) {
		for (const auto& info : check_inventory()) out << info.name << "  " << info.description << '\n';
		return exit_ok;
	}
	Run run(c, out);
	const auto results = run_checks(c);
	CsvTable t({"check", "passed", "measurement", "warning", "note"});
	bool ok = true;
	for (const auto& r : results) {
		out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.measurement;
		if (r.warning) out << " [warning: " << r.note << "]";
		out << '\n';
		t.add(r.name).add(r.passed).add(r.measurement).add(r.warning).add(r.note);
		t.end_row();
		ok = ok && r.passed;
	}
	run.add_file("checks.csv", t);
	const int code = ok ? exit_ok : exit_check_failed;
	run.finish("checks", code);
	return code;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
	RunConfig c;
	CLI::App app{"BCS-BEC crossover, pair coherent states and Josephson chains", "bcsbec"};
	app.set_version_flag("--version", tool_version);
	CLI::Option* config_opt = app.set_config("--config", "", "key = value configuration file; flags override it");
	app.require_subcommand(1, 1);

	std::string units = "dimensionless";
	app.add_option("--units", units, "unit system")->check(CLI::IsMember({"dimensionless", "physical"}));
	app.add_option("--out", c.out_dir, "output directory");
	app.add_option("--seed", c.seed, "seed for random ensembles and descent starts");
	app.add_option("--tol-gap", c.tol_gap, "gap-equation residual tolerance");
	app.add_option("--tol-number", c.tol_number, "number-equation residual tolerance");
	app.add_option("--points", c.points, "number of couplings on the U/U_c grid");
	app.add_option("--lo", c.lo, "lowest U/U_c");
	app.add_option("--hi", c.hi, "highest U/U_c");
	app.add_option("--density", c.density, "density in units of k0^3");
	app.add_option("--coupling", c.coupling, "single U/U_c for eta");
	app.add_option("--ec", c.E_c, "charging energies (eps0, or micro-eV in physical units)")->delimiter(',');
	app.add_option("--g-min", c.g_min, "lowest hopping G");
	app.add_option("--g-max", c.g_max, "highest hopping G");
	app.add_option("--g-points", c.g_points, "number of G values");
	app.add_option("--modes", c.modes, "pair modes (overlap, eta, oracle) or box modes (phase-lock)");
	app.add_option("--theta", c.theta, "mixing angle for overlap");
	app.add_option("--dphi", c.dphi, "phase difference for overlap");
	app.add_option("--omega", c.omega, "pair number Omega for Pegg-Barnett");
	app.add_option("--pegg-barnett-s", c.pegg_barnett_s, "Pegg-Barnett truncation s");
	app.add_option("--ensembles", c.ensembles, "random ensembles for oracle");
	app.add_option("--segments", c.segments, "chain segments");
	app.add_option("--ej", c.E_J, "Josephson energy for chain");
	app.add_option("--delta-bar", c.delta_bar, "segment amplitude for chain");
	app.add_option("--sign", c.g_sign, "coupling sign for phase-lock (-1 attractive)");
	app.add_option("--seeds", c.seeds, "number of descent seeds for phase-lock");
	app.add_flag("--list", c.list, "list checks without running them");

	const std::vector<std::pair<std::string, std::string>> subcommands{
		{"gap-sweep", "solve gap and number equations along U/U_c"},
		{"bound-state", "two-body binding energy along U/U_c"},
		{"phase-diagram", "BCS/BEC and coherence labels over (U, E_c, G)"},
		{"overlap", "overlap of pair coherent states versus mode count"},
		{"eta", "eta mean and variance for a solved gap"},
		{"oracle", "analytic eta and overlaps against exact Fock-space values"},
		{"pegg-barnett", "phase-number commutator in truncated spaces"},
		{"chain", "phase variance and ODLRO of a Josephson chain"},
		{"phase-lock", "descent of the multimode free energy"},
		{"checks", "run the consolidated check suite"},
	};
	for (const auto& [name, help] : subcommands) app.add_subcommand(name, help)->fallthrough();

	std::vector<std::string> reversed(args.rbegin(), args.rend());
	try {
		app.parse(reversed);
	} catch (const CLI::Success& e) {
		app.exit(e, out, err);
		return exit_ok;
	} catch (const CLI::ParseError& e) {
		app.exit(e, out, err);
		return exit_invalid_config;
	}
	c.subcommand = app.get_subcommands().front()->get_name();
	c.units = unit_mode_from_string(units);
	if (config_opt->count() > 0) c.config_file = config_opt->as<std::string>();

	try {
		c.resolve_defaults();
		c.validate();
	} catch (const std::invalid_argument& e) {
		err << "invalid configuration: " << e.what() << '\n';
		return exit_invalid_config;
	}

	try {
		if (c.subcommand == "gap-sweep") return cmd_gap_sweep(c, out);
		if (c.subcommand == "bound-state") return cmd_bound_state(c, out);
		if (c.subcommand == "phase-diagram") return cmd_phase_diagram(c, out);
		if (c.subcommand == "overlap") return cmd_overlap(c, out);
		if (c.subcommand == "eta") return cmd_eta(c, out);
		if (c.subcommand == "oracle") return cmd_oracle(c, out);
		if (c.subcommand == "pegg-barnett") return cmd_pegg_barnett(c, out);
		if (c.subcommand == "chain") return cmd_chain(c, out);
		if (c.subcommand == "phase-lock") return cmd_phase_lock(c, out);
		return cmd_checks(c, out);
	} catch (const std::invalid_argument& e) {
		err << "invalid configuration: " << e.what() << '\n';
		return exit_invalid_config;
	}
}

} // namespace bcsbec::cli
