#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcsbec/core_model.hpp"

namespace bcsbec::cli {

inline constexpr const char* tool_version = "1.0.0";

enum ExitCode : int {
	exit_ok = 0,
	exit_check_failed = 1,
	exit_no_convergence = 2,
	exit_invalid_config = 3,
};

/// Everything a run depends on. Serialized into the metadata sidecar.
struct RunConfig {
	std::string subcommand;
	UnitMode units = UnitMode::dimensionless;
	std::string out_dir = "out";
	std::string config_file;
	std::uint64_t seed = 1;
	double tol_gap = 1e-10;
	double tol_number = 1e-8;

	// coupling grid (in U/U_c) and density (in k0^3)
	int points = 50;
	double lo = 0.5;
	double hi = 4.0;
	double density = 2e-2;
	double coupling = 2.0;  ///< single U/U_c for eta and bound-state style queries

	// phase diagram; E_c and G in eps0 (dimensionless) or micro-eV (physical)
	std::vector<double> E_c;
	std::optional<double> g_min;
	std::optional<double> g_max;
	int g_points = 41;

	// coherent-state algebra
	std::optional<int> modes;  ///< default depends on the subcommand
	double theta = 0.78539816339744831;
	double dphi = 1.5707963267948966;
	double omega = 4.0;
	int pegg_barnett_s = 64;
	int ensembles = 20;

	// chain
	int segments = 8;
	double E_J = 3.0;
	double delta_bar = 1.0;

	// phase lock
	int g_sign = -1;
	int seeds = 5;

	bool list = false;

	/// Diagram defaults that depend on the unit mode; fills unset fields.
	void resolve_defaults();
	void validate() const;
};

void to_json(nlohmann::json& j, const RunConfig& c);

/// Parses arguments (without the program name), runs the subcommand and returns its exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

/// Shortest round-trip-safe rendering used in every CSV: 17 significant digits.
std::string format_double(double v);

/// Builds a CSV in memory so that its hash can be recorded before it is written.
class CsvTable {
public:
	explicit CsvTable(std::vector<std::string> header);

	CsvTable& add(double v);
	CsvTable& add(long long v);
	CsvTable& add(int v) { return add(static_cast<long long>(v)); }
	CsvTable& add(bool v) { return add(static_cast<long long>(v ? 1 : 0)); }
	CsvTable& add(const std::string& v);
	void end_row();

	const std::string& text() const { return text_; }
	std::size_t rows() const { return rows_; }

private:
	void separator();
	std::size_t columns_;
	std::size_t cell_ = 0;
	std::size_t rows_ = 0;
	std::string text_;
};

struct CheckResult {
	std::string name;
	bool passed = false;
	std::string measurement;
	bool warning = false;
	std::string note;
};

struct CheckInfo {
	std::string name;
	std::string description;
};

const std::vector<CheckInfo>& check_inventory();
std::vector<CheckResult> run_checks(const RunConfig& config);

} // namespace bcsbec::cli
