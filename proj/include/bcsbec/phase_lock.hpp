#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace bcsbec {

/// Real four-index coupling g_{nm,ts}, stored densely (M <= 6).
class CouplingTensor {
public:
	explicit CouplingTensor(int modes);

	int modes() const { return M_; }
	double& operator()(int n, int m, int t, int s) { return data_[index(n, m, t, s)]; }
	double operator()(int n, int m, int t, int s) const { return data_[index(n, m, t, s)]; }

	/// Averages over n<->m, t<->s and (nm)<->(ts).
	void symmetrize();
	double max_asymmetry() const;

private:
	std::size_t index(int n, int m, int t, int s) const {
		return ((static_cast<std::size_t>(n) * M_ + m) * M_ + t) * M_ + s;
	}
	int M_;
	std::vector<double> data_;
};

/// Box eigenfunctions u_n(x) = sqrt(2/L) sin(n pi x/L), n = 1..M, with
/// g_{nm,ts} = g \int_0^L u_n u_m u_t u_s dx by composite Simpson on `intervals` intervals.
CouplingTensor box_mode_tensor(int modes, double length, double g, int intervals = 2048);

/// Single-particle energies (n pi / L)^2 / 2 in units hbar = m = 1.
std::vector<double> box_mode_energies(int modes, double length);

/// Random tensor with entries uniform in [-1, 1], symmetrized.
CouplingTensor random_coupling_tensor(int modes, std::uint64_t seed);

/// Coherent-state free energy
///   F = sum_n (E_n - mu) a_n^2 + 1/2 sum g_{nm,ts} a_n a_m a_t a_s cos(phi_t + phi_s - phi_n - phi_m).
struct PhaseLockModel {
	CouplingTensor coupling;
	std::vector<double> energies;
	double mu = 0.0;

	double free_energy(std::span<const double> phases, std::span<const double> amplitudes) const;

	struct Gradient {
		std::vector<double> phases;
		std::vector<double> amplitudes;
	};
	Gradient gradient(std::span<const double> phases, std::span<const double> amplitudes) const;

	/// Norm over n of the left-hand side of the phase stationarity condition
	///   sum_{m,ts} g_{nm,ts} a_n a_m a_t a_s e^{i(phi_s - phi_t)} sin(phi_n - phi_m) = 0.
	double stationarity_residual(std::span<const double> phases, std::span<const double> amplitudes) const;
};

struct DescentOptions {
	double step = 1e-2;
	double gradient_tolerance = 1e-10;
	long max_steps = 100000;
	double particle_number = 10.0;  ///< sum a_n^2 held fixed
	double empty_mode_fraction = 1e-8;  ///< modes with a_n^2 below this share carry no phase
};

struct DescentResult {
	std::vector<double> phases;
	std::vector<double> amplitudes;  ///< signed, after folding phases modulo pi
	std::vector<double> raw_phases;
	double free_energy = 0.0;
	double gradient_norm = 0.0;
	long steps = 0;
	bool converged = false;
	double phase_spread = 0.0;  ///< max pairwise difference of occupied-mode phases, modulo pi
};

/// Projected gradient descent over phases and amplitudes on the sphere
/// sum a_n^2 = particle_number, started from seeded random values.
DescentResult descend_phases(const PhaseLockModel& model, std::uint64_t seed, const DescentOptions& opts = {});

/// Spread of the gauge-folded phases. (a, phi) and (-a, phi + pi) describe the
/// same mode, so phases are compared modulo pi; empty modes are skipped.
double folded_phase_spread(std::span<const double> phases, std::span<const double> amplitudes, double empty_threshold);

struct PhaseLockOptions {
	double box_length = 4.0;
	double coupling_magnitude = 1.0;
	double mu = 0.0;
	DescentOptions descent;
};

struct PhaseLockReport {
	int modes = 0;
	int g_sign = 0;
	double equal_phase_gradient_norm = 0.0;
	double equal_phase_stationarity = 0.0;
	DescentResult descent;
};

/// Checks stationarity at equal phases and runs the seeded descent for box modes.
PhaseLockReport variational_phase_lock(int modes, int g_sign, std::uint64_t seed, const PhaseLockOptions& opts = {});

/// Uniform [0, 1) draws from mt19937_64 using the top 53 bits, so sequences do not
/// depend on the standard library's distribution implementation.
class SeededUniform {
public:
	explicit SeededUniform(std::uint64_t seed) : engine_(seed) {}
	double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
	std::mt19937_64 engine_;
};

} // namespace bcsbec
