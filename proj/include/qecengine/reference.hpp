// Closed-form leading-order expressions for both codes, and the tooling
// used to compare simulations against them (series fits in gamma).
//
// Throughout, p is the excited-state population of the system qubit.

#pragma once

#include "qecengine/thermo.hpp"

#include <array>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace qecengine {

/// Single-qubit state with excited population p and coherence parameter z:
///   rho = [[1 - p, z sqrt(p(1-p))], [conj(z) sqrt(p(1-p)), p]].
/// |z| = 1 is a pure state.
struct SystemState {
  double p = 0.0;
  Complex z = 0.0;
};

DensityMatrix make_state(double p, Complex z = 0.0);
inline DensityMatrix make_state(const SystemState& s) { return make_state(s.p, s.z); }

/// Pure state at polar angle theta (0 = |0>) and azimuth phi.
SystemState bloch_state(double theta, double phi);
/// Uniform sample from the Bloch ball.
SystemState random_bloch_ball_state(std::mt19937_64& rng);

/// c0 + c1 * gamma.
struct LeadingSeries {
  double constant = 0.0;
  double linear = 0.0;

  double at(double gamma) const noexcept { return constant + linear * gamma; }
};

struct SplitSeries {
  LeadingSeries system;
  LeadingSeries ancilla;
};

/// Leading-order ledger: each entry as a series in gamma. Cold heat has no
/// system part.
struct ClosedLedger {
  SplitSeries encode_work;
  SplitSeries hot_heat;
  SplitSeries decode_work;
  SplitSeries correct_work;
  LeadingSeries cold_heat_ancilla;

  ThermoLedger at(double gamma) const;
};

ClosedLedger classical_series_closed(double p, double f_system, double f_ancilla, double omega_system,
                                     double omega_ancilla);
ThermoLedger classical_ledger_closed(double p, double f_system, double f_ancilla, double gamma, double omega_system,
                                     double omega_ancilla);
/// W_e + W_d + W_c for the classical code, leading order.
double classical_total_work_closed(double p, double f_system, double f_ancilla, double gamma, double omega_system,
                                   double omega_ancilla);
/// Coefficient of gamma^2 in the system energy change of the classical code.
double classical_delta_u_gamma2(double p, double f_system, double f_ancilla, double omega_system);

/// Shor code with omega_ancilla = omega_system = omega. No z dependence.
ClosedLedger shor_series_closed(double p, double f, double omega);
ThermoLedger shor_ledger_closed(double p, double f, double gamma, double omega);

/// Leading-order efficiency of the classical code. Throws std::domain_error
/// when p == f (nothing to correct).
double efficiency_classical_closed(double p, double f, double gamma);

enum class FidelityModel { NoCode, Classical3 };
/// Leading-order fidelity F(output, input) for diagonal inputs. Throws
/// std::domain_error for p in {0, 1}.
double fidelity_closed(FidelityModel model, double p, double f, double gamma);

enum class DistanceMeasure {
  BuresSquared,  // 2(1 - sqrt F)
  Bures,         // sqrt(2(1 - sqrt F))
};

double state_distance(const DensityMatrix& a, const DensityMatrix& b, DistanceMeasure measure);

/// 1 - D(out, in) / D(noisy, in). Throws std::domain_error("noise had no
/// effect") when D(noisy, in) < 1e-12.
double efficiency_simulated(const DensityMatrix& rho_s, const DensityMatrix& rho_s_out,
                            const DensityMatrix& rho_noise_only,
                            DistanceMeasure measure = DistanceMeasure::BuresSquared);

// ---------------------------------------------------------------------------
// Series extraction

struct SeriesFit {
  std::vector<double> gammas;
  std::vector<double> values;
  std::vector<double> coefficients;  // order 0..k
  double residual = 0.0;             // max |fit - value| over the grid

  double coefficient(std::size_t order) const { return order < coefficients.size() ? coefficients[order] : 0.0; }
};

/// Least-squares polynomial of degree `order` in gamma. The grid needs at
/// least order + 2 strictly increasing points in (0, 0.05].
SeriesFit fit_series(std::span<const double> gammas, std::span<const double> values, std::size_t order = 3);
SeriesFit fit_series(const std::function<double(double)>& f, std::size_t order, std::span<const double> gammas);

struct LeadingTerm {
  std::size_t order;
  double coefficient;
};

/// First coefficient with magnitude above `threshold`.
std::optional<LeadingTerm> leading_term(const SeriesFit& fit, double threshold = 1e-8);

/// Slope of log(y) against log(x) by least squares. All values must be positive.
double loglog_slope(std::span<const double> xs, std::span<const double> ys);

namespace grid {
inline constexpr std::array<double, 5> gammas{1e-4, 3e-4, 1e-3, 3e-3, 1e-2};
inline constexpr std::array<double, 4> populations{0.1, 0.25, 0.5, 0.9};
inline constexpr std::array<double, 4> occupations{0.05, 0.2, 0.35, 0.5};
inline constexpr std::size_t fit_order = 3;
inline constexpr double leading_threshold = 1e-8;
}  // namespace grid

}  // namespace qecengine
