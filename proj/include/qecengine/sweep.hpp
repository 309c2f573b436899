// Parameter sweeps over single cycles and their serialization.

#pragma once

#include "qecengine/reference.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qecengine {

inline constexpr std::string_view kSweepSchema = "qecengine-sweep/1";

/// Pure states on the Bloch sphere: theta in [0, pi] (inclusive, `theta_steps`
/// points) and phi in [0, 2 pi) (`phi_steps` points).
struct BlochGrid {
  std::size_t theta_steps = 0;
  std::size_t phi_steps = 0;
};

struct SweepConfig {
  CodeKind code = CodeKind::Classical3;
  std::vector<double> p{0.25};
  std::vector<double> z_re{0.0};
  std::vector<double> z_im{0.0};
  std::vector<double> f{0.2};
  std::vector<double> beta;  // when non-empty, replaces f
  std::vector<double> gamma{0.01};
  std::optional<BlochGrid> bloch;  // when set, replaces p / z_re / z_im
  double omega_system = 1.0;
  double omega_ancilla = 1.0;
  bool with_entropy = true;
  std::size_t jobs = 1;

  /// Throws std::invalid_argument on empty axes or out-of-domain values.
  void validate() const;
};

/// Applies a grid specification such as
///   "p=0.1,0.5;gamma=1e-3:1e-2:5:log;f=0.2"  or  "bloch=9x16;gamma=0.02,0.03".
/// Each axis is a comma list whose items are numbers or ranges
/// start:stop:count[:log]. Axes: p, z_re, z_im, f, beta, gamma, bloch.
void apply_grid_spec(SweepConfig& config, std::string_view spec);

struct SweepPoint {
  SystemState state;
  double f_system = 0.0;
  double f_ancilla = 0.0;
  std::optional<double> beta;
  double gamma = 0.0;
};

/// Grid points in lexicographic order over (p, z_re, z_im, f|beta, gamma),
/// or (theta, phi, f|beta, gamma) for a Bloch grid.
std::vector<SweepPoint> expand_grid(const SweepConfig& config);

/// Bath for a point. When only f is known and the gaps differ, the ancilla
/// occupation follows from the temperature implied by f at the system gap.
BathSpec bath_for(const SweepPoint& point, double omega_system, double omega_ancilla);
SweepPoint make_point(SystemState state, double f, std::optional<double> beta, double gamma, double omega_system,
                      double omega_ancilla);

struct PointReport {
  CodeKind code = CodeKind::Classical3;
  SweepPoint point;
  double omega_system = 1.0;
  double omega_ancilla = 1.0;
  ThermoLedger ledger;
  FirstLawResidual first_law;
  double fidelity_no_code = 0.0;
  double fidelity_code = 0.0;
  double efficiency = 0.0;
  std::string efficiency_note;  // set when efficiency is a limit value or undefined
};

PointReport evaluate_point(const CodeSpec& code, const SweepPoint& point, bool with_entropy);

/// Evaluates every grid point (on `config.jobs` workers) in grid order.
std::vector<PointReport> run_sweep(const SweepConfig& config);

void write_csv(std::ostream& out, std::span<const PointReport> rows);
nlohmann::json to_json(const PointReport& report);

}  // namespace qecengine
