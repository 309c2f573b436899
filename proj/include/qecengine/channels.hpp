// Single-qubit noise channels and their action on one qubit of a register.

#pragma once

#include "qecengine/linalg.hpp"

#include <optional>
#include <vector>

namespace qecengine {

/// Kraus representation of a single-qubit channel. `gamma` and `f` record
/// the generalized amplitude damping parameters the set was built from.
struct KrausSet {
  std::vector<Matrix> operators;  // 2x2 each
  double gamma = 0.0;
  double f = 0.0;

  /// max |sum_k M_k^dagger M_k - I|.
  double completeness_defect() const;
};

/// Generalized amplitude damping with coupling `gamma` toward excited-state
/// probability `f`: p' = (1 - gamma) p + gamma f, coherences scale by
/// sqrt(1 - gamma). Both parameters must lie in [0, 1].
KrausSet gad_kraus(double gamma, double f);

/// The identity channel as a single Kraus operator.
KrausSet identity_channel();

/// Apply a channel to a single-qubit state.
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& kraus);

/// Apply a channel to `qubit` of a register, identity elsewhere.
DensityMatrix apply_local(const DensityMatrix& rho, const KrausSet& kraus, std::size_t qubit);

/// Trace out `ancillas` and put them back in |0>, in place. Qubit 0 (the
/// system) may not be reset.
DensityMatrix reset_ancillas(const DensityMatrix& rho, const QubitSet& ancillas);

/// Fermi-Dirac occupation 1 / (exp(beta * gap) + 1).
double fermi_occupation(double beta, double gap);

/// Inverse temperature ln((1 - f) / f) / gap. Returns +infinity for f = 0.
double inverse_temperature(double f, double gap);

/// Hot-bath parameters: coupling and the excited-state probabilities seen
/// by the system qubit (gap Omega) and each ancilla (gap omega).
struct BathSpec {
  double gamma = 0.0;
  double f_system = 0.0;
  double f_ancilla = 0.0;
  std::optional<double> beta_hot;  // when set, both f values derive from it

  /// Both occupations given directly; beta is left for later derivation.
  static BathSpec from_occupations(double gamma, double f_system, double f_ancilla);
  /// Occupations derived from one inverse temperature for both gaps.
  static BathSpec from_beta(double gamma, double beta, double system_gap, double ancilla_gap);

  /// Throws std::invalid_argument on gamma outside [0, 1], f outside
  /// [0, 1/2], or a beta inconsistent with the stored occupations.
  void validate(double system_gap, double ancilla_gap) const;

  /// Inverse temperature of the hot bath: the stored beta, or the one
  /// implied by f_system (which must agree with f_ancilla). +infinity when
  /// f = 0.
  double beta(double system_gap, double ancilla_gap) const;
};

}  // namespace qecengine
