// One four-stroke cycle of an error-correcting engine:
// encode (unitary), hot-bath noise, decode/correct (unitary), ancilla reset.

#pragma once

#include "qecengine/channels.hpp"
#include "qecengine/circuits.hpp"
#include "qecengine/linalg.hpp"

#include <functional>
#include <string>
#include <string_view>

namespace qecengine {

enum class CodeKind { Classical3, Shor9 };

std::string_view to_string(CodeKind kind);
/// Accepts "classical3" and "shor9".
CodeKind parse_code_kind(std::string_view name);

/// A code: register size, local gaps, and its two circuits. Qubit 0 is the
/// system; every other qubit is an ancilla starting in |0>.
///
/// H_S = (omega_system / 2)(1 - sigma_z) on qubit 0 and
/// H_A = (omega_ancilla / 2)(1 - sigma_z) on each ancilla.
struct CodeSpec {
  CodeKind kind;
  std::size_t qubit_count;
  double omega_system;
  double omega_ancilla;
  Circuit encoder;
  Circuit decoder_corrector;

  QubitSet ancillas() const;
  void validate() const;
};

CodeSpec classical3_code(double omega_system = 1.0, double omega_ancilla = 1.0);
/// The Shor code assumes equal system and ancilla gaps.
CodeSpec shor9_code(double omega = 1.0);
/// Throws std::invalid_argument for a Shor code with omega_ancilla != omega_system.
CodeSpec make_code(CodeKind kind, double omega_system, double omega_ancilla);

/// Produces the Kraus set for a given (gamma, f). Defaults to gad_kraus;
/// tests substitute perturbed channels.
using NoiseChannel = std::function<KrausSet(double gamma, double f)>;

/// Every state of one cycle. rho1..rho4 are full-register states after
/// strokes 1-4; rho4 == rho_s_out (x) |0..0><0..0|.
struct CycleRecord {
  CodeSpec code;
  BathSpec bath;
  DensityMatrix rho_in;
  DensityMatrix rho1;
  DensityMatrix rho2;
  DensityMatrix rho3;
  DensityMatrix rho4;
  DensityMatrix rho_s_out;

  /// Register input rho_in (x) |0..0><0..0|.
  DensityMatrix register_input() const;
};

/// |0..0><0..0| on `qubits` qubits.
DensityMatrix ground_register(std::size_t qubits);

CycleRecord run_cycle(const CodeSpec& code, const DensityMatrix& rho_s, const BathSpec& bath,
                      const NoiseChannel& noise = gad_kraus);

/// The uncoded comparison: the system-qubit channel applied to rho_s alone.
DensityMatrix noise_only(const DensityMatrix& rho_s, const BathSpec& bath, const NoiseChannel& noise = gad_kraus);

}  // namespace qecengine
