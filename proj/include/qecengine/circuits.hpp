// Gate library and staged circuits for the two built-in codes.

#pragma once

#include "qecengine/linalg.hpp"

#include <string_view>
#include <vector>

namespace qecengine {

enum class GateKind { X, Y, Z, H, CNOT, Toffoli, SWAP };

/// Which part of a cycle a gate belongs to. Work done by a gate inside the
/// decoder-corrector is attributed to its stage.
enum class Stage { Encode, Decode, Correct };

std::string_view to_string(GateKind kind);
std::string_view to_string(Stage stage);

/// A gate placed on a register. `controls` is empty for single-qubit gates
/// and SWAP; `targets` has two entries for SWAP and one otherwise.
struct PlacedGate {
  GateKind kind;
  std::vector<std::size_t> controls;
  std::vector<std::size_t> targets;
  Stage stage;

  static PlacedGate single(GateKind kind, std::size_t qubit, Stage stage);
  static PlacedGate cnot(std::size_t control, std::size_t target, Stage stage);
  static PlacedGate toffoli(std::size_t c1, std::size_t c2, std::size_t target, Stage stage);
  static PlacedGate swap(std::size_t a, std::size_t b, Stage stage);

  /// Throws std::invalid_argument on arity mismatch, index collisions, or
  /// indices >= `qubits`.
  void validate(std::size_t qubits) const;
  bool is_permutation() const noexcept;
};

/// 2x2 matrix of a single-qubit gate kind.
Matrix single_qubit_matrix(GateKind kind);

/// Full 2^n unitary of a placed gate.
UnitaryMatrix embed(const PlacedGate& gate, std::size_t qubits);

/// G rho G^dagger for a placed gate without forming the 2^n unitary.
DensityMatrix apply_gate(const DensityMatrix& rho, const PlacedGate& gate);

/// Ordered gate list; the first gate acts first.
class Circuit {
 public:
  explicit Circuit(std::size_t qubits) : qubits_(qubits) {}
  Circuit(std::size_t qubits, std::vector<PlacedGate> gates);

  Circuit& add(PlacedGate gate);

  std::size_t qubit_count() const noexcept { return qubits_; }
  const std::vector<PlacedGate>& gates() const noexcept { return gates_; }

  /// Product of all gates (last gate leftmost).
  UnitaryMatrix unitary() const;
  DensityMatrix apply(const DensityMatrix& rho) const;

 private:
  std::size_t qubits_;
  std::vector<PlacedGate> gates_;
};

/// CNOT(0->1), CNOT(0->2).
Circuit classical3_encoder();
/// CNOT(0->1), CNOT(0->2) [decode], Toffoli(1,2->0) [correct].
Circuit classical3_decoder_corrector();
/// Shor encoder on S = 0 and ancillas 1..8.
Circuit shor9_encoder();
/// Measurement-free Shor decoder with Toffoli corrections inside each block
/// and across blocks.
Circuit shor9_decoder_corrector();

}  // namespace qecengine
