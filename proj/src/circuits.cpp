#include "qecengine/circuits.hpp"

#include "local_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qecengine {

namespace {

std::size_t bit_of(std::size_t qubits, std::size_t qubit) { return std::size_t{1} << (qubits - 1 - qubit); }

// Basis permutation of a classical reversible gate: G|i> = |perm[i]>.
std::vector<std::size_t> permutation(const PlacedGate& g, std::size_t qubits) {
  const std::size_t dim = std::size_t{1} << qubits;
  std::vector<std::size_t> perm(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t j = i;
    switch (g.kind) {
      case GateKind::X:
        j ^= bit_of(qubits, g.targets[0]);
        break;
      case GateKind::CNOT:
      case GateKind::Toffoli: {
        const bool fire = std::all_of(g.controls.begin(), g.controls.end(),
                                      [&](std::size_t c) { return (i & bit_of(qubits, c)) != 0; });
        if (fire) j ^= bit_of(qubits, g.targets[0]);
        break;
      }
      case GateKind::SWAP: {
        const std::size_t a = bit_of(qubits, g.targets[0]);
        const std::size_t b = bit_of(qubits, g.targets[1]);
        if (((i & a) != 0) != ((i & b) != 0)) j ^= a | b;
        break;
      }
      default:
        throw std::logic_error("permutation: not a permutation gate");
    }
    perm[i] = j;
  }
  return perm;
}

}  // namespace

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::H: return "H";
    case GateKind::CNOT: return "CNOT";
    case GateKind::Toffoli: return "Toffoli";
    case GateKind::SWAP: return "SWAP";
  }
  return "?";
}

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::Encode: return "encode";
    case Stage::Decode: return "decode";
    case Stage::Correct: return "correct";
  }
  return "?";
}

PlacedGate PlacedGate::single(GateKind kind, std::size_t qubit, Stage stage) {
  return {kind, {}, {qubit}, stage};
}

PlacedGate PlacedGate::cnot(std::size_t control, std::size_t target, Stage stage) {
  return {GateKind::CNOT, {control}, {target}, stage};
}

PlacedGate PlacedGate::toffoli(std::size_t c1, std::size_t c2, std::size_t target, Stage stage) {
  return {GateKind::Toffoli, {c1, c2}, {target}, stage};
}

PlacedGate PlacedGate::swap(std::size_t a, std::size_t b, Stage stage) {
  return {GateKind::SWAP, {}, {a, b}, stage};
}

void PlacedGate::validate(std::size_t qubits) const {
  std::size_t want_controls = 0;
  std::size_t want_targets = 1;
  switch (kind) {
    case GateKind::CNOT: want_controls = 1; break;
    case GateKind::Toffoli: want_controls = 2; break;
    case GateKind::SWAP: want_targets = 2; break;
    default: break;
  }
  if (controls.size() != want_controls || targets.size() != want_targets) {
    throw std::invalid_argument("gate " + std::string(to_string(kind)) + ": wrong number of qubits");
  }
  std::vector<std::size_t> all = controls;
  all.insert(all.end(), targets.begin(), targets.end());
  for (std::size_t q : all) {
    if (q >= qubits) throw std::invalid_argument("gate qubit index out of range");
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw std::invalid_argument("gate qubit indices collide");
  }
}

bool PlacedGate::is_permutation() const noexcept {
  return kind == GateKind::X || kind == GateKind::CNOT || kind == GateKind::Toffoli || kind == GateKind::SWAP;
}

Matrix single_qubit_matrix(GateKind kind) {
  Matrix m(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case GateKind::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case GateKind::Y: m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0; break;
    case GateKind::Z: m << 1.0, 0.0, 0.0, -1.0; break;
    case GateKind::H: m << r, r, r, -r; break;
    default: throw std::invalid_argument("single_qubit_matrix: not a single-qubit gate");
  }
  return m;
}

UnitaryMatrix embed(const PlacedGate& gate, std::size_t qubits) {
  gate.validate(qubits);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << qubits);
  const Matrix id = Matrix::Identity(dim, dim);
  if (gate.is_permutation()) return UnitaryMatrix(detail::permute_rows(id, permutation(gate, qubits)));
  return UnitaryMatrix(detail::apply_left_single(id, single_qubit_matrix(gate.kind), gate.targets[0]));
}

Matrix detail::conjugate_by_gate(const Matrix& rho, const PlacedGate& gate) {
  const std::size_t n = qubits_for_dim(static_cast<std::size_t>(rho.rows()));
  gate.validate(n);
  if (gate.is_permutation()) return permute_both(rho, permutation(gate, n));
  const Matrix u = single_qubit_matrix(gate.kind);
  return apply_superop(rho, superop_from_kraus(std::span<const Matrix>(&u, 1)), gate.targets[0]);
}

DensityMatrix apply_gate(const DensityMatrix& rho, const PlacedGate& gate) {
  return DensityMatrix(detail::conjugate_by_gate(rho.matrix(), gate));
}

Circuit::Circuit(std::size_t qubits, std::vector<PlacedGate> gates) : qubits_(qubits) {
  for (auto& g : gates) add(std::move(g));
}

Circuit& Circuit::add(PlacedGate gate) {
  gate.validate(qubits_);
  gates_.push_back(std::move(gate));
  return *this;
}

UnitaryMatrix Circuit::unitary() const {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << qubits_);
  Matrix u = Matrix::Identity(dim, dim);
  for (const PlacedGate& g : gates_) {
    u = g.is_permutation() ? detail::permute_rows(u, permutation(g, qubits_))
                           : detail::apply_left_single(u, single_qubit_matrix(g.kind), g.targets[0]);
  }
  return UnitaryMatrix(std::move(u));
}

DensityMatrix Circuit::apply(const DensityMatrix& rho) const {
  if (rho.qubit_count() != qubits_) throw std::invalid_argument("Circuit::apply: register size mismatch");
  Matrix out = rho.matrix();
  for (const PlacedGate& g : gates_) out = detail::conjugate_by_gate(out, g);
  return DensityMatrix(std::move(out));
}

Circuit classical3_encoder() {
  return Circuit(3, {PlacedGate::cnot(0, 1, Stage::Encode), PlacedGate::cnot(0, 2, Stage::Encode)});
}

Circuit classical3_decoder_corrector() {
  return Circuit(3, {PlacedGate::cnot(0, 1, Stage::Decode), PlacedGate::cnot(0, 2, Stage::Decode),
                     PlacedGate::toffoli(1, 2, 0, Stage::Correct)});
}

Circuit shor9_encoder() {
  Circuit c(9);
  c.add(PlacedGate::cnot(0, 3, Stage::Encode)).add(PlacedGate::cnot(0, 6, Stage::Encode));
  for (std::size_t b : {0, 3, 6}) c.add(PlacedGate::single(GateKind::H, b, Stage::Encode));
  for (std::size_t b : {0, 3, 6}) {
    c.add(PlacedGate::cnot(b, b + 1, Stage::Encode)).add(PlacedGate::cnot(b, b + 2, Stage::Encode));
  }
  return c;
}

Circuit shor9_decoder_corrector() {
  Circuit c(9);
  for (std::size_t b : {0, 3, 6}) {
    c.add(PlacedGate::cnot(b, b + 1, Stage::Decode))
        .add(PlacedGate::cnot(b, b + 2, Stage::Decode))
        .add(PlacedGate::toffoli(b + 1, b + 2, b, Stage::Correct));
  }
  for (std::size_t b : {0, 3, 6}) c.add(PlacedGate::single(GateKind::H, b, Stage::Decode));
  c.add(PlacedGate::cnot(0, 3, Stage::Decode))
      .add(PlacedGate::cnot(0, 6, Stage::Decode))
      .add(PlacedGate::toffoli(3, 6, 0, Stage::Correct));
  return c;
}

}  // namespace qecengine
