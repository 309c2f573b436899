#include "qecengine/engine.hpp"

#include <stdexcept>
#include <string>

namespace qecengine {

std::string_view to_string(CodeKind kind) {
  switch (kind) {
    case CodeKind::Classical3: return "classical3";
    case CodeKind::Shor9: return "shor9";
  }
  return "?";
}

CodeKind parse_code_kind(std::string_view name) {
  if (name == "classical3") return CodeKind::Classical3;
  if (name == "shor9") return CodeKind::Shor9;
  throw std::invalid_argument("unknown code '" + std::string(name) + "' (expected classical3 or shor9)");
}

QubitSet CodeSpec::ancillas() const {
  QubitSet a;
  for (std::size_t q = 1; q < qubit_count; ++q) a.push_back(q);
  return a;
}

void CodeSpec::validate() const {
  if (qubit_count < 2) throw std::invalid_argument("CodeSpec: need at least one ancilla");
  if (encoder.qubit_count() != qubit_count || decoder_corrector.qubit_count() != qubit_count) {
    throw std::invalid_argument("CodeSpec: circuit register size mismatch");
  }
  if (!(omega_system > 0.0) || !(omega_ancilla > 0.0)) {
    throw std::invalid_argument("CodeSpec: gaps must be positive");
  }
  if (kind == CodeKind::Shor9 && omega_system != omega_ancilla) {
    throw std::invalid_argument("CodeSpec: the Shor code requires omega_ancilla == omega_system");
  }
  for (const PlacedGate& g : decoder_corrector.gates()) {
    if (g.stage == Stage::Encode) {
      throw std::invalid_argument("CodeSpec: decoder-corrector gates must be staged decode or correct");
    }
  }
}

CodeSpec classical3_code(double omega_system, double omega_ancilla) {
  CodeSpec c{CodeKind::Classical3, 3, omega_system, omega_ancilla, classical3_encoder(),
             classical3_decoder_corrector()};
  c.validate();
  return c;
}

CodeSpec shor9_code(double omega) {
  CodeSpec c{CodeKind::Shor9, 9, omega, omega, shor9_encoder(), shor9_decoder_corrector()};
  c.validate();
  return c;
}

CodeSpec make_code(CodeKind kind, double omega_system, double omega_ancilla) {
  if (kind == CodeKind::Classical3) return classical3_code(omega_system, omega_ancilla);
  if (omega_system != omega_ancilla) {
    throw std::invalid_argument("the Shor code requires omega_ancilla == omega_system");
  }
  return shor9_code(omega_system);
}

DensityMatrix ground_register(std::size_t qubits) { return DensityMatrix::basis(qubits, 0); }

DensityMatrix CycleRecord::register_input() const {
  return tensor(rho_in, ground_register(code.qubit_count - 1));
}

CycleRecord run_cycle(const CodeSpec& code, const DensityMatrix& rho_s, const BathSpec& bath,
                      const NoiseChannel& noise) {
  code.validate();
  bath.validate(code.omega_system, code.omega_ancilla);
  if (rho_s.qubit_count() != 1) throw std::invalid_argument("run_cycle: system state must be one qubit");

  const DensityMatrix rho0 = tensor(rho_s, ground_register(code.qubit_count - 1));
  DensityMatrix rho1 = code.encoder.apply(rho0);

  const KrausSet on_system = noise(bath.gamma, bath.f_system);
  const KrausSet on_ancilla = noise(bath.gamma, bath.f_ancilla);
  DensityMatrix rho2 = apply_local(rho1, on_system, 0);
  for (std::size_t q : code.ancillas()) rho2 = apply_local(rho2, on_ancilla, q);

  DensityMatrix rho3 = code.decoder_corrector.apply(rho2);
  DensityMatrix rho4 = reset_ancillas(rho3, code.ancillas());
  DensityMatrix out = partial_trace(rho3, {0});

  return CycleRecord{code,           bath,           rho_s,          std::move(rho1), std::move(rho2),
                     std::move(rho3), std::move(rho4), std::move(out)};
}

DensityMatrix noise_only(const DensityMatrix& rho_s, const BathSpec& bath, const NoiseChannel& noise) {
  return apply_channel(rho_s, noise(bath.gamma, bath.f_system));
}

}  // namespace qecengine
