// Heat, work and entropy production of one engine cycle.
//
// Sign convention: every heat and work is the energy change of the
// system+ancilla register (positive means energy flowed into the register).

#pragma once

#include "qecengine/engine.hpp"

#include <optional>

namespace qecengine {

enum class Subsystem { System, Ancilla, Register };

/// An energy change resolved into system and ancilla parts.
struct SplitEnergy {
  double system = 0.0;
  double ancilla = 0.0;

  double total() const noexcept { return system + ancilla; }
  SplitEnergy operator+(const SplitEnergy& o) const noexcept { return {system + o.system, ancilla + o.ancilla}; }
  SplitEnergy operator-(const SplitEnergy& o) const noexcept { return {system - o.system, ancilla - o.ancilla}; }
};

/// Entropy production of the hot (noise) stroke, evaluated both directly
/// and through its local/non-local decomposition.
struct HotEntropyProduction {
  bool finite_beta = true;
  double beta = 0.0;
  double sigma = 0.0;             // S(rho2) - S(rho1) - beta Q_H
  double sigma_decomposed = 0.0;  // (dS_S - beta Q_H^S) + (S(rho_A3) - beta Q_H^A) - I3(S:A)
  double delta_s_system = 0.0;    // S(rho_S') - S(rho_S)
  double s_ancilla_3 = 0.0;       // S(rho_A^(3))
  double mutual_info_3 = 0.0;     // I3(S:A)
  double beta_q_system = 0.0;     // beta Q_H^S
  double beta_q_ancilla = 0.0;    // beta Q_H^A
};

struct EntropyBudget {
  HotEntropyProduction hot;
  double sigma_cold = 0.0;         // I3(S:A) of rho3
  double sigma_total = 0.0;        // sigma_hot + sigma_cold
  double sigma_total_local = 0.0;  // dS_S - beta Q_H^S + S(rho_A3) - beta Q_H^A
};

struct ThermoLedger {
  SplitEnergy encode_work;   // W_e
  SplitEnergy hot_heat;      // Q_H
  SplitEnergy decode_work;   // W_d
  SplitEnergy correct_work;  // W_c
  SplitEnergy cold_heat;     // Q_C, system part is zero
  double delta_u_system = 0.0;
  std::optional<EntropyBudget> entropy;

  SplitEnergy decode_correct_work() const noexcept { return decode_work + correct_work; }
};

/// tr(H_sub rho) for a register state of `code`.
double energy(const DensityMatrix& rho, const CodeSpec& code, Subsystem subsystem);
SplitEnergy split_energy(const DensityMatrix& rho, const CodeSpec& code);

/// Stroke-by-stroke energy bookkeeping. The decoder-corrector is replayed
/// gate by gate and each energy increment is credited to the gate's stage.
/// With `with_entropy`, also fills the entropy budget using the bath's beta.
ThermoLedger ledger(const CycleRecord& cycle, bool with_entropy = false);

HotEntropyProduction sigma_hot(const CycleRecord& cycle, double beta_hot);
double sigma_cold(const CycleRecord& cycle);
/// Hot and cold entropy production sharing one set of entropy evaluations.
EntropyBudget entropy_budget(const CycleRecord& cycle, double beta_hot);

struct FirstLawResidual {
  double global = 0.0;           // |dU_S - (W_e + Q_H + W_d + W_c + Q_C)|
  double ancilla_closure = 0.0;  // |W_e^A + Q_H^A + W_dc^A + Q_C^A|
  double system_form = 0.0;      // |dU_S - (W_e^S + Q_H^S + W_dc^S)|
  double stage_replay = 0.0;     // |W_d + W_c - (E(rho3) - E(rho2))|

  double max() const noexcept;
};

FirstLawResidual first_law_residual(const ThermoLedger& ledger, const CycleRecord& cycle);

}  // namespace qecengine
