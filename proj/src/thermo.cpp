#include "qecengine/thermo.hpp"

#include "local_ops.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qecengine {

namespace {

// Excited populations: system population, and summed ancilla excitations.
struct Populations {
  double system = 0.0;
  double ancilla_excitations = 0.0;
};

Populations populations(const Matrix& rho) {
  const std::size_t n = qubits_for_dim(static_cast<std::size_t>(rho.rows()));
  const std::size_t system_bit = std::size_t{1} << (n - 1);
  const std::size_t ancilla_mask = system_bit - 1;
  Populations p;
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    const double pop = rho(i, i).real();
    const auto idx = static_cast<std::size_t>(i);
    if (idx & system_bit) p.system += pop;
    p.ancilla_excitations += pop * std::popcount(idx & ancilla_mask);
  }
  return p;
}

double times_beta(double beta, double heat) {
  if (heat == 0.0) return 0.0;
  return beta * heat;
}

struct CycleEntropies {
  double in, s1, s2, s3, system_out, ancilla_3;
};

CycleEntropies entropies(const CycleRecord& c) {
  return {von_neumann_entropy(c.rho_in),
          von_neumann_entropy(c.rho1),
          von_neumann_entropy(c.rho2),
          von_neumann_entropy(c.rho3),
          von_neumann_entropy(c.rho_s_out),
          von_neumann_entropy(partial_trace(c.rho3, c.code.ancillas()))};
}

HotEntropyProduction hot_from(const CycleEntropies& s, const ThermoLedger& l, double beta) {
  HotEntropyProduction h;
  h.beta = beta;
  h.finite_beta = std::isfinite(beta);
  h.delta_s_system = s.system_out - s.in;
  h.s_ancilla_3 = s.ancilla_3;
  h.mutual_info_3 = s.system_out + s.ancilla_3 - s.s3;
  h.beta_q_system = times_beta(beta, l.hot_heat.system);
  h.beta_q_ancilla = times_beta(beta, l.hot_heat.ancilla);
  if (!h.finite_beta) {
    h.sigma = std::numeric_limits<double>::infinity();
    h.sigma_decomposed = std::numeric_limits<double>::infinity();
    return h;
  }
  h.sigma = (s.s2 - s.s1) - beta * l.hot_heat.total();
  h.sigma_decomposed = (h.delta_s_system - h.beta_q_system) + (h.s_ancilla_3 - h.beta_q_ancilla) - h.mutual_info_3;
  return h;
}

EntropyBudget budget_from(const CycleEntropies& s, const ThermoLedger& l, double beta) {
  EntropyBudget b;
  b.hot = hot_from(s, l, beta);
  b.sigma_cold = b.hot.mutual_info_3;
  b.sigma_total = b.hot.sigma + b.sigma_cold;
  b.sigma_total_local = b.hot.finite_beta ? b.hot.delta_s_system - b.hot.beta_q_system + b.hot.s_ancilla_3 -
                                                b.hot.beta_q_ancilla
                                          : std::numeric_limits<double>::infinity();
  return b;
}

}  // namespace

double energy(const DensityMatrix& rho, const CodeSpec& code, Subsystem subsystem) {
  const SplitEnergy e = split_energy(rho, code);
  switch (subsystem) {
    case Subsystem::System: return e.system;
    case Subsystem::Ancilla: return e.ancilla;
    case Subsystem::Register: return e.total();
  }
  return 0.0;
}

namespace {

SplitEnergy split_energy(const Matrix& rho, const CodeSpec& code) {
  const Populations p = populations(rho);
  return {code.omega_system * p.system, code.omega_ancilla * p.ancilla_excitations};
}

}  // namespace

SplitEnergy split_energy(const DensityMatrix& rho, const CodeSpec& code) {
  if (rho.qubit_count() != code.qubit_count) throw std::invalid_argument("energy: register size mismatch");
  return split_energy(rho.matrix(), code);
}

ThermoLedger ledger(const CycleRecord& cycle, bool with_entropy) {
  const CodeSpec& code = cycle.code;
  const SplitEnergy e0 = split_energy(cycle.register_input(), code);
  const SplitEnergy e1 = split_energy(cycle.rho1, code);
  const SplitEnergy e2 = split_energy(cycle.rho2, code);
  const SplitEnergy e3 = split_energy(cycle.rho3, code);
  const SplitEnergy e4 = split_energy(cycle.rho4, code);

  ThermoLedger l;
  l.encode_work = e1 - e0;
  l.hot_heat = e2 - e1;
  l.cold_heat = e4 - e3;

  Matrix state = cycle.rho2.matrix();
  SplitEnergy before = e2;
  for (const PlacedGate& g : code.decoder_corrector.gates()) {
    state = detail::conjugate_by_gate(state, g);
    const SplitEnergy after = split_energy(state, code);
    SplitEnergy& bucket = g.stage == Stage::Correct ? l.correct_work : l.decode_work;
    bucket = bucket + (after - before);
    before = after;
  }

  l.delta_u_system = code.omega_system * (cycle.rho_s_out(1, 1).real() - cycle.rho_in(1, 1).real());

  if (with_entropy) {
    const double beta = cycle.bath.beta(code.omega_system, code.omega_ancilla);
    l.entropy = budget_from(entropies(cycle), l, beta);
  }
  return l;
}

HotEntropyProduction sigma_hot(const CycleRecord& cycle, double beta_hot) {
  return hot_from(entropies(cycle), ledger(cycle), beta_hot);
}

double sigma_cold(const CycleRecord& cycle) { return mutual_information(cycle.rho3, {0}); }

EntropyBudget entropy_budget(const CycleRecord& cycle, double beta_hot) {
  return budget_from(entropies(cycle), ledger(cycle), beta_hot);
}

double FirstLawResidual::max() const noexcept {
  return std::max({global, ancilla_closure, system_form, stage_replay});
}

FirstLawResidual first_law_residual(const ThermoLedger& l, const CycleRecord& cycle) {
  const SplitEnergy dc = l.decode_correct_work();
  const double sum = l.encode_work.total() + l.hot_heat.total() + dc.total() + l.cold_heat.total();
  FirstLawResidual r;
  r.global = std::abs(l.delta_u_system - sum);
  r.ancilla_closure = std::abs(l.encode_work.ancilla + l.hot_heat.ancilla + dc.ancilla + l.cold_heat.ancilla);
  r.system_form = std::abs(l.delta_u_system - (l.encode_work.system + l.hot_heat.system + dc.system));
  const SplitEnergy stroke3 = split_energy(cycle.rho3, cycle.code) - split_energy(cycle.rho2, cycle.code);
  r.stage_replay = std::max(std::abs(dc.system - stroke3.system), std::abs(dc.ancilla - stroke3.ancilla));
  return r;
}

}  // namespace qecengine
