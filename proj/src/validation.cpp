#include "qecengine/validation.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

namespace qecengine {

namespace {

using Clock = std::chrono::steady_clock;

std::string strf(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Counts checks and keeps the first few failure messages.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failed_;
    if (examples_.size() < 8) examples_.push_back(what);
  }

  std::size_t checks() const { return checks_; }
  std::size_t failed() const { return failed_; }

  void report(CriterionResult& r, const std::string& label) const {
    r.details.push_back(strf("%s: %zu checks, %zu failed", label.c_str(), checks_, failed_));
    for (const auto& e : examples_) r.details.push_back("  " + e);
    if (failed_ > 0) r.passed = false;
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> examples_;
};

// Relative agreement, or an absolute bound when the expected value is zero.
bool agrees(double got, double want, double rel, double abs_zero) {
  if (std::abs(want) < 1e-12) return std::abs(got) <= abs_zero;
  return std::abs(got - want) <= rel * std::abs(want);
}

double relative_error(double got, double want) {
  return std::abs(want) < 1e-12 ? std::abs(got) : std::abs(got - want) / std::abs(want);
}

struct LedgerEntry {
  const char* name;
  double (*simulated)(const ThermoLedger&);
  LeadingSeries (*closed)(const ClosedLedger&);
};

const std::array<LedgerEntry, 9> kEntries{{
    {"W_e^S", [](const ThermoLedger& l) { return l.encode_work.system; },
     [](const ClosedLedger& c) { return c.encode_work.system; }},
    {"W_e^A", [](const ThermoLedger& l) { return l.encode_work.ancilla; },
     [](const ClosedLedger& c) { return c.encode_work.ancilla; }},
    {"Q_H^S", [](const ThermoLedger& l) { return l.hot_heat.system; },
     [](const ClosedLedger& c) { return c.hot_heat.system; }},
    {"Q_H^A", [](const ThermoLedger& l) { return l.hot_heat.ancilla; },
     [](const ClosedLedger& c) { return c.hot_heat.ancilla; }},
    {"W_d^S", [](const ThermoLedger& l) { return l.decode_work.system; },
     [](const ClosedLedger& c) { return c.decode_work.system; }},
    {"W_d^A", [](const ThermoLedger& l) { return l.decode_work.ancilla; },
     [](const ClosedLedger& c) { return c.decode_work.ancilla; }},
    {"W_c^S", [](const ThermoLedger& l) { return l.correct_work.system; },
     [](const ClosedLedger& c) { return c.correct_work.system; }},
    {"W_c^A", [](const ThermoLedger& l) { return l.correct_work.ancilla; },
     [](const ClosedLedger& c) { return c.correct_work.ancilla; }},
    {"Q_C^A", [](const ThermoLedger& l) { return l.cold_heat.ancilla; },
     [](const ClosedLedger& c) { return c.cold_heat_ancilla; }},
}};

double total_work(const ThermoLedger& l) {
  return l.encode_work.total() + l.decode_work.total() + l.correct_work.total();
}

// Occupations of a bath at the temperature implied by f at the system gap.
BathSpec thermal_bath(double gamma, double f, double omega_system, double omega_ancilla) {
  if (omega_system == omega_ancilla) return BathSpec::from_occupations(gamma, f, f);
  return BathSpec::from_beta(gamma, inverse_temperature(f, omega_system), omega_system, omega_ancilla);
}

std::vector<double> fit_values(const std::vector<ThermoLedger>& ledgers, const std::function<double(const ThermoLedger&)>& get) {
  std::vector<double> v;
  v.reserve(ledgers.size());
  for (const auto& l : ledgers) v.push_back(get(l));
  return v;
}

struct SeriesCase {
  const CodeSpec* code = nullptr;
  SystemState state;
  double f = 0.0;
  std::vector<BathSpec> baths;  // one per grid gamma
  std::vector<ThermoLedger> ledgers;
};

SeriesCase simulate_series(const CodeSpec& code, SystemState state, double f, const NoiseChannel& noise) {
  SeriesCase sc{&code, state, f, {}, {}};
  const DensityMatrix rho = make_state(state);
  for (double g : grid::gammas) {
    sc.baths.push_back(thermal_bath(g, f, code.omega_system, code.omega_ancilla));
    sc.ledgers.push_back(ledger(run_cycle(code, rho, sc.baths.back(), noise)));
  }
  return sc;
}

std::vector<SeriesCase> simulate_grid(const std::vector<CodeSpec>& codes, const ValidationOptions& opt) {
  struct Job {
    const CodeSpec* code;
    double p, f;
  };
  std::vector<Job> jobs;
  for (const auto& code : codes)
    for (double p : grid::populations)
      for (double f : grid::occupations) jobs.push_back({&code, p, f});
  std::vector<SeriesCase> out(jobs.size());
  const NoiseChannel noise = validation_noise(opt);
  detail::parallel_for(jobs.size(), opt.jobs, [&](std::size_t i) {
    out[i] = simulate_series(*jobs[i].code, {jobs[i].p, 0.0}, jobs[i].f, noise);
  });
  return out;
}

std::string point_label(const SeriesCase& sc) {
  return strf("%s p=%g f=%g Omega=%g omega=%g", std::string(to_string(sc.code->kind)).c_str(), sc.state.p, sc.f,
              sc.code->omega_system, sc.code->omega_ancilla);
}

// Fits every ledger entry and compares c0 and c1 with the closed form.
void compare_leading_order(const SeriesCase& sc, const ClosedLedger& closed, Tally& tally, double& worst,
                           const std::function<double(const char*)>& rel_for) {
  for (const LedgerEntry& e : kEntries) {
    const SeriesFit fit = fit_series(grid::gammas, fit_values(sc.ledgers, e.simulated), grid::fit_order);
    const LeadingSeries want = e.closed(closed);
    const double rel = rel_for(e.name);
    const double abs_zero = std::min(rel, 1e-6);
    for (int k = 0; k < 2; ++k) {
      const double got = fit.coefficient(static_cast<std::size_t>(k));
      const double expect = k == 0 ? want.constant : want.linear;
      worst = std::max(worst, std::abs(expect) < 1e-12 ? 0.0 : relative_error(got, expect));
      tally.expect(agrees(got, expect, rel, abs_zero),
                   strf("%s %s c%d: fitted %.10g, closed %.10g", point_label(sc).c_str(), e.name, k, got, expect));
    }
  }
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return v;
}

CriterionResult start(const char* id, const char* title) {
  CriterionResult r;
  r.id = id;
  r.title = title;
  r.passed = true;
  return r;
}

}  // namespace

NoiseChannel validation_noise(const ValidationOptions& options) {
  if (options.gad_perturbation == 0.0) return gad_kraus;
  const double eps = options.gad_perturbation;
  return [eps](double gamma, double f) { return gad_kraus(std::clamp(gamma * (1.0 + eps), 0.0, 1.0), f); };
}

CriterionResult check_classical_ledger(const ValidationOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult r = start("AC-1", "classical-code ledger at leading order");
  const std::vector<CodeSpec> codes{classical3_code(1.0, 1.0), classical3_code(1.0, 0.6)};
  const std::vector<SeriesCase> cases = simulate_grid(codes, opt);

  Tally tally;
  double worst = 0.0;
  for (const SeriesCase& sc : cases) {
    const BathSpec& b = sc.baths.front();
    const ClosedLedger closed =
        classical_series_closed(sc.state.p, b.f_system, b.f_ancilla, sc.code->omega_system, sc.code->omega_ancilla);
    compare_leading_order(sc, closed, tally, worst,
                          [](const char* name) {
                            const std::string n = name;
                            return n == "W_e^A" || n == "Q_H^S" || n == "Q_H^A" ? 1e-9 : 1e-3;
                          });

    const SeriesFit w = fit_series(grid::gammas, fit_values(sc.ledgers, total_work), grid::fit_order);
    const double want = classical_total_work_closed(sc.state.p, b.f_system, b.f_ancilla, 1.0, sc.code->omega_system,
                                                    sc.code->omega_ancilla);
    worst = std::max(worst, relative_error(w.coefficient(1), want));
    tally.expect(std::abs(w.coefficient(0)) <= 1e-6,
                 strf("%s W_tot c0 = %.3g, expected 0", point_label(sc).c_str(), w.coefficient(0)));
    tally.expect(agrees(w.coefficient(1), want, 1e-3, 1e-6),
                 strf("%s W_tot c1: fitted %.10g, closed %.10g", point_label(sc).c_str(), w.coefficient(1), want));
  }
  tally.report(r, "nine ledger entries and total work, c0 and c1");
  r.details.push_back(strf("worst relative deviation %.3g over %zu grid points", worst, cases.size()));

  r.seconds = seconds_since(t0);
  r.details.push_back(strf("runtime %.2f s (limit 10 s)", r.seconds));
  if (r.seconds >= 10.0) r.passed = false;
  return r;
}

CriterionResult check_laws(const ValidationOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult r = start("AC-2", "first and second law");
  const NoiseChannel noise = validation_noise(opt);

  // Every grid point of both codes.
  {
    const std::vector<CodeSpec> codes{classical3_code(1.0, 1.0), classical3_code(1.0, 0.6), shor9_code(1.0)};
    struct Job {
      const CodeSpec* code;
      double p, f, gamma;
    };
    std::vector<Job> jobs;
    for (const auto& code : codes)
      for (double p : grid::populations)
        for (double f : grid::occupations)
          for (double g : grid::gammas) jobs.push_back({&code, p, f, g});
    std::vector<FirstLawResidual> res(jobs.size());
    detail::parallel_for(jobs.size(), opt.jobs, [&](std::size_t i) {
      const Job& j = jobs[i];
      const BathSpec bath = thermal_bath(j.gamma, j.f, j.code->omega_system, j.code->omega_ancilla);
      const CycleRecord cycle = run_cycle(*j.code, make_state(j.p), bath, noise);
      res[i] = first_law_residual(ledger(cycle), cycle);
    });
    Tally tally;
    double worst = 0.0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const Job& j = jobs[i];
      worst = std::max(worst, res[i].max());
      const std::string where = strf("%s p=%g f=%g gamma=%g omega=%g", std::string(to_string(j.code->kind)).c_str(),
                                     j.p, j.f, j.gamma, j.code->omega_ancilla);
      tally.expect(res[i].max() <= 1e-10, where + strf(": first-law residual %.3g", res[i].max()));
      tally.expect(res[i].ancilla_closure <= 1e-10, where + strf(": ancilla closure %.3g", res[i].ancilla_closure));
    }
    tally.report(r, "grid first law and ancilla closure");
    r.details.push_back(strf("worst grid residual %.3g", worst));
  }

  // Randomized samples with entropies.
  for (CodeKind kind : {CodeKind::Classical3, CodeKind::Shor9}) {
    struct Sample {
      SystemState state;
      double f, gamma, omega_system, omega_ancilla;
    };
    std::mt19937_64 rng(opt.seed + (kind == CodeKind::Shor9 ? 1 : 0));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Sample> samples;
    for (std::size_t i = 0; i < opt.random_samples; ++i) {
      Sample s;
      s.state = random_bloch_ball_state(rng);
      s.f = 0.5 * unit(rng);
      s.gamma = unit(rng);
      s.omega_system = kind == CodeKind::Shor9 ? 0.5 + 1.5 * unit(rng) : 1.0;
      s.omega_ancilla = kind == CodeKind::Shor9 ? s.omega_system : 0.5 + 1.5 * unit(rng);
      samples.push_back(s);
    }
    // A zero-temperature point exercises the infinite-beta path.
    samples.push_back({{0.3, Complex(0.2, 0.1)}, 0.0, 0.05, 1.0, 1.0});

    std::vector<ThermoLedger> ledgers(samples.size());
    std::vector<FirstLawResidual> res(samples.size());
    detail::parallel_for(samples.size(), opt.jobs, [&](std::size_t i) {
      const Sample& s = samples[i];
      const CodeSpec code = make_code(kind, s.omega_system, s.omega_ancilla);
      const BathSpec bath = s.f == 0.0 ? BathSpec::from_occupations(s.gamma, 0.0, 0.0)
                                       : thermal_bath(s.gamma, s.f, s.omega_system, s.omega_ancilla);
      const CycleRecord cycle = run_cycle(code, make_state(s.state), bath, noise);
      ledgers[i] = ledger(cycle, true);
      res[i] = first_law_residual(ledgers[i], cycle);
    });

    Tally tally;
    double min_sigma_h = std::numeric_limits<double>::infinity();
    double min_sigma_c = std::numeric_limits<double>::infinity();
    double worst_decomp = 0.0;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const Sample& s = samples[i];
      const std::string where = strf("%s sample %zu (p=%.4g f=%.4g gamma=%.4g)", std::string(to_string(kind)).c_str(),
                                     i, s.state.p, s.f, s.gamma);
      tally.expect(res[i].max() <= 1e-10, where + strf(": first-law residual %.3g", res[i].max()));
      tally.expect(res[i].ancilla_closure <= 1e-10, where + strf(": ancilla closure %.3g", res[i].ancilla_closure));
      const EntropyBudget& e = *ledgers[i].entropy;
      tally.expect(e.sigma_cold >= -1e-12, where + strf(": Sigma_C = %.3g", e.sigma_cold));
      min_sigma_c = std::min(min_sigma_c, e.sigma_cold);
      if (!e.hot.finite_beta) {
        ++skipped;
        continue;
      }
      const double decomp = std::abs(e.hot.sigma - e.hot.sigma_decomposed);
      const double local = std::abs(e.sigma_total - e.sigma_total_local);
      min_sigma_h = std::min(min_sigma_h, e.hot.sigma);
      worst_decomp = std::max({worst_decomp, decomp, local});
      tally.expect(e.hot.sigma >= -1e-12, where + strf(": Sigma_H = %.3g", e.hot.sigma));
      tally.expect(decomp <= 1e-10, where + strf(": Sigma_H decomposition mismatch %.3g", decomp));
      tally.expect(local <= 1e-10, where + strf(": Sigma_total local form mismatch %.3g", local));
    }
    const std::string label = std::string(to_string(kind));
    tally.report(r, label + strf(" randomized samples (%zu + 1 at f = 0)", opt.random_samples));
    r.details.push_back(strf("%s: min Sigma_H %.3g, min Sigma_C %.3g, worst decomposition mismatch %.3g", label.c_str(),
                             min_sigma_h, min_sigma_c, worst_decomp));
    if (skipped > 0) {
      r.notices.push_back(strf("%s: %zu sample(s) with f = 0 (beta = +inf); beta-dependent checks skipped",
                               label.c_str(), skipped));
    }
  }
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult check_shor_ledger(const ValidationOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult r = start("AC-3", "Shor-code ledger");
  const NoiseChannel noise = validation_noise(opt);
  const double omega = 1.0;
  const std::vector<SeriesCase> cases = simulate_grid({shor9_code(omega)}, opt);

  Tally fits;
  Tally exact;
  double worst = 0.0;
  for (const SeriesCase& sc : cases) {
    compare_leading_order(sc, shor_series_closed(sc.state.p, sc.f, omega), fits, worst,
                          [](const char*) { return 1e-3; });
    for (std::size_t k = 0; k < sc.ledgers.size(); ++k) {
      const ThermoLedger& l = sc.ledgers[k];
      const double g = grid::gammas[k];
      const std::string where = point_label(sc) + strf(" gamma=%g", g);
      exact.expect(std::abs(l.encode_work.ancilla - 4.0 * omega) <= 1e-12,
                   where + strf(": W_e^A - 4 Omega = %.3g", l.encode_work.ancilla - 4.0 * omega));
      const ThermoLedger c = shor_ledger_closed(sc.state.p, sc.f, g, omega);
      exact.expect(std::abs(l.hot_heat.system - c.hot_heat.system) <= 1e-12,
                   where + strf(": Q_H^S off by %.3g", l.hot_heat.system - c.hot_heat.system));
      exact.expect(std::abs(l.hot_heat.ancilla - c.hot_heat.ancilla) <= 1e-12,
                   where + strf(": Q_H^A off by %.3g", l.hot_heat.ancilla - c.hot_heat.ancilla));
    }
  }
  fits.report(r, "nine ledger entries, c0 and c1");
  r.details.push_back(strf("worst relative deviation %.3g over %zu grid points", worst, cases.size()));
  exact.report(r, "W_e^A = 4 Omega and exact Q_H at every point");

  // Coherence independence: the full ledger must not move with z.
  {
    const CodeSpec code = shor9_code(omega);
    const std::array<Complex, 4> zs{Complex(0.5, 0.0), Complex(1.0, 0.0), Complex(0.0, 0.7), Complex(0.6, -0.8)};
    const std::array<double, 2> gammas{1e-3, 1e-2};
    struct Job {
      double p, gamma;
      Complex z;
    };
    std::vector<Job> jobs;
    for (double p : grid::populations)
      for (double g : gammas) {
        jobs.push_back({p, g, 0.0});
        for (Complex z : zs) jobs.push_back({p, g, z});
      }
    std::vector<ThermoLedger> ledgers(jobs.size());
    detail::parallel_for(jobs.size(), opt.jobs, [&](std::size_t i) {
      const BathSpec bath = BathSpec::from_occupations(jobs[i].gamma, 0.2, 0.2);
      ledgers[i] = ledger(run_cycle(code, make_state(jobs[i].p, jobs[i].z), bath, noise));
    });
    Tally tally;
    double worst_dz = 0.0;
    const std::size_t stride = zs.size() + 1;
    for (std::size_t base = 0; base < jobs.size(); base += stride) {
      for (std::size_t k = 1; k < stride; ++k) {
        const Job& j = jobs[base + k];
        for (const LedgerEntry& e : kEntries) {
          const double d = std::abs(e.simulated(ledgers[base + k]) - e.simulated(ledgers[base]));
          worst_dz = std::max(worst_dz, d);
          tally.expect(d <= 1e-12, strf("p=%g gamma=%g z=%g%+gi: %s moved by %.3g", j.p, j.gamma, j.z.real(),
                                        j.z.imag(), e.name, d));
        }
      }
    }
    tally.report(r, "independence of z");
    r.details.push_back(strf("largest change with z %.3g", worst_dz));
  }

  r.seconds = seconds_since(t0);
  r.details.push_back(strf("runtime %.1f s (limit 300 s)", r.seconds));
  if (r.seconds >= 300.0) r.passed = false;
  return r;
}

CriterionResult check_system_energy(const ValidationOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult r = start("AC-4", "system energy change at second order");
  const std::vector<CodeSpec> codes{classical3_code(1.0, 1.0), classical3_code(1.0, 0.6)};
  const std::vector<SeriesCase> cases = simulate_grid(codes, opt);
  auto delta_u = [](const ThermoLedger& l) { return l.delta_u_system; };

  Tally tally;
  double worst = 0.0;
  for (const SeriesCase& sc : cases) {
    const BathSpec& b = sc.baths.front();
    const SeriesFit fit = fit_series(grid::gammas, fit_values(sc.ledgers, delta_u), grid::fit_order);
    const double want = classical_delta_u_gamma2(sc.state.p, b.f_system, b.f_ancilla, sc.code->omega_system);
    worst = std::max(worst, relative_error(fit.coefficient(2), want));
    tally.expect(std::abs(fit.coefficient(0)) <= 1e-8 && std::abs(fit.coefficient(1)) <= 1e-8,
                 strf("%s: c0 = %.3g, c1 = %.3g", point_label(sc).c_str(), fit.coefficient(0), fit.coefficient(1)));
    tally.expect(agrees(fit.coefficient(2), want, 1e-3, 1e-6),
                 strf("%s: c2 fitted %.10g, closed %.10g", point_label(sc).c_str(), fit.coefficient(2), want));
  }
  tally.report(r, "Delta U_S series (c0 = c1 = 0, c2 closed form)");
  r.details.push_back(strf("worst relative deviation of c2 %.3g", worst));

  const SeriesCase spot = simulate_series(codes[0], {0.5, 0.0}, 0.2, validation_noise(opt));
  const double c2 = fit_series(grid::gammas, fit_values(spot.ledgers, delta_u), grid::fit_order).coefficient(2);
  const bool spot_ok = agrees(c2, -0.9, 1e-3, 0.0);
  r.details.push_back(strf("spot p=0.5 f=0.2: c2 = %.8f (expected -0.9) %s", c2, spot_ok ? "ok" : "MISMATCH"));
  if (!spot_ok) r.passed = false;
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult check_fidelity_scaling(const ValidationOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult r = start("AC-5", "fidelity scaling");
  const NoiseChannel noise = validation_noise(opt);
  const std::vector<double> gammas = log_spaced(1e-3, 1e-2, 9);
  const double f = 0.2;

  auto infidelities = [&](const CodeSpec& code, SystemState s, bool coded) {
    const DensityMatrix rho = make_state(s);
    std::vector<double> out;
    for (double g : gammas) {
      const BathSpec bath = BathSpec::from_occupations(g, f, f);
      const DensityMatrix o = coded ? run_cycle(code, rho, bath, noise).rho_s_out : noise_only(rho, bath, noise);
      out.push_back(1.0 - fidelity(o, rho));
    }
    return out;
  };
  auto slope_of = [&](const std::vector<double>& y) {
    try {
      return loglog_slope(gammas, y);
    } catch (const std::domain_error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };

  const SystemState diag{0.25, 0.0};
  const CodeSpec classical = classical3_code();
  const CodeSpec shor = shor9_code();
  const std::vector<double> none = infidelities(classical, diag, false);
  const std::vector<double> cl = infidelities(classical, diag, true);
  const double s_none = slope_of(none);
  const double s_cl = slope_of(cl);
  const bool none_ok = std::abs(s_none - 2.0) <= 0.05;
  const bool cl_ok = std::abs(s_cl - 4.0) <= 0.1;
  r.details.push_back(strf("no code, p=0.25 f=0.2: slope %.4f (2 +- 0.05) %s", s_none, none_ok ? "ok" : "FAIL"));
  r.details.push_back(strf("classical code: slope %.4f (4 +- 0.1) %s", s_cl, cl_ok ? "ok" : "FAIL"));
  r.details.push_back(strf("1-F at gamma=1e-3: no code %.4e (leading order %.4e), classical %.4e (leading order %.4e)",
                           none.front(), 1.0 - fidelity_closed(FidelityModel::NoCode, 0.25, f, gammas.front()),
                           cl.front(), 1.0 - fidelity_closed(FidelityModel::Classical3, 0.25, f, gammas.front())));
  r.passed = none_ok && cl_ok;

  for (SystemState s : {diag, SystemState{0.25, 1.0}}) {
    const double base = slope_of(infidelities(classical, s, false));
    const double coded = slope_of(infidelities(shor, s, true));
    const bool ok = coded > base;
    r.details.push_back(strf("Shor code, p=%g z=%g: slope %.4f vs no-code slope %.4f %s", s.p, s.z.real(), coded, base,
                             ok ? "ok" : "FAIL"));
    r.passed = r.passed && ok;
  }
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult check_efficiency(const ValidationOptions& opt) {
  const auto t0 = Clock::now();
  CriterionResult r = start("AC-6", "error-correction efficiency");
  const NoiseChannel noise = validation_noise(opt);

  auto efficiency = [&](const CodeSpec& code, SystemState s, double f, double gamma) {
    const DensityMatrix rho = make_state(s);
    const BathSpec bath = BathSpec::from_occupations(gamma, f, f);
    return efficiency_simulated(rho, run_cycle(code, rho, bath, noise).rho_s_out, noise_only(rho, bath, noise));
  };

  const CodeSpec classical = classical3_code();
  {
    Tally tally;
    double worst = 0.0, worst_defect = 0.0;
    std::size_t excluded = 0;
    const double g = 1e-3;
    for (double p : grid::populations) {
      for (double f : grid::occupations) {
        if (std::abs(p - f) < 0.02) {
          ++excluded;
          continue;
        }
        const double got = efficiency(classical, {p, 0.0}, f, g);
        const double want = efficiency_classical_closed(p, f, g);
        worst = std::max(worst, relative_error(got, want));
        worst_defect = std::max(worst_defect, relative_error(1.0 - got, 1.0 - want));
        tally.expect(agrees(got, want, 0.01, 0.0), strf("p=%g f=%g: eta %.8g vs closed %.8g", p, f, got, want));
      }
    }
    tally.report(r, "classical eta at gamma = 1e-3 within 1%");
    r.details.push_back(strf("worst relative deviation of eta %.3g; of 1 - eta %.3g", worst, worst_defect));
    r.notices.push_back(strf("%zu grid point(s) with |p - f| < 0.02 excluded", excluded));
  }

  // Efficiency against gamma for four populations at f = 0.2: the closed form
  // over a wide range, the simulation where the leading order holds.
  {
    const std::array<double, 4> ps{0.01, 0.99, 0.5, 0.25};  // expected order, highest eta first
    auto shape = [&](const std::vector<double>& gammas, const std::function<double(double, double)>& eta_of,
                     const char* what, Tally& tally) {
      std::vector<std::vector<double>> eta(ps.size());
      for (std::size_t i = 0; i < ps.size(); ++i)
        for (double g : gammas) eta[i].push_back(eta_of(ps[i], g));
      for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t k = 1; k < gammas.size(); ++k) {
          tally.expect(eta[i][k] < eta[i][k - 1], strf("%s p=%g: eta not decreasing between gamma %g and %g", what,
                                                       ps[i], gammas[k - 1], gammas[k]));
        }
      }
      for (std::size_t k = 0; k < gammas.size(); ++k) {
        for (std::size_t i = 1; i < ps.size(); ++i) {
          tally.expect(eta[i - 1][k] > eta[i][k], strf("%s gamma=%g: eta(p=%g) = %.6g not above eta(p=%g) = %.6g",
                                                       what, gammas[k], ps[i - 1], eta[i - 1][k], ps[i], eta[i][k]));
        }
      }
    };
    auto simulated = [&](double p, double g) { return efficiency(classical, {p, 0.0}, 0.2, g); };

    std::vector<double> wide;
    for (int k = 1; k <= 100; ++k) wide.push_back(0.001 * k);
    Tally closed_shape;
    shape(wide, [](double p, double g) { return efficiency_classical_closed(p, 0.2, g); }, "closed form", closed_shape);
    closed_shape.report(r, "f = 0.2 closed-form curves on gamma in (0, 0.1]: monotone, ordered p = 0.01 > 0.99 > 0.5 > 0.25");

    Tally sim_shape;
    shape(log_spaced(1e-3, 1e-2, 10), simulated, "simulated", sim_shape);
    sim_shape.report(r, "f = 0.2 simulated curves on gamma in [1e-3, 1e-2]: same shape");

    for (double g : wide) {
      const double a = simulated(0.99, g), b = simulated(0.5, g);
      if (a <= b) {
        r.notices.push_back(strf("beyond leading order the simulated eta(p=0.99) falls below eta(p=0.5) from gamma = "
                                 "%.3f (%.6f vs %.6f)",
                                 g, a, b));
        break;
      }
    }
    r.details.push_back(strf("simulated eta at gamma=0.1: p=0.01 %.4f, p=0.99 %.4f, p=0.5 %.4f, p=0.25 %.4f",
                             simulated(0.01, 0.1), simulated(0.99, 0.1), simulated(0.5, 0.1), simulated(0.25, 0.1)));
  }

  // Shor code over pure states on the Bloch sphere.
  {
    SweepConfig cfg;
    cfg.code = CodeKind::Shor9;
    cfg.bloch = BlochGrid{9, 16};
    cfg.f = {0.2};
    cfg.gamma = {0.02, 0.03};
    cfg.with_entropy = false;
    const std::vector<SweepPoint> points = expand_grid(cfg);
    const CodeSpec shor = shor9_code();
    std::vector<double> eta(points.size());
    detail::parallel_for(points.size(), opt.jobs, [&](std::size_t i) {
      eta[i] = efficiency(shor, points[i].state, points[i].f_system, points[i].gamma);
    });
    Tally tally;
    for (double g : cfg.gamma) {
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].gamma != g) continue;
        lo = std::min(lo, eta[i]);
        hi = std::max(hi, eta[i]);
        tally.expect(std::isfinite(eta[i]) && eta[i] <= 1.0 + 1e-12,
                     strf("gamma=%g p=%.4g: eta = %.6g", g, points[i].state.p, eta[i]));
      }
      r.details.push_back(strf("Shor Bloch grid 9x16, gamma=%g: eta in [%.5f, %.5f]", g, lo, hi));
    }
    tally.report(r, "Shor eta <= 1 over the Bloch sphere");
  }
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult check_error_correction(const ValidationOptions&) {
  const auto t0 = Clock::now();
  CriterionResult r = start("AC-7", "single-error correction");
  const std::vector<SystemState> states{{0.0, 0.0}, {1.0, 0.0}, {0.5, 1.0}, {0.5, Complex(0.0, 1.0)},
                                        {0.3, Complex(0.6, -0.3)}};

  auto corrected_fidelity = [](const CodeSpec& code, const DensityMatrix& rho, const PlacedGate* error) {
    DensityMatrix reg = code.encoder.apply(tensor(rho, ground_register(code.qubit_count - 1)));
    if (error) reg = apply_gate(reg, *error);
    const DensityMatrix out = partial_trace(code.decoder_corrector.apply(reg), {0});
    return fidelity(out, rho);
  };

  for (const CodeSpec& code : {shor9_code(), classical3_code()}) {
    const bool is_shor = code.kind == CodeKind::Shor9;
    const std::vector<GateKind> paulis =
        is_shor ? std::vector<GateKind>{GateKind::X, GateKind::Y, GateKind::Z} : std::vector<GateKind>{GateKind::X};
    Tally tally;
    double worst = 0.0;
    std::size_t errors = 0;
    for (const SystemState& s : states) {
      const DensityMatrix rho = make_state(s);
      const double clean = corrected_fidelity(code, rho, nullptr);
      tally.expect(clean >= 1.0 - 1e-10, strf("no error, p=%g: F = %.12f", s.p, clean));
      for (GateKind k : paulis) {
        for (std::size_t q = 0; q < code.qubit_count; ++q) {
          const PlacedGate err = PlacedGate::single(k, q, Stage::Decode);
          const double fid = corrected_fidelity(code, rho, &err);
          worst = std::max(worst, 1.0 - fid);
          tally.expect(fid >= 1.0 - 1e-10, strf("%s on qubit %zu, p=%g z=%g%+gi: F = %.12f",
                                                std::string(to_string(k)).c_str(), q, s.p, s.z.real(), s.z.imag(), fid));
        }
      }
      errors = paulis.size() * code.qubit_count;
    }
    tally.report(r, strf("%s: %zu single-qubit errors x %zu input states", std::string(to_string(code.kind)).c_str(),
                         errors, states.size()));
    r.details.push_back(strf("%s: largest 1 - F %.3g", std::string(to_string(code.kind)).c_str(), worst));
  }
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult check_performance(const ValidationOptions& opt, double elapsed_before) {
  const auto t0 = Clock::now();
  CriterionResult r = start("AC-8", "performance");
  const CodeSpec shor = shor9_code();
  const DensityMatrix rho = make_state(0.3, Complex(0.4, -0.5));
  const BathSpec bath = BathSpec::from_occupations(0.02, 0.2, 0.2);
  const NoiseChannel noise = validation_noise(opt);
  std::vector<double> times;
  for (int k = 0; k < 3; ++k) {
    const auto c0 = Clock::now();
    const ThermoLedger l = ledger(run_cycle(shor, rho, bath, noise), true);
    times.push_back(seconds_since(c0));
    if (!l.entropy) throw std::logic_error("check_performance: entropy budget missing");
  }
  std::sort(times.begin(), times.end());
  const double cycle = times[1];
  const bool cycle_ok = cycle <= 1.0;
  r.details.push_back(strf("Shor cycle with entropies: median %.3f s of 3 (limit 1 s) %s", cycle, cycle_ok ? "ok" : "FAIL"));
  r.seconds = seconds_since(t0);
  const double total = elapsed_before + r.seconds;
  const bool total_ok = total <= 600.0;
  r.details.push_back(strf("validation wall time %.1f s (limit 600 s) %s", total, total_ok ? "ok" : "FAIL"));
  if (elapsed_before == 0.0) r.notices.push_back("run on its own: wall time covers this criterion only");
  r.passed = cycle_ok && total_ok;
  return r;
}

std::vector<CriterionResult> run_validation(const ValidationOptions& options, std::span<const std::string> ids) {
  using Check = std::function<CriterionResult(const ValidationOptions&)>;
  const std::vector<std::pair<std::string, Check>> all{
      {"AC-1", check_classical_ledger}, {"AC-2", check_laws},          {"AC-3", check_shor_ledger},
      {"AC-4", check_system_energy},    {"AC-5", check_fidelity_scaling}, {"AC-6", check_efficiency},
      {"AC-7", check_error_correction},
  };
  for (const std::string& id : ids) {
    const bool known = id == "AC-8" || std::any_of(all.begin(), all.end(), [&](const auto& c) { return c.first == id; });
    if (!known) throw std::invalid_argument("unknown acceptance criterion '" + id + "'");
  }
  auto selected = [&](const std::string& id) {
    return ids.empty() || std::find(ids.begin(), ids.end(), id) != ids.end();
  };

  std::vector<CriterionResult> results;
  double elapsed = 0.0;
  for (const auto& [id, check] : all) {
    if (!selected(id)) continue;
    results.push_back(check(options));
    elapsed += results.back().seconds;
  }
  if (selected("AC-8")) results.push_back(check_performance(options, elapsed));
  return results;
}

std::string format_result_line(const CriterionResult& result) {
  return strf("%s %s  %s (%.1f s)", result.id.c_str(), result.passed ? "PASS" : "FAIL", result.title.c_str(),
              result.seconds);
}

}  // namespace qecengine
