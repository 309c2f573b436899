#include "qecengine/sweep.hpp"

#include "parallel.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <locale>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qecengine {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_number(std::string_view token) {
  token = trim(token);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw std::invalid_argument("grid spec: cannot parse number '" + std::string(token) + "'");
  }
  return value;
}

std::size_t parse_count(std::string_view token) {
  token = trim(token);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value == 0) {
    throw std::invalid_argument("grid spec: bad count '" + std::string(token) + "'");
  }
  return value;
}

// "a,b,start:stop:count[:log]"
std::vector<double> parse_axis(std::string_view values) {
  std::vector<double> out;
  for (std::string_view item : split(values, ',')) {
    item = trim(item);
    if (item.empty()) throw std::invalid_argument("grid spec: empty value");
    if (item.find(':') == std::string_view::npos) {
      out.push_back(parse_number(item));
      continue;
    }
    const auto fields = split(item, ':');
    if (fields.size() != 3 && fields.size() != 4) {
      throw std::invalid_argument("grid spec: range must be start:stop:count[:log]");
    }
    const double a = parse_number(fields[0]);
    const double b = parse_number(fields[1]);
    const std::size_t n = parse_count(fields[2]);
    const bool log = fields.size() == 4;
    if (log && trim(fields[3]) != "log") throw std::invalid_argument("grid spec: unknown range mode");
    if (log && !(a > 0.0 && b > 0.0)) throw std::invalid_argument("grid spec: log range needs positive ends");
    for (std::size_t i = 0; i < n; ++i) {
      const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
      out.push_back(log ? std::exp(std::log(a) + t * (std::log(b) - std::log(a))) : a + t * (b - a));
    }
  }
  return out;
}

BlochGrid parse_bloch(std::string_view value) {
  const auto fields = split(trim(value), 'x');
  if (fields.size() != 2) throw std::invalid_argument("grid spec: bloch must be <theta>x<phi>");
  return {parse_count(fields[0]), parse_count(fields[1])};
}

std::string format_number(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << x;
  return os.str();
}

nlohmann::json split_json(const SplitEnergy& e) {
  return {{"system", e.system}, {"ancilla", e.ancilla}, {"total", e.total()}};
}

}  // namespace

void SweepConfig::validate() const {
  auto require_nonempty = [](const std::vector<double>& v, const char* name) {
    if (v.empty()) throw std::invalid_argument(std::string("sweep: empty grid for ") + name);
  };
  if (!bloch) {
    require_nonempty(p, "p");
    require_nonempty(z_re, "z_re");
    require_nonempty(z_im, "z_im");
    for (double x : p) {
      if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("sweep: p must lie in [0, 1]");
    }
    for (double re : z_re) {
      for (double im : z_im) {
        if (std::abs(Complex(re, im)) > 1.0 + 1e-12) throw std::invalid_argument("sweep: |z| must not exceed 1");
      }
    }
  } else if (bloch->theta_steps == 0 || bloch->phi_steps == 0) {
    throw std::invalid_argument("sweep: empty Bloch grid");
  }
  if (beta.empty()) {
    require_nonempty(f, "f");
    for (double x : f) {
      if (!(x >= 0.0 && x <= 0.5)) throw std::invalid_argument("sweep: f must lie in [0, 1/2]");
    }
  } else {
    for (double b : beta) {
      if (!(b >= 0.0)) throw std::invalid_argument("sweep: beta must be non-negative");
    }
  }
  require_nonempty(gamma, "gamma");
  for (double g : gamma) {
    if (!(g >= 0.0 && g <= 1.0)) throw std::invalid_argument("sweep: gamma must lie in [0, 1]");
  }
  if (!(omega_system > 0.0) || !(omega_ancilla > 0.0)) throw std::invalid_argument("sweep: gaps must be positive");
  if (code == CodeKind::Shor9 && omega_system != omega_ancilla) {
    throw std::invalid_argument("sweep: the Shor code requires omega_ancilla == omega_system");
  }
  if (jobs == 0) throw std::invalid_argument("sweep: jobs must be at least 1");
}

void apply_grid_spec(SweepConfig& config, std::string_view spec) {
  for (std::string_view clause : split(spec, ';')) {
    clause = trim(clause);
    if (clause.empty()) continue;
    const std::size_t eq = clause.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("grid spec: expected name=values");
    const std::string_view name = trim(clause.substr(0, eq));
    const std::string_view values = clause.substr(eq + 1);
    if (name == "bloch") {
      config.bloch = parse_bloch(values);
    } else if (name == "p") {
      config.p = parse_axis(values);
    } else if (name == "z_re") {
      config.z_re = parse_axis(values);
    } else if (name == "z_im") {
      config.z_im = parse_axis(values);
    } else if (name == "f") {
      config.f = parse_axis(values);
      config.beta.clear();
    } else if (name == "beta") {
      config.beta = parse_axis(values);
    } else if (name == "gamma") {
      config.gamma = parse_axis(values);
    } else {
      throw std::invalid_argument("grid spec: unknown axis '" + std::string(name) + "'");
    }
  }
}

SweepPoint make_point(SystemState state, double f, std::optional<double> beta, double gamma, double omega_system,
                      double omega_ancilla) {
  SweepPoint pt;
  pt.state = state;
  pt.gamma = gamma;
  pt.beta = beta;
  if (beta) {
    pt.f_system = fermi_occupation(*beta, omega_system);
    pt.f_ancilla = fermi_occupation(*beta, omega_ancilla);
  } else {
    pt.f_system = f;
    pt.f_ancilla =
        omega_system == omega_ancilla ? f : fermi_occupation(inverse_temperature(f, omega_system), omega_ancilla);
  }
  return pt;
}

BathSpec bath_for(const SweepPoint& point, double omega_system, double omega_ancilla) {
  if (point.beta) return BathSpec::from_beta(point.gamma, *point.beta, omega_system, omega_ancilla);
  BathSpec b = BathSpec::from_occupations(point.gamma, point.f_system, point.f_ancilla);
  if (omega_system != omega_ancilla) b.beta_hot = inverse_temperature(point.f_system, omega_system);
  return b;
}

std::vector<SweepPoint> expand_grid(const SweepConfig& config) {
  config.validate();
  std::vector<SystemState> states;
  if (config.bloch) {
    const auto [nt, np] = *config.bloch;
    for (std::size_t i = 0; i < nt; ++i) {
      const double theta = nt == 1 ? 0.0 : std::numbers::pi * static_cast<double>(i) / static_cast<double>(nt - 1);
      for (std::size_t j = 0; j < np; ++j) {
        states.push_back(bloch_state(theta, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(np)));
      }
    }
  } else {
    for (double p : config.p)
      for (double re : config.z_re)
        for (double im : config.z_im) states.push_back({p, Complex(re, im)});
  }

  std::vector<SweepPoint> points;
  const bool by_beta = !config.beta.empty();
  const std::vector<double>& thermal = by_beta ? config.beta : config.f;
  for (const SystemState& s : states) {
    for (double t : thermal) {
      for (double g : config.gamma) {
        points.push_back(make_point(s, by_beta ? 0.0 : t, by_beta ? std::optional<double>(t) : std::nullopt, g,
                                    config.omega_system, config.omega_ancilla));
      }
    }
  }
  return points;
}

PointReport evaluate_point(const CodeSpec& code, const SweepPoint& point, bool with_entropy) {
  const BathSpec bath = bath_for(point, code.omega_system, code.omega_ancilla);
  const DensityMatrix rho = make_state(point.state);
  const CycleRecord cycle = run_cycle(code, rho, bath);
  const DensityMatrix noisy = noise_only(rho, bath);

  PointReport r;
  r.code = code.kind;
  r.point = point;
  r.omega_system = code.omega_system;
  r.omega_ancilla = code.omega_ancilla;
  r.ledger = ledger(cycle, with_entropy);
  r.first_law = first_law_residual(r.ledger, cycle);
  r.fidelity_no_code = fidelity(noisy, rho);
  r.fidelity_code = fidelity(cycle.rho_s_out, rho);
  try {
    r.efficiency = efficiency_simulated(rho, cycle.rho_s_out, noisy);
  } catch (const std::domain_error&) {
    if (point.gamma == 0.0) {
      r.efficiency = 1.0;
      r.efficiency_note = "perfect-correction limit (no noise)";
    } else {
      r.efficiency = std::numeric_limits<double>::quiet_NaN();
      r.efficiency_note = "undefined: noise had no effect on the uncoded state";
    }
  }
  return r;
}

std::vector<PointReport> run_sweep(const SweepConfig& config) {
  const std::vector<SweepPoint> points = expand_grid(config);
  const CodeSpec code = make_code(config.code, config.omega_system, config.omega_ancilla);
  std::vector<PointReport> rows(points.size());
  detail::parallel_for(points.size(), config.jobs,
                       [&](std::size_t i) { rows[i] = evaluate_point(code, points[i], config.with_entropy); });
  return rows;
}

void write_csv(std::ostream& out, std::span<const PointReport> rows) {
  out << "# " << kSweepSchema << '\n';
  out << "code,p,re_z,im_z,f,gamma,Omega,omega,W_e_S,W_e_A,Q_H_S,Q_H_A,W_d_S,W_d_A,W_c_S,W_c_A,Q_C_A,DeltaU_S,"
         "Sigma_H,Sigma_C,F_nocode,F_code,eta\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const PointReport& r : rows) {
    const ThermoLedger& l = r.ledger;
    const double sigma_h = l.entropy ? l.entropy->hot.sigma : nan;
    const double sigma_c = l.entropy ? l.entropy->sigma_cold : nan;
    const double fields[] = {r.point.state.p,      r.point.state.z.real(), r.point.state.z.imag(),
                             r.point.f_system,     r.point.gamma,          r.omega_system,
                             r.omega_ancilla,      l.encode_work.system,   l.encode_work.ancilla,
                             l.hot_heat.system,    l.hot_heat.ancilla,     l.decode_work.system,
                             l.decode_work.ancilla, l.correct_work.system, l.correct_work.ancilla,
                             l.cold_heat.ancilla,  l.delta_u_system,       sigma_h,
                             sigma_c,              r.fidelity_no_code,     r.fidelity_code,
                             r.efficiency};
    out << to_string(r.code);
    for (double x : fields) out << ',' << format_number(x);
    out << '\n';
  }
}

nlohmann::json to_json(const PointReport& r) {
  const ThermoLedger& l = r.ledger;
  nlohmann::json j;
  j["schema"] = "qecengine-run/1";
  j["code"] = std::string(to_string(r.code));
  j["parameters"] = {
      {"p", r.point.state.p},
      {"z", {{"re", r.point.state.z.real()}, {"im", r.point.state.z.imag()}}},
      {"f_system", r.point.f_system},
      {"f_ancilla", r.point.f_ancilla},
      {"gamma", r.point.gamma},
      {"omega_system", r.omega_system},
      {"omega_ancilla", r.omega_ancilla},
  };
  j["parameters"]["beta"] = r.point.beta ? nlohmann::json(*r.point.beta) : nlohmann::json(nullptr);
  j["strokes"] = {
      {"encode", {{"work", split_json(l.encode_work)}}},
      {"hot", {{"heat", split_json(l.hot_heat)}}},
      {"decode", {{"work", split_json(l.decode_work)}}},
      {"correct", {{"work", split_json(l.correct_work)}}},
      {"cold", {{"heat", split_json(l.cold_heat)}}},
  };
  j["delta_U_system"] = l.delta_u_system;
  j["first_law_residual"] = {{"global", r.first_law.global},
                             {"ancilla_closure", r.first_law.ancilla_closure},
                             {"system_form", r.first_law.system_form},
                             {"stage_replay", r.first_law.stage_replay}};
  if (l.entropy) {
    const EntropyBudget& e = *l.entropy;
    nlohmann::json hot = {{"finite_beta", e.hot.finite_beta},
                          {"beta", e.hot.beta},
                          {"Sigma_H", e.hot.sigma},
                          {"Sigma_H_decomposed", e.hot.sigma_decomposed},
                          {"DeltaS_S", e.hot.delta_s_system},
                          {"S_A3", e.hot.s_ancilla_3},
                          {"I3_SA", e.hot.mutual_info_3},
                          {"beta_Q_H_S", e.hot.beta_q_system},
                          {"beta_Q_H_A", e.hot.beta_q_ancilla}};
    j["entropy"] = {{"hot", hot},
                    {"Sigma_C", e.sigma_cold},
                    {"Sigma_total", e.sigma_total},
                    {"Sigma_total_local", e.sigma_total_local}};
  } else {
    j["entropy"] = nullptr;
  }
  j["fidelity"] = {{"no_code", r.fidelity_no_code}, {"code", r.fidelity_code}};
  j["efficiency"] = {{"eta", r.efficiency}, {"distance", "bures_squared"}};
  if (!r.efficiency_note.empty()) j["efficiency"]["note"] = r.efficiency_note;
  return j;
}

}  // namespace qecengine
