#include "qecengine/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qecengine {

namespace {

ThermoLedger evaluate(const ClosedLedger& c, double gamma) {
  auto split = [gamma](const SplitSeries& s) { return SplitEnergy{s.system.at(gamma), s.ancilla.at(gamma)}; };
  ThermoLedger l;
  l.encode_work = split(c.encode_work);
  l.hot_heat = split(c.hot_heat);
  l.decode_work = split(c.decode_work);
  l.correct_work = split(c.correct_work);
  l.cold_heat = {0.0, c.cold_heat_ancilla.at(gamma)};
  l.delta_u_system = l.encode_work.system + l.hot_heat.system + l.decode_work.system + l.correct_work.system;
  return l;
}

// p(1 - 2f) - f^2 (1 - 2p): the bracket driving the residual error of the
// classical code.
double classical_bracket(double p, double f) { return p * (1.0 - 2.0 * f) - f * f * (1.0 - 2.0 * p); }

}  // namespace

DensityMatrix make_state(double p, Complex z) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("make_state: p must lie in [0, 1]");
  if (std::abs(z) > 1.0 + 1e-12) throw std::invalid_argument("make_state: |z| > 1");
  const Complex c = z * std::sqrt(p * (1.0 - p));
  Matrix m(2, 2);
  m << 1.0 - p, c, std::conj(c), p;
  return DensityMatrix(std::move(m));
}

SystemState bloch_state(double theta, double phi) {
  const double s = std::sin(0.5 * theta);
  return {s * s, std::polar(1.0, -phi)};
}

SystemState random_bloch_ball_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = std::cbrt(unit(rng));
  const double cos_t = 2.0 * unit(rng) - 1.0;
  const double phi = 2.0 * std::numbers::pi * unit(rng);
  const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
  const double x = r * sin_t * std::cos(phi);
  const double y = r * sin_t * std::sin(phi);
  const double zb = r * cos_t;
  SystemState s;
  s.p = 0.5 * (1.0 - zb);
  const double spread = std::sqrt(s.p * (1.0 - s.p));
  if (spread > 0.0) {
    s.z = Complex(x, -y) / (2.0 * spread);
    if (std::abs(s.z) > 1.0) s.z /= std::abs(s.z);
  }
  return s;
}

ThermoLedger ClosedLedger::at(double gamma) const { return evaluate(*this, gamma); }

ClosedLedger classical_series_closed(double p, double f_system, double f_ancilla, double omega_system,
                                     double omega_ancilla) {
  const double big_w = omega_system;
  const double w = omega_ancilla;
  const double b = f_system + p * (3.0 - 2.0 * f_ancilla - 2.0 * f_system);
  ClosedLedger c;
  c.encode_work = {{0.0, 0.0}, {2.0 * p * w, 0.0}};
  c.hot_heat = {{0.0, big_w * (f_system - p)}, {0.0, 2.0 * w * (f_ancilla - p)}};
  c.decode_work = {{0.0, 0.0}, {-2.0 * p * w, 2.0 * w * b}};
  c.correct_work = {{0.0, -big_w * (f_system - p)}, {0.0, 0.0}};
  c.cold_heat_ancilla = {0.0, -2.0 * w * b - 2.0 * w * (f_ancilla - p)};
  return c;
}

ThermoLedger classical_ledger_closed(double p, double f_system, double f_ancilla, double gamma, double omega_system,
                                     double omega_ancilla) {
  return classical_series_closed(p, f_system, f_ancilla, omega_system, omega_ancilla).at(gamma);
}

double classical_total_work_closed(double p, double f_system, double f_ancilla, double gamma, double omega_system,
                                   double omega_ancilla) {
  return omega_system * gamma * (p - f_system) +
         2.0 * gamma * omega_ancilla * (p * (3.0 - 2.0 * f_ancilla) + f_system * (1.0 - 2.0 * p));
}

double classical_delta_u_gamma2(double p, double f_system, double f_ancilla, double omega_system) {
  const double fs = f_system;
  const double fa = f_ancilla;
  return omega_system * (fa * (fa + 4.0 * p - 2.0 * p * fa) + 2.0 * fs * (fa + p - 2.0 * p * fa) - 3.0 * p);
}

ClosedLedger shor_series_closed(double p, double f, double omega) {
  const double w = omega;
  const double tilt = 1.0 - 2.0 * p;
  ClosedLedger c;
  c.encode_work = {{0.5 * w * tilt, 0.0}, {4.0 * w, 0.0}};
  c.hot_heat = {{0.0, -0.5 * w * (1.0 - 2.0 * f)}, {0.0, -4.0 * w * (1.0 - 2.0 * f)}};
  c.decode_work = {{-0.5 * w * tilt, 0.75 * w * tilt}, {-4.0 * w, 6.0 * w * (2.0 - f)}};
  c.correct_work = {{0.0, -0.25 * w * (1.0 + 4.0 * f - 6.0 * p)}, {0.0, w * (1.0 - 2.0 * f)}};
  c.cold_heat_ancilla = {0.0, -9.0 * w};
  return c;
}

ThermoLedger shor_ledger_closed(double p, double f, double gamma, double omega) {
  return shor_series_closed(p, f, omega).at(gamma);
}

double efficiency_classical_closed(double p, double f, double gamma) {
  if (p == f) throw std::domain_error("efficiency undefined for p == f: the channel leaves the state fixed");
  const double b = classical_bracket(p, f);
  return 1.0 - 9.0 * gamma * gamma * b * b / ((f - p) * (f - p));
}

double fidelity_closed(FidelityModel model, double p, double f, double gamma) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("fidelity expansion is singular for p in {0, 1}");
  const double norm = 4.0 * p * (1.0 - p);
  if (model == FidelityModel::NoCode) return 1.0 - gamma * gamma * (f - p) * (f - p) / norm;
  const double b = classical_bracket(p, f);
  return 1.0 - 9.0 * std::pow(gamma, 4) * b * b / norm;
}

double state_distance(const DensityMatrix& a, const DensityMatrix& b, DistanceMeasure measure) {
  const double d2 = bures_distance_sq(a, b);
  return measure == DistanceMeasure::BuresSquared ? d2 : std::sqrt(d2);
}

double efficiency_simulated(const DensityMatrix& rho_s, const DensityMatrix& rho_s_out,
                            const DensityMatrix& rho_noise_only, DistanceMeasure measure) {
  const double denom = state_distance(rho_noise_only, rho_s, measure);
  if (denom < 1e-12) throw std::domain_error("noise had no effect");
  return 1.0 - state_distance(rho_s_out, rho_s, measure) / denom;
}

SeriesFit fit_series(std::span<const double> gammas, std::span<const double> values, std::size_t order) {
  if (gammas.size() != values.size()) throw std::invalid_argument("fit_series: grid and values differ in length");
  if (gammas.size() < order + 2) {
    throw std::invalid_argument("fit_series: need at least " + std::to_string(order + 2) + " grid points");
  }
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (!(gammas[i] > 0.0 && gammas[i] <= 0.05)) throw std::invalid_argument("fit_series: grid must lie in (0, 0.05]");
    if (i > 0 && !(gammas[i] > gammas[i - 1])) throw std::invalid_argument("fit_series: grid must be strictly increasing");
  }

  const auto rows = static_cast<Eigen::Index>(gammas.size());
  const auto cols = static_cast<Eigen::Index>(order + 1);
  const double scale = gammas.back();
  Eigen::MatrixXd v(rows, cols);
  Eigen::VectorXd y(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double t = gammas[static_cast<std::size_t>(i)] / scale;
    double pw = 1.0;
    for (Eigen::Index k = 0; k < cols; ++k, pw *= t) v(i, k) = pw;
    y(i) = values[static_cast<std::size_t>(i)];
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(v);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > 1e10) {
    throw std::invalid_argument("fit_series: ill-conditioned grid");
  }
  const Eigen::VectorXd a = v.colPivHouseholderQr().solve(y);

  SeriesFit fit;
  fit.gammas.assign(gammas.begin(), gammas.end());
  fit.values.assign(values.begin(), values.end());
  fit.coefficients.resize(order + 1);
  for (std::size_t k = 0; k <= order; ++k) {
    fit.coefficients[k] = a(static_cast<Eigen::Index>(k)) / std::pow(scale, static_cast<double>(k));
  }
  fit.residual = (v * a - y).cwiseAbs().maxCoeff();
  return fit;
}

SeriesFit fit_series(const std::function<double(double)>& f, std::size_t order, std::span<const double> gammas) {
  std::vector<double> values;
  values.reserve(gammas.size());
  for (double g : gammas) values.push_back(f(g));
  return fit_series(gammas, values, order);
}

std::optional<LeadingTerm> leading_term(const SeriesFit& fit, double threshold) {
  for (std::size_t k = 0; k < fit.coefficients.size(); ++k) {
    if (std::abs(fit.coefficients[k]) > threshold) return LeadingTerm{k, fit.coefficients[k]};
  }
  return std::nullopt;
}

double loglog_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("loglog_slope: need matching series of >= 2 points");
  double mx = 0.0, my = 0.0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0 && ys[i] > 0.0)) throw std::domain_error("loglog_slope: values must be positive");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
    mx += lx.back();
    my += ly.back();
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace qecengine
