#include "qecengine/reference.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace qecengine;

namespace {

double ancilla_sum(const ClosedLedger& c, double gamma) {
  return c.encode_work.ancilla.at(gamma) + c.hot_heat.ancilla.at(gamma) + c.decode_work.ancilla.at(gamma) +
         c.correct_work.ancilla.at(gamma) + c.cold_heat_ancilla.at(gamma);
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return g;
}

}  // namespace

TEST(MakeState, Examples) {
  EXPECT_LT(max_abs(make_state(0.0, 0.0).matrix() - DensityMatrix::basis(1, 0).matrix()), 1e-15);
  EXPECT_LT(max_abs(make_state(0.5, 1.0).matrix() - 0.5 * Matrix::Ones(2, 2)), 1e-15);
  const DensityMatrix r = make_state(0.36, Complex(0.0, 0.5));
  EXPECT_NEAR(std::abs(r(0, 1) - Complex(0.0, 0.5 * 0.48)), 0.0, 1e-15);
  EXPECT_THROW(make_state(0.3, Complex(0.8, 0.8)), std::invalid_argument);
  EXPECT_THROW(make_state(1.2), std::invalid_argument);
}

TEST(MakeState, BlochStateIsPure) {
  const double theta = 1.1, phi = 2.3;
  const SystemState s = bloch_state(theta, phi);
  ComplexVector psi(2);
  psi << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
  EXPECT_LT(max_abs(make_state(s).matrix() - DensityMatrix::pure(psi).matrix()), 1e-15);
  EXPECT_NEAR(std::abs(s.z), 1.0, 1e-15);
}

TEST(MakeState, RandomBallSamplesAreStates) {
  std::mt19937_64 rng(61);
  double mean_r = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const SystemState s = random_bloch_ball_state(rng);
    ASSERT_GE(s.p, 0.0);
    ASSERT_LE(s.p, 1.0);
    ASSERT_LE(std::abs(s.z), 1.0 + 1e-15);
    const double x = 2.0 * std::abs(s.z) * std::sqrt(s.p * (1 - s.p));
    mean_r += std::sqrt(x * x + (1 - 2 * s.p) * (1 - 2 * s.p));
  }
  // Uniform in volume: E[r] = 3/4.
  EXPECT_NEAR(mean_r / 2000, 0.75, 0.02);
}

TEST(ClosedLedger, ClassicalExamples) {
  EXPECT_NEAR(classical_series_closed(0.5, 0.2, 0.2, 1.0, 2.0).encode_work.ancilla.constant, 2.0, 1e-15);
  const ThermoLedger l = classical_ledger_closed(0.25, 0.2, 0.2, 0.01, 1.0, 1.0);
  EXPECT_NEAR(l.hot_heat.system, -5e-4, 1e-16);
  EXPECT_NEAR(l.correct_work.system, 5e-4, 1e-16);
  EXPECT_NEAR(l.encode_work.ancilla, 0.5, 1e-15);
  EXPECT_NEAR(l.hot_heat.ancilla, 2 * 0.01 * (0.2 - 0.25), 1e-16);
}

TEST(ClosedLedger, ClassicalAncillaCloses) {
  for (double w : {0.6, 1.0, 1.7}) {
    const ClosedLedger c = classical_series_closed(0.3, 0.15, 0.4, 1.0, w);
    EXPECT_NEAR(ancilla_sum(c, 0.0), 0.0, 1e-15);
    EXPECT_NEAR(ancilla_sum(c, 0.01), 0.0, 1e-15);
  }
}

TEST(ClosedLedger, ShorExamples) {
  EXPECT_NEAR(shor_ledger_closed(0.5, 0.2, 0.01, 1.0).encode_work.system, 0.0, 1e-15);
  EXPECT_NEAR(shor_ledger_closed(0.25, 0.2, 0.0, 1.0).encode_work.ancilla, 4.0, 1e-15);
  EXPECT_NEAR(shor_ledger_closed(0.25, 0.2, 0.01, 1.0).cold_heat.ancilla, -0.09, 1e-15);
  EXPECT_NEAR(shor_ledger_closed(0.25, 0.2, 0.01, 1.0).correct_work.system, -7.5e-4, 1e-16);
  const ClosedLedger c = shor_series_closed(0.3, 0.35, 1.4);
  EXPECT_NEAR(ancilla_sum(c, 0.02), 0.0, 1e-14);
  EXPECT_NEAR(c.hot_heat.system.linear, -0.5 * 1.4 * (1 - 0.7), 1e-15);
}

TEST(ClosedForms, Efficiency) {
  EXPECT_NEAR(efficiency_classical_closed(0.25, 0.2, 0.05), 0.8479, 1e-12);
  EXPECT_EQ(efficiency_classical_closed(0.25, 0.2, 0.0), 1.0);
  EXPECT_THROW(efficiency_classical_closed(0.2, 0.2, 0.01), std::domain_error);
}

TEST(ClosedForms, Fidelity) {
  EXPECT_NEAR(fidelity_closed(FidelityModel::NoCode, 0.2, 0.2, 0.1), 1.0, 1e-15);
  EXPECT_NEAR(1.0 - fidelity_closed(FidelityModel::NoCode, 0.25, 0.2, 0.01), 3.333e-7, 0.001e-7);
  const double b = 0.25 * 0.6 - 0.04 * 0.5;
  EXPECT_NEAR(1.0 - fidelity_closed(FidelityModel::Classical3, 0.25, 0.2, 0.01), 9e-8 * b * b / 0.75, 1e-15);
  EXPECT_THROW(fidelity_closed(FidelityModel::NoCode, 0.0, 0.2, 0.01), std::domain_error);
  EXPECT_THROW(fidelity_closed(FidelityModel::Classical3, 1.0, 0.2, 0.01), std::domain_error);
}

TEST(SimulatedEfficiency, Limits) {
  const DensityMatrix in = make_state(0.25);
  const DensityMatrix noisy = make_state(0.3);
  EXPECT_NEAR(efficiency_simulated(in, in, noisy), 1.0, 1e-12);
  EXPECT_NEAR(efficiency_simulated(in, noisy, noisy), 0.0, 1e-12);
  EXPECT_NEAR(state_distance(DensityMatrix::basis(1, 0), DensityMatrix::basis(1, 1), DistanceMeasure::Bures),
              std::sqrt(2.0), 1e-15);
  try {
    efficiency_simulated(in, noisy, in);
    FAIL() << "expected an exception";
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("noise had no effect"), std::string::npos);
  }
}

TEST(FitSeries, RecoversPolynomials) {
  const std::vector<double> g(grid::gammas.begin(), grid::gammas.end());
  const SeriesFit linear = fit_series([](double x) { return 3.0 * x; }, 3, g);
  EXPECT_NEAR(linear.coefficient(0), 0.0, 1e-12);
  EXPECT_NEAR(linear.coefficient(1), 3.0, 1e-9);
  const SeriesFit quad = fit_series([](double x) { return 1.0 - 2.0 * x * x; }, 3, g);
  EXPECT_NEAR(quad.coefficient(0), 1.0, 1e-12);
  EXPECT_NEAR(quad.coefficient(1), 0.0, 1e-9);
  EXPECT_NEAR(quad.coefficient(2), -2.0, 1e-6);
  EXPECT_EQ(quad.coefficient(9), 0.0);
  EXPECT_LT(quad.residual, 1e-12);
}

TEST(FitSeries, RejectsBadGrids) {
  const std::vector<double> few{1e-3, 2e-3, 3e-3};
  const std::vector<double> vals{1, 2, 3};
  EXPECT_THROW(fit_series(few, vals, 3), std::invalid_argument);
  const std::vector<double> unordered{1e-3, 3e-3, 2e-3, 4e-3, 5e-3};
  const std::vector<double> five{1, 2, 3, 4, 5};
  EXPECT_THROW(fit_series(unordered, five, 3), std::invalid_argument);
  const std::vector<double> large{1e-3, 2e-3, 3e-3, 4e-3, 0.2};
  EXPECT_THROW(fit_series(large, five, 3), std::invalid_argument);
  EXPECT_THROW(fit_series(large, few, 1), std::invalid_argument);
}

TEST(FitSeries, LeadingTerm) {
  const std::vector<double> g(grid::gammas.begin(), grid::gammas.end());
  const auto lt = leading_term(fit_series([](double x) { return -0.9 * x * x + x * x * x; }, 3, g));
  ASSERT_TRUE(lt);
  EXPECT_EQ(lt->order, 2u);
  EXPECT_NEAR(lt->coefficient, -0.9, 1e-6);
  EXPECT_FALSE(leading_term(fit_series([](double) { return 0.0; }, 3, g)));
}

TEST(LogLogSlope, PowerLaws) {
  const std::vector<double> x = log_grid(1e-3, 1e-2, 7);
  std::vector<double> y;
  for (double v : x) y.push_back(5.0 * std::pow(v, 4));
  EXPECT_NEAR(loglog_slope(x, y), 4.0, 1e-10);
  y[2] = -1.0;
  EXPECT_THROW(loglog_slope(x, y), std::domain_error);
}
