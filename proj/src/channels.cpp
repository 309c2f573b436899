#include "qecengine/channels.hpp"

#include "local_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qecengine {

namespace {

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " + std::to_string(x));
  }
}

}  // namespace

double KrausSet::completeness_defect() const {
  Matrix sum = Matrix::Zero(2, 2);
  for (const Matrix& m : operators) sum += m.adjoint() * m;
  return max_abs(sum - Matrix::Identity(2, 2));
}

KrausSet gad_kraus(double gamma, double f) {
  require_unit_interval(gamma, "gamma");
  require_unit_interval(f, "f");
  const double g = std::sqrt(gamma);
  const double keep = std::sqrt(1.0 - gamma);
  const double down = std::sqrt(1.0 - f);
  const double up = std::sqrt(f);
  KrausSet k;
  k.gamma = gamma;
  k.f = f;
  k.operators = {
      down * mat2(1.0, 0.0, 0.0, keep),
      down * mat2(0.0, g, 0.0, 0.0),
      up * mat2(keep, 0.0, 0.0, 1.0),
      up * mat2(0.0, 0.0, g, 0.0),
  };
  return k;
}

KrausSet identity_channel() {
  KrausSet k;
  k.operators = {Matrix::Identity(2, 2)};
  return k;
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& kraus) {
  if (rho.qubit_count() != 1) throw std::invalid_argument("apply_channel: expected a single-qubit state");
  return apply_local(rho, kraus, 0);
}

DensityMatrix apply_local(const DensityMatrix& rho, const KrausSet& kraus, std::size_t qubit) {
  if (qubit >= rho.qubit_count()) throw std::out_of_range("apply_local: qubit index out of range");
  const detail::SuperOp s = detail::superop_from_kraus(kraus.operators);
  return DensityMatrix(detail::apply_superop(rho.matrix(), s, qubit));
}

DensityMatrix reset_ancillas(const DensityMatrix& rho, const QubitSet& ancillas) {
  const std::size_t n = rho.qubit_count();
  std::vector<bool> is_ancilla(n, false);
  for (std::size_t q : ancillas) {
    if (q >= n) throw std::out_of_range("reset_ancillas: qubit index out of range");
    if (q == 0) throw std::invalid_argument("reset_ancillas: system qubit in ancilla set");
    is_ancilla[q] = true;
  }
  QubitSet keep;
  for (std::size_t q = 0; q < n; ++q) {
    if (!is_ancilla[q]) keep.push_back(q);
  }
  const DensityMatrix reduced = partial_trace(rho, keep);

  std::vector<std::size_t> full(reduced.dim());
  for (std::size_t a = 0; a < full.size(); ++a) {
    std::size_t idx = 0;
    for (std::size_t m = 0; m < keep.size(); ++m) {
      const std::size_t bit = (a >> (keep.size() - 1 - m)) & 1U;
      idx |= bit << (n - 1 - keep[m]);
    }
    full[a] = idx;
  }
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(rho.dim()), static_cast<Eigen::Index>(rho.dim()));
  for (std::size_t b = 0; b < full.size(); ++b) {
    for (std::size_t a = 0; a < full.size(); ++a) {
      out(static_cast<Eigen::Index>(full[a]), static_cast<Eigen::Index>(full[b])) = reduced(a, b);
    }
  }
  return DensityMatrix(std::move(out));
}

double fermi_occupation(double beta, double gap) {
  if (std::isinf(beta) && beta > 0) return 0.0;
  return 1.0 / (std::exp(beta * gap) + 1.0);
}

double inverse_temperature(double f, double gap) {
  if (!(gap > 0.0)) throw std::invalid_argument("inverse_temperature: gap must be positive");
  if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("inverse_temperature: f must lie in [0, 1]");
  if (f == 0.0) return std::numeric_limits<double>::infinity();
  if (f == 1.0) return -std::numeric_limits<double>::infinity();
  return std::log((1.0 - f) / f) / gap;
}

BathSpec BathSpec::from_occupations(double gamma, double f_system, double f_ancilla) {
  BathSpec b;
  b.gamma = gamma;
  b.f_system = f_system;
  b.f_ancilla = f_ancilla;
  return b;
}

BathSpec BathSpec::from_beta(double gamma, double beta, double system_gap, double ancilla_gap) {
  if (!(beta >= 0.0)) throw std::invalid_argument("BathSpec: beta must be non-negative");
  BathSpec b;
  b.gamma = gamma;
  b.beta_hot = beta;
  b.f_system = fermi_occupation(beta, system_gap);
  b.f_ancilla = fermi_occupation(beta, ancilla_gap);
  return b;
}

void BathSpec::validate(double system_gap, double ancilla_gap) const {
  require_unit_interval(gamma, "gamma");
  for (double f : {f_system, f_ancilla}) {
    if (!(f >= 0.0 && f <= 0.5)) {
      throw std::invalid_argument("excited-state probability must lie in [0, 1/2], got " + std::to_string(f));
    }
  }
  if (beta_hot) {
    const double fs = fermi_occupation(*beta_hot, system_gap);
    const double fa = fermi_occupation(*beta_hot, ancilla_gap);
    if (std::abs(fs - f_system) > 1e-12 || std::abs(fa - f_ancilla) > 1e-12) {
      throw std::invalid_argument("BathSpec: occupations inconsistent with beta");
    }
  }
}

double BathSpec::beta(double system_gap, double ancilla_gap) const {
  if (beta_hot) return *beta_hot;
  const double bs = inverse_temperature(f_system, system_gap);
  const double ba = inverse_temperature(f_ancilla, ancilla_gap);
  if (std::isinf(bs) || std::isinf(ba)) {
    if (bs == ba) return bs;
  } else if (std::abs(bs - ba) <= 1e-9 * std::max(1.0, std::abs(bs))) {
    return bs;
  }
  throw std::invalid_argument("BathSpec: f_system and f_ancilla imply different temperatures; supply beta");
}

}  // namespace qecengine
