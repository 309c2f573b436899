#include "qecengine/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qecengine {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square and non-empty");
  }
}

double hermitian_defect(const Matrix& m) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  }
  return worst;
}

// Debug builds re-check positivity after each state-producing operation.
// Skipped for large registers where a diagonalization per call is too slow.
void debug_check_state([[maybe_unused]] const DensityMatrix& rho) {
#ifndef NDEBUG
  if (rho.dim() <= 64) {
    assert(rho.min_eigenvalue() >= -tolerance::positivity);
  }
#endif
}

double entropy_of_spectrum(const RealVector& lambda) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double l = lambda(i);
    if (l < -tolerance::positivity) {
      throw std::domain_error("state not positive (eigenvalue " + std::to_string(l) + ")");
    }
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

}  // namespace

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

std::size_t qubits_for_dim(std::size_t dim) {
  if (dim == 0 || !std::has_single_bit(dim)) {
    throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
  }
  return static_cast<std::size_t>(std::countr_zero(dim));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Matrix entries) : m_(std::move(entries)) {
  require_square(m_, "DensityMatrix");
  qubits_ = qubits_for_dim(dim());
  const double herm = hermitian_defect(m_);
  if (herm > tolerance::hermitian) {
    throw std::invalid_argument("DensityMatrix: not Hermitian (defect " + std::to_string(herm) + ")");
  }
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > tolerance::trace) {
    throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr) + " != 1");
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  if (std::abs(psi.norm() - 1.0) > tolerance::trace) {
    throw std::invalid_argument("DensityMatrix::pure: state vector not normalized");
  }
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::basis(std::size_t qubits, std::size_t index) {
  const auto dim = std::size_t{1} << qubits;
  if (index >= dim) throw std::out_of_range("DensityMatrix::basis: index out of range");
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return DensityMatrix(std::move(m));
}

double DensityMatrix::min_eigenvalue() const { return eigenvalues_hermitian(m_)(0); }

// ---------------------------------------------------------------------------
// UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(Matrix entries) : m_(std::move(entries)) {
  require_square(m_, "UnitaryMatrix");
  const Matrix gram = m_.adjoint() * m_;
  const double defect = max_abs(gram - Matrix::Identity(m_.rows(), m_.cols()));
  if (defect > tolerance::unitarity) {
    throw std::invalid_argument("UnitaryMatrix: U^dagger U != I (defect " + std::to_string(defect) + ")");
  }
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  return UnitaryMatrix(Matrix::Identity(d, d));
}

// ---------------------------------------------------------------------------
// Operations

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  DensityMatrix out(tensor(a.matrix(), b.matrix()));
  debug_check_state(out);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, QubitSet keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: must keep at least one qubit");
  const std::size_t n = rho.qubit_count();
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw std::invalid_argument("partial_trace: duplicate qubit index");
  }
  if (keep.back() >= n) throw std::out_of_range("partial_trace: qubit index out of range");

  QubitSet traced;
  for (std::size_t q = 0, k = 0; q < n; ++q) {
    if (k < keep.size() && keep[k] == q) {
      ++k;
    } else {
      traced.push_back(q);
    }
  }

  // Full-register basis index for (kept index, traced index).
  auto scatter = [n](const QubitSet& qubits, std::size_t local) {
    std::size_t full = 0;
    for (std::size_t m = 0; m < qubits.size(); ++m) {
      const std::size_t bit = (local >> (qubits.size() - 1 - m)) & 1U;
      full |= bit << (n - 1 - qubits[m]);
    }
    return full;
  };
  const std::size_t dk = std::size_t{1} << keep.size();
  const std::size_t dt = std::size_t{1} << traced.size();
  std::vector<std::size_t> kept_part(dk), traced_part(dt);
  for (std::size_t a = 0; a < dk; ++a) kept_part[a] = scatter(keep, a);
  for (std::size_t t = 0; t < dt; ++t) traced_part[t] = scatter(traced, t);

  const Matrix& m = rho.matrix();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t b = 0; b < dk; ++b) {
    for (std::size_t a = 0; a < dk; ++a) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < dt; ++t) {
        acc += m(static_cast<Eigen::Index>(kept_part[a] | traced_part[t]),
                 static_cast<Eigen::Index>(kept_part[b] | traced_part[t]));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  }
  DensityMatrix reduced(std::move(out));
  debug_check_state(reduced);
  return reduced;
}

DensityMatrix conjugate(const DensityMatrix& rho, const UnitaryMatrix& u) {
  if (u.dim() != rho.dim()) throw std::invalid_argument("conjugate: dimension mismatch");
  Matrix out = u.matrix() * rho.matrix() * u.matrix().adjoint();
  // Rounding leaves ~1e-16 anti-Hermitian residue; remove it.
  out = (0.5 * (out + out.adjoint())).eval();
  DensityMatrix result(std::move(out));
  debug_check_state(result);
  return result;
}

HermitianEigen eig_hermitian(const Matrix& m) {
  require_square(m, "eig_hermitian");
  const double scale = std::max(1.0, max_abs(m));
  if (hermitian_defect(m) > tolerance::eig_hermitian * scale) {
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector eigenvalues_hermitian(const Matrix& m) {
  require_square(m, "eigenvalues_hermitian");
  const double scale = std::max(1.0, max_abs(m));
  if (hermitian_defect(m) > tolerance::eig_hermitian * scale) {
    throw std::invalid_argument("eigenvalues_hermitian: matrix is not Hermitian");
  }
  if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> real_solver(m.real(), Eigen::EigenvaluesOnly);
    if (real_solver.info() != Eigen::Success) throw std::runtime_error("eigenvalues_hermitian: solver failed");
    return real_solver.eigenvalues();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalues_hermitian: solver failed");
  return solver.eigenvalues();
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_of_spectrum(eigenvalues_hermitian(rho.matrix()));
}

double mutual_information(const DensityMatrix& rho, const QubitSet& part) {
  const std::size_t n = rho.qubit_count();
  QubitSet a = part;
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  if (a.empty() || a.size() >= n) {
    throw std::invalid_argument("mutual_information: split must leave both parts non-empty");
  }
  if (a.back() >= n) throw std::out_of_range("mutual_information: qubit index out of range");
  QubitSet b;
  for (std::size_t q = 0; q < n; ++q) {
    if (!std::binary_search(a.begin(), a.end(), q)) b.push_back(q);
  }
  return von_neumann_entropy(partial_trace(rho, a)) + von_neumann_entropy(partial_trace(rho, b)) -
         von_neumann_entropy(rho);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  const HermitianEigen er = eig_hermitian(rho.matrix());
  if (er.values(0) < -tolerance::positivity) throw std::domain_error("fidelity: state not positive");
  if (eigenvalues_hermitian(sigma.matrix())(0) < -tolerance::positivity) {
    throw std::domain_error("fidelity: state not positive");
  }
  const RealVector root = er.values.cwiseMax(0.0).cwiseSqrt();
  const Matrix sqrt_rho = er.vectors * root.asDiagonal() * er.vectors.adjoint();
  Matrix inner = sqrt_rho * sigma.matrix() * sqrt_rho;
  inner = (0.5 * (inner + inner.adjoint())).eval();
  const RealVector mu = eigenvalues_hermitian(inner);
  const double tr = mu.cwiseMax(0.0).cwiseSqrt().sum();
  return tr * tr;
}

double bures_distance_sq(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const double f = fidelity(rho, sigma);
  return std::max(0.0, 2.0 * (1.0 - std::sqrt(f)));
}

}  // namespace qecengine
