// Dense complex linear algebra for multi-qubit density matrices.
//
// Basis convention: qubit 0 is the most significant bit of a computational
// basis index, and each qubit is ordered (|0>, |1>). Entropies are in nats.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace qecengine {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Qubit indices into a register. Order is irrelevant; functions that need
/// an order sort it (qubit 0 first).
using QubitSet = std::vector<std::size_t>;

namespace tolerance {
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-12;
inline constexpr double positivity = 1e-10;
inline constexpr double unitarity = 1e-12;
inline constexpr double eig_hermitian = 1e-10;
}  // namespace tolerance

/// Largest absolute entry of a matrix.
double max_abs(const Matrix& m);

/// Number of qubits for a 2^n dimension; throws if `dim` is not a power of two.
std::size_t qubits_for_dim(std::size_t dim);

/// Hermitian, unit-trace state over an n-qubit register.
///
/// Construction checks Hermiticity and trace. Positivity is not checked here
/// (it needs a diagonalization); entropy and fidelity reject states whose
/// smallest eigenvalue is below -1e-10.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries);

  /// |psi><psi| for a normalized state vector.
  static DensityMatrix pure(const ComplexVector& psi);
  /// Computational basis projector |index><index| on `qubits` qubits.
  static DensityMatrix basis(std::size_t qubits, std::size_t index);

  const Matrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  std::size_t qubit_count() const noexcept { return qubits_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return m_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

  double min_eigenvalue() const;

 private:
  Matrix m_;
  std::size_t qubits_;
};

/// Square matrix with U^dagger U = I to 1e-12.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Matrix entries);

  static UnitaryMatrix identity(std::size_t dim);

  const Matrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }

 private:
  Matrix m_;
};

/// Kronecker product; `a` supplies the most significant index.
Matrix tensor(const Matrix& a, const Matrix& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on `keep`, in ascending qubit order.
DensityMatrix partial_trace(const DensityMatrix& rho, QubitSet keep);

/// U rho U^dagger.
DensityMatrix conjugate(const DensityMatrix& rho, const UnitaryMatrix& u);

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // columns
};

/// Eigendecomposition of a Hermitian matrix (Hermitian to 1e-10).
HermitianEigen eig_hermitian(const Matrix& m);
/// Eigenvalues only, ascending. Much cheaper than eig_hermitian for large m.
RealVector eigenvalues_hermitian(const Matrix& m);

/// -tr(rho ln rho). Eigenvalues in [-1e-10, 0] count as zero.
double von_neumann_entropy(const DensityMatrix& rho);

/// S(A) + S(B) - S(AB) with A = `part` and B its complement.
double mutual_information(const DensityMatrix& rho, const QubitSet& part);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Bures distance squared 2(1 - sqrt(F)).
double bures_distance_sq(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace qecengine
