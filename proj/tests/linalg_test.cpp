#include "qecengine/linalg.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace qecengine;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// Kronecker product written out index by index.
Matrix kron_by_hand(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

DensityMatrix random_state(std::size_t qubits, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << qubits);
  Matrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = Complex(n(rng), n(rng));
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

DensityMatrix bell_phi_plus() {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::pure(psi);
}

}  // namespace

TEST(DensityMatrix, RejectsNonHermitian) {
  Matrix m = diag2(0.5, 0.5);
  m(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{m}, std::invalid_argument);
}

TEST(DensityMatrix, RejectsWrongTrace) {
  EXPECT_THROW(DensityMatrix{diag2(0.5, 0.6)}, std::invalid_argument);
}

TEST(DensityMatrix, RejectsNonPowerOfTwo) {
  EXPECT_THROW(DensityMatrix{Matrix::Identity(3, 3) / 3.0}, std::invalid_argument);
}

TEST(DensityMatrix, BasisState) {
  const DensityMatrix b = DensityMatrix::basis(3, 5);
  EXPECT_EQ(b.dim(), 8u);
  EXPECT_EQ(b.qubit_count(), 3u);
  EXPECT_EQ(b(5, 5), Complex(1.0));
  EXPECT_DOUBLE_EQ(max_abs(b.matrix()), 1.0);
}

TEST(Tensor, IdentityTimesIdentity) {
  const Matrix i4 = tensor(Matrix::Identity(2, 2), Matrix::Identity(2, 2));
  EXPECT_LT(max_abs(i4 - Matrix::Identity(4, 4)), 1e-15);
}

TEST(Tensor, BasisOrdering) {
  const Matrix m = tensor(diag2(1, 0), diag2(0, 1));
  Matrix expected = Matrix::Zero(4, 4);
  expected(1, 1) = 1.0;
  EXPECT_LT(max_abs(m - expected), 1e-15);
}

TEST(Tensor, SystemWithTwoGroundAncillas) {
  const DensityMatrix rho = tensor(DensityMatrix(diag2(0.75, 0.25)), DensityMatrix::basis(2, 0));
  Matrix expected = Matrix::Zero(8, 8);
  expected(0, 0) = 0.75;  // |000>
  expected(4, 4) = 0.25;  // |100>
  EXPECT_LT(max_abs(rho.matrix() - expected), 1e-15);
}

TEST(Tensor, MatchesIndexExpansion) {
  std::mt19937_64 rng(7);
  const DensityMatrix a = random_state(1, rng);
  const DensityMatrix b = random_state(2, rng);
  EXPECT_LT(max_abs(tensor(a, b).matrix() - kron_by_hand(a.matrix(), b.matrix())), 1e-15);
}

TEST(PartialTrace, ProductState) {
  std::mt19937_64 rng(1);
  const DensityMatrix s = random_state(1, rng);
  const DensityMatrix a = random_state(2, rng);
  EXPECT_LT(max_abs(partial_trace(tensor(s, a), {0}).matrix() - s.matrix()), 1e-14);
  EXPECT_LT(max_abs(partial_trace(tensor(s, a), {1, 2}).matrix() - a.matrix()), 1e-14);
}

TEST(PartialTrace, BellStateGivesMaximallyMixed) {
  const DensityMatrix r = partial_trace(bell_phi_plus(), {0});
  EXPECT_LT(max_abs(r.matrix() - 0.5 * Matrix::Identity(2, 2)), 1e-15);
}

TEST(PartialTrace, MatchesIndexSumOnMiddleQubit) {
  std::mt19937_64 rng(3);
  const DensityMatrix rho = random_state(3, rng);
  // Keep qubits 0 and 2, trace qubit 1 (bit value 2).
  Matrix expected = Matrix::Zero(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      for (int t = 0; t < 2; ++t) {
        const int ri = ((r >> 1) << 2) | (t << 1) | (r & 1);
        const int ci = ((c >> 1) << 2) | (t << 1) | (c & 1);
        expected(r, c) += rho.matrix()(ri, ci);
      }
  EXPECT_LT(max_abs(partial_trace(rho, {2, 0}).matrix() - expected), 1e-15);
}

TEST(PartialTrace, Errors) {
  const DensityMatrix rho = bell_phi_plus();
  try {
    partial_trace(rho, {});
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("must keep at least one qubit"), std::string::npos);
  }
  EXPECT_ANY_THROW(partial_trace(rho, {0, 0}));
  EXPECT_ANY_THROW(partial_trace(rho, {2}));
}

TEST(Conjugate, IdentityAndFlip) {
  const DensityMatrix zero = DensityMatrix::basis(1, 0);
  EXPECT_LT(max_abs(conjugate(zero, UnitaryMatrix::identity(2)).matrix() - zero.matrix()), 1e-15);
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  EXPECT_LT(max_abs(conjugate(zero, UnitaryMatrix(x)).matrix() - DensityMatrix::basis(1, 1).matrix()), 1e-15);
}

TEST(UnitaryMatrix, RejectsNonUnitary) { EXPECT_THROW(UnitaryMatrix{diag2(1.0, 0.5)}, std::invalid_argument); }

TEST(EigHermitian, DiagonalAndPauliX) {
  const HermitianEigen d = eig_hermitian(diag2(0.7, 0.3));
  EXPECT_NEAR(d.values(0), 0.3, 1e-15);
  EXPECT_NEAR(d.values(1), 0.7, 1e-15);
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  const HermitianEigen e = eig_hermitian(x);
  EXPECT_NEAR(e.values(0), -1.0, 1e-15);
  EXPECT_NEAR(e.values(1), 1.0, 1e-15);
  EXPECT_LT(max_abs(e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint() - x), 1e-14);
}

TEST(EigHermitian, RealAndComplexPathsAgree) {
  std::mt19937_64 rng(11);
  const DensityMatrix rho = random_state(4, rng);
  const Matrix real_part = Matrix(rho.matrix().real().cast<Complex>());
  // A tiny imaginary perturbation forces the complex solver on the same spectrum.
  Matrix nudged = real_part;
  nudged(0, 1) += Complex(0.0, 1e-300);
  nudged(1, 0) -= Complex(0.0, 1e-300);
  const RealVector a = eigenvalues_hermitian(real_part);
  const RealVector b = eigenvalues_hermitian(nudged);
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(EigHermitian, RejectsNonHermitian) {
  Matrix m = diag2(1, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(eig_hermitian(m), std::invalid_argument);
}

TEST(Entropy, KnownValues) {
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::basis(1, 0)), 0.0, 1e-15);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix(diag2(0.5, 0.5))), std::log(2.0), 1e-15);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix(diag2(0.9, 0.1))), 0.325083, 1e-6);
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix(diag2(0.9, 0.1))), -0.9 * std::log(0.9) - 0.1 * std::log(0.1), 1e-15);
}

TEST(Entropy, RejectsNegativeState) {
  try {
    von_neumann_entropy(DensityMatrix(diag2(1.2, -0.2)));
    FAIL() << "expected an exception";
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("state not positive"), std::string::npos);
  }
}

TEST(MutualInformation, ProductAndBell) {
  std::mt19937_64 rng(5);
  EXPECT_NEAR(mutual_information(tensor(random_state(1, rng), random_state(1, rng)), {0}), 0.0, 1e-12);
  EXPECT_NEAR(mutual_information(bell_phi_plus(), {0}), 2.0 * std::log(2.0), 1e-12);
  EXPECT_NEAR(mutual_information(bell_phi_plus(), {0}), 1.386294, 1e-6);
  EXPECT_ANY_THROW(mutual_information(bell_phi_plus(), {}));
  EXPECT_ANY_THROW(mutual_information(bell_phi_plus(), {0, 1}));
}

TEST(Fidelity, Basics) {
  std::mt19937_64 rng(9);
  const DensityMatrix rho = random_state(2, rng);
  EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(DensityMatrix::basis(1, 0), DensityMatrix::basis(1, 1)), 0.0, 1e-15);
  EXPECT_NEAR(bures_distance_sq(rho, rho), 0.0, 1e-12);
  EXPECT_NEAR(bures_distance_sq(DensityMatrix::basis(1, 0), DensityMatrix::basis(1, 1)), 2.0, 1e-15);
}

TEST(Fidelity, CommutingStatesAreClassical) {
  // For diagonal states F = (sum_i sqrt(p_i q_i))^2.
  const double p = 0.3, q = 0.45;
  const double expected = std::pow(std::sqrt((1 - p) * (1 - q)) + std::sqrt(p * q), 2);
  EXPECT_NEAR(fidelity(DensityMatrix(diag2(1 - p, p)), DensityMatrix(diag2(1 - q, q))), expected, 1e-15);
}

TEST(Fidelity, PureStateOverlap) {
  const double t = 0.4;
  ComplexVector a(2), b(2);
  a << 1.0, 0.0;
  b << std::cos(t), std::sin(t);
  EXPECT_NEAR(fidelity(DensityMatrix::pure(a), DensityMatrix::pure(b)), std::cos(t) * std::cos(t), 1e-14);
}

TEST(Fidelity, Symmetric) {
  std::mt19937_64 rng(13);
  const DensityMatrix a = random_state(2, rng), b = random_state(2, rng);
  EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-12);
}
