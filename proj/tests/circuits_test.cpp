#include "qecengine/circuits.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace qecengine;

namespace {

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

// Permutation matrix of a controlled-X built from its truth table.
Matrix controlled_x_by_table(std::size_t n, const std::vector<std::size_t>& controls, std::size_t target) {
  const std::size_t d = std::size_t{1} << n;
  auto bit = [n](std::size_t q) { return std::size_t{1} << (n - 1 - q); };
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) {
    bool fire = true;
    for (std::size_t c : controls) fire = fire && (i & bit(c));
    const std::size_t j = fire ? i ^ bit(target) : i;
    u(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1.0;
  }
  return u;
}

ComplexVector basis_vector(std::size_t qubits, std::size_t index) {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(std::size_t{1} << qubits));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

}  // namespace

TEST(Gates, SingleQubitMatrices) {
  const Matrix x = single_qubit_matrix(GateKind::X);
  EXPECT_EQ(x(0, 1), Complex(1.0));
  EXPECT_EQ(x(1, 0), Complex(1.0));
  const Matrix h = single_qubit_matrix(GateKind::H);
  EXPECT_LT(max_abs(h * h - Matrix::Identity(2, 2)), 1e-15);
  const Matrix y = single_qubit_matrix(GateKind::Y);
  const Matrix z = single_qubit_matrix(GateKind::Z);
  EXPECT_LT(max_abs(x * y - Complex(0, 1) * z), 1e-15);
  EXPECT_THROW(single_qubit_matrix(GateKind::CNOT), std::invalid_argument);
}

TEST(Gates, EmbedOneQubitX) {
  EXPECT_LT(max_abs(embed(PlacedGate::single(GateKind::X, 0, Stage::Encode), 1).matrix() -
                    single_qubit_matrix(GateKind::X)),
            1e-15);
}

TEST(Gates, CnotOnBasisState) {
  const UnitaryMatrix u = embed(PlacedGate::cnot(0, 1, Stage::Encode), 2);
  EXPECT_LT((u.matrix() * basis_vector(2, 0b10) - basis_vector(2, 0b11)).norm(), 1e-15);
  EXPECT_LT((u.matrix() * basis_vector(2, 0b01) - basis_vector(2, 0b01)).norm(), 1e-15);
}

TEST(Gates, ToffoliTruthTable) {
  const UnitaryMatrix u = embed(PlacedGate::toffoli(1, 2, 0, Stage::Correct), 3);
  EXPECT_LT(max_abs(u.matrix() - controlled_x_by_table(3, {1, 2}, 0)), 1e-15);
  for (std::size_t i = 0; i < 8; ++i) {
    const std::size_t expected = (i & 0b011) == 0b011 ? i ^ 0b100 : i;
    EXPECT_LT((u.matrix() * basis_vector(3, i) - basis_vector(3, expected)).norm(), 1e-15) << i;
  }
}

TEST(Gates, SwapExchangesQubits) {
  const UnitaryMatrix u = embed(PlacedGate::swap(0, 2, Stage::Decode), 3);
  EXPECT_LT((u.matrix() * basis_vector(3, 0b100) - basis_vector(3, 0b001)).norm(), 1e-15);
  EXPECT_LT((u.matrix() * basis_vector(3, 0b110) - basis_vector(3, 0b011)).norm(), 1e-15);
}

TEST(Gates, Validation) {
  EXPECT_THROW(PlacedGate::cnot(1, 1, Stage::Encode).validate(3), std::invalid_argument);
  EXPECT_THROW(PlacedGate::toffoli(0, 1, 3, Stage::Encode).validate(3), std::invalid_argument);
  try {
    PlacedGate::toffoli(0, 1, 1, Stage::Correct).validate(3);
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("collide"), std::string::npos);
  }
  PlacedGate bad{GateKind::CNOT, {}, {0}, Stage::Encode};
  EXPECT_THROW(bad.validate(2), std::invalid_argument);
}

TEST(Gates, FastPathMatchesFullConjugation) {
  std::mt19937_64 rng(31);
  const DensityMatrix rho = random_state(4, rng);
  const std::vector<PlacedGate> gates{
      PlacedGate::single(GateKind::X, 2, Stage::Decode),   PlacedGate::single(GateKind::Y, 0, Stage::Decode),
      PlacedGate::single(GateKind::Z, 3, Stage::Decode),   PlacedGate::single(GateKind::H, 1, Stage::Decode),
      PlacedGate::cnot(3, 0, Stage::Decode),               PlacedGate::toffoli(0, 2, 1, Stage::Correct),
      PlacedGate::swap(1, 3, Stage::Decode),
  };
  for (const PlacedGate& g : gates) {
    const Matrix u = embed(g, 4).matrix();
    EXPECT_LT(max_abs(apply_gate(rho, g).matrix() - u * rho.matrix() * u.adjoint()), 1e-14) << to_string(g.kind);
  }
}

TEST(Circuit, UnitaryIsOrderedProduct) {
  Circuit c(3);
  c.add(PlacedGate::single(GateKind::H, 0, Stage::Encode)).add(PlacedGate::cnot(0, 2, Stage::Encode));
  const Matrix expected = embed(c.gates()[1], 3).matrix() * embed(c.gates()[0], 3).matrix();
  EXPECT_LT(max_abs(c.unitary().matrix() - expected), 1e-15);
  std::mt19937_64 rng(32);
  const DensityMatrix rho = random_state(3, rng);
  EXPECT_LT(max_abs(c.apply(rho).matrix() - expected * rho.matrix() * expected.adjoint()), 1e-14);
}

TEST(Circuit, RejectsGateOutsideRegister) {
  Circuit c(2);
  EXPECT_THROW(c.add(PlacedGate::cnot(0, 2, Stage::Encode)), std::invalid_argument);
}

TEST(Classical3, EncoderAction) {
  const Matrix u = classical3_encoder().unitary().matrix();
  EXPECT_LT((u * basis_vector(3, 0b000) - basis_vector(3, 0b000)).norm(), 1e-15);
  EXPECT_LT((u * basis_vector(3, 0b100) - basis_vector(3, 0b111)).norm(), 1e-15);
}

TEST(Classical3, DecoderWithoutCorrectionEqualsEncoder) {
  const Circuit dc = classical3_decoder_corrector();
  ASSERT_EQ(dc.gates().size(), 3u);
  Circuit decode_only(3);
  for (const auto& g : dc.gates())
    if (g.stage == Stage::Decode) decode_only.add(g);
  EXPECT_EQ(decode_only.gates().size(), 2u);
  EXPECT_LT(max_abs(decode_only.unitary().matrix() - classical3_encoder().unitary().matrix()), 1e-15);
  EXPECT_EQ(dc.gates()[2].kind, GateKind::Toffoli);
  EXPECT_EQ(dc.gates()[2].stage, Stage::Correct);
}

TEST(Classical3, MajorityVote) {
  const Matrix dc = classical3_decoder_corrector().unitary().matrix();
  // Codewords with at most one flipped bit decode to the right logical value,
  // leaving the syndrome on the ancillas.
  for (std::size_t word : {0b000u, 0b111u}) {
    const std::size_t logical = word == 0 ? 0 : 1;
    for (std::size_t flip : {0u, 0b100u, 0b010u, 0b001u}) {
      const ComplexVector out = dc * basis_vector(3, word ^ flip);
      Eigen::Index idx = 0;
      out.cwiseAbs().maxCoeff(&idx);
      EXPECT_EQ(static_cast<std::size_t>(idx) >> 2, logical) << "word " << word << " flip " << flip;
    }
  }
}

TEST(Shor9, CircuitsAreUnitaryAndStaged) {
  const Circuit enc = shor9_encoder();
  const Circuit dc = shor9_decoder_corrector();
  EXPECT_EQ(enc.gates().size(), 11u);
  EXPECT_EQ(dc.gates().size(), 15u);
  for (const auto& g : enc.gates()) EXPECT_EQ(g.stage, Stage::Encode);
  std::size_t corrections = 0;
  for (const auto& g : dc.gates()) {
    EXPECT_NE(g.stage, Stage::Encode);
    if (g.stage == Stage::Correct) {
      EXPECT_EQ(g.kind, GateKind::Toffoli);
      ++corrections;
    }
  }
  EXPECT_EQ(corrections, 4u);
  const Matrix u = enc.unitary().matrix();
  EXPECT_LT(max_abs(u.adjoint() * u - Matrix::Identity(512, 512)), 1e-12);
}

TEST(Shor9, EncoderProducesCodeword) {
  const ComplexVector out = shor9_encoder().unitary().matrix() * basis_vector(9, 0);
  // (|000> + |111>)^(x)3 / sqrt(8): amplitude 1/sqrt(8) wherever each block is 000 or 111.
  for (std::size_t i = 0; i < 512; ++i) {
    bool codeword = true;
    for (int b = 0; b < 3; ++b) {
      const std::size_t block = (i >> (3 * (2 - b))) & 0b111;
      codeword = codeword && (block == 0 || block == 0b111);
    }
    EXPECT_NEAR(std::abs(out(static_cast<Eigen::Index>(i)) - (codeword ? 1.0 / std::sqrt(8.0) : 0.0)), 0.0, 1e-15)
        << i;
  }
}

TEST(Shor9, EncoderMarginalsAreMaximallyMixed) {
  ComplexVector psi(2);
  psi << std::cos(0.3), std::polar(std::sin(0.3), 0.8);
  const DensityMatrix in = tensor(DensityMatrix::pure(psi), DensityMatrix::basis(8, 0));
  const DensityMatrix enc = shor9_encoder().apply(in);
  for (std::size_t q = 0; q < 9; ++q) {
    EXPECT_LT(max_abs(partial_trace(enc, {q}).matrix() - 0.5 * Matrix::Identity(2, 2)), 1e-14) << q;
  }
}

TEST(Shor9, DecoderInvertsEncoderOnCodewords) {
  const Matrix round_trip = shor9_decoder_corrector().unitary().matrix() * shor9_encoder().unitary().matrix();
  for (std::size_t s : {0u, 1u}) {
    const std::size_t index = s << 8;
    EXPECT_LT((round_trip * basis_vector(9, index) - basis_vector(9, index)).norm(), 1e-12) << s;
  }
}
