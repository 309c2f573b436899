#include "local_ops.hpp"

#include <stdexcept>

namespace qecengine::detail {

namespace {

std::size_t bit_of(std::size_t qubits, std::size_t qubit) { return std::size_t{1} << (qubits - 1 - qubit); }

}  // namespace

SuperOp superop_from_kraus(std::span<const Matrix> kraus) {
  SuperOp s = SuperOp::Zero();
  for (const Matrix& m : kraus) {
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        for (int rp = 0; rp < 2; ++rp)
          for (int cp = 0; cp < 2; ++cp) s(r * 2 + c, rp * 2 + cp) += m(r, rp) * std::conj(m(c, cp));
  }
  return s;
}

Matrix apply_superop(const Matrix& rho, const SuperOp& s, std::size_t qubit) {
  const auto dim = static_cast<std::size_t>(rho.rows());
  const std::size_t n = qubits_for_dim(dim);
  if (qubit >= n) throw std::out_of_range("qubit index out of range");
  const std::size_t bit = bit_of(n, qubit);
  Matrix out(rho.rows(), rho.cols());
  Complex k[4][4];
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) k[r][c] = s(r, c);
  const Complex* in = rho.data();
  Complex* o = out.data();
  for (std::size_t j = 0; j < dim; ++j) {
    if (j & bit) continue;
    const std::size_t c0 = j * dim;
    const std::size_t c1 = (j | bit) * dim;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & bit) continue;
      const std::size_t i1 = i | bit;
      const Complex b00 = in[c0 + i], b01 = in[c1 + i], b10 = in[c0 + i1], b11 = in[c1 + i1];
      o[c0 + i] = k[0][0] * b00 + k[0][1] * b01 + k[0][2] * b10 + k[0][3] * b11;
      o[c1 + i] = k[1][0] * b00 + k[1][1] * b01 + k[1][2] * b10 + k[1][3] * b11;
      o[c0 + i1] = k[2][0] * b00 + k[2][1] * b01 + k[2][2] * b10 + k[2][3] * b11;
      o[c1 + i1] = k[3][0] * b00 + k[3][1] * b01 + k[3][2] * b10 + k[3][3] * b11;
    }
  }
  return out;
}

Matrix permute_both(const Matrix& rho, const std::vector<std::size_t>& perm) {
  Matrix out(rho.rows(), rho.cols());
  const auto dim = static_cast<std::size_t>(rho.rows());
  for (std::size_t j = 0; j < dim; ++j) {
    const auto pj = static_cast<Eigen::Index>(perm[j]);
    for (std::size_t i = 0; i < dim; ++i) {
      out(static_cast<Eigen::Index>(perm[i]), pj) = rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

Matrix permute_rows(const Matrix& m, const std::vector<std::size_t>& perm) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    out.row(static_cast<Eigen::Index>(perm[i])) = m.row(static_cast<Eigen::Index>(i));
  }
  return out;
}

Matrix apply_left_single(const Matrix& m, const Matrix& u, std::size_t qubit) {
  const auto dim = static_cast<std::size_t>(m.rows());
  const std::size_t n = qubits_for_dim(dim);
  if (qubit >= n) throw std::out_of_range("qubit index out of range");
  const std::size_t bit = bit_of(n, qubit);
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const auto i0 = static_cast<Eigen::Index>(i);
    const auto i1 = static_cast<Eigen::Index>(i | bit);
    out.row(i0) = u(0, 0) * m.row(i0) + u(0, 1) * m.row(i1);
    out.row(i1) = u(1, 0) * m.row(i0) + u(1, 1) * m.row(i1);
  }
  return out;
}

}  // namespace qecengine::detail
