// O(d^2) kernels for operations acting on one qubit (or permuting the basis)
// of a dense register matrix. Shared by channels and circuits.

#pragma once

#include "qecengine/circuits.hpp"
#include "qecengine/linalg.hpp"

#include <span>
#include <vector>

namespace qecengine::detail {

/// Superoperator of a single-qubit map in the vec(B) = (B00, B01, B10, B11)
/// layout: out(r, c) = sum_k M_k(r, r') B(r', c') conj(M_k(c, c')).
using SuperOp = Eigen::Matrix<Complex, 4, 4>;

SuperOp superop_from_kraus(std::span<const Matrix> kraus);

/// Apply a single-qubit superoperator to `qubit` of an n-qubit matrix.
Matrix apply_superop(const Matrix& rho, const SuperOp& s, std::size_t qubit);

/// out(perm[i], perm[j]) = rho(i, j), i.e. P rho P^T for the basis
/// permutation P|i> = |perm[i]>.
Matrix permute_both(const Matrix& rho, const std::vector<std::size_t>& perm);

/// P m for the basis permutation P|i> = |perm[i]>.
Matrix permute_rows(const Matrix& m, const std::vector<std::size_t>& perm);

/// G rho G^dagger on a raw register matrix, without re-validating the
/// result. Callers wrap the final matrix in a DensityMatrix.
Matrix conjugate_by_gate(const Matrix& rho, const PlacedGate& gate);

/// (I (x) u (x) I) m with the 2x2 `u` acting on `qubit`.
Matrix apply_left_single(const Matrix& m, const Matrix& u, std::size_t qubit);

}  // namespace qecengine::detail
