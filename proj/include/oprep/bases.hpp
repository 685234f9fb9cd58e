#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oprep/numerics.hpp"

namespace oprep {

/// d^2 operators on a d-dimensional space, orthonormal under Tr(P^dagger Q).
///
/// Element order is fixed: Hermitian bases start with I/sqrt(d); the Weyl
/// basis runs over Z^m X^n / sqrt(d) in lexicographic (m, n) order.
struct OperatorBasis {
  std::string name;
  std::size_t dim = 0;
  std::vector<ComplexMatrix> elements;
  std::vector<std::string> labels;
  bool is_hermitian = false;
  /// Elements are unitaries divided by sqrt(d).
  bool is_unitary_scaled = false;
};

/// {I, sigma_x, sigma_y, sigma_z} / sqrt 2.
OperatorBasis pauli_basis();

/// I/sqrt(d) followed by the generalized Gell-Mann matrices / sqrt 2, in the
/// standard order: for each k = 1..d-1 the symmetric and antisymmetric
/// generators for every j < k, then the k-th diagonal generator. For d = 3
/// this is lambda_1..lambda_8.
OperatorBasis gellmann_basis(std::size_t d);

/// Z^m X^n / sqrt(d) with Z = diag(q^k), X|k+1> = |k> (indices mod d), q = e^{2 pi i / d}.
OperatorBasis weyl_basis(std::size_t d);

/// Entrywise complex conjugate of every element.
OperatorBasis conjugate_basis(const OperatorBasis& basis);

/// "pauli", "gellmann" or "weyl". Throws ArgumentError otherwise, or for pauli with d != 2.
OperatorBasis make_basis(const std::string& name, std::size_t d);

ComplexMatrix clock_matrix(std::size_t d);
ComplexMatrix shift_matrix(std::size_t d);

/// max |hs_inner(O_i, O_j) - delta_ij|
double gram_residual(const OperatorBasis& basis);

/// Max over probes and entries of |P - sum_i hs_inner(O_i, P) O_i|.
double expansion_residual(const OperatorBasis& basis, const ComplexMatrix& probe);

/// Max-norm residual of sum_i O_i^dagger Y O_i - Tr(Y) I over `trials` random
/// complex probes Y, combined (max) with the expansion residual on the same
/// probes. Both are forms of the operator-space resolution of identity.
double verify_completeness(const OperatorBasis& basis, int trials, std::uint64_t seed = 0x5eed);

/// Max-norm residual of sum_i O_i^2 - d I. Throws DomainError for non-Hermitian bases.
double verify_hermitian_sum_rule(const OperatorBasis& basis);

}  // namespace oprep
