#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "oprep/bases.hpp"
#include "oprep/states.hpp"

namespace oprep {

enum class MeasureMethod { direct, chain, closed_form_gellmann, closed_form_weyl, concurrence_squared, identical };

std::string to_string(MeasureMethod m);

/// One evaluation of M_e(n) = 1 - Tr rho_A^n.
struct MeasureResult {
  int n = 2;
  double value = 0.0;
  MeasureMethod method = MeasureMethod::direct;
  /// One basis name per chain slot; empty for direct evaluation.
  std::vector<std::string> basis_labels;
  /// |Im| of the analytically real sum that was discarded.
  double imag_residual = 0.0;
};

struct Me2Expectations {
  MeasureResult result;
  /// <O_i> = Tr(rho_A O_i), in basis order.
  std::vector<Complex> expectations;
  /// C_I = sqrt(2 M_e(2)).
  double i_concurrence = 0.0;
};

struct IdenticalMeasure {
  MeasureResult result;
  /// M_e(2) of each particle's reduced state.
  std::vector<double> per_particle;
  /// per_particle entries agree within 1e-9.
  bool particles_agree = true;
  SymmetryReport symmetry;
};

/// Either kind of loaded state.
using AnyState = std::variant<PureState, DensityMatrix>;

/// Throws DomainError for mixed input: M_e(n) is defined on pure states only.
const PureState& require_pure(const AnyState& state);

MeasureResult me_direct(const PureState& psi, int n, std::span<const std::size_t> keep);

/// Operator-chain form: sum over i_1..i_{n-1} of
/// <O1_i1> <O2_i2 O1_i1^dagger> ... <O(n-1)_i(n-1)^dagger>.
/// Needs exactly n-1 bases of the kept subsystem's dimension.
MeasureResult me_chain(const PureState& psi, int n, std::span<const OperatorBasis> bases,
                       std::span<const std::size_t> keep);

/// M_e(2) = 1 - sum_i |<O_i>|^2 together with the expectations themselves.
Me2Expectations me2_expectations(const PureState& psi, const OperatorBasis& basis,
                                 std::span<const std::size_t> keep);

/// 2 |a00 a11 - a01 a10| for a two-qubit state.
double concurrence_2qubit(const PureState& psi);

/// (1/2) C^2 from concurrence_2qubit.
MeasureResult me2_concurrence(const PureState& psi);

/// (d-1)/d - (1/2) sum_{i>=1} <lambda_i>^2 on factor 0, lambda_i normalized to Tr lambda_i lambda_j = 2 delta_ij.
MeasureResult me2_gellmann_closed_form(const PureState& psi);

/// 1 - (1/d) sum_{m,n} |<Z^m X^n>|^2 on factor 0.
MeasureResult me2_weyl_closed_form(const PureState& psi);

/// Identical-particle M_e(2) from the single-particle reduced state of
/// particle 0, expanded in `basis` (Gell-Mann when omitted).
IdenticalMeasure me2_identical(const PureState& psi_n);
IdenticalMeasure me2_identical(const PureState& psi_n, const OperatorBasis& basis);

}  // namespace oprep
