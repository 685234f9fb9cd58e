#pragma once

namespace oprep {

/// Every numerical tolerance used by the library and its test suites.
struct Tolerances {
  /// Identity checks (completeness, sum rules, chain vs direct).
  double eq = 1e-10;
  /// Maximum |a - a^dagger| accepted as Hermitian.
  double herm = 1e-10;
  /// Jacobi stopping criterion on the off-diagonal Frobenius norm.
  double eig = 1e-13;
  /// Allowed deviation of a state norm or a density-matrix trace from 1.
  double norm = 1e-10;
  /// Smallest eigenvalue a density matrix may have.
  double psd = -1e-8;
  /// Largest imaginary part discarded from an analytically real sum.
  double imag = 1e-9;
  /// Margin below a criterion threshold required to report detection.
  double verdict = 1e-10;
  /// Jacobi sweep cap.
  int max_sweeps = 100;
};

inline constexpr Tolerances kTol{};

}  // namespace oprep
