#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "oprep/numerics.hpp"

namespace oprep {

/// Normalized state vector over a tensor-factored space.
class PureState {
 public:
  /// Throws StateError unless the norm is 1 within kTol.norm and the length
  /// matches the structure.
  PureState(StateVector amplitudes, TensorStructure structure);

  /// Rescales to unit norm first. Throws StateError for a zero vector.
  static PureState normalized(StateVector amplitudes, TensorStructure structure);

  const StateVector& amplitudes() const { return amplitudes_; }
  const TensorStructure& structure() const { return structure_; }
  std::size_t dim() const { return amplitudes_.size(); }
  ComplexMatrix projector() const { return outer(amplitudes_); }

 private:
  StateVector amplitudes_;
  TensorStructure structure_;
};

/// Hermitian, unit-trace, positive-semidefinite operator.
class DensityMatrix {
 public:
  /// Throws StateError when any invariant fails.
  DensityMatrix(ComplexMatrix matrix, TensorStructure structure);
  explicit DensityMatrix(const PureState& psi);

  const ComplexMatrix& matrix() const { return matrix_; }
  const TensorStructure& structure() const { return structure_; }
  std::size_t dim() const { return matrix_.rows(); }
  double purity() const;

 private:
  ComplexMatrix matrix_;
  TensorStructure structure_;
};

/// Squared Schmidt coefficients, descending.
struct SchmidtSpectrum {
  std::vector<double> coefficients;
};

/// Residuals of a state against exchange (anti)symmetry over all adjacent
/// particle transpositions (which generate the permutation group).
struct SymmetryReport {
  double symmetric_residual = 0.0;
  double antisymmetric_residual = 0.0;
  bool is_symmetric() const;
  bool is_antisymmetric() const;
};

DensityMatrix reduced_density(const PureState& psi, std::span<const std::size_t> keep);
DensityMatrix reduced_density(const DensityMatrix& rho, std::span<const std::size_t> keep);

SchmidtSpectrum schmidt_spectrum(const PureState& psi);

/// Standard complex Gaussian amplitudes, normalized. Deterministic per seed.
PureState haar_random_pure(const TensorStructure& structure, std::uint64_t seed);

/// Haar unitary via Gram-Schmidt on a complex Gaussian matrix.
ComplexMatrix haar_random_unitary(std::size_t dim, std::uint64_t seed);

/// Reduced state of a Haar-random purification on dim x ancilla_dim.
DensityMatrix random_mixed(std::size_t dim, std::size_t ancilla_dim, std::uint64_t seed);

/// Convex mixture of `terms` Haar-random product states with flat-Dirichlet weights.
DensityMatrix random_separable(const TensorStructure& structure, std::size_t terms,
                               std::uint64_t seed);

/// p |Phi+><Phi+| + (1 - p) I/4.
DensityMatrix werner_state(double p);

PureState basis_state(const TensorStructure& structure, std::span<const std::size_t> digits);
PureState product_state(std::span<const StateVector> factors);
/// (1/sqrt d) sum_k |kk>
PureState maximally_entangled(std::size_t d);
/// (|01> - |10>)/sqrt 2
PureState singlet();
/// (|10..0> + |010..0> + ... + |0..01>)/sqrt N
PureState w_state(std::size_t n);
/// (|0..0> + |1..1>)/sqrt 2
PureState ghz_state(std::size_t n);

/// Advisory only: identical-particle states are never rejected on symmetry grounds.
SymmetryReport symmetry_report(const PureState& psi);

}  // namespace oprep
