#include "oprep/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oprep/errors.hpp"
#include "oprep/rng.hpp"
#include "oprep/tolerances.hpp"

namespace oprep {

namespace {

StateVector gaussian_vector(Rng& rng, std::size_t n) {
  StateVector v(n);
  for (auto& x : v) {
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    x = Complex(re, im);
  }
  return v;
}

void scale_to_unit(StateVector& v) {
  const double norm = vector_norm(v);
  if (norm == 0.0) throw StateError("cannot normalize a zero vector");
  for (auto& x : v) x /= norm;
}

}  // namespace

PureState::PureState(StateVector amplitudes, TensorStructure structure)
    : amplitudes_(std::move(amplitudes)), structure_(std::move(structure)) {
  if (structure_.factors() == 0) throw StateError("pure state: empty tensor structure");
  if (amplitudes_.size() != structure_.total()) {
    throw StateError("pure state: " + std::to_string(amplitudes_.size()) +
                     " amplitudes do not match structure dimension " +
                     std::to_string(structure_.total()));
  }
  for (auto x : amplitudes_) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      throw StateError("pure state: non-finite amplitude");
    }
  }
  const double norm2 = std::pow(vector_norm(amplitudes_), 2);
  if (std::abs(norm2 - 1.0) > kTol.norm) {
    throw StateError("pure state: squared norm " + std::to_string(norm2) + " is not 1");
  }
}

PureState PureState::normalized(StateVector amplitudes, TensorStructure structure) {
  scale_to_unit(amplitudes);
  return PureState(std::move(amplitudes), std::move(structure));
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, TensorStructure structure)
    : matrix_(std::move(matrix)), structure_(std::move(structure)) {
  if (!matrix_.is_square()) throw StateError("density matrix: not square");
  if (structure_.factors() == 0 || structure_.total() != matrix_.rows()) {
    throw StateError("density matrix: structure does not match dimension " +
                     std::to_string(matrix_.rows()));
  }
  for (auto x : matrix_.entries()) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      throw StateError("density matrix: non-finite entry");
    }
  }
  const double herm = hermiticity_residual(matrix_);
  if (herm > kTol.herm) {
    throw StateError("density matrix: not Hermitian (residual " + std::to_string(herm) + ")");
  }
  const Complex tr = trace(matrix_);
  if (std::abs(tr - 1.0) > kTol.norm) {
    throw StateError("density matrix: trace " + std::to_string(tr.real()) + " is not 1");
  }
  const double min_eig = eigh(matrix_).values.back();
  if (min_eig < kTol.psd) {
    throw StateError("density matrix: negative eigenvalue " + std::to_string(min_eig));
  }
}

DensityMatrix::DensityMatrix(const PureState& psi) : DensityMatrix(psi.projector(), psi.structure()) {}

double DensityMatrix::purity() const { return mat_power_trace(matrix_, 2).real(); }

bool SymmetryReport::is_symmetric() const { return symmetric_residual <= 1e-9; }
bool SymmetryReport::is_antisymmetric() const { return antisymmetric_residual <= 1e-9; }

namespace {

TensorStructure kept_structure(const TensorStructure& s, std::span<const std::size_t> keep) {
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> dims;
  for (auto k : sorted) {
    if (k >= s.factors()) throw ArgumentError("factor index " + std::to_string(k) + " out of range");
    dims.push_back(s[k]);
  }
  return TensorStructure(std::move(dims));
}

}  // namespace

DensityMatrix reduced_density(const PureState& psi, std::span<const std::size_t> keep) {
  auto reduced = partial_trace(psi.projector(), psi.structure(), keep);
  return DensityMatrix(std::move(reduced), kept_structure(psi.structure(), keep));
}

DensityMatrix reduced_density(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  auto reduced = partial_trace(rho.matrix(), rho.structure(), keep);
  return DensityMatrix(std::move(reduced), kept_structure(rho.structure(), keep));
}

SchmidtSpectrum schmidt_spectrum(const PureState& psi) {
  const auto& s = psi.structure();
  if (s.factors() != 2) {
    throw ArgumentError("schmidt_spectrum: bipartite state required, got " +
                        std::to_string(s.factors()) + " factors");
  }
  const std::size_t keep[] = {0};
  auto rho_a = reduced_density(psi, keep);
  auto eig = eigh(rho_a.matrix());
  SchmidtSpectrum out;
  const std::size_t rank_bound = std::min(s[0], s[1]);
  for (std::size_t k = 0; k < rank_bound; ++k) out.coefficients.push_back(std::max(0.0, eig.values[k]));
  return out;
}

PureState haar_random_pure(const TensorStructure& structure, std::uint64_t seed) {
  Rng rng(seed);
  auto v = gaussian_vector(rng, structure.total());
  scale_to_unit(v);
  return PureState(std::move(v), structure);
}

ComplexMatrix haar_random_unitary(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<StateVector> cols;
  for (std::size_t c = 0; c < dim; ++c) cols.push_back(gaussian_vector(rng, dim));
  // Modified Gram-Schmidt keeps R's diagonal positive, which is what makes Q Haar.
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      Complex overlap{};
      for (std::size_t r = 0; r < dim; ++r) overlap += std::conj(cols[prev][r]) * cols[c][r];
      for (std::size_t r = 0; r < dim; ++r) cols[c][r] -= overlap * cols[prev][r];
    }
    scale_to_unit(cols[c]);
  }
  ComplexMatrix u(dim, dim);
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r) u(r, c) = cols[c][r];
  return u;
}

DensityMatrix random_mixed(std::size_t dim, std::size_t ancilla_dim, std::uint64_t seed) {
  if (dim == 0 || ancilla_dim == 0) throw ArgumentError("random_mixed: dimensions must be >= 1");
  auto purification = haar_random_pure(TensorStructure{dim, ancilla_dim}, seed);
  const std::size_t keep[] = {0};
  return reduced_density(purification, keep);
}

DensityMatrix random_separable(const TensorStructure& structure, std::size_t terms,
                               std::uint64_t seed) {
  if (terms == 0) throw ArgumentError("random_separable: need at least one term");
  Rng rng(seed);
  std::vector<double> weights(terms);
  double total = 0.0;
  for (auto& w : weights) total += (w = rng.exponential());

  ComplexMatrix rho(structure.total(), structure.total());
  for (std::size_t t = 0; t < terms; ++t) {
    StateVector product{Complex(1.0)};
    for (std::size_t j = 0; j < structure.factors(); ++j) {
      auto local = gaussian_vector(rng, structure[j]);
      scale_to_unit(local);
      product = tensor(product, local);
    }
    rho += outer(product) * Complex(weights[t] / total);
  }
  return DensityMatrix(std::move(rho), structure);
}

DensityMatrix werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ArgumentError("werner_state: p must lie in [0, 1], got " + std::to_string(p));
  }
  auto rho = maximally_entangled(2).projector() * Complex(p);
  rho += ComplexMatrix::identity(4) * Complex((1.0 - p) / 4.0);
  return DensityMatrix(std::move(rho), TensorStructure{2, 2});
}

PureState basis_state(const TensorStructure& structure, std::span<const std::size_t> digits) {
  StateVector v(structure.total());
  v[structure.compose(digits)] = 1.0;
  return PureState(std::move(v), structure);
}

PureState product_state(std::span<const StateVector> factors) {
  if (factors.empty()) throw ArgumentError("product_state: no factors");
  StateVector v{Complex(1.0)};
  std::vector<std::size_t> dims;
  for (const auto& f : factors) {
    auto local = f;
    scale_to_unit(local);
    v = tensor(v, local);
    dims.push_back(f.size());
  }
  return PureState::normalized(std::move(v), TensorStructure(std::move(dims)));
}

PureState maximally_entangled(std::size_t d) {
  if (d == 0) throw ArgumentError("maximally_entangled: dimension must be >= 1");
  StateVector v(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t k = 0; k < d; ++k) v[k * d + k] = amp;
  return PureState(std::move(v), TensorStructure{d, d});
}

PureState singlet() {
  const double amp = 1.0 / std::sqrt(2.0);
  return PureState({0.0, amp, -amp, 0.0}, TensorStructure{2, 2});
}

PureState w_state(std::size_t n) {
  if (n == 0) throw ArgumentError("w_state: need at least one qubit");
  auto s = TensorStructure::uniform(2, n);
  StateVector v(s.total());
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) v[std::size_t{1} << (n - 1 - k)] = amp;
  return PureState(std::move(v), s);
}

PureState ghz_state(std::size_t n) {
  if (n == 0) throw ArgumentError("ghz_state: need at least one qubit");
  auto s = TensorStructure::uniform(2, n);
  StateVector v(s.total());
  const double amp = 1.0 / std::sqrt(2.0);
  v.front() = amp;
  v.back() = amp;
  return PureState(std::move(v), s);
}

SymmetryReport symmetry_report(const PureState& psi) {
  const auto& s = psi.structure();
  for (std::size_t j = 1; j < s.factors(); ++j) {
    if (s[j] != s[0]) throw ArgumentError("symmetry_report: particles must share one local dimension");
  }
  SymmetryReport report;
  const auto& amps = psi.amplitudes();
  for (std::size_t k = 0; k + 1 < s.factors(); ++k) {
    double sym = 0.0, anti = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
      auto dig = s.digits(i);
      std::swap(dig[k], dig[k + 1]);
      const Complex swapped = amps[s.compose(dig)];
      sym += std::norm(swapped - amps[i]);
      anti += std::norm(swapped + amps[i]);
    }
    report.symmetric_residual = std::max(report.symmetric_residual, std::sqrt(sym));
    report.antisymmetric_residual = std::max(report.antisymmetric_residual, std::sqrt(anti));
  }
  return report;
}

}  // namespace oprep
