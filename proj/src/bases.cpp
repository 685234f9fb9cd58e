#include "oprep/bases.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oprep/errors.hpp"
#include "oprep/rng.hpp"

namespace oprep {

namespace {

void require_dim(std::size_t d, const char* what) {
  if (d < 2) throw ArgumentError(std::string(what) + ": dimension must be >= 2, got " + std::to_string(d));
}

// q^k with the exponent reduced mod d, so equal powers give bit-identical entries.
Complex root_of_unity(std::size_t d, std::size_t k) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k % d) / static_cast<double>(d);
  return std::polar(1.0, angle);
}

}  // namespace

OperatorBasis pauli_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  OperatorBasis b;
  b.name = "pauli";
  b.dim = 2;
  b.elements = {
      ComplexMatrix{{r, 0.0}, {0.0, r}},
      ComplexMatrix{{0.0, r}, {r, 0.0}},
      ComplexMatrix{{0.0, -i * r}, {i * r, 0.0}},
      ComplexMatrix{{r, 0.0}, {0.0, -r}},
  };
  b.labels = {"I", "X", "Y", "Z"};
  b.is_hermitian = true;
  return b;
}

OperatorBasis gellmann_basis(std::size_t d) {
  require_dim(d, "gellmann_basis");
  const double r = 1.0 / std::sqrt(2.0);
  OperatorBasis b;
  b.name = "gellmann";
  b.dim = d;
  b.is_hermitian = true;
  b.elements.push_back(ComplexMatrix::identity(d) * Complex(1.0 / std::sqrt(static_cast<double>(d))));
  b.labels.push_back("I");

  int index = 1;
  for (std::size_t k = 1; k < d; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      ComplexMatrix sym(d, d), anti(d, d);
      sym(j, k) = r;
      sym(k, j) = r;
      anti(j, k) = Complex(0.0, -r);
      anti(k, j) = Complex(0.0, r);
      b.elements.push_back(std::move(sym));
      b.labels.push_back("lambda" + std::to_string(index++));
      b.elements.push_back(std::move(anti));
      b.labels.push_back("lambda" + std::to_string(index++));
    }
    // sqrt(2/(k(k+1))) (sum_{j<k} |j><j| - k |k><k|), then the 1/sqrt 2 scaling.
    const double kk = static_cast<double>(k);
    const double norm = std::sqrt(2.0 / (kk * (kk + 1.0))) * r;
    ComplexMatrix diag(d, d);
    for (std::size_t j = 0; j < k; ++j) diag(j, j) = norm;
    diag(k, k) = -kk * norm;
    b.elements.push_back(std::move(diag));
    b.labels.push_back("lambda" + std::to_string(index++));
  }
  return b;
}

ComplexMatrix clock_matrix(std::size_t d) {
  ComplexMatrix z(d, d);
  for (std::size_t k = 0; k < d; ++k) z(k, k) = root_of_unity(d, k);
  return z;
}

ComplexMatrix shift_matrix(std::size_t d) {
  ComplexMatrix x(d, d);
  for (std::size_t k = 0; k < d; ++k) x(k, (k + 1) % d) = 1.0;
  return x;
}

OperatorBasis weyl_basis(std::size_t d) {
  require_dim(d, "weyl_basis");
  OperatorBasis b;
  b.name = "weyl";
  b.dim = d;
  b.is_unitary_scaled = true;
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t n = 0; n < d; ++n) {
      // (Z^m X^n)_{k, k+n} = q^{mk}
      ComplexMatrix e(d, d);
      for (std::size_t k = 0; k < d; ++k) e(k, (k + n) % d) = root_of_unity(d, m * k) * scale;
      b.elements.push_back(std::move(e));
      b.labels.push_back("Z^" + std::to_string(m) + "X^" + std::to_string(n));
    }
  }
  return b;
}

OperatorBasis conjugate_basis(const OperatorBasis& basis) {
  OperatorBasis out = basis;
  out.name = basis.name + "*";
  for (auto& e : out.elements) e = conjugate(e);
  for (auto& l : out.labels) l += "*";
  return out;
}

OperatorBasis make_basis(const std::string& name, std::size_t d) {
  if (name == "pauli") {
    if (d != 2) throw ArgumentError("pauli basis is defined for dimension 2 only, got " + std::to_string(d));
    return pauli_basis();
  }
  if (name == "gellmann") return gellmann_basis(d);
  if (name == "weyl") return weyl_basis(d);
  throw ArgumentError("unknown basis '" + name + "' (expected pauli, gellmann or weyl)");
}

double gram_residual(const OperatorBasis& basis) {
  double worst = 0.0;
  const auto& e = basis.elements;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = 0; j < e.size(); ++j) {
      const Complex g = hs_inner(e[i], e[j]);
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

double expansion_residual(const OperatorBasis& basis, const ComplexMatrix& probe) {
  ComplexMatrix rebuilt(basis.dim, basis.dim);
  for (const auto& o : basis.elements) rebuilt += o * hs_inner(o, probe);
  return max_abs(rebuilt - probe);
}

double verify_completeness(const OperatorBasis& basis, int trials, std::uint64_t seed) {
  if (trials < 1) throw ArgumentError("verify_completeness: trials must be >= 1");
  Rng rng(seed);
  const std::size_t d = basis.dim;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    ComplexMatrix y(d, d);
    for (auto& x : y.entries()) {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      x = Complex(re, im);
    }
    ComplexMatrix sum(d, d);
    for (const auto& o : basis.elements) sum += matmul(dagger(o), matmul(y, o));
    sum -= ComplexMatrix::identity(d) * trace(y);
    worst = std::max({worst, max_abs(sum), expansion_residual(basis, y)});
  }
  return worst;
}

double verify_hermitian_sum_rule(const OperatorBasis& basis) {
  if (!basis.is_hermitian) {
    throw DomainError("sum rule sum_i O_i^2 = d I requires a Hermitian basis; '" + basis.name +
                      "' is not Hermitian");
  }
  const std::size_t d = basis.dim;
  ComplexMatrix sum(d, d);
  for (const auto& o : basis.elements) sum += matmul(o, o);
  sum -= ComplexMatrix::identity(d) * Complex(static_cast<double>(d));
  return max_abs(sum);
}

}  // namespace oprep
