#include "oprep/measures.hpp"

#include <cmath>
#include <string>

#include "oprep/errors.hpp"
#include "oprep/tolerances.hpp"

namespace oprep {

std::string to_string(MeasureMethod m) {
  switch (m) {
    case MeasureMethod::direct: return "direct";
    case MeasureMethod::chain: return "chain";
    case MeasureMethod::closed_form_gellmann: return "closed_form_gellmann";
    case MeasureMethod::closed_form_weyl: return "closed_form_weyl";
    case MeasureMethod::concurrence_squared: return "concurrence_squared";
    case MeasureMethod::identical: return "identical";
  }
  return "unknown";
}

const PureState& require_pure(const AnyState& state) {
  if (const auto* psi = std::get_if<PureState>(&state)) return *psi;
  throw DomainError(
      "M_e(n) is a pure-state entanglement measure and is undefined for mixed states; "
      "use the criterion command for mixed-state entanglement detection");
}

namespace {

const std::size_t kFactorA[] = {0};

void require_order(int n) {
  if (n < 2) throw ArgumentError("measure order n must be >= 2, got " + std::to_string(n));
}

// Applies the range and imaginary-residual invariants of M_e(n) for a
// d-dimensional reduced state.
MeasureResult finish(int n, Complex trace_power, std::size_t d, MeasureMethod method,
                     std::vector<std::string> labels = {}) {
  MeasureResult r;
  r.n = n;
  r.method = method;
  r.basis_labels = std::move(labels);
  r.value = 1.0 - trace_power.real();
  r.imag_residual = std::abs(trace_power.imag());
  if (r.imag_residual > kTol.imag) {
    throw NumericError("M_e(" + std::to_string(n) + ") via " + to_string(method) +
                       ": imaginary residual " + std::to_string(r.imag_residual) + " exceeds tolerance");
  }
  const double upper = 1.0 - std::pow(static_cast<double>(d), 1.0 - n);
  if (r.value < -kTol.imag || r.value > upper + kTol.imag) {
    throw NumericError("M_e(" + std::to_string(n) + ") via " + to_string(method) + " = " +
                       std::to_string(r.value) + " lies outside [0, 1 - d^(1-n)]");
  }
  return r;
}

void require_basis_dim(const OperatorBasis& b, std::size_t d) {
  if (b.dim != d || b.elements.size() != d * d) {
    throw ArgumentError("basis '" + b.name + "' has dimension " + std::to_string(b.dim) +
                        " but the reduced state has dimension " + std::to_string(d));
  }
}

std::vector<std::size_t> bipartite_dims(const PureState& psi, const char* what) {
  if (psi.structure().factors() != 2) {
    throw ArgumentError(std::string(what) + ": bipartite state required");
  }
  return psi.structure().dims();
}

}  // namespace

MeasureResult me_direct(const PureState& psi, int n, std::span<const std::size_t> keep) {
  require_order(n);
  const auto rho = reduced_density(psi, keep);
  return finish(n, mat_power_trace(rho.matrix(), n), rho.dim(), MeasureMethod::direct);
}

MeasureResult me_chain(const PureState& psi, int n, std::span<const OperatorBasis> bases,
                       std::span<const std::size_t> keep) {
  require_order(n);
  if (bases.size() != static_cast<std::size_t>(n - 1)) {
    throw ArgumentError("chain evaluation of M_e(" + std::to_string(n) + ") needs " +
                        std::to_string(n - 1) + " bases, got " + std::to_string(bases.size()));
  }
  const auto rho_state = reduced_density(psi, keep);
  const auto& rho = rho_state.matrix();
  const std::size_t d = rho_state.dim();
  std::vector<std::string> labels;
  for (const auto& b : bases) {
    require_basis_dim(b, d);
    labels.push_back(b.name);
  }

  // Contract T1 * M^1 * ... * M^{n-2} * F with
  //   T1[i]     = <O^1_i>
  //   M^k[i,j]  = <O^{k+1}_j (O^k_i)^dagger>
  //   F[j]      = <(O^{n-1}_j)^dagger>
  const std::size_t terms = d * d;
  std::vector<Complex> row(terms);
  for (std::size_t i = 0; i < terms; ++i) row[i] = expectation(rho, bases[0].elements[i]);

  for (std::size_t slot = 0; slot + 1 < bases.size(); ++slot) {
    const auto& left = bases[slot].elements;
    const auto& right = bases[slot + 1].elements;
    std::vector<ComplexMatrix> left_dag;
    left_dag.reserve(terms);
    for (const auto& o : left) left_dag.push_back(dagger(o));
    std::vector<Complex> next(terms);
    for (std::size_t j = 0; j < terms; ++j) {
      const ComplexMatrix rho_oj = matmul(rho, right[j]);
      Complex acc{};
      for (std::size_t i = 0; i < terms; ++i) {
        if (row[i] == Complex{}) continue;
        acc += row[i] * expectation(rho_oj, left_dag[i]);  // Tr(rho O_j O_i^dagger)
      }
      next[j] = acc;
    }
    row = std::move(next);
  }

  Complex total{};
  for (std::size_t j = 0; j < terms; ++j) total += row[j] * expectation(rho, dagger(bases.back().elements[j]));
  return finish(n, total, d, MeasureMethod::chain, std::move(labels));
}

Me2Expectations me2_expectations(const PureState& psi, const OperatorBasis& basis,
                                 std::span<const std::size_t> keep) {
  const auto rho_state = reduced_density(psi, keep);
  require_basis_dim(basis, rho_state.dim());
  Me2Expectations out;
  double sum = 0.0;
  for (const auto& o : basis.elements) {
    const Complex e = expectation(rho_state.matrix(), o);
    out.expectations.push_back(e);
    sum += std::norm(e);
  }
  out.result = finish(2, Complex(sum), rho_state.dim(), MeasureMethod::chain, {basis.name});
  out.i_concurrence = std::sqrt(std::max(0.0, 2.0 * out.result.value));
  return out;
}

double concurrence_2qubit(const PureState& psi) {
  if (psi.structure() != TensorStructure{2, 2}) {
    throw ArgumentError("concurrence_2qubit: two-qubit state (structure [2,2]) required");
  }
  const auto& a = psi.amplitudes();
  return 2.0 * std::abs(a[0] * a[3] - a[1] * a[2]);
}

MeasureResult me2_concurrence(const PureState& psi) {
  const double c = concurrence_2qubit(psi);
  return finish(2, Complex(1.0 - 0.5 * c * c), 2, MeasureMethod::concurrence_squared);
}

MeasureResult me2_gellmann_closed_form(const PureState& psi) {
  const auto dims = bipartite_dims(psi, "me2_gellmann_closed_form");
  const std::size_t d = dims[0];
  const auto basis = gellmann_basis(d);
  const auto rho = reduced_density(psi, kFactorA);
  // Basis elements beyond the identity are lambda_i / sqrt 2.
  double sum_sq = 0.0;
  for (std::size_t i = 1; i < basis.elements.size(); ++i) {
    const double lam = std::sqrt(2.0) * expectation(rho.matrix(), basis.elements[i]).real();
    sum_sq += lam * lam;
  }
  const double dd = static_cast<double>(d);
  const double purity = 1.0 / dd + 0.5 * sum_sq;
  return finish(2, Complex(purity), d, MeasureMethod::closed_form_gellmann, {"gellmann"});
}

MeasureResult me2_weyl_closed_form(const PureState& psi) {
  const auto dims = bipartite_dims(psi, "me2_weyl_closed_form");
  const std::size_t d = dims[0];
  const auto rho = reduced_density(psi, kFactorA);
  const auto z = clock_matrix(d);
  const auto x = shift_matrix(d);
  double sum_sq = 0.0;
  ComplexMatrix zm = ComplexMatrix::identity(d);
  for (std::size_t m = 0; m < d; ++m) {
    ComplexMatrix op = zm;
    for (std::size_t n = 0; n < d; ++n) {
      sum_sq += std::norm(expectation(rho.matrix(), op));
      op = matmul(op, x);
    }
    zm = matmul(zm, z);
  }
  return finish(2, Complex(sum_sq / static_cast<double>(d)), d, MeasureMethod::closed_form_weyl, {"weyl"});
}

IdenticalMeasure me2_identical(const PureState& psi_n) {
  return me2_identical(psi_n, gellmann_basis(psi_n.structure()[0]));
}

IdenticalMeasure me2_identical(const PureState& psi_n, const OperatorBasis& basis) {
  const auto& s = psi_n.structure();
  if (s.factors() < 2) {
    throw ArgumentError("identical-particle measure needs at least 2 particles, got " +
                        std::to_string(s.factors()));
  }
  const std::size_t d = s[0];
  for (std::size_t k = 1; k < s.factors(); ++k) {
    if (s[k] != d) throw ArgumentError("identical-particle measure: all particles must have dimension " + std::to_string(d));
  }
  IdenticalMeasure out;
  auto single = me2_expectations(psi_n, basis, kFactorA);
  out.result = single.result;
  out.result.method = MeasureMethod::identical;

  for (std::size_t k = 0; k < s.factors(); ++k) {
    const std::size_t keep[] = {k};
    out.per_particle.push_back(1.0 - reduced_density(psi_n, keep).purity());
  }
  for (double v : out.per_particle) {
    if (std::abs(v - out.per_particle.front()) > kTol.imag) out.particles_agree = false;
  }
  out.symmetry = symmetry_report(psi_n);
  return out;
}

}  // namespace oprep
