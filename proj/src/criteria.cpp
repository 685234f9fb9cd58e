#include "oprep/criteria.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "oprep/errors.hpp"
#include "oprep/tolerances.hpp"

namespace oprep {

std::string to_string(CriterionKind k) {
  switch (k) {
    case CriterionKind::uncertainty_identity: return "uncertainty_identity";
    case CriterionKind::local_uncertainty: return "local_uncertainty";
    case CriterionKind::collective_uncertainty: return "collective_uncertainty";
    case CriterionKind::ppt: return "ppt";
  }
  return "unknown";
}

std::string to_string(Verdict v) {
  return v == Verdict::entangled_detected ? "entangled_detected" : "not_detected";
}

std::string to_string(BSide b) { return b == BSide::same ? "same" : "conjugate"; }

BSide parse_b_side(const std::string& text) {
  if (text == "same") return BSide::same;
  if (text == "conjugate") return BSide::conjugate;
  throw ArgumentError("b-side must be 'same' or 'conjugate', got '" + text + "'");
}

namespace {

void require_hermitian_basis(const OperatorBasis& basis) {
  if (!basis.is_hermitian) {
    throw DomainError("uncertainty criteria need a Hermitian basis; '" + basis.name + "' is not Hermitian");
  }
}

// Var(A) for Hermitian A.
double variance(const ComplexMatrix& rho, const ComplexMatrix& a) {
  const double mean = expectation(rho, a).real();
  const double second = expectation(rho, matmul(a, a)).real();
  return second - mean * mean;
}

Verdict below(double value, double threshold) {
  return value < threshold - kTol.verdict ? Verdict::entangled_detected : Verdict::not_detected;
}

// I (x) ... (x) op at `site` (x) ... (x) I
ComplexMatrix embed(const ComplexMatrix& op, std::size_t site, std::size_t sites) {
  const std::size_t d = op.rows();
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (std::size_t k = 0; k < sites; ++k) out = tensor(out, k == site ? op : ComplexMatrix::identity(d));
  return out;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

CollectiveOperatorSet::CollectiveOperatorSet(OperatorBasis single_particle_basis, std::size_t particles)
    : basis_(std::move(single_particle_basis)), particles_(particles) {
  require_hermitian_basis(basis_);
  if (particles_ < 1) throw ArgumentError("collective operators need at least one particle");
}

ComplexMatrix CollectiveOperatorSet::materialize(std::size_t i) const {
  const auto& op = basis_.elements.at(i);
  std::size_t total = 1;
  for (std::size_t k = 0; k < particles_; ++k) total *= basis_.dim;
  ComplexMatrix sum(total, total);
  for (std::size_t k = 0; k < particles_; ++k) sum += embed(op, k, particles_);
  return sum;
}

UncertaintySum uncertainty_identity(const DensityMatrix& rho, const OperatorBasis& basis) {
  require_hermitian_basis(basis);
  if (basis.dim != rho.dim()) {
    throw ArgumentError("basis dimension " + std::to_string(basis.dim) + " does not match state dimension " +
                        std::to_string(rho.dim()));
  }
  UncertaintySum out;
  for (const auto& o : basis.elements) out.sum += variance(rho.matrix(), o);
  out.residual = std::abs(out.sum - (static_cast<double>(basis.dim) - rho.purity()));
  return out;
}

CriterionReport uncertainty_identity_report(const DensityMatrix& rho, const OperatorBasis& basis) {
  const auto u = uncertainty_identity(rho, basis);
  CriterionReport r;
  r.criterion = CriterionKind::uncertainty_identity;
  r.value = u.sum;
  r.threshold = static_cast<double>(basis.dim) - 1.0;
  r.verdict = below(r.value, r.threshold);
  r.basis_name = basis.name;
  r.metadata["identity_residual"] = format_double(u.residual);
  r.metadata["purity"] = format_double(rho.purity());
  return r;
}

CriterionReport local_uncertainty_criterion(const DensityMatrix& rho, const OperatorBasis& basis,
                                            BSide b_side) {
  require_hermitian_basis(basis);
  const auto& s = rho.structure();
  if (s.factors() != 2) throw ArgumentError("local uncertainty criterion: bipartite state required");
  if (s[0] != s[1]) {
    throw ArgumentError("local uncertainty criterion: both subsystems must have the same dimension, got " +
                        std::to_string(s[0]) + " and " + std::to_string(s[1]));
  }
  const std::size_t d = s[0];
  if (basis.dim != d) throw ArgumentError("local uncertainty criterion: basis dimension mismatch");

  const auto id = ComplexMatrix::identity(d);
  double value = 0.0;
  for (const auto& o : basis.elements) {
    const ComplexMatrix ob = b_side == BSide::conjugate ? conjugate(o) : o;
    const ComplexMatrix diff = tensor(o, id) - tensor(id, ob);
    value += variance(rho.matrix(), diff);
  }
  CriterionReport r;
  r.criterion = CriterionKind::local_uncertainty;
  r.value = value;
  r.threshold = 2.0 * (static_cast<double>(d) - 1.0);
  r.verdict = below(r.value, r.threshold);
  r.basis_name = basis.name;
  r.b_side = b_side;
  return r;
}

CriterionReport collective_uncertainty_criterion(const DensityMatrix& rho, const OperatorBasis& basis,
                                                 CollectivePath path) {
  const auto& s = rho.structure();
  const std::size_t n = s.factors();
  const std::size_t d = s[0];
  for (std::size_t k = 1; k < n; ++k) {
    if (s[k] != d) throw ArgumentError("collective criterion: all particles must share one local dimension");
  }
  if (basis.dim != d) throw ArgumentError("collective criterion: basis dimension mismatch");
  const CollectiveOperatorSet ops(basis, n);

  if (path == CollectivePath::automatic) {
    path = n * d <= 12 ? CollectivePath::materialized : CollectivePath::implicit;
  }

  double value = 0.0;
  if (path == CollectivePath::materialized) {
    for (std::size_t i = 0; i < ops.size(); ++i) value += variance(rho.matrix(), ops.materialize(i));
  } else {
    // Var(sum_K O_K) = sum_K <O^2>_K + 2 sum_{K<L} <O (x) O>_KL - (sum_K <O>_K)^2
    std::vector<ComplexMatrix> singles;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t keep[] = {k};
      singles.push_back(partial_trace(rho.matrix(), s, keep));
    }
    std::vector<ComplexMatrix> pairs;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = k + 1; l < n; ++l) {
        const std::size_t keep[] = {k, l};
        pairs.push_back(partial_trace(rho.matrix(), s, keep));
      }
    for (const auto& o : basis.elements) {
      const ComplexMatrix o2 = matmul(o, o);
      const ComplexMatrix oo = tensor(o, o);
      double mean = 0.0, second = 0.0;
      for (const auto& r1 : singles) {
        mean += expectation(r1, o).real();
        second += expectation(r1, o2).real();
      }
      for (const auto& r2 : pairs) second += 2.0 * expectation(r2, oo).real();
      value += second - mean * mean;
    }
  }

  CriterionReport r;
  r.criterion = CriterionKind::collective_uncertainty;
  r.value = value;
  r.threshold = static_cast<double>(n) * (static_cast<double>(d) - 1.0);
  r.verdict = below(r.value, r.threshold);
  r.basis_name = basis.name;
  r.metadata["particles"] = std::to_string(n);
  r.metadata["path"] = path == CollectivePath::materialized ? "materialized" : "implicit";
  return r;
}

CriterionReport ppt_criterion(const DensityMatrix& rho) {
  const auto pt = partial_transpose(rho.matrix(), rho.structure(), 1);
  CriterionReport r;
  r.criterion = CriterionKind::ppt;
  r.value = eigh(pt).values.back();
  r.threshold = 0.0;
  r.verdict = r.value < -kTol.verdict ? Verdict::entangled_detected : Verdict::not_detected;
  r.metadata["transposed_factor"] = "1";
  return r;
}

std::vector<ScanRow> criterion_scan(const std::function<DensityMatrix(double)>& family,
                                    const std::vector<CriterionSpec>& criteria,
                                    const std::vector<double>& grid) {
  if (grid.empty()) throw ArgumentError("criterion scan: grid is empty");
  if (criteria.empty()) throw ArgumentError("criterion scan: no criteria selected");
  std::vector<ScanRow> rows;
  rows.reserve(grid.size());
  for (double p : grid) {
    const auto rho = family(p);
    ScanRow row;
    row.parameter = p;
    for (const auto& c : criteria) row.reports.push_back(c.evaluate(rho));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace oprep
