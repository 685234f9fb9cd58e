#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oprep/bases.hpp"
#include "oprep/states.hpp"

namespace oprep {

enum class CriterionKind { uncertainty_identity, local_uncertainty, collective_uncertainty, ppt };
enum class Verdict { entangled_detected, not_detected };
/// How the B-side operator of each local difference O_A - O_B is chosen.
enum class BSide { same, conjugate };

std::string to_string(CriterionKind k);
std::string to_string(Verdict v);
std::string to_string(BSide b);
BSide parse_b_side(const std::string& text);

struct CriterionReport {
  CriterionKind criterion = CriterionKind::ppt;
  double value = 0.0;
  double threshold = 0.0;
  Verdict verdict = Verdict::not_detected;
  std::string basis_name;
  std::optional<BSide> b_side;
  std::map<std::string, std::string> metadata;
};

/// Sum_i O_i^{(1)} + ... + O_i^{(N)} for a Hermitian single-particle basis.
class CollectiveOperatorSet {
 public:
  /// Throws DomainError for a non-Hermitian basis.
  CollectiveOperatorSet(OperatorBasis single_particle_basis, std::size_t particles);

  const OperatorBasis& single_particle_basis() const { return basis_; }
  std::size_t particles() const { return particles_; }
  std::size_t size() const { return basis_.elements.size(); }

  /// Full d^N x d^N matrix of the i-th collective operator.
  ComplexMatrix materialize(std::size_t i) const;

 private:
  OperatorBasis basis_;
  std::size_t particles_;
};

enum class CollectivePath { automatic, materialized, implicit };

struct UncertaintySum {
  /// Sum_i [Tr(rho O_i^2) - Tr(rho O_i)^2]
  double sum = 0.0;
  /// |sum - (d - Tr rho^2)|
  double residual = 0.0;
};

/// Uncertainty identity for a single system.
UncertaintySum uncertainty_identity(const DensityMatrix& rho, const OperatorBasis& basis);

/// Single-system report: value = the uncertainty sum, threshold = d - 1 (its lower bound).
CriterionReport uncertainty_identity_report(const DensityMatrix& rho, const OperatorBasis& basis);

/// Sum of variances of O_i (x) I - I (x) O'_i against 2(d-1).
CriterionReport local_uncertainty_criterion(const DensityMatrix& rho, const OperatorBasis& basis,
                                            BSide b_side = BSide::conjugate);

/// Sum of variances of the collective operators against N(d-1).
CriterionReport collective_uncertainty_criterion(const DensityMatrix& rho, const OperatorBasis& basis,
                                                 CollectivePath path = CollectivePath::automatic);

/// Minimum eigenvalue of the partial transpose on factor 1.
CriterionReport ppt_criterion(const DensityMatrix& rho);

struct CriterionSpec {
  std::string name;
  std::function<CriterionReport(const DensityMatrix&)> evaluate;
};

struct ScanRow {
  double parameter = 0.0;
  std::vector<CriterionReport> reports;  // one per CriterionSpec, in order
};

/// Evaluates every criterion at every grid point; rows follow grid order.
std::vector<ScanRow> criterion_scan(const std::function<DensityMatrix(double)>& family,
                                    const std::vector<CriterionSpec>& criteria,
                                    const std::vector<double>& grid);

}  // namespace oprep
