#include <doctest.h>

#include <cmath>

#include "oprep/criteria.hpp"
#include "oprep/errors.hpp"
#include "test_support.hpp"

using namespace oprep;
using oprep::testing::brute_kron;
using oprep::testing::brute_variance;

namespace {

double brute_local_sum(const DensityMatrix& rho, const OperatorBasis& basis, BSide side) {
  const std::size_t d = basis.dim;
  const auto id = ComplexMatrix::identity(d);
  double sum = 0.0;
  for (const auto& o : basis.elements) {
    const auto ob = side == BSide::same ? o : conjugate(o);
    sum += brute_variance(rho.matrix(), brute_kron(o, id) - brute_kron(id, ob));
  }
  return sum;
}

double brute_collective_sum(const DensityMatrix& rho, const OperatorBasis& basis, std::size_t particles) {
  const std::size_t d = basis.dim;
  double sum = 0.0;
  for (const auto& o : basis.elements) {
    ComplexMatrix total(rho.dim(), rho.dim());
    for (std::size_t k = 0; k < particles; ++k) {
      ComplexMatrix term = ComplexMatrix::identity(1);
      for (std::size_t j = 0; j < particles; ++j) term = brute_kron(term, j == k ? o : ComplexMatrix::identity(d));
      total += term;
    }
    sum += brute_variance(rho.matrix(), total);
  }
  return sum;
}

DensityMatrix pure_density(const PureState& psi) { return DensityMatrix(psi); }

}  // namespace

TEST_CASE("uncertainty identity") {
  SUBCASE("pure qubit") {
    const DensityMatrix rho(PureState::normalized({1.0, Complex(0.3, 0.4)}, TensorStructure{2}));
    const auto u = uncertainty_identity(rho, pauli_basis());
    CHECK(std::abs(u.sum - 1.0) <= 1e-12);
    CHECK(u.residual <= 1e-12);
  }
  SUBCASE("maximally mixed qutrit") {
    const DensityMatrix rho(ComplexMatrix::identity(3) * Complex(1.0 / 3.0), TensorStructure{3});
    CHECK(std::abs(uncertainty_identity(rho, gellmann_basis(3)).sum - 8.0 / 3.0) <= 1e-12);
  }
  SUBCASE("random mixed states") {
    for (std::size_t d = 2; d <= 5; ++d) {
      for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto rho = random_mixed(d, 1 + seed % (2 * d), 1000 * d + seed);
        const auto u = uncertainty_identity(rho, gellmann_basis(d));
        CHECK(u.residual <= 1e-10);
        CHECK(u.sum >= d - 1.0 - 1e-10);
        CHECK(std::abs(u.sum - (d - rho.purity())) <= 1e-10);
      }
    }
  }
  SUBCASE("report") {
    const auto rho = random_mixed(4, 3, 9);
    const auto r = uncertainty_identity_report(rho, gellmann_basis(4));
    CHECK(r.criterion == CriterionKind::uncertainty_identity);
    CHECK(r.threshold == 3.0);
    CHECK(r.verdict == Verdict::not_detected);
    CHECK(r.metadata.count("identity_residual") == 1);
  }
  CHECK_THROWS_AS(uncertainty_identity(random_mixed(3, 2, 1), weyl_basis(3)), DomainError);
  CHECK_THROWS_AS(uncertainty_identity(random_mixed(3, 2, 1), gellmann_basis(4)), ArgumentError);
}

TEST_CASE("local uncertainty criterion") {
  SUBCASE("Werner family, conjugate convention") {
    for (int k = 0; k <= 10; ++k) {
      const double p = k / 10.0;
      const auto rho = werner_state(p);
      const auto r = local_uncertainty_criterion(rho, pauli_basis());
      CHECK(std::abs(r.value - 3.0 * (1.0 - p)) <= 1e-10);
      CHECK(std::abs(r.value - brute_local_sum(rho, pauli_basis(), BSide::conjugate)) <= 1e-12);
      CHECK(r.threshold == 2.0);
      CHECK(r.b_side == BSide::conjugate);
      CHECK((r.verdict == Verdict::entangled_detected) == (k >= 4));
    }
  }
  SUBCASE("Werner family, same convention") {
    // sigma_y picks up a sign under transposition, so Phi+ is no longer an
    // eigenstate of every difference: the sum is 3 - p and never drops below 2.
    for (int k = 0; k <= 10; ++k) {
      const double p = k / 10.0;
      const auto rho = werner_state(p);
      const auto r = local_uncertainty_criterion(rho, pauli_basis(), BSide::same);
      CHECK(std::abs(r.value - brute_local_sum(rho, pauli_basis(), BSide::same)) <= 1e-12);
      CHECK(std::abs(r.value - (3.0 - p)) <= 1e-10);
      CHECK(r.verdict == Verdict::not_detected);
    }
  }
  SUBCASE("maximally entangled qutrits") {
    const auto rho = pure_density(maximally_entangled(3));
    const auto r = local_uncertainty_criterion(rho, gellmann_basis(3));
    CHECK(std::abs(r.value) <= 1e-12);
    CHECK(r.verdict == Verdict::entangled_detected);
    CHECK(std::abs(local_uncertainty_criterion(rho, gellmann_basis(3), BSide::same).value -
                   brute_local_sum(rho, gellmann_basis(3), BSide::same)) <= 1e-12);
  }
  SUBCASE("random states against brute force") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const std::size_t d = 2 + seed % 2;
      const auto rho = pure_density(haar_random_pure(TensorStructure{d, d}, seed));
      for (auto side : {BSide::same, BSide::conjugate}) {
        CHECK(std::abs(local_uncertainty_criterion(rho, gellmann_basis(d), side).value -
                       brute_local_sum(rho, gellmann_basis(d), side)) <= 1e-10);
      }
    }
  }
  SUBCASE("maximally mixed two qubits") {
    const DensityMatrix rho(ComplexMatrix::identity(4) * Complex(0.25), TensorStructure{2, 2});
    CHECK(std::abs(local_uncertainty_criterion(rho, pauli_basis()).value - 3.0) <= 1e-12);
  }
  CHECK_THROWS_AS(local_uncertainty_criterion(random_separable(TensorStructure{2, 3}, 2, 1), gellmann_basis(2)),
                  ArgumentError);
  CHECK_THROWS_AS(local_uncertainty_criterion(werner_state(0.5), weyl_basis(2)), DomainError);
  CHECK(parse_b_side("same") == BSide::same);
  CHECK_THROWS_AS(parse_b_side("other"), ArgumentError);
}

TEST_CASE("collective uncertainty criterion") {
  SUBCASE("singlet") {
    const auto r = collective_uncertainty_criterion(pure_density(singlet()), pauli_basis());
    CHECK(std::abs(r.value) <= 1e-12);
    CHECK(r.threshold == 2.0);
    CHECK(r.verdict == Verdict::entangled_detected);
  }
  SUBCASE("product pure states sit on the bound") {
    for (std::size_t d : {2u, 3u}) {
      for (std::size_t n = 2; n <= 4; ++n) {
        if (d == 3 && n == 4) continue;
        std::vector<StateVector> factors;
        for (std::size_t k = 0; k < n; ++k) factors.push_back(haar_random_pure(TensorStructure{d}, 40 + 7 * k + d).amplitudes());
        const auto rho = pure_density(product_state(factors));
        const auto r = collective_uncertainty_criterion(rho, gellmann_basis(d));
        CHECK(std::abs(r.value - n * (d - 1.0)) <= 1e-10);
        CHECK(r.verdict == Verdict::not_detected);
      }
    }
  }
  SUBCASE("GHZ3 and W3 against brute force") {
    for (const auto& psi : {ghz_state(3), w_state(3)}) {
      const auto rho = pure_density(psi);
      const double brute = brute_collective_sum(rho, pauli_basis(), 3);
      for (auto path : {CollectivePath::materialized, CollectivePath::implicit}) {
        CHECK(std::abs(collective_uncertainty_criterion(rho, pauli_basis(), path).value - brute) <= 1e-10);
      }
    }
  }
  SUBCASE("paths agree on random mixed states") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto s = TensorStructure::uniform(3, 2);
      const auto rho = random_mixed(9, 3, seed);
      const DensityMatrix structured(rho.matrix(), s);
      const double m = collective_uncertainty_criterion(structured, gellmann_basis(3), CollectivePath::materialized).value;
      const double i = collective_uncertainty_criterion(structured, gellmann_basis(3), CollectivePath::implicit).value;
      CHECK(std::abs(m - i) <= 1e-10);
      CHECK(std::abs(m - brute_collective_sum(structured, gellmann_basis(3), 2)) <= 1e-10);
    }
  }
  SUBCASE("operator set") {
    const CollectiveOperatorSet ops(pauli_basis(), 2);
    CHECK(ops.size() == 4);
    const auto z = ops.materialize(3);
    const ComplexMatrix expected =
        brute_kron(pauli_basis().elements[3], ComplexMatrix::identity(2)) + brute_kron(ComplexMatrix::identity(2), pauli_basis().elements[3]);
    CHECK(oprep::testing::max_diff(z, expected) <= 1e-15);
    CHECK_THROWS_AS(CollectiveOperatorSet(weyl_basis(2), 2), DomainError);
  }
  CHECK(collective_uncertainty_criterion(pure_density(ghz_state(3)), pauli_basis()).metadata.at("particles") == "3");
}

TEST_CASE("ppt criterion") {
  const auto half = ppt_criterion(werner_state(0.5));
  CHECK(std::abs(half.value + 0.125) <= 1e-12);
  CHECK(half.verdict == Verdict::entangled_detected);
  const auto quarter = ppt_criterion(werner_state(0.25));
  CHECK(std::abs(quarter.value - 1.0 / 16.0) <= 1e-12);
  CHECK(quarter.verdict == Verdict::not_detected);
  CHECK(ppt_criterion(pure_density(maximally_entangled(3))).value < -0.3);
}

TEST_CASE("criterion_scan") {
  std::vector<double> grid;
  for (int k = 0; k <= 10; ++k) grid.push_back(k / 10.0);
  const std::vector<CriterionSpec> specs{
      {"local", [](const DensityMatrix& r) { return local_uncertainty_criterion(r, pauli_basis()); }},
      {"ppt", [](const DensityMatrix& r) { return ppt_criterion(r); }},
  };
  const auto rows = criterion_scan(werner_state, specs, grid);
  REQUIRE(rows.size() == grid.size());
  for (const auto& row : rows) {
    REQUIRE(row.reports.size() == 2);
    CHECK(row.reports[0].verdict == row.reports[1].verdict);
    CHECK((row.reports[0].verdict == Verdict::entangled_detected) == (row.parameter > 0.35));
  }
  CHECK_THROWS_AS(criterion_scan(werner_state, specs, {}), ArgumentError);
  CHECK_THROWS_AS(criterion_scan(werner_state, {}, grid), ArgumentError);
}

TEST_CASE("no false positives on separable states") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const std::size_t d = 2 + seed % 2;
    const auto rho = random_separable(TensorStructure{d, d}, 1 + seed % 6, seed);
    for (auto side : {BSide::same, BSide::conjugate}) {
      CHECK(local_uncertainty_criterion(rho, gellmann_basis(d), side).verdict == Verdict::not_detected);
    }
    CHECK(collective_uncertainty_criterion(rho, gellmann_basis(d)).verdict == Verdict::not_detected);
    CHECK(ppt_criterion(rho).verdict == Verdict::not_detected);
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto rho = random_separable(TensorStructure::uniform(2, 3), 1 + seed % 4, 300 + seed);
    CHECK(collective_uncertainty_criterion(rho, pauli_basis()).verdict == Verdict::not_detected);
  }
}
