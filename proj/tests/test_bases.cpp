#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oprep/bases.hpp"
#include "oprep/errors.hpp"
#include "test_support.hpp"

using namespace oprep;
using oprep::testing::max_diff;

namespace {

const Complex I(0.0, 1.0);

std::vector<OperatorBasis> all_bases(std::size_t d) {
  std::vector<OperatorBasis> out;
  if (d == 2) out.push_back(pauli_basis());
  out.push_back(gellmann_basis(d));
  out.push_back(weyl_basis(d));
  return out;
}

// Sum_i O_i^dagger Y O_i - Tr(Y) I, evaluated with the test-side products.
double twirl_residual(const OperatorBasis& b, const ComplexMatrix& y) {
  ComplexMatrix sum(b.dim, b.dim);
  for (const auto& o : b.elements) {
    sum += oprep::testing::naive_product(oprep::testing::naive_dagger(o), oprep::testing::naive_product(y, o));
  }
  return max_diff(sum, ComplexMatrix::identity(b.dim) * oprep::testing::naive_trace(y));
}

}  // namespace

TEST_CASE("pauli_basis") {
  const auto b = pauli_basis();
  CHECK(b.elements.size() == 4);
  CHECK(b.is_hermitian);
  CHECK(gram_residual(b) < 1e-15);
  CHECK(verify_hermitian_sum_rule(b) <= 1e-12);

  const ComplexMatrix y{{1.0, 2.0}, {3.0 * I, 4.0}};
  CHECK(twirl_residual(b, y) <= 1e-12);
}

TEST_CASE("gellmann_basis") {
  SUBCASE("d = 2 reproduces the Pauli basis") {
    const auto g = gellmann_basis(2);
    const auto p = pauli_basis();
    for (std::size_t i = 0; i < 4; ++i) CHECK(max_diff(g.elements[i], p.elements[i]) < 1e-15);
  }
  SUBCASE("d = 3 generators: traceless, Tr lambda_i lambda_j = 2 delta_ij") {
    const auto g = gellmann_basis(3);
    REQUIRE(g.elements.size() == 9);
    for (std::size_t i = 1; i < 9; ++i) {
      const auto li = g.elements[i] * Complex(std::sqrt(2.0));
      CHECK(std::abs(oprep::testing::naive_trace(li)) < 1e-15);
      CHECK(hermiticity_residual(li) == 0.0);
      for (std::size_t j = 1; j < 9; ++j) {
        const auto lj = g.elements[j] * Complex(std::sqrt(2.0));
        const Complex t = oprep::testing::naive_trace(oprep::testing::naive_product(li, lj));
        CHECK(std::abs(t - (i == j ? 2.0 : 0.0)) <= 1e-12);
      }
    }
    // lambda_8 = diag(1, 1, -2)/sqrt 3
    const auto l8 = g.elements[8] * Complex(std::sqrt(2.0));
    CHECK(std::abs(l8(2, 2) + 2.0 / std::sqrt(3.0)) < 1e-15);
    CHECK(g.labels[8] == "lambda8");
  }
  SUBCASE("standard completeness relation of the generators") {
    // sum_i (lambda_i)_kl (lambda_i)_pq = 2 (delta_kq delta_lp - delta_kl delta_pq / d)
    for (std::size_t d : {2u, 3u, 4u}) {
      const auto g = gellmann_basis(d);
      double worst = 0.0;
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
          for (std::size_t p = 0; p < d; ++p)
            for (std::size_t q = 0; q < d; ++q) {
              Complex s{};
              for (std::size_t i = 1; i < g.elements.size(); ++i) s += 2.0 * g.elements[i](k, l) * g.elements[i](p, q);
              const double expected = 2.0 * ((k == q && l == p ? 1.0 : 0.0) - (k == l && p == q ? 1.0 / d : 0.0));
              worst = std::max(worst, std::abs(s - expected));
            }
      CHECK(worst <= 1e-12);
    }
  }
  SUBCASE("sum rule and completeness") {
    CHECK(verify_hermitian_sum_rule(gellmann_basis(3)) <= 1e-12);
    CHECK(twirl_residual(gellmann_basis(3), oprep::testing::random_complex(3, 3, 5)) <= 1e-12);
    CHECK(verify_completeness(gellmann_basis(4), 10) <= 1e-12);
  }
  CHECK_THROWS_AS(gellmann_basis(1), ArgumentError);
}

TEST_CASE("weyl_basis") {
  SUBCASE("d = 2 is {I, sigma_z, sigma_x, sigma_z sigma_x}/sqrt 2") {
    const auto w = weyl_basis(2);
    const double r = 1.0 / std::sqrt(2.0);
    const ComplexMatrix id{{r, 0.0}, {0.0, r}};
    const ComplexMatrix sx{{0.0, r}, {r, 0.0}};
    const ComplexMatrix sz{{r, 0.0}, {0.0, -r}};
    const ComplexMatrix isy{{0.0, r}, {-r, 0.0}};  // i sigma_y / sqrt 2
    CHECK(max_diff(w.elements[0], id) < 1e-15);
    CHECK(max_diff(w.elements[1], sx) < 1e-15);   // (m, n) = (0, 1): X
    CHECK(max_diff(w.elements[2], sz) < 1e-15);   // (1, 0): Z
    CHECK(max_diff(w.elements[3], isy) < 1e-15);  // (1, 1): Z X
    CHECK_FALSE(w.is_hermitian);
    CHECK(w.is_unitary_scaled);
  }
  SUBCASE("Z^d = X^d = I") {
    const std::size_t d = 5;
    auto z = ComplexMatrix::identity(d), x = ComplexMatrix::identity(d);
    for (std::size_t k = 0; k < d; ++k) {
      z = matmul(z, clock_matrix(d));
      x = matmul(x, shift_matrix(d));
    }
    CHECK(x == ComplexMatrix::identity(d));
    // Products of d floating-point roots of unity: one rounding per factor.
    CHECK(max_diff(z, ComplexMatrix::identity(d)) < 1e-14);
  }
  SUBCASE("X Z = q Z X") {
    for (std::size_t d : {2u, 3u, 5u, 7u}) {
      const auto z = clock_matrix(d), x = shift_matrix(d);
      const Complex q = std::polar(1.0, 2.0 * std::numbers::pi / d);
      CHECK(max_diff(matmul(x, z), matmul(z, x) * q) < 1e-15);
    }
  }
  SUBCASE("unitary elements") {
    const auto w = weyl_basis(4);
    for (const auto& e : w.elements) {
      const auto u = e * Complex(2.0);
      CHECK(max_diff(matmul(dagger(u), u), ComplexMatrix::identity(4)) < 1e-14);
    }
  }
  SUBCASE("resolution of identity as a twirl") {
    CHECK(verify_completeness(weyl_basis(3), 10) <= 1e-10);
    CHECK(twirl_residual(weyl_basis(5), oprep::testing::random_complex(5, 5, 17)) <= 1e-10);
  }
  CHECK_THROWS_AS(weyl_basis(1), ArgumentError);
  CHECK_THROWS_AS(verify_hermitian_sum_rule(weyl_basis(3)), DomainError);
}

TEST_CASE("basis invariants for d = 2..5") {
  for (std::size_t d = 2; d <= 5; ++d) {
    for (const auto& b : all_bases(d)) {
      CAPTURE(b.name);
      CAPTURE(d);
      CHECK(b.elements.size() == d * d);
      CHECK(b.labels.size() == d * d);
      CHECK(gram_residual(b) <= 1e-10);
      CHECK(verify_completeness(b, 20, d) <= 1e-10);
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        CHECK(expansion_residual(b, oprep::testing::random_complex(d, d, 50 + seed)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("verify_completeness negative control") {
  auto truncated = pauli_basis();
  truncated.elements.pop_back();
  truncated.labels.pop_back();
  CHECK(verify_completeness(truncated, 10) > 0.1);

  auto g = gellmann_basis(3);
  g.elements.erase(g.elements.begin() + 3);
  CHECK(verify_completeness(g, 10) > 0.1);
  CHECK_THROWS_AS(verify_completeness(pauli_basis(), 0), ArgumentError);
}

TEST_CASE("conjugate_basis") {
  const auto c = conjugate_basis(pauli_basis());
  const auto p = pauli_basis();
  CHECK(c.elements[0] == p.elements[0]);
  CHECK(c.elements[1] == p.elements[1]);
  CHECK(c.elements[2] == p.elements[2] * Complex(-1.0));
  CHECK(c.elements[3] == p.elements[3]);

  const auto g = gellmann_basis(3);
  const auto gc = conjugate_basis(g);
  for (std::size_t i = 0; i < 9; ++i) {
    const bool antisymmetric = i == 2 || i == 5 || i == 7;
    CHECK(max_diff(gc.elements[i], g.elements[i] * Complex(antisymmetric ? -1.0 : 1.0)) == 0.0);
  }
  CHECK(verify_completeness(gc, 10) <= 1e-12);
  CHECK(verify_completeness(conjugate_basis(weyl_basis(4)), 10) <= 1e-10);
}

TEST_CASE("make_basis") {
  CHECK(make_basis("pauli", 2).name == "pauli");
  CHECK(make_basis("gellmann", 4).dim == 4);
  CHECK(make_basis("weyl", 3).elements.size() == 9);
  CHECK_THROWS_AS(make_basis("pauli", 3), ArgumentError);
  CHECK_THROWS_AS(make_basis("sic", 3), ArgumentError);
}
