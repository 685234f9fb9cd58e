#include "oprep/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "oprep/errors.hpp"
#include "oprep/tolerances.hpp"

namespace oprep {

namespace {

std::string shape_of(const ComplexMatrix& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw ShapeError(std::string(what) + ": expected a square matrix, got " + shape_of(a));
  }
}

void require_structure(const ComplexMatrix& rho, const TensorStructure& s, const char* what) {
  require_square(rho, what);
  if (s.factors() == 0 || s.total() != rho.rows()) {
    throw ShapeError(std::string(what) + ": tensor structure does not match matrix dimension " +
                     std::to_string(rho.rows()));
  }
}

}  // namespace

// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw ShapeError("ComplexMatrix: " + std::to_string(data_.size()) +
                     " entries cannot fill a " + std::to_string(rows) + "x" +
                     std::to_string(cols) + " matrix");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ShapeError("ComplexMatrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw ShapeError("matrix sum: " + shape_of(*this) + " vs " + shape_of(other));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw ShapeError("matrix difference: " + shape_of(*this) + " vs " + shape_of(other));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& x : data_) x *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

// TensorStructure

TensorStructure::TensorStructure(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  for (auto d : dims_) {
    if (d == 0) throw ArgumentError("TensorStructure: factor dimensions must be positive");
  }
}

TensorStructure::TensorStructure(std::initializer_list<std::size_t> dims)
    : TensorStructure(std::vector<std::size_t>(dims)) {}

TensorStructure TensorStructure::uniform(std::size_t d, std::size_t n) {
  return TensorStructure(std::vector<std::size_t>(n, d));
}

std::size_t TensorStructure::total() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

std::vector<std::size_t> TensorStructure::digits(std::size_t index) const {
  std::vector<std::size_t> out(dims_.size());
  for (std::size_t j = dims_.size(); j-- > 0;) {
    out[j] = index % dims_[j];
    index /= dims_[j];
  }
  return out;
}

std::size_t TensorStructure::compose(std::span<const std::size_t> digits) const {
  if (digits.size() != dims_.size()) throw ShapeError("TensorStructure::compose: wrong digit count");
  std::size_t index = 0;
  for (std::size_t j = 0; j < dims_.size(); ++j) {
    if (digits[j] >= dims_[j]) throw ArgumentError("TensorStructure::compose: digit out of range");
    index = index * dims_[j] + digits[j];
  }
  return index;
}

// Free functions

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: " + shape_of(a) + " times " + shape_of(b));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

ComplexMatrix conjugate(const ComplexMatrix& a) {
  ComplexMatrix out = a;
  for (auto& x : out.entries()) x = std::conj(x);
  return out;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

Complex hs_inner(const ComplexMatrix& p, const ComplexMatrix& q) {
  require_square(p, "hs_inner");
  require_square(q, "hs_inner");
  if (p.rows() != q.rows()) throw ShapeError("hs_inner: " + shape_of(p) + " vs " + shape_of(q));
  Complex sum{};
  auto pe = p.entries();
  auto qe = q.entries();
  for (std::size_t i = 0; i < pe.size(); ++i) sum += std::conj(pe[i]) * qe[i];
  return sum;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

StateVector tensor(std::span<const Complex> a, std::span<const Complex> b) {
  StateVector out;
  out.reserve(a.size() * b.size());
  for (auto x : a)
    for (auto y : b) out.push_back(x * y);
  return out;
}

Complex trace(const ComplexMatrix& a) {
  require_square(a, "trace");
  Complex t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

Complex expectation(const ComplexMatrix& rho, const ComplexMatrix& op) {
  require_square(rho, "expectation");
  if (op.rows() != rho.rows() || op.cols() != rho.cols()) {
    throw ShapeError("expectation: state " + shape_of(rho) + " vs operator " + shape_of(op));
  }
  // Tr(rho op) = sum_ij rho_ij op_ji
  Complex sum{};
  const std::size_t n = rho.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sum += rho(i, j) * op(j, i);
  return sum;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const TensorStructure& structure,
                            std::span<const std::size_t> keep) {
  require_structure(rho, structure, "partial_trace");
  if (keep.empty()) throw ArgumentError("partial_trace: keep set is empty");
  std::vector<bool> kept(structure.factors(), false);
  for (auto k : keep) {
    if (k >= structure.factors()) {
      throw ArgumentError("partial_trace: factor index " + std::to_string(k) + " out of range");
    }
    if (kept[k]) throw ArgumentError("partial_trace: duplicate factor index " + std::to_string(k));
    kept[k] = true;
  }

  // Split every composite index into (kept part, traced part), each mixed-radix
  // in original factor order.
  const std::size_t n = rho.rows();
  std::size_t kept_dim = 1;
  for (std::size_t j = 0; j < structure.factors(); ++j)
    if (kept[j]) kept_dim *= structure[j];
  std::vector<std::size_t> kept_index(n), traced_index(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto dig = structure.digits(i);
    std::size_t ki = 0, ti = 0;
    for (std::size_t j = 0; j < structure.factors(); ++j) {
      if (kept[j]) {
        ki = ki * structure[j] + dig[j];
      } else {
        ti = ti * structure[j] + dig[j];
      }
    }
    kept_index[i] = ki;
    traced_index[i] = ti;
  }

  ComplexMatrix out(kept_dim, kept_dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (traced_index[i] == traced_index[j]) out(kept_index[i], kept_index[j]) += rho(i, j);
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const TensorStructure& structure,
                                std::size_t factor) {
  require_structure(rho, structure, "partial_transpose");
  if (structure.factors() != 2) {
    throw ArgumentError("partial_transpose: bipartite structure required, got " +
                        std::to_string(structure.factors()) + " factors");
  }
  if (factor > 1) throw ArgumentError("partial_transpose: factor must be 0 or 1");
  const std::size_t da = structure[0], db = structure[1];
  ComplexMatrix out(rho.rows(), rho.cols());
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t c = 0; c < da; ++c)
        for (std::size_t d = 0; d < db; ++d) {
          const Complex v = rho(a * db + b, c * db + d);
          if (factor == 1) {
            out(a * db + d, c * db + b) = v;
          } else {
            out(c * db + b, a * db + d) = v;
          }
        }
  return out;
}

EigenDecomposition eigh(const ComplexMatrix& input) {
  require_square(input, "eigh");
  const double herm = hermiticity_residual(input);
  if (herm > kTol.herm) {
    throw DomainError("eigh: matrix is not Hermitian (residual " + std::to_string(herm) + ")");
  }
  const std::size_t n = input.rows();
  ComplexMatrix a = input;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex s = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = s;
      a(j, i) = std::conj(s);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(1.0, frobenius_norm(a));

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  EigenDecomposition result;
  int sweep = 0;
  for (; sweep < kTol.max_sweeps && off_norm() >= kTol.eig * scale; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // J = D R with D = diag(.., conj(phase) at q, ..) making a_pq real,
        // R the real Jacobi rotation annihilating it.
        const Complex phase_c = std::conj(apq / mag);
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex jpp = c, jpq = s, jqp = -s * phase_c, jqq = c * phase_c;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  result.sweeps = sweep;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });
  result.values.resize(n);
  result.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    result.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) result.vectors(r, k) = v(r, order[k]);
  }
  return result;
}

Complex mat_power_trace(const ComplexMatrix& a, int n) {
  require_square(a, "mat_power_trace");
  if (n < 1) throw ArgumentError("mat_power_trace: power must be >= 1, got " + std::to_string(n));
  if (n == 1) return trace(a);
  ComplexMatrix power = a;
  for (int k = 2; k < n; ++k) power = matmul(power, a);
  // Last factor folded into the trace.
  return expectation(power, a);
}

ComplexMatrix outer(std::span<const Complex> v) {
  ComplexMatrix out(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = v[i] * std::conj(v[j]);
  return out;
}

StateVector matvec(const ComplexMatrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) {
    throw ShapeError("apply: " + shape_of(a) + " on vector of length " + std::to_string(v.size()));
  }
  StateVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

double max_abs(const ComplexMatrix& a) {
  double m = 0.0;
  for (auto x : a.entries()) m = std::max(m, std::abs(x));
  return m;
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (auto x : a.entries()) s += std::norm(x);
  return std::sqrt(s);
}

double hermiticity_residual(const ComplexMatrix& a) {
  require_square(a, "hermiticity_residual");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

double vector_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (auto x : v) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace oprep
