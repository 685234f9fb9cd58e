#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace oprep {

using Complex = std::complex<double>;
using StateVector = std::vector<Complex>;

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Local dimensions of a tensor-product space. Factor 0 is the slowest index:
/// composite index i = sum_j i_j * (product of dims after j).
class TensorStructure {
 public:
  TensorStructure() = default;
  explicit TensorStructure(std::vector<std::size_t> dims);
  TensorStructure(std::initializer_list<std::size_t> dims);

  /// N copies of a d-dimensional factor.
  static TensorStructure uniform(std::size_t d, std::size_t n);

  std::size_t factors() const { return dims_.size(); }
  std::size_t operator[](std::size_t j) const { return dims_[j]; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t total() const;

  std::vector<std::size_t> digits(std::size_t index) const;
  std::size_t compose(std::span<const std::size_t> digits) const;

  bool operator==(const TensorStructure&) const = default;

 private:
  std::vector<std::size_t> dims_;
};

struct EigenDecomposition {
  std::vector<double> values;   // descending
  ComplexMatrix vectors;        // column k belongs to values[k]
  int sweeps = 0;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix conjugate(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);

/// Hilbert-Schmidt inner product Tr(p^dagger q).
Complex hs_inner(const ComplexMatrix& p, const ComplexMatrix& q);

/// Kronecker product; a supplies the slow index.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
StateVector tensor(std::span<const Complex> a, std::span<const Complex> b);

Complex trace(const ComplexMatrix& a);

/// Tr(rho * op) without forming the product.
Complex expectation(const ComplexMatrix& rho, const ComplexMatrix& op);

/// Reduced operator on the factors listed in `keep`, in ascending factor order.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const TensorStructure& structure,
                            std::span<const std::size_t> keep);

/// Transpose on one factor of a bipartite operator.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, const TensorStructure& structure,
                                std::size_t factor);

/// Hermitian eigensolver (cyclic complex Jacobi). Input must be Hermitian to
/// within kTol.herm; it is symmetrized before iterating.
EigenDecomposition eigh(const ComplexMatrix& a);

/// Tr(a^n) by repeated multiplication.
Complex mat_power_trace(const ComplexMatrix& a, int n);

/// |v><v|
ComplexMatrix outer(std::span<const Complex> v);
StateVector matvec(const ComplexMatrix& a, std::span<const Complex> v);

double max_abs(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
/// max |a - a^dagger|
double hermiticity_residual(const ComplexMatrix& a);
double vector_norm(std::span<const Complex> v);

}  // namespace oprep
