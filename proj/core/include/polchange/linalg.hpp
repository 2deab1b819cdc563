#pragma once

// Dense complex linear algebra for the small Hermitian matrices that
// describe polarimetric covariances (p is 1..4 in practice).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace polchange {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Row-major dense complex matrix. General purpose; Hermitian structure is
// enforced by HermitianMatrix below.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  // Largest absolute entry.
  double max_abs() const noexcept;

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(double s, const ComplexMatrix& a);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

// Sup-norm of the entrywise difference.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Square complex matrix equal to its conjugate transpose. Construction checks
// the symmetry; positive-definiteness is established lazily by cholesky().
class HermitianMatrix {
 public:
  // Relative asymmetry accepted by the strict constructor.
  static constexpr double kStrictTolerance = 1e-12;
  // Relative asymmetry repaired by ingest() before rejecting.
  static constexpr double kIngestTolerance = 1e-8;

  HermitianMatrix() = default;

  // Throws NotHermitian unless |m(i,j) - conj(m(j,i))| <= 1e-12 * max|m|.
  // The stored value is the exact symmetrization (m + m*)/2.
  explicit HermitianMatrix(const ComplexMatrix& m);
  HermitianMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  // Accepts last-bit noise from file round trips: symmetrizes when the
  // relative asymmetry is below 1e-8, throws NotHermitian otherwise.
  static HermitianMatrix ingest(const ComplexMatrix& m);

  // Mirrors the upper triangle (diagonal imaginary parts dropped). Used by
  // code that accumulates only the upper half.
  static HermitianMatrix from_upper(ComplexMatrix m);

  static HermitianMatrix identity(std::size_t p);
  static HermitianMatrix diagonal(std::span<const double> values);
  static HermitianMatrix diagonal(std::initializer_list<double> values);

  // Relative asymmetry max|m - m*| / max|m| (0 for the zero matrix).
  static double asymmetry(const ComplexMatrix& m);

  std::size_t dim() const noexcept { return m_.rows(); }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const ComplexMatrix& matrix() const noexcept { return m_; }

  HermitianMatrix scaled(double c) const;

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend bool operator==(const HermitianMatrix&, const HermitianMatrix&) = default;

 private:
  struct Trusted {};
  HermitianMatrix(Trusted, ComplexMatrix m) : m_(std::move(m)) {}

  ComplexMatrix m_;

  friend HermitianMatrix inverse(const HermitianMatrix& m);
  friend HermitianMatrix outer_average(std::span<const ComplexVector> ys);
  friend HermitianMatrix mean(std::span<const HermitianMatrix> ms);
};

// Pivots at or below this value mean "not positive-definite".
inline constexpr double kPivotThreshold = 1e-300;

// Lower-triangular G with G G* = m. Throws NotPositiveDefinite.
ComplexMatrix cholesky(const HermitianMatrix& m);

// Natural log of the determinant, 2 * sum(log diag(G)).
double logdet(const HermitianMatrix& m);

// Inverse through the Cholesky factor; the result is exactly Hermitian.
HermitianMatrix inverse(const HermitianMatrix& m);

// Re tr(a b). Throws DimensionMismatch; throws DomainError when the imaginary
// part exceeds 1e-10 relative to |a||b| (cannot happen for valid inputs).
double trace_product(const HermitianMatrix& a, const HermitianMatrix& b);

// Block (i, j) of the result is a(i, j) * b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Column stacking: entry k is m(k mod rows, k div rows).
ComplexVector vec(const ComplexMatrix& m);

// Inner product x* y.
Complex dot(std::span<const Complex> x, std::span<const Complex> y);

// Matrix-vector product.
ComplexVector multiply(const ComplexMatrix& a, std::span<const Complex> x);

// (1/n) sum y y* over the given vectors.
HermitianMatrix outer_average(std::span<const ComplexVector> ys);

// Entrywise arithmetic mean. Throws EmptySample / DimensionMismatch.
HermitianMatrix mean(std::span<const HermitianMatrix> ms);

// Real lower Cholesky factor of a symmetric positive-definite matrix stored
// row-major. Throws NotPositiveDefinite.
std::vector<double> cholesky_real(std::span<const double> a, std::size_t n);

}  // namespace polchange
