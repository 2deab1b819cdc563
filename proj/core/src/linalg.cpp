#include "polchange/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polchange/error.hpp"

namespace polchange {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    fail(ErrorCode::DimensionMismatch,
         "matrix data has " + std::to_string(data_.size()) + " entries, expected " +
             std::to_string(rows_ * cols_));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) fail(ErrorCode::DimensionMismatch, "ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out(*this);
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

double ComplexMatrix::max_abs() const noexcept {
  double best = 0.0;
  for (const auto& z : data_) best = std::max(best, std::abs(z));
  return best;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    fail(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
  ComplexMatrix out(a);
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    fail(ErrorCode::DimensionMismatch, "matrix difference shape mismatch");
  ComplexMatrix out(a);
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
  return out;
}

ComplexMatrix operator*(double s, const ComplexMatrix& a) {
  ComplexMatrix out(a);
  for (auto& z : out.data_) z *= s;
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).max_abs();
}

// ---------------------------------------------------------------------------

namespace {

ComplexMatrix symmetrize(const ComplexMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out(i, i) = Complex(m(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      out(i, j) = v;
      out(j, i) = std::conj(v);
    }
  }
  return out;
}

}  // namespace

double HermitianMatrix::asymmetry(const ComplexMatrix& m) {
  if (!m.square()) fail(ErrorCode::DimensionMismatch, "Hermitian matrix must be square");
  const double scale = m.max_abs();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst / scale;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  const double asym = asymmetry(m);
  if (!(asym <= kStrictTolerance)) {
    fail(ErrorCode::NotHermitian,
         "matrix is not Hermitian (relative asymmetry " + std::to_string(asym) + ")");
  }
  m_ = symmetrize(m);
}

HermitianMatrix::HermitianMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : HermitianMatrix(ComplexMatrix(rows)) {}

HermitianMatrix HermitianMatrix::ingest(const ComplexMatrix& m) {
  const double asym = asymmetry(m);
  if (!(asym < kIngestTolerance)) {
    fail(ErrorCode::NotHermitian,
         "matrix is not Hermitian (relative asymmetry " + std::to_string(asym) + ")");
  }
  return HermitianMatrix(Trusted{}, symmetrize(m));
}

HermitianMatrix HermitianMatrix::from_upper(ComplexMatrix m) {
  if (!m.square()) fail(ErrorCode::DimensionMismatch, "Hermitian matrix must be square");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    m(i, i) = Complex(m(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < m.cols(); ++j) m(j, i) = std::conj(m(i, j));
  }
  return HermitianMatrix(Trusted{}, std::move(m));
}

HermitianMatrix HermitianMatrix::identity(std::size_t p) {
  return HermitianMatrix(Trusted{}, ComplexMatrix::identity(p));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return HermitianMatrix(Trusted{}, std::move(m));
}

HermitianMatrix HermitianMatrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

HermitianMatrix HermitianMatrix::scaled(double c) const {
  return HermitianMatrix(Trusted{}, c * m_);
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(HermitianMatrix::Trusted{}, a.m_ + b.m_);
}

// ---------------------------------------------------------------------------

ComplexMatrix cholesky(const HermitianMatrix& m) {
  const std::size_t n = m.dim();
  ComplexMatrix g(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = m(j, j).real();
    for (std::size_t k = 0; k < j; ++k) pivot -= std::norm(g(j, k));
    if (!(pivot > kPivotThreshold)) {
      fail(ErrorCode::NotPositiveDefinite,
           "matrix is not positive-definite (pivot " + std::to_string(j) + ")");
    }
    const double d = std::sqrt(pivot);
    g(j, j) = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= g(i, k) * std::conj(g(j, k));
      g(i, j) = s / d;
    }
  }
  return g;
}

double logdet(const HermitianMatrix& m) {
  const ComplexMatrix g = cholesky(m);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i) acc += std::log(g(i, i).real());
  return 2.0 * acc;
}

HermitianMatrix inverse(const HermitianMatrix& m) {
  const std::size_t n = m.dim();
  const ComplexMatrix g = cholesky(m);
  // W = G^{-1} by forward substitution; m^{-1} = W* W.
  ComplexMatrix w(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = col; i < n; ++i) {
      Complex s = (i == col) ? Complex(1.0) : Complex(0.0);
      for (std::size_t k = col; k < i; ++k) s -= g(i, k) * w(k, col);
      w(i, col) = s / g(i, i).real();
    }
  }
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t k = std::max(i, j); k < n; ++k) s += std::conj(w(k, i)) * w(k, j);
      out(i, j) = s;
      out(j, i) = std::conj(s);
    }
    out(i, i) = Complex(out(i, i).real(), 0.0);
  }
  return HermitianMatrix(HermitianMatrix::Trusted{}, std::move(out));
}

double trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::DimensionMismatch, "trace_product dimension mismatch");
  Complex s = 0.0;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s += a(i, j) * b(j, i);
  const double scale = std::max(1.0, a.matrix().max_abs() * b.matrix().max_abs() * n);
  if (std::abs(s.imag()) > 1e-10 * scale) {
    fail(ErrorCode::DomainError, "trace of Hermitian product has a non-negligible imaginary part");
  }
  return s.real();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

ComplexVector vec(const ComplexMatrix& m) {
  ComplexVector out;
  out.reserve(m.rows() * m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m(i, j));
  return out;
}

Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) fail(ErrorCode::DimensionMismatch, "dot product length mismatch");
  Complex s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += std::conj(x[k]) * y[k];
  return s;
}

ComplexVector multiply(const ComplexMatrix& a, std::span<const Complex> x) {
  if (a.cols() != x.size()) fail(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  ComplexVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * x[j];
  return out;
}

HermitianMatrix outer_average(std::span<const ComplexVector> ys) {
  if (ys.empty()) fail(ErrorCode::EmptySample, "outer_average of no vectors");
  const std::size_t p = ys.front().size();
  ComplexMatrix acc(p, p);
  for (const auto& y : ys) {
    if (y.size() != p) fail(ErrorCode::DimensionMismatch, "outer_average length mismatch");
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i; j < p; ++j) acc(i, j) += y[i] * std::conj(y[j]);
  }
  const double inv = 1.0 / static_cast<double>(ys.size());
  for (std::size_t i = 0; i < p; ++i) {
    acc(i, i) = Complex(acc(i, i).real() * inv, 0.0);
    for (std::size_t j = i + 1; j < p; ++j) {
      acc(i, j) *= inv;
      acc(j, i) = std::conj(acc(i, j));
    }
  }
  return HermitianMatrix(HermitianMatrix::Trusted{}, std::move(acc));
}

HermitianMatrix mean(std::span<const HermitianMatrix> ms) {
  if (ms.empty()) fail(ErrorCode::EmptySample, "mean of an empty sample");
  const std::size_t p = ms.front().dim();
  ComplexMatrix acc(p, p);
  for (const auto& m : ms) {
    if (m.dim() != p) fail(ErrorCode::DimensionMismatch, "mean over matrices of different size");
    auto dst = acc.data();
    auto src = m.matrix().data();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
  }
  const double inv = 1.0 / static_cast<double>(ms.size());
  for (auto& z : acc.data()) z *= inv;
  return HermitianMatrix(HermitianMatrix::Trusted{}, symmetrize(acc));
}

std::vector<double> cholesky_real(std::span<const double> a, std::size_t n) {
  if (a.size() != n * n) fail(ErrorCode::DimensionMismatch, "cholesky_real shape mismatch");
  std::vector<double> g(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) pivot -= g[j * n + k] * g[j * n + k];
    if (!(pivot > kPivotThreshold)) {
      fail(ErrorCode::NotPositiveDefinite, "real matrix is not positive-definite");
    }
    const double d = std::sqrt(pivot);
    g[j * n + j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= g[i * n + k] * g[j * n + k];
      g[i * n + j] = s / d;
    }
  }
  return g;
}

}  // namespace polchange
