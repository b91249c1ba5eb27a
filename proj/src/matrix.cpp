#include "margulis/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "margulis/error.hpp"
#include "margulis/kernels.hpp"

namespace margulis {
namespace {

void require_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw MathError(ErrorKind::InvalidArgument, "matrix shape mismatch");
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::span<const double> values)
    : rows_(rows), cols_(cols), data_(values.begin(), values.end()) {
  if (data_.size() != rows * cols) {
    throw MathError(ErrorKind::InvalidArgument, "matrix entry count does not match shape");
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw MathError(ErrorKind::InvalidArgument, "ragged matrix literal");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, std::span<const double> v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

std::vector<double> Matrix::diagonal_values() const {
  const std::size_t d = std::min(rows_, cols_);
  std::vector<double> v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = (*this)(i, i);
  return v;
}

Matrix Matrix::columns(std::size_t first, std::size_t count) const {
  Matrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

double Matrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_shape(*this, other);
  kernels::axpby(data_.size(), 1.0, data_.data(), 1.0, other.data_.data(), data_.data());
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_shape(*this, other);
  kernels::axpby(data_.size(), 1.0, data_.data(), -1.0, other.data_.data(), data_.data());
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw MathError(ErrorKind::InvalidArgument, "matrix product shape mismatch");
  }
  Matrix c(a.rows(), b.cols());
  kernels::gemm(a.rows(), a.cols(), b.cols(), a.data(), b.data(), c.data());
  return c;
}

std::vector<double> apply(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) {
    throw MathError(ErrorKind::InvalidArgument, "matrix-vector shape mismatch");
  }
  std::vector<double> y(a.rows());
  kernels::gemm(a.rows(), a.cols(), 1, a.data(), x.data(), y.data());
  return y;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  }
  return m;
}

}  // namespace margulis
