#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace margulis {

/// Dense row-major real matrix. Group elements of SL_n and elements of sl_n
/// are both stored as square instances; rectangular shapes appear only as
/// intermediate blocks (flag bases, nullspace systems).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::span<const double> values);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix zero(std::size_t n) { return Matrix(n, n); }
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }
  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }

  std::vector<double> column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const double> v);
  std::vector<double> diagonal_values() const;

  /// Leading columns [first, first + count).
  Matrix columns(std::size_t first, std::size_t count) const;

  Matrix transpose() const;
  double trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) { return a *= -1.0; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  /// Bitwise equality of shape and entries.
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// A·x for a column vector x.
std::vector<double> apply(const Matrix& a, std::span<const double> x);

/// Largest entrywise difference; shapes must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace margulis
