#include "margulis/hitchin.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "margulis/error.hpp"

namespace margulis {
namespace {

double binomial(std::size_t n, std::size_t r) {
  if (r > n) return 0.0;
  double c = 1.0;
  for (std::size_t i = 1; i <= r; ++i) c = c * static_cast<double>(n - r + i) / static_cast<double>(i);
  return std::round(c);
}

std::int64_t binomial_exact(std::int64_t n, std::int64_t r) {
  if (r < 0 || r > n) return 0;
  std::int64_t c = 1;
  for (std::int64_t i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

std::int64_t factorial(std::int64_t n) {
  std::int64_t f = 1;
  for (std::int64_t i = 2; i <= n; ++i) f *= i;
  return f;
}

// Coefficients (in powers of y) of (c0 + c1 y)^e.
std::vector<double> binomial_power(double c0, double c1, std::size_t e) {
  std::vector<double> out(e + 1);
  for (std::size_t r = 0; r <= e; ++r) {
    out[r] = binomial(e, r) * std::pow(c0, static_cast<double>(e - r)) * std::pow(c1, static_cast<double>(r));
  }
  return out;
}

void normalize_basis(Matrix& m) {
  const std::size_t d = m.rows() - 1;
  for (std::size_t j = 0; j <= d; ++j) {
    for (std::size_t i = 0; i <= d; ++i) m(j, i) *= std::sqrt(binomial(d, i) / binomial(d, j));
  }
}

void require_2x2(const Matrix& a, std::size_t n) {
  if (a.rows() != 2 || a.cols() != 2) throw MathError(ErrorKind::InvalidArgument, "expected a 2x2 matrix");
  if (n < 1) throw MathError(ErrorKind::InvalidArgument, "dimension must be positive");
}

}  // namespace

Matrix sym_rep(std::size_t n, const Matrix& a, const Tolerances& tol) {
  require_2x2(a, n);
  if (std::abs(determinant(a) - 1.0) > tol.unimodular) {
    throw MathError(ErrorKind::NotUnimodular, "sym_rep expects det A = 1");
  }
  const std::size_t d = n - 1;
  Matrix m(n, n);
  // Column i: image of x^(d-i) y^i, i.e. (a11 x + a21 y)^(d-i) (a12 x + a22 y)^i.
  for (std::size_t i = 0; i <= d; ++i) {
    const auto p = binomial_power(a(0, 0), a(1, 0), d - i);
    const auto q = binomial_power(a(0, 1), a(1, 1), i);
    for (std::size_t r = 0; r < p.size(); ++r) {
      for (std::size_t s = 0; s < q.size(); ++s) m(r + s, i) += p[r] * q[s];
    }
  }
  normalize_basis(m);
  return m;
}

Matrix sym_rep_lie(std::size_t n, const Matrix& x) {
  require_2x2(x, n);
  const std::size_t d = n - 1;
  Matrix m(n, n);
  for (std::size_t i = 0; i <= d; ++i) {
    const double di = static_cast<double>(d - i);
    const double ii = static_cast<double>(i);
    m(i, i) = di * x(0, 0) + ii * x(1, 1);
    if (i < d) m(i + 1, i) = di * x(1, 0);
    if (i > 0) m(i - 1, i) = ii * x(0, 1);
  }
  normalize_basis(m);
  return m;
}

std::pair<Matrix, Matrix> schottky_generators(double lambda, double theta) {
  if (!(lambda > 1.0 + 1e-3) || !(theta > 0.0 && theta <= std::numbers::pi / 2)) {
    throw MathError(ErrorKind::DegenerateParameters, "need lambda > 1.001 and theta in (0, pi/2]");
  }
  const Matrix a{{lambda, 0.0}, {0.0, 1.0 / lambda}};
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  const Matrix r{{c, -s}, {s, c}};
  const Matrix rinv{{c, s}, {-s, c}};
  return {a, r * a * rinv};
}

std::vector<Rational> lw_direction_exact(std::size_t n, std::size_t k) {
  if (k < 2 || k > n || n > 12) throw MathError(ErrorKind::OutOfRange, "need 2 <= k <= n <= 12");
  const auto N = static_cast<std::int64_t>(n);
  const auto K = static_cast<std::int64_t>(k);
  std::vector<Rational> out(n);
  for (std::int64_t p = 1; p <= N; ++p) {
    std::int64_t sum = 0;
    for (std::int64_t j = std::max<std::int64_t>(1, K + p - N); j <= std::min(K, p); ++j) {
      const std::int64_t c = binomial_exact(K - 1, j - 1);
      const std::int64_t term = binomial_exact(N - K, p - j) * c * c;
      sum += ((j + K + 1) % 2 == 0) ? term : -term;
    }
    std::int64_t num = factorial(p - 1) * factorial(N - p) * sum;
    std::int64_t den = (std::int64_t{1} << (K - 2)) * factorial(N - K);
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    out[static_cast<std::size_t>(p - 1)] = {num, den};
  }
  return out;
}

CartanVector lw_direction(std::size_t n, std::size_t k) {
  const auto exact = lw_direction_exact(n, k);
  CartanVector out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = exact[i].value();
  return out;
}

}  // namespace margulis
