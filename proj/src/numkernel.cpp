#include "margulis/numkernel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>

#include "margulis/error.hpp"

namespace margulis {
namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajor> view(const Matrix& g) {
  return Eigen::Map<const RowMajor>(g.data(), static_cast<Eigen::Index>(g.rows()),
                                    static_cast<Eigen::Index>(g.cols()));
}

void require_square(const Matrix& g, const char* what) {
  if (!g.is_square() || g.rows() == 0) {
    throw MathError(ErrorKind::InvalidArgument, std::string(what) + ": expected a nonempty square matrix");
  }
}

// Partial-pivot LU, row-major, in place.
struct LU {
  Matrix lu;
  std::vector<std::size_t> perm;
  int parity = 1;
  bool singular = false;
};

LU lu_factor(const Matrix& g) {
  const std::size_t n = g.rows();
  LU f{g, std::vector<std::size_t>(n), 1, false};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  Matrix& a = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    }
    if (a(p, k) == 0.0) {
      f.singular = true;
      continue;
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      std::swap(f.perm[p], f.perm[k]);
      f.parity = -f.parity;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = a(i, k) / a(k, k);
      a(i, k) = m;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
    }
  }
  return f;
}

Matrix lu_solve(const LU& f, const Matrix& b) {
  const std::size_t n = f.lu.rows();
  const std::size_t m = b.cols();
  Matrix x(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) x(i, j) = b(f.perm[i], j);
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = x(i, j);
      for (std::size_t l = 0; l < i; ++l) s -= f.lu(i, l) * x(l, j);
      x(i, j) = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      double s = x(i, j);
      for (std::size_t l = i + 1; l < n; ++l) s -= f.lu(i, l) * x(l, j);
      x(i, j) = s / f.lu(i, i);
    }
  }
  return x;
}

double norm1(const Matrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

// Factors g and returns (LU, inverse), raising Singular above the condition cap.
std::pair<LU, Matrix> checked_inverse(const Matrix& g, const Tolerances& tol) {
  require_square(g, "inverse");
  LU f = lu_factor(g);
  if (f.singular) throw MathError(ErrorKind::Singular, "matrix is singular");
  Matrix inv = lu_solve(f, Matrix::identity(g.rows()));
  const double cond = norm1(g) * norm1(inv);
  if (!std::isfinite(cond) || cond > tol.max_condition) {
    throw MathError(ErrorKind::Singular, "condition number exceeds limit");
  }
  return {std::move(f), std::move(inv)};
}

bool modulus_before(const std::complex<double>& a, const std::complex<double>& b) {
  const double ma = std::abs(a);
  const double mb = std::abs(b);
  if (ma != mb) return ma > mb;
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

}  // namespace

Tolerances Tolerances::with_base(double base) {
  Tolerances t;
  t.unimodular = base;
  t.traceless = base;
  t.modulus_gap = base;
  t.transversality = base;
  return t;
}

std::vector<std::complex<double>> eigenvalues(const Matrix& g) {
  require_square(g, "eigenvalues");
  Eigen::EigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(view(g)), false);
  if (es.info() != Eigen::Success) {
    throw MathError(ErrorKind::ComplexSpectrum, "eigenvalue iteration did not converge");
  }
  std::vector<std::complex<double>> out(g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i) out[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));
  std::sort(out.begin(), out.end(), modulus_before);
  return out;
}

LoxodromicData eigen_loxodromic(const Matrix& g, const Tolerances& tol) {
  require_square(g, "eigen_loxodromic");
  const std::size_t n = g.rows();
  for (double x : g.values()) {
    if (!std::isfinite(x)) throw MathError(ErrorKind::InvalidArgument, "non-finite matrix entry");
  }
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(view(g)));
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) <= s(0) * static_cast<double>(n) * DBL_EPSILON) {
      throw MathError(ErrorKind::Singular, "matrix is numerically singular");
    }
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(view(g)), true);
  if (es.info() != Eigen::Success) {
    throw MathError(ErrorKind::ComplexSpectrum, "eigenvalue iteration did not converge");
  }
  const auto& vals = es.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (std::abs(vals(i).imag()) > tol.realness * std::abs(vals(i))) {
      throw MathError(ErrorKind::ComplexSpectrum, "nonreal eigenvalue");
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(vals(static_cast<Eigen::Index>(a)).real()) >
           std::abs(vals(static_cast<Eigen::Index>(b)).real());
  });

  LoxodromicData out;
  out.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = vals(static_cast<Eigen::Index>(order[i])).real();
  out.gap = HUGE_VAL;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out.gap = std::min(out.gap, std::abs(out.eigenvalues[i]) / std::abs(out.eigenvalues[i + 1]) - 1.0);
  }
  if (!(out.gap > tol.modulus_gap)) {
    throw MathError(ErrorKind::ModulusCollision, "eigenvalue moduli are not separated");
  }

  out.frame = Matrix(n, n);
  const auto& vecs = es.eigenvectors();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      out.frame(i, j) = vecs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(order[j])).real();
    }
  }
  canonicalize_frame(out.frame);
  return out;
}

std::vector<double> singular_values(const Matrix& g) {
  require_square(g, "singular_values");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(view(g)));
  const auto& s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  if (!(out.back() > out.front() * static_cast<double>(g.rows()) * DBL_EPSILON)) {
    throw MathError(ErrorKind::Singular, "matrix is numerically singular");
  }
  return out;
}

Matrix matrix_exp(const Matrix& x) {
  require_square(x, "matrix_exp");
  const std::size_t n = x.rows();
  const double norm = norm1(x);
  int squarings = 0;
  if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  const Matrix a = x * std::ldexp(1.0, -squarings);

  // Taylor series of exp(a) with ||a||_1 <= 1/4; terms fall below 1e-20 by degree 18.
  Matrix sum = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = term * a;
    term *= 1.0 / k;
    sum += term;
    if (term.max_abs() <= 1e-20 * sum.max_abs()) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

double determinant(const Matrix& g) {
  require_square(g, "determinant");
  const LU f = lu_factor(g);
  if (f.singular) return 0.0;
  double d = f.parity;
  for (std::size_t i = 0; i < g.rows(); ++i) d *= f.lu(i, i);
  return d;
}

Matrix solve(const Matrix& g, const Matrix& b, const Tolerances& tol) {
  if (b.rows() != g.rows()) throw MathError(ErrorKind::InvalidArgument, "solve shape mismatch");
  const auto [f, inv] = checked_inverse(g, tol);
  return lu_solve(f, b);
}

Matrix inverse(const Matrix& g, const Tolerances& tol) { return checked_inverse(g, tol).second; }

Matrix adjoint(const Matrix& g, const Matrix& y, const Tolerances& tol) {
  return g * y * inverse(g, tol);
}

QR householder_qr(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix r = a;
  Matrix q = Matrix::identity(m);
  std::vector<double> v(m);
  const std::size_t steps = std::min(m == 0 ? 0 : m - 1, n);
  for (std::size_t k = 0; k < steps; ++k) {
    double alpha = 0.0;
    for (std::size_t i = k; i < m; ++i) alpha += r(i, k) * r(i, k);
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    if (r(k, k) > 0) alpha = -alpha;
    double vnorm = 0.0;
    for (std::size_t i = k; i < m; ++i) {
      v[i] = r(i, k) - (i == k ? alpha : 0.0);
      vnorm += v[i] * v[i];
    }
    if (vnorm == 0.0) continue;
    const double scale = 2.0 / vnorm;
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += v[i] * r(i, j);
      s *= scale;
      for (std::size_t i = k; i < m; ++i) r(i, j) -= s * v[i];
    }
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t l = k; l < m; ++l) s += q(i, l) * v[l];
      s *= scale;
      for (std::size_t l = k; l < m; ++l) q(i, l) -= s * v[l];
    }
    for (std::size_t i = k + 1; i < m; ++i) r(i, k) = 0.0;
  }
  for (std::size_t k = 0; k < std::min(m, n); ++k) {
    if (r(k, k) < 0.0) {
      for (std::size_t j = 0; j < n; ++j) r(k, j) = -r(k, j);
      for (std::size_t i = 0; i < m; ++i) q(i, k) = -q(i, k);
    }
  }
  return {std::move(q), std::move(r)};
}

std::vector<double> kernel_vector(const Matrix& a) {
  if (a.rows() + 1 != a.cols()) {
    throw MathError(ErrorKind::InvalidArgument, "kernel_vector expects one more column than rows");
  }
  const QR f = householder_qr(a.transpose());
  return f.q.column(a.cols() - 1);
}

void canonicalize_frame(Matrix& frame) {
  const std::size_t n = frame.rows();
  for (std::size_t j = 0; j < n; ++j) {
    double norm = 0.0;
    std::size_t lead = 0;
    for (std::size_t i = 0; i < n; ++i) {
      norm += frame(i, j) * frame(i, j);
      if (std::abs(frame(i, j)) > std::abs(frame(lead, j))) lead = i;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) throw MathError(ErrorKind::Singular, "zero frame column");
    const double s = (frame(lead, j) < 0.0 ? -1.0 : 1.0) / norm;
    for (std::size_t i = 0; i < n; ++i) frame(i, j) *= s;
  }
  double d = determinant(frame);
  if (d == 0.0) throw MathError(ErrorKind::Singular, "degenerate frame");
  if (d < 0.0) {
    for (std::size_t i = 0; i < n; ++i) frame(i, n - 1) = -frame(i, n - 1);
    d = -d;
  }
  frame *= std::pow(d, -1.0 / static_cast<double>(n));
}

bool is_unimodular(const Matrix& g, const Tolerances& tol) {
  if (!g.is_square() || g.rows() == 0) return false;
  return std::abs(determinant(g) - 1.0) <= tol.unimodular * static_cast<double>(g.rows());
}

bool is_traceless(const Matrix& y, const Tolerances& tol) {
  if (!y.is_square() || y.rows() == 0) return false;
  return std::abs(y.trace()) <= tol.traceless * y.frobenius_norm();
}

}  // namespace margulis
