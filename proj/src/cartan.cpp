#include "margulis/cartan.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "margulis/error.hpp"

namespace margulis {
namespace {

Matrix reversed_identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, n - 1 - i) = 1.0;
  return m;
}

}  // namespace

CartanVector zero_sum(CartanVector x) {
  if (x.empty()) return x;
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  for (double& v : x) v -= mean;
  return x;
}

CartanVector jordan_projection(const Matrix& g, const Tolerances& tol) {
  const auto ev = eigenvalues(g);
  CartanVector out(ev.size());
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const double m = std::abs(ev[i]);
    if (m == 0.0) throw MathError(ErrorKind::Singular, "zero eigenvalue");
    out[i] = std::log(m);
    if (i > 0 && !(std::abs(ev[i - 1]) / m - 1.0 > tol.modulus_gap)) {
      throw MathError(ErrorKind::ModulusCollision, "eigenvalue moduli are not separated");
    }
  }
  return zero_sum(std::move(out));
}

CartanVector cartan_projection(const Matrix& g) {
  auto s = singular_values(g);
  for (double& v : s) v = std::log(v);
  return zero_sum(std::move(s));
}

CartanVector omega0(const CartanVector& x) { return CartanVector(x.rbegin(), x.rend()); }

CartanVector model_vector(std::size_t n) {
  CartanVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(n - 1) - 2.0 * static_cast<double>(i);
  const double s = norm(x);
  if (s > 0) {
    for (double& v : x) v /= s;
  }
  return x;
}

double norm(const CartanVector& x) { return std::sqrt(dot(x, x)); }

double dot(const CartanVector& x, const CartanVector& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

Flag::Flag(const Matrix& frame) {
  if (!frame.is_square() || frame.rows() == 0) {
    throw MathError(ErrorKind::InvalidArgument, "flag frame must be square");
  }
  QR f = householder_qr(frame);
  const double scale = std::max(frame.max_abs(), 1e-300);
  for (std::size_t k = 0; k < frame.rows(); ++k) {
    if (!(f.r(k, k) > 1e-14 * scale)) throw MathError(ErrorKind::Singular, "flag frame is not invertible");
  }
  q_ = std::move(f.q);
}

Flag Flag::standard(std::size_t n) { return Flag(Matrix::identity(n)); }

Flag Flag::reversed_standard(std::size_t n) { return Flag(reversed_identity(n)); }

Flag apply(const Matrix& g, const Flag& f) { return Flag(g * f.frame()); }

double flag_distance(const Flag& f, const Flag& g) {
  const std::size_t n = f.dim();
  double worst = 0.0;
  for (std::size_t p = 1; p < n; ++p) {
    const Matrix a = f.frame().columns(0, p);
    const Matrix b = g.frame().columns(0, p);
    const Matrix diff = a * a.transpose() - b * b.transpose();
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        diff.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(m), Eigen::EigenvaluesOnly);
    worst = std::max(worst, es.eigenvalues().cwiseAbs().maxCoeff());
  }
  return worst;
}

std::pair<Flag, Flag> flags_of(const LoxodromicData& lox) {
  const std::size_t n = lox.frame.rows();
  Matrix rev(n, n);
  for (std::size_t j = 0; j < n; ++j) rev.set_column(j, lox.frame.column(n - 1 - j));
  return {Flag(lox.frame), Flag(rev)};
}

double transversality(const Flag& f, const Flag& g) {
  const std::size_t n = f.dim();
  if (g.dim() != n) throw MathError(ErrorKind::InvalidArgument, "flag dimension mismatch");
  double worst = HUGE_VAL;
  Matrix mixed(n, n);
  for (std::size_t p = 1; p < n; ++p) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < p; ++j) mixed(i, j) = f.frame()(i, j);
      for (std::size_t j = 0; j < n - p; ++j) mixed(i, p + j) = g.frame()(i, j);
    }
    worst = std::min(worst, std::abs(determinant(mixed)));
  }
  return n == 1 ? 1.0 : worst;
}

bool is_transverse(const Flag& f, const Flag& g, const Tolerances& tol) {
  return transversality(f, g) > tol.transversality;
}

Matrix transverse_frame(const Flag& f, const Flag& g, const Tolerances& tol) {
  if (!is_transverse(f, g, tol)) throw MathError(ErrorKind::NotTransverse, "flags are not transverse");
  const std::size_t n = f.dim();
  const Matrix& qf = f.frame();
  const Matrix& qg = g.frame();
  Matrix h(n, n);
  for (std::size_t p = 1; p <= n; ++p) {
    // v = QF[:, :p] a with a orthogonal to the complement of G^(n-p+1).
    const Matrix fp = qf.columns(0, p);
    const Matrix gc = qg.columns(n - p + 1, p - 1);
    const std::vector<double> a = kernel_vector(gc.transpose() * fp);
    h.set_column(p - 1, margulis::apply(fp, a));
  }
  canonicalize_frame(h);
  return h;
}

CartanVector co_neutral(const Flag& f, const Flag& g, const Matrix& z, const Tolerances& tol) {
  const Matrix h = transverse_frame(f, g, tol);
  const Matrix w = solve(h, z * h, tol);
  return zero_sum(w.diagonal_values());
}

Matrix neutral(const Flag& f, const Flag& g, const CartanVector& y0, const Tolerances& tol) {
  const Matrix h = transverse_frame(f, g, tol);
  // h diag(y0) h^-1 = (h^-T (h diag(y0))^T)^T
  const Matrix hd = h * Matrix::diagonal(y0);
  return solve(h.transpose(), hd.transpose(), tol).transpose();
}

}  // namespace margulis
