// Spectral data of long products without forming them. A product of many
// loxodromic factors has entries far outside the range where its small
// eigenvalues (or its explicit eigenframe) carry any accuracy, so the
// attracting flag is found by orthogonal iteration: apply one factor at a
// time and re-orthonormalize. The per-step R diagonals accumulate the log
// moduli exactly as they would for the explicit product.

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "margulis/error.hpp"
#include "margulis/numkernel.hpp"

namespace margulis {
namespace {

constexpr int kMaxSweeps = 3000;
constexpr double kConverged = 1e-12;
constexpr double kStalled = 1e-9;
constexpr double kTrustDirectCondition = 1e6;

Matrix generic_orthonormal(std::size_t n) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  Matrix a(n, n);
  for (double& x : a.values()) {
    x = 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
  }
  return householder_qr(a).q;
}

struct Sweep {
  Matrix q;
  std::vector<double> logs;
  std::vector<Matrix> stages;  // stages[j]: basis after j factors; stages[0] is the start
};

Sweep sweep(const Matrix& start, const std::vector<const Matrix*>& order, bool record) {
  const std::size_t n = start.rows();
  Sweep s{start, std::vector<double>(n, 0.0), {}};
  if (record) {
    s.stages.reserve(order.size() + 1);
    s.stages.push_back(start);
  }
  for (const Matrix* factor : order) {
    QR f = householder_qr(*factor * s.q);
    for (std::size_t k = 0; k < n; ++k) s.logs[k] += std::log(f.r(k, k));
    s.q = std::move(f.q);
    if (record) s.stages.push_back(s.q);
  }
  return s;
}

// Largest column change between two orthonormal bases, modulo column signs.
double column_change(const Matrix& next, const Matrix& prev, std::vector<int>* signs) {
  const std::size_t n = next.rows();
  double change = 0.0;
  if (signs) signs->assign(n, 1);
  for (std::size_t k = 0; k < n; ++k) {
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += next(i, k) * prev(i, k);
    const double sgn = dot < 0.0 ? -1.0 : 1.0;
    if (signs) (*signs)[k] = dot < 0.0 ? -1 : 1;
    double d2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = next(i, k) - sgn * prev(i, k);
      d2 += d * d;
    }
    change = std::max(change, std::sqrt(d2));
  }
  return change;
}

struct Converged {
  Sweep pass;
  std::vector<int> signs;
};

std::optional<Converged> iterate(Matrix q, const std::vector<const Matrix*>& order) {
  double prev = HUGE_VAL;
  for (int it = 0; it < kMaxSweeps; ++it) {
    Sweep s = sweep(q, order, false);
    for (double l : s.logs) {
      if (!std::isfinite(l)) return std::nullopt;
    }
    const double change = column_change(s.q, q, nullptr);
    q = std::move(s.q);
    const bool stalled = change <= kStalled && change >= 0.9 * prev;
    if (change <= kConverged || stalled) break;
    if (it + 1 == kMaxSweeps) return std::nullopt;
    prev = change;
  }
  Converged out{sweep(q, order, true), {}};
  column_change(out.pass.q, q, &out.signs);
  return out;
}

Matrix reversed_columns(const Matrix& a) {
  Matrix r(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) r.set_column(j, a.column(a.cols() - 1 - j));
  return r;
}

}  // namespace

ProductSpectrum product_spectrum(std::span<const Matrix> factors,
                                 std::span<const Matrix> inverse_factors,
                                 const Tolerances& tol) {
  const std::size_t m = factors.size();
  if (m == 0 || inverse_factors.size() != m) {
    throw MathError(ErrorKind::InvalidArgument, "product_spectrum needs matching factor lists");
  }
  const std::size_t n = factors[0].rows();

  // Warm start from the explicit product when it is representable; a
  // confident direct verdict on a well-conditioned product is final.
  Matrix product = factors[0];
  for (std::size_t i = 1; i < m; ++i) product = product * factors[i];
  bool finite = true;
  for (double x : product.values()) finite = finite && std::isfinite(x);

  std::optional<Matrix> warm;
  std::optional<ErrorKind> direct_failure;
  if (finite) {
    try {
      warm = eigen_loxodromic(product, tol).frame;
    } catch (const MathError& e) {
      direct_failure = e.kind();
      double cond = HUGE_VAL;
      try {
        const auto s = singular_values(product);
        cond = s.front() / s.back();
      } catch (const MathError&) {
      }
      if (cond <= kTrustDirectCondition) throw;
    }
  }
  const ErrorKind failure = direct_failure.value_or(ErrorKind::ModulusCollision);

  std::vector<const Matrix*> forward(m);
  std::vector<const Matrix*> backward(m);
  for (std::size_t j = 0; j < m; ++j) {
    forward[j] = &factors[m - 1 - j];
    backward[j] = &inverse_factors[j];
  }

  const Matrix cold = generic_orthonormal(n);
  auto run = [&](const std::vector<const Matrix*>& order, const std::optional<Matrix>& seed) {
    std::optional<Converged> c;
    if (seed) c = iterate(householder_qr(*seed).q, order);
    if (!c) c = iterate(cold, order);
    if (!c) throw MathError(failure, "orthogonal iteration did not settle on a flag");
    return std::move(*c);
  };
  std::optional<Matrix> warm_rev;
  if (warm) warm_rev = reversed_columns(*warm);
  Converged att = run(forward, warm);
  Converged rep = run(backward, warm_rev);

  ProductSpectrum out;
  out.log_moduli = att.pass.logs;
  out.signs = att.signs;
  double scale = 1.0;
  for (double l : out.log_moduli) scale = std::max(scale, std::abs(l));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!(out.log_moduli[k] - out.log_moduli[k + 1] > std::log1p(tol.modulus_gap))) {
      throw MathError(ErrorKind::ModulusCollision, "eigenvalue moduli are not separated");
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(rep.pass.logs[k] + out.log_moduli[n - 1 - k]) > 1e-8 * scale) {
      throw MathError(failure, "attracting and repelling iterations disagree");
    }
  }

  out.attracting.resize(m);
  out.repelling.resize(m);
  out.attracting[0] = std::move(att.pass.stages[0]);
  for (std::size_t i = 1; i < m; ++i) out.attracting[i] = std::move(att.pass.stages[m - i]);
  for (std::size_t i = 0; i < m; ++i) out.repelling[i] = std::move(rep.pass.stages[i]);
  return out;
}

std::vector<double> product_log_singular_values(std::span<const Matrix> factors) {
  const std::size_t m = factors.size();
  if (m == 0) throw MathError(ErrorKind::InvalidArgument, "empty product");
  const std::size_t n = factors[0].rows();
  std::vector<Matrix> transposed;
  transposed.reserve(m);
  for (const Matrix& f : factors) transposed.push_back(f.transpose());
  // P^T P applied to a vector: factors[m-1], ..., factors[0], then their transposes.
  std::vector<const Matrix*> order;
  for (std::size_t j = m; j-- > 0;) order.push_back(&factors[j]);
  for (std::size_t j = 0; j < m; ++j) order.push_back(&transposed[j]);

  Matrix q = generic_orthonormal(n);
  std::vector<double> prev(n, HUGE_VAL);
  std::vector<double> logs;
  int settled = 0;
  for (int it = 0; it < 20 * kMaxSweeps && settled < 2; ++it) {
    Sweep s = sweep(q, order, false);
    logs = s.logs;
    double scale = 1.0;
    double change = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      scale = std::max(scale, std::abs(logs[k]));
      change = std::max(change, std::abs(logs[k] - prev[k]));
    }
    for (double l : logs) {
      if (!std::isfinite(l)) throw MathError(ErrorKind::Singular, "product is numerically singular");
    }
    settled = change <= 1e-14 * scale ? settled + 1 : 0;
    prev = logs;
    q = std::move(s.q);
  }
  for (double& l : logs) l *= 0.5;
  std::sort(logs.begin(), logs.end(), std::greater<>());
  return logs;
}

}  // namespace margulis
