#pragma once

// Random inputs shared by the unit suites and the acceptance binary.

#include <cmath>
#include <random>
#include <vector>

#include "margulis/affine_invariants.hpp"
#include "margulis/cartan.hpp"
#include "margulis/freegroup.hpp"
#include "margulis/numkernel.hpp"

namespace test_support {

using margulis::AffineElement;
using margulis::AffineParabolic;
using margulis::CartanVector;
using margulis::Flag;
using margulis::Matrix;

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Matrix random_matrix(Rng& rng, std::size_t n, double scale = 1.0) {
  Matrix m(n, n);
  for (double& x : m.values()) x = scale * uniform(rng);
  return m;
}

inline Matrix random_traceless(Rng& rng, std::size_t n, double scale = 1.0) {
  Matrix m = random_matrix(rng, n, scale);
  const double t = m.trace() / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) -= t;
  return m;
}

/// Well-conditioned unimodular matrix: I + noise, rescaled to det 1 (sign
/// fixed by swapping two columns when needed).
inline Matrix random_sl(Rng& rng, std::size_t n, double spread = 0.6) {
  Matrix m = Matrix::identity(n) + random_matrix(rng, n, spread);
  double d = margulis::determinant(m);
  while (std::abs(d) < 0.2) {
    m = Matrix::identity(n) + random_matrix(rng, n, spread);
    d = margulis::determinant(m);
  }
  if (d < 0) {
    for (std::size_t i = 0; i < n; ++i) std::swap(m(i, 0), m(i, n - 1));
    d = -d;
  }
  m *= std::pow(d, -1.0 / static_cast<double>(n));
  return m;
}

/// Decreasing-modulus eigenvalues with consecutive log-gaps in [min_gap,
/// min_gap + 1], product 1, random signs when `signs` is set.
inline std::vector<double> random_spectrum(Rng& rng, std::size_t n, double min_gap = 0.3, bool signs = false) {
  std::vector<double> logs(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) logs[i] = logs[i - 1] - (min_gap + uniform(rng, 0.0, 1.0));
  double mean = 0.0;
  for (double l : logs) mean += l;
  mean /= static_cast<double>(n);
  std::vector<double> ev(n);
  int negatives = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ev[i] = std::exp(logs[i] - mean);
    if (signs && uniform(rng) < 0.0) {
      ev[i] = -ev[i];
      ++negatives;
    }
  }
  if (negatives % 2 == 1) ev[n - 1] = -ev[n - 1];
  return ev;
}

/// h diag(ev) h^-1 with h random unimodular; returns g and fills `frame`.
inline Matrix random_loxodromic(Rng& rng, std::size_t n, double min_gap = 0.3, bool signs = false,
                                Matrix* frame = nullptr, std::vector<double>* spectrum = nullptr) {
  const Matrix h = random_sl(rng, n);
  const auto ev = random_spectrum(rng, n, min_gap, signs);
  if (frame) *frame = h;
  if (spectrum) *spectrum = ev;
  return h * Matrix::diagonal(ev) * margulis::inverse(h);
}

inline Flag random_flag(Rng& rng, std::size_t n) { return Flag(random_matrix(rng, n)); }

inline AffineParabolic random_parabolic(Rng& rng, std::size_t n) {
  return {random_flag(rng, n), random_traceless(rng, n)};
}

inline double max_diff(const CartanVector& a, const CartanVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const CartanVector& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

inline CartanVector add(const CartanVector& a, const CartanVector& b, double s = 1.0) {
  CartanVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + s * b[i];
  return c;
}

inline CartanVector scaled(const CartanVector& a, double s) {
  CartanVector c(a);
  for (double& x : c) x *= s;
  return c;
}

/// Random representation with well-conditioned generators.
inline margulis::AffineRepresentation random_rep(Rng& rng, std::size_t n, std::size_t k, double u_scale = 1.0) {
  std::vector<Matrix> rho;
  std::vector<Matrix> u;
  for (std::size_t i = 0; i < k; ++i) {
    rho.push_back(random_loxodromic(rng, n, 0.4));
    u.push_back(random_traceless(rng, n, u_scale));
  }
  return margulis::AffineRepresentation::make(rho, u);
}

/// A random reduced word of the given length over k generators.
inline margulis::GroupWord random_word(Rng& rng, std::size_t k, std::size_t length) {
  std::vector<int> letters;
  while (letters.size() < length) {
    const int g = static_cast<int>(std::uniform_int_distribution<std::size_t>(1, k)(rng));
    const int l = uniform(rng) < 0 ? -g : g;
    if (!letters.empty() && letters.back() == -l) continue;
    letters.push_back(l);
  }
  return margulis::reduce(letters);
}

}  // namespace test_support
