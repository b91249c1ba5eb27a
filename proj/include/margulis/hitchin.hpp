#pragma once

// The irreducible representation SL_2 -> SL_n (action on Sym^(n-1) R^2),
// its differential, Schottky generators in SL_2, and the direction vectors
// X_k spanning the lines singled out by the degree-k differentials.

#include <cstdint>
#include <utility>
#include <vector>

#include "margulis/cartan.hpp"
#include "margulis/matrix.hpp"
#include "margulis/numkernel.hpp"

namespace margulis {

/// Action of a 2x2 unimodular matrix on degree-(n-1) binary forms, in the
/// basis sqrt(C(n-1,i)) x^(n-1-i) y^i (orthogonal inputs give orthogonal
/// outputs). Raises NotUnimodular.
Matrix sym_rep(std::size_t n, const Matrix& a, const Tolerances& tol = {});

/// Differential of sym_rep at the identity, same basis.
Matrix sym_rep_lie(std::size_t n, const Matrix& x);

/// (diag(l, 1/l), R diag(l, 1/l) R^-1) with R the rotation by theta/2, so
/// that the second axis makes the boundary angle theta with the first:
/// theta = pi/2 puts the four fixed points of the pair at equal spacing on
/// the boundary circle. Raises DegenerateParameters unless l > 1 + 1e-3 and
/// 0 < theta <= pi/2.
std::pair<Matrix, Matrix> schottky_generators(double lambda, double theta);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// X_k as exact reduced fractions, 2 <= k <= n <= 12 (else OutOfRange).
std::vector<Rational> lw_direction_exact(std::size_t n, std::size_t k);
CartanVector lw_direction(std::size_t n, std::size_t k);

}  // namespace margulis
