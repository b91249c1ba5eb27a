#pragma once

// Jordan and Cartan projections, the longest Weyl element, full flags and
// the neutral / co-neutral maps attached to a transverse pair of flags.

#include <utility>
#include <vector>

#include "margulis/matrix.hpp"
#include "margulis/numkernel.hpp"

namespace margulis {

/// Element of the diagonal Cartan subalgebra of sl_n, stored as its n
/// diagonal entries (zero-sum).
using CartanVector = std::vector<double>;

/// Subtracts the mean.
CartanVector zero_sum(CartanVector x);

CartanVector jordan_projection(const Matrix& g, const Tolerances& tol = {});
CartanVector cartan_projection(const Matrix& g);
CartanVector omega0(const CartanVector& x);

/// diag(n-1, n-3, ..., -(n-1)) scaled to unit norm.
CartanVector model_vector(std::size_t n);

double norm(const CartanVector& x);
double dot(const CartanVector& x, const CartanVector& y);

/// Full flag F^1 < F^2 < ... < F^n, stored as an orthonormal frame whose
/// column prefixes span the subspaces.
class Flag {
 public:
  Flag() = default;
  /// Any invertible frame; it is orthonormalized (prefix spans are kept).
  explicit Flag(const Matrix& frame);

  static Flag standard(std::size_t n);
  static Flag reversed_standard(std::size_t n);

  const Matrix& frame() const noexcept { return q_; }
  std::size_t dim() const noexcept { return q_.rows(); }

 private:
  Matrix q_;
};

/// g . F.
Flag apply(const Matrix& g, const Flag& f);

/// max over p of the spectral distance between the orthogonal projections
/// onto F^p and G^p.
double flag_distance(const Flag& f, const Flag& g);

/// Attracting (decreasing modulus) and repelling (increasing modulus) flags.
std::pair<Flag, Flag> flags_of(const LoxodromicData& lox);

/// min over p of |det[F^p basis | G^(n-p) basis]| for orthonormal bases.
double transversality(const Flag& f, const Flag& g);
bool is_transverse(const Flag& f, const Flag& g, const Tolerances& tol = {});

/// det-1 frame h with column p spanning F^p cap G^(n-p+1); h maps the
/// standard pair to (F, G). Raises NotTransverse.
Matrix transverse_frame(const Flag& f, const Flag& g, const Tolerances& tol = {});

/// Diagonal of Ad(h^-1) Z, h = transverse_frame(F, G).
CartanVector co_neutral(const Flag& f, const Flag& g, const Matrix& z, const Tolerances& tol = {});
/// Ad(h) diag(y0), h = transverse_frame(F, G).
Matrix neutral(const Flag& f, const Flag& g, const CartanVector& y0, const Tolerances& tol = {});

}  // namespace margulis
