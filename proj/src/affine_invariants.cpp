#include "margulis/affine_invariants.hpp"

#include <cmath>

#include "margulis/error.hpp"

namespace margulis {
namespace {

void add_scaled(CartanVector& acc, const CartanVector& x, double s) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += s * x[i];
}

Matrix eigen_coordinates(const LoxodromicData& lox, const Matrix& y, const Tolerances& tol) {
  return solve(lox.frame, y * lox.frame, tol);
}

}  // namespace

double membership_residual(const AffineParabolic& a, const Matrix& x) {
  const Matrix& q = a.flag.frame();
  const Matrix w = q.transpose() * (x - a.base) * q;
  double worst = 0.0;
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < i; ++j) worst = std::max(worst, std::abs(w(i, j)));
  }
  return worst;
}

AffineParabolic apply_affine(const AffineElement& gy, const AffineParabolic& a) {
  return {apply(gy.g, a.flag), gy.g * a.base * gy.g_inv + gy.y};
}

CartanVector margulis_invariant(const Matrix& g, const Matrix& y, const Tolerances& tol) {
  const LoxodromicData lox = eigen_loxodromic(g, tol);
  return zero_sum(eigen_coordinates(lox, y, tol).diagonal_values());
}

Matrix invariant_affine_point(const Matrix& g, const Matrix& y, const Tolerances& tol) {
  const LoxodromicData lox = eigen_loxodromic(g, tol);
  const std::size_t n = g.rows();
  Matrix x = eigen_coordinates(lox, y, tol);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      x(i, j) = i == j ? 0.0 : x(i, j) / (1.0 - lox.eigenvalues[i] / lox.eigenvalues[j]);
    }
  }
  // Back to standard coordinates: h x h^-1.
  const Matrix hx = lox.frame * x;
  return solve(lox.frame.transpose(), hx.transpose(), tol).transpose();
}

std::pair<AffineParabolic, AffineParabolic> affine_fixed_parabolics(const Matrix& g, const Matrix& y,
                                                                    const Tolerances& tol) {
  const LoxodromicData lox = eigen_loxodromic(g, tol);
  auto [plus, minus] = flags_of(lox);
  Matrix x = invariant_affine_point(g, y, tol);
  return {AffineParabolic{std::move(plus), x}, AffineParabolic{std::move(minus), x}};
}

NormalForm affine_normal_form(const Matrix& g, const Matrix& y, const Tolerances& tol) {
  const LoxodromicData lox = eigen_loxodromic(g, tol);
  NormalForm out;
  out.conjugator = AffineElement::from_pair(lox.frame, invariant_affine_point(g, y, tol), tol);
  out.signs.resize(g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i) out.signs[i] = lox.eigenvalues[i] < 0.0 ? -1 : 1;
  out.margulis = zero_sum(eigen_coordinates(lox, y, tol).diagonal_values());
  return out;
}

CartanVector cross_ratio(const AffineParabolic& a1, const AffineParabolic& a2, const AffineParabolic& a3,
                         const AffineParabolic& a4, const Tolerances& tol) {
  const Flag& f1 = a1.flag;
  const Flag& f2 = a2.flag;
  const Flag& f3 = a3.flag;
  const Flag& f4 = a4.flag;
  // [nu*14 - nu*13] X1 + [nu*23 - nu*24] X2 - [nu*23 - nu*13] X3 - [nu*14 - nu*24] X4
  CartanVector beta(f1.dim(), 0.0);
  add_scaled(beta, co_neutral(f1, f4, a1.base - a4.base, tol), 1.0);
  add_scaled(beta, co_neutral(f1, f3, a3.base - a1.base, tol), 1.0);
  add_scaled(beta, co_neutral(f2, f3, a2.base - a3.base, tol), 1.0);
  add_scaled(beta, co_neutral(f2, f4, a4.base - a2.base, tol), 1.0);
  return beta;
}

CartanVector triple_ratio(const AffineParabolic& a2, const AffineParabolic& a3, const AffineParabolic& a4,
                          const Tolerances& tol) {
  CartanVector delta(a2.flag.dim(), 0.0);
  const Matrix d23 = a2.base - a3.base;
  const Matrix d34 = a3.base - a4.base;
  const Matrix d42 = a4.base - a2.base;
  add_scaled(delta, co_neutral(a2.flag, a3.flag, d23, tol), 1.0);
  add_scaled(delta, co_neutral(a3.flag, a2.flag, d23, tol), 1.0);
  add_scaled(delta, co_neutral(a3.flag, a4.flag, d34, tol), 1.0);
  add_scaled(delta, co_neutral(a4.flag, a3.flag, d34, tol), 1.0);
  add_scaled(delta, co_neutral(a4.flag, a2.flag, d42, tol), 1.0);
  add_scaled(delta, co_neutral(a2.flag, a4.flag, d42, tol), 1.0);
  return delta;
}

WordInvariants word_invariants(const AffineRepresentation& rep, const GroupWord& w, const Tolerances& tol) {
  if (w.empty()) throw MathError(ErrorKind::ModulusCollision, "the identity is not loxodromic");
  // w = v c v^-1: M and Jd are those of the core c; flags move by rho(v).
  const GroupWord core = cyclic_reduce(w);
  if (core.size() != w.size()) {
    WordInvariants out = word_invariants(rep, core, tol);
    const std::size_t k = (w.size() - core.size()) / 2;
    const auto all = w.letters();
    const AffineElement v = eval_affine(rep, reduce(all.first(k)));
    out.attracting = apply(v.g, out.attracting);
    out.repelling = apply(v.g, out.repelling);
    return out;
  }
  const auto letters = w.letters();
  const std::size_t m = letters.size();
  std::vector<Matrix> factors;
  std::vector<Matrix> inverses;
  factors.reserve(m);
  inverses.reserve(m);
  for (int l : letters) {
    factors.push_back(rep.letter(l).g);
    inverses.push_back(rep.letter(l).g_inv);
  }
  const ProductSpectrum ps = product_spectrum(factors, inverses, tol);

  // u(w) = sum_i Ad(a_1 ... a_(i-1)) u(a_i); each term is pulled back to the
  // rotation starting at a_i, whose flags are the pulled-back flags of w.
  WordInvariants out;
  out.margulis.assign(rep.n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const Flag fp(ps.attracting[i]);
    const Flag fm(ps.repelling[i]);
    add_scaled(out.margulis, co_neutral(fp, fm, rep.letter(letters[i]).y, tol), 1.0);
  }
  out.margulis = zero_sum(std::move(out.margulis));
  out.jordan = zero_sum(ps.log_moduli);
  out.signs = ps.signs;
  out.attracting = Flag(ps.attracting[0]);
  out.repelling = Flag(ps.repelling[0]);
  return out;
}

CartanVector margulis_of_word(const AffineRepresentation& rep, const GroupWord& w, const Tolerances& tol) {
  return word_invariants(rep, w, tol).margulis;
}

}  // namespace margulis
