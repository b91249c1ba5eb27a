#pragma once

// Margulis invariants, invariant affine subspaces, affine parabolic spaces
// and the affine cross / triple ratios built from them.

#include <utility>
#include <vector>

#include "margulis/cartan.hpp"
#include "margulis/freegroup.hpp"

namespace margulis {

/// A = base + V_F, where V_F is the Borel subalgebra stabilizing the flag F
/// (upper triangular in any frame adapted to F).
struct AffineParabolic {
  Flag flag;
  Matrix base;
};

/// Largest strictly-lower entry of Ad(q^-1)(X - base), q the orthonormal
/// flag frame. Zero exactly when X lies in A.
double membership_residual(const AffineParabolic& a, const Matrix& x);

AffineParabolic apply_affine(const AffineElement& gy, const AffineParabolic& a);

/// Diagonal of Ad(h^-1) Y for the canonical eigenframe h of g.
CartanVector margulis_invariant(const Matrix& g, const Matrix& y, const Tolerances& tol = {});

/// The unique X with no zero-weight part (in the g-splitting) such that
/// Ad(g) X + Y - X is zero-weight.
Matrix invariant_affine_point(const Matrix& g, const Matrix& y, const Tolerances& tol = {});

/// (A+, A-) = ((F+(g), X), (F-(g), X)), X = invariant_affine_point(g, Y).
std::pair<AffineParabolic, AffineParabolic> affine_fixed_parabolics(const Matrix& g, const Matrix& y,
                                                                    const Tolerances& tol = {});

struct NormalForm {
  AffineElement conjugator;  // (h, X)
  std::vector<int> signs;    // eigenvalue signs, in decreasing modulus order
  CartanVector margulis;
};

/// (h,X)^-1 (g,Y) (h,X) = (diag(signs) exp(Jd g), diag(M)).
NormalForm affine_normal_form(const Matrix& g, const Matrix& y, const Tolerances& tol = {});

CartanVector cross_ratio(const AffineParabolic& a1, const AffineParabolic& a2, const AffineParabolic& a3,
                         const AffineParabolic& a4, const Tolerances& tol = {});
CartanVector triple_ratio(const AffineParabolic& a2, const AffineParabolic& a3, const AffineParabolic& a4,
                          const Tolerances& tol = {});

/// Invariants of a word, evaluated factor by factor so that accuracy does
/// not degrade with word length.
struct WordInvariants {
  CartanVector jordan;
  CartanVector margulis;
  std::vector<int> signs;
  Flag attracting;
  Flag repelling;
};

WordInvariants word_invariants(const AffineRepresentation& rep, const GroupWord& w,
                               const Tolerances& tol = {});
CartanVector margulis_of_word(const AffineRepresentation& rep, const GroupWord& w,
                              const Tolerances& tol = {});

}  // namespace margulis
