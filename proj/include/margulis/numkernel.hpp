#pragma once

// Numeric primitives shared by every other module: the tolerance policy,
// eigen-decomposition of real-loxodromic matrices, singular values, the
// matrix exponential, linear solves, and spectral data of long products
// computed factor by factor.

#include <complex>
#include <span>
#include <vector>

#include "margulis/matrix.hpp"

namespace margulis {

/// One tolerance policy for the whole library. `base` is the 1e-9 family
/// (unimodularity, tracelessness, modulus gap, transversality); the CLI's
/// --tolerance flag overrides exactly that family.
struct Tolerances {
  double unimodular = 1e-9;      // |det - 1| <= unimodular * n
  double traceless = 1e-9;       // |trace| <= traceless * ||Y||
  double modulus_gap = 1e-9;     // min |l_i| / |l_{i+1}| - 1 must exceed this
  double transversality = 1e-9;  // mixed-basis determinants must exceed this
  double realness = 1e-8;        // |Im l| <= realness * |l| counts as real
  double max_condition = 1e12;   // linear solves above this raise Singular

  static Tolerances with_base(double base);
};

/// Eigen-data of a real-loxodromic matrix g: g * frame = frame * diag(eigenvalues).
struct LoxodromicData {
  std::vector<double> eigenvalues;  // strictly decreasing |l|
  Matrix frame;                     // matching eigenvectors as columns, det = 1
  double gap = 0.0;                 // min_i |l_i| / |l_{i+1}| - 1
};

/// All eigenvalues, ordered by nonincreasing modulus (ties by real part).
std::vector<std::complex<double>> eigenvalues(const Matrix& g);

LoxodromicData eigen_loxodromic(const Matrix& g, const Tolerances& tol = {});

/// Nonincreasing singular values. Throws Singular for numerically
/// rank-deficient input.
std::vector<double> singular_values(const Matrix& g);

Matrix matrix_exp(const Matrix& x);

double determinant(const Matrix& g);

/// Solves g * X = b by partial-pivot elimination; Singular when the
/// condition estimate exceeds tol.max_condition.
Matrix solve(const Matrix& g, const Matrix& b, const Tolerances& tol = {});
Matrix inverse(const Matrix& g, const Tolerances& tol = {});

/// Ad(g)Y = g Y g^-1.
Matrix adjoint(const Matrix& g, const Matrix& y, const Tolerances& tol = {});

struct QR {
  Matrix q;  // rows x rows, orthogonal
  Matrix r;  // rows x cols, upper triangular, nonnegative diagonal
};

/// Householder QR with the diagonal of R made nonnegative.
QR householder_qr(const Matrix& a);

/// Unit vector spanning the kernel of a (rows = cols - 1, full rank).
std::vector<double> kernel_vector(const Matrix& a);

/// Scales every column to unit length with its largest-magnitude entry
/// positive, then rescales so that det = 1 (negating the last column when
/// the determinant is negative).
void canonicalize_frame(Matrix& frame);

bool is_unimodular(const Matrix& g, const Tolerances& tol = {});
bool is_traceless(const Matrix& y, const Tolerances& tol = {});

// --- products of many factors -------------------------------------------

/// Spectral data of P = factors[0] * factors[1] * ... * factors[m-1],
/// computed without forming P. Attracting and repelling flags are reported
/// for every cyclic rotation R_i = factors[i] ... factors[m-1] factors[0] ...
/// factors[i-1] (all conjugate to P).
struct ProductSpectrum {
  std::vector<double> log_moduli;  // log |l_k| of P, strictly decreasing
  std::vector<int> signs;          // sign of l_k
  std::vector<Matrix> attracting;  // orthonormal; column prefixes span F+(R_i)
  std::vector<Matrix> repelling;   // orthonormal; column prefixes span F-(R_i)
};

ProductSpectrum product_spectrum(std::span<const Matrix> factors,
                                 std::span<const Matrix> inverse_factors,
                                 const Tolerances& tol = {});

/// Nonincreasing log singular values of factors[0] * ... * factors[m-1].
std::vector<double> product_log_singular_values(std::span<const Matrix> factors);

}  // namespace margulis
