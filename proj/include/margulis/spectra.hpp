#pragma once

// Word-indexed spectra of an affine representation and the numerical
// experiments run on them: properness diagnostics, the limit formula for
// M(g^n h^n) - M(g^n) - M(h^n), the derivative of the Jordan projection,
// convexity of the normalized spectrum and singular-value gap rates.

#include <optional>
#include <string>
#include <vector>

#include "margulis/affine_invariants.hpp"
#include "margulis/freegroup.hpp"

namespace margulis {

struct SpectrumSample {
  GroupWord word;
  std::size_t length = 0;  // cyclically reduced length
  CartanVector jordan;
  CartanVector margulis;
  CartanVector normalized_margulis;
  bool ok = false;
  std::string skip_reason;  // error kind name when !ok
};

/// One sample per conjugacy representative of length <= max_length, in
/// enumeration order. threads == 0 picks the hardware concurrency; the
/// result does not depend on the thread count.
std::vector<SpectrumSample> sample_spectrum(const AffineRepresentation& rep, std::size_t max_length,
                                            const Tolerances& tol = {}, unsigned threads = 1);

enum class Verdict { ProperCandidate, NonproperSignature, Inconclusive };
std::string to_string(Verdict v);

struct PropernessReport {
  std::size_t horizon = 0;
  CartanVector functional;
  std::optional<double> margin;  // empty when no sample was usable
  std::size_t sample_count = 0;
  std::size_t skipped_count = 0;
  Verdict verdict = Verdict::Inconclusive;
};

inline constexpr double kTauProper = 1e-3;
inline constexpr double kTauZero = 1e-6;

/// Unit simple-root functionals e_i - e_(i+1).
std::vector<CartanVector> simple_root_functionals(std::size_t n);

/// Unit zero-sum direction maximizing the smallest pairing with the points.
CartanVector hull_support_functional(const std::vector<CartanVector>& points, std::size_t n);

/// Candidates default to the simple roots plus the hull-support functional.
/// Raises EmptySampleSet.
PropernessReport properness_diagnostic(const std::vector<SpectrumSample>& samples,
                                       std::vector<CartanVector> candidates = {});

struct LimitRow {
  std::size_t power = 0;
  CartanVector defect;
  CartanVector target;
  double gap = 0.0;
};

/// Rows for n = 1..max_power. Raises NotTransverse when the four fixed
/// flags of gamma and eta are not pairwise transverse.
std::vector<LimitRow> limit_formula_experiment(const AffineRepresentation& rep, const GroupWord& gamma,
                                               const GroupWord& eta, std::size_t max_power,
                                               const Tolerances& tol = {});

struct DerivativeResult {
  CartanVector finite_difference;
  CartanVector margulis;
  double error = 0.0;
};

DerivativeResult derivative_experiment(const Matrix& g, const Matrix& x, double t, const Tolerances& tol = {});

struct ConvexityRow {
  std::size_t power = 0;
  CartanVector observed;
  CartanVector predicted;
  double gap = 0.0;
};

std::vector<ConvexityRow> convexity_probe(const AffineRepresentation& rep, const GroupWord& gamma,
                                          const GroupWord& eta, std::size_t p, std::size_t q,
                                          std::size_t max_power, const Tolerances& tol = {});

struct AnosovProbe {
  double floor = 0.0;  // min over words and roots of (k_i - k_(i+1)) / length
  GroupWord argmin;
};

AnosovProbe anosov_gap_probe(const AffineRepresentation& rep, std::size_t max_length);

}  // namespace margulis
