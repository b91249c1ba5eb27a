#include "margulis/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "margulis/error.hpp"

namespace margulis {
namespace {

constexpr std::size_t kGridSize = 1000;

// Orthonormal basis of the zero-sum hyperplane (Helmert vectors).
std::vector<CartanVector> zero_sum_basis(std::size_t n) {
  std::vector<CartanVector> basis;
  for (std::size_t k = 1; k < n; ++k) {
    CartanVector b(n, 0.0);
    const double s = 1.0 / std::sqrt(static_cast<double>(k * (k + 1)));
    for (std::size_t i = 0; i < k; ++i) b[i] = s;
    b[k] = -static_cast<double>(k) * s;
    basis.push_back(std::move(b));
  }
  return basis;
}

// Unit vectors in R^dim spread over the sphere.
std::vector<std::vector<double>> sphere_grid(std::size_t dim) {
  std::vector<std::vector<double>> pts;
  if (dim == 1) return {{1.0}, {-1.0}};
  if (dim == 2) {
    for (std::size_t i = 0; i < kGridSize; ++i) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / kGridSize;
      pts.push_back({std::cos(t), std::sin(t)});
    }
    return pts;
  }
  if (dim == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < kGridSize; ++i) {
      const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / kGridSize;
      const double r = std::sqrt(1.0 - z * z);
      const double phi = golden * static_cast<double>(i);
      pts.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    return pts;
  }
  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> normal;
  for (std::size_t i = 0; i < kGridSize; ++i) {
    std::vector<double> v(dim);
    double s = 0.0;
    for (double& x : v) {
      x = normal(rng);
      s += x * x;
    }
    s = std::sqrt(s);
    for (double& x : v) x /= s;
    pts.push_back(std::move(v));
  }
  return pts;
}

double min_pairing(const CartanVector& phi, const std::vector<CartanVector>& points) {
  double m = HUGE_VAL;
  for (const auto& p : points) m = std::min(m, dot(phi, p));
  return m;
}

CartanVector jd_of_eigenvalues(const std::vector<double>& ev) {
  CartanVector out(ev.size());
  for (std::size_t i = 0; i < ev.size(); ++i) out[i] = std::log(std::abs(ev[i]));
  return zero_sum(std::move(out));
}

CartanVector difference(const CartanVector& a, const CartanVector& b) {
  CartanVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

}  // namespace

std::vector<SpectrumSample> sample_spectrum(const AffineRepresentation& rep, std::size_t max_length,
                                            const Tolerances& tol, unsigned threads) {
  if (max_length < 1) throw MathError(ErrorKind::InvalidArgument, "max length must be at least 1");
  const std::vector<GroupWord> words = enumerate_conjugacy_reps(rep.k(), max_length);
  std::vector<SpectrumSample> out(words.size());

  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < words.size(); i += stride) {
      SpectrumSample& s = out[i];
      s.word = words[i];
      s.length = cyclic_reduce(words[i]).size();
      try {
        WordInvariants inv = word_invariants(rep, words[i], tol);
        s.jordan = std::move(inv.jordan);
        s.margulis = std::move(inv.margulis);
        s.normalized_margulis = s.margulis;
        for (double& v : s.normalized_margulis) v /= static_cast<double>(s.length);
        s.ok = true;
      } catch (const MathError& e) {
        s.ok = false;
        s.skip_reason = std::string(to_string(e.kind()));
      }
    }
  };

  unsigned count = threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : threads;
  count = static_cast<unsigned>(std::min<std::size_t>(count, std::max<std::size_t>(1, words.size())));
  if (count <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(work, t, count);
    for (auto& th : pool) th.join();
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ProperCandidate: return "PROPER_CANDIDATE";
    case Verdict::NonproperSignature: return "NONPROPER_SIGNATURE";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

std::vector<CartanVector> simple_root_functionals(std::size_t n) {
  std::vector<CartanVector> out;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    CartanVector a(n, 0.0);
    a[i] = std::numbers::sqrt2 / 2;
    a[i + 1] = -std::numbers::sqrt2 / 2;
    out.push_back(std::move(a));
  }
  return out;
}

CartanVector hull_support_functional(const std::vector<CartanVector>& points, std::size_t n) {
  if (n < 2) throw MathError(ErrorKind::InvalidArgument, "dimension must be at least 2");
  const auto basis = zero_sum_basis(n);
  CartanVector best;
  double best_value = -HUGE_VAL;
  for (const auto& c : sphere_grid(n - 1)) {
    CartanVector phi(n, 0.0);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      for (std::size_t i = 0; i < n; ++i) phi[i] += c[k] * basis[k][i];
    }
    const double v = points.empty() ? 0.0 : min_pairing(phi, points);
    if (v > best_value) {
      best_value = v;
      best = std::move(phi);
    }
  }
  return best;
}

PropernessReport properness_diagnostic(const std::vector<SpectrumSample>& samples,
                                       std::vector<CartanVector> candidates) {
  if (samples.empty()) throw MathError(ErrorKind::EmptySampleSet, "no samples");
  PropernessReport r;
  r.sample_count = samples.size();
  std::vector<CartanVector> points;
  std::size_t n = 0;
  for (const auto& s : samples) {
    r.horizon = std::max(r.horizon, s.length);
    if (!s.ok) {
      ++r.skipped_count;
      continue;
    }
    n = s.normalized_margulis.size();
    points.push_back(s.normalized_margulis);
  }
  if (points.empty()) return r;

  if (candidates.empty()) {
    candidates = simple_root_functionals(n);
    candidates.push_back(hull_support_functional(points, n));
  }
  for (const auto& phi : candidates) {
    const double m = min_pairing(phi, points);
    if (!r.margin || m > *r.margin) {
      r.margin = m;
      r.functional = phi;
    }
  }

  bool zero_signature = false;
  for (const auto& s : samples) {
    if (s.ok && 2 * s.length >= r.horizon && norm(s.normalized_margulis) < kTauZero) zero_signature = true;
  }
  if (zero_signature) {
    r.verdict = Verdict::NonproperSignature;
  } else if (*r.margin > kTauProper) {
    r.verdict = Verdict::ProperCandidate;
  }
  return r;
}

std::vector<LimitRow> limit_formula_experiment(const AffineRepresentation& rep, const GroupWord& gamma,
                                               const GroupWord& eta, std::size_t max_power,
                                               const Tolerances& tol) {
  const AffineElement g = eval_affine(rep, gamma);
  const AffineElement h = eval_affine(rep, eta);
  const auto [gp, gm] = affine_fixed_parabolics(g.g, g.y, tol);
  const auto [hp, hm] = affine_fixed_parabolics(h.g, h.y, tol);
  const Flag* flags[] = {&gp.flag, &gm.flag, &hp.flag, &hm.flag};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j && !is_transverse(*flags[i], *flags[j], tol)) {
        throw MathError(ErrorKind::NotTransverse, "fixed flags of the two words are not pairwise transverse");
      }
    }
  }
  const CartanVector target = cross_ratio(gp, hp, gm, hm, tol);

  std::vector<LimitRow> rows;
  for (std::size_t p = 1; p <= max_power; ++p) {
    const GroupWord gn = power(gamma, p);
    const GroupWord hn = power(eta, p);
    const CartanVector mix = margulis_of_word(rep, concat(gn, hn), tol);
    const CartanVector mg = margulis_of_word(rep, gn, tol);
    const CartanVector mh = margulis_of_word(rep, hn, tol);
    LimitRow row;
    row.power = p;
    row.defect = difference(difference(mix, mg), mh);
    row.target = target;
    row.gap = norm(difference(row.defect, target));
    rows.push_back(std::move(row));
  }
  return rows;
}

DerivativeResult derivative_experiment(const Matrix& g, const Matrix& x, double t, const Tolerances& tol) {
  if (!(t > 0.0 && t <= 1e-2)) throw MathError(ErrorKind::OutOfRange, "step must lie in (0, 1e-2]");
  const Matrix plus = g * matrix_exp(x * t);
  const Matrix minus = g * matrix_exp(x * -t);
  const CartanVector jp = jd_of_eigenvalues(eigen_loxodromic(plus, tol).eigenvalues);
  const CartanVector jm = jd_of_eigenvalues(eigen_loxodromic(minus, tol).eigenvalues);
  DerivativeResult r;
  r.finite_difference = difference(jp, jm);
  for (double& v : r.finite_difference) v /= 2.0 * t;
  r.margulis = margulis_invariant(g, x, tol);
  r.error = norm(difference(r.finite_difference, r.margulis));
  return r;
}

std::vector<ConvexityRow> convexity_probe(const AffineRepresentation& rep, const GroupWord& gamma,
                                          const GroupWord& eta, std::size_t p, std::size_t q,
                                          std::size_t max_power, const Tolerances& tol) {
  if (p == 0 || q == 0) throw MathError(ErrorKind::OutOfRange, "p and q must be positive");
  const auto lg = static_cast<double>(cyclic_reduce(gamma).size());
  const auto lh = static_cast<double>(cyclic_reduce(eta).size());
  const CartanVector mg = margulis_of_word(rep, gamma, tol);
  const CartanVector mh = margulis_of_word(rep, eta, tol);
  const double pd = static_cast<double>(p);
  const double qd = static_cast<double>(q);
  CartanVector predicted(mg.size());
  for (std::size_t i = 0; i < mg.size(); ++i) predicted[i] = (pd * mg[i] + qd * mh[i]) / (pd * lg + qd * lh);

  std::vector<ConvexityRow> rows;
  for (std::size_t k = 1; k <= max_power; ++k) {
    const GroupWord w = concat(power(gamma, p * k), power(eta, q * k));
    const auto len = static_cast<double>(cyclic_reduce(w).size());
    ConvexityRow row;
    row.power = k;
    row.observed = margulis_of_word(rep, w, tol);
    for (double& v : row.observed) v /= len;
    row.predicted = predicted;
    row.gap = norm(difference(row.observed, predicted));
    rows.push_back(std::move(row));
  }
  return rows;
}

AnosovProbe anosov_gap_probe(const AffineRepresentation& rep, std::size_t max_length) {
  if (max_length < 2) throw MathError(ErrorKind::OutOfRange, "max length must be at least 2");
  AnosovProbe probe;
  probe.floor = HUGE_VAL;
  for_each_conjugacy_rep(rep.k(), max_length, [&](const GroupWord& w) {
    std::vector<Matrix> factors;
    for (int l : w.letters()) factors.push_back(rep.letter(l).g);
    const auto kappa = product_log_singular_values(factors);
    for (std::size_t i = 0; i + 1 < kappa.size(); ++i) {
      const double rate = (kappa[i] - kappa[i + 1]) / static_cast<double>(w.size());
      if (rate < probe.floor) {
        probe.floor = rate;
        probe.argmin = w;
      }
    }
  });
  return probe;
}

}  // namespace margulis
