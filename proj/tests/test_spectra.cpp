#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "margulis/error.hpp"
#include "margulis/hitchin.hpp"
#include "margulis/repfile.hpp"
#include "margulis/spectra.hpp"
#include "support.hpp"

using namespace margulis;
using namespace test_support;

namespace {

AffineRepresentation fixture(const std::string& name) {
  return load_rep_file(std::string(MARGULIS_FIXTURE_DIR) + "/" + name).rep;
}

AffineRepresentation schottky_lift(std::size_t n, Rng& rng, double u_norm) {
  const auto [a, b] = schottky_generators(3.0, std::numbers::pi / 2);
  std::vector<Matrix> u;
  for (int i = 0; i < 2; ++i) {
    Matrix y = random_traceless(rng, n);
    y *= u_norm / y.frobenius_norm();
    u.push_back(y);
  }
  return AffineRepresentation::make({sym_rep(n, a), sym_rep(n, b)}, u);
}

bool same_bits(const CartanVector& a, const CartanVector& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_SUITE("spectra") {
  TEST_CASE("zero cocycle gives zero invariants") {
    const auto rep = fixture("schottky_zero.json");
    const auto samples = sample_spectrum(rep, 5);
    CHECK(samples.size() == enumerate_conjugacy_reps(2, 5).size());
    for (const auto& s : samples) {
      REQUIRE(s.ok);
      CHECK(max_abs(s.margulis) == 0.0);
    }
    const auto report = properness_diagnostic(samples);
    CHECK(report.verdict == Verdict::NonproperSignature);
  }

  TEST_CASE("single generator scales linearly in the power") {
    const Matrix y{{0.5, 1, 2}, {3, -0.2, 4}, {5, 6, -0.3}};
    const auto rep = AffineRepresentation::make({Matrix{{2, 0, 0}, {0, 1, 0}, {0, 0, 0.5}}}, {y});
    const auto samples = sample_spectrum(rep, 6);
    REQUIRE(samples.size() == 12);
    for (const auto& s : samples) {
      REQUIRE(s.ok);
      const double n = static_cast<double>(s.length);
      const double sign = s.word.letters()[0] > 0 ? 1.0 : -1.0;
      const CartanVector m1 = sign > 0 ? CartanVector{0.5, -0.2, -0.3} : CartanVector{0.3, 0.2, -0.5};
      CHECK(max_diff(s.margulis, scaled(m1, n)) < 1e-12 * n);
      CHECK(max_diff(scaled(s.normalized_margulis, n), s.margulis) < 1e-12 * n);
    }
  }

  TEST_CASE("inverse words and counts") {
    Rng rng(71);
    const auto rep = random_rep(rng, 3, 2, 0.5);
    const auto samples = sample_spectrum(rep, 5);
    std::size_t ok = 0;
    for (const auto& s : samples) {
      if (!s.ok) {
        CHECK_FALSE(s.skip_reason.empty());
        continue;
      }
      ++ok;
      for (std::size_t i = 0; i + 1 < s.jordan.size(); ++i) CHECK(s.jordan[i] >= s.jordan[i + 1]);
      const auto inv = word_invariants(rep, inverse(s.word));
      const double scale = 1 + max_abs(s.margulis);
      CHECK(max_diff(inv.margulis, scaled(omega0(s.margulis), -1.0)) < 1e-8 * scale);
      CHECK(max_diff(inv.jordan, scaled(omega0(s.jordan), -1.0)) < 1e-8);
    }
    const auto report = properness_diagnostic(samples);
    CHECK(report.sample_count == samples.size());
    CHECK(report.skipped_count + ok == samples.size());
    CHECK(report.horizon == 5);
  }

  TEST_CASE("parallel sampling matches serial sampling") {
    Rng rng(72);
    const auto rep = random_rep(rng, 3, 2, 0.5);
    const auto serial = sample_spectrum(rep, 5, {}, 1);
    const auto parallel = sample_spectrum(rep, 5, {}, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(serial[i].word == parallel[i].word);
      CHECK(serial[i].ok == parallel[i].ok);
      CHECK(same_bits(serial[i].margulis, parallel[i].margulis));
      CHECK(same_bits(serial[i].jordan, parallel[i].jordan));
    }
  }

  TEST_CASE("coboundary fixture is non-proper") {
    const auto samples = sample_spectrum(fixture("schottky_coboundary.json"), 8);
    for (const auto& s : samples) {
      REQUIRE(s.ok);
      CHECK(norm(s.normalized_margulis) <= 1e-9 * 10.0);
    }
    const auto report = properness_diagnostic(samples);
    CHECK(report.verdict == Verdict::NonproperSignature);
    REQUIRE(report.margin.has_value());
    CHECK(std::abs(*report.margin) < 1e-8);
  }

  TEST_CASE("axis stretch fixture is a proper candidate") {
    const auto report = properness_diagnostic(sample_spectrum(fixture("schottky_stretch.json"), 8));
    CHECK(report.verdict == Verdict::ProperCandidate);
    REQUIRE(report.margin.has_value());
    CHECK(*report.margin >= 1e-2);
    CHECK(report.skipped_count == 0);
  }

  TEST_CASE("empty sample set") {
    try {
      properness_diagnostic({});
      FAIL("expected EmptySampleSet");
    } catch (const MathError& e) {
      CHECK(e.kind() == ErrorKind::EmptySampleSet);
    }
  }

  TEST_CASE("hull functional supports the sampled points") {
    // Points clustered around a direction; the best functional must pair positively.
    const std::vector<CartanVector> pts{{1.0, 0.0, -1.0}, {0.8, 0.2, -1.0}, {1.0, -0.3, -0.7}};
    const auto phi = hull_support_functional(pts, 3);
    CHECK(norm(phi) == doctest::Approx(1.0));
    CHECK(std::abs(phi[0] + phi[1] + phi[2]) < 1e-12);
    for (const auto& p : pts) CHECK(dot(phi, p) > 1.0);
  }

  TEST_CASE("limit formula") {
    Rng rng(73);
    const auto rep = schottky_lift(3, rng, 0.1);
    const GroupWord a = parse_word("a", 2);
    const GroupWord b = parse_word("b", 2);
    const auto rows = limit_formula_experiment(rep, a, b, 16);
    REQUIRE(rows.size() == 16);
    const double scale = 1 + max_abs(rows[0].target);
    for (std::size_t n : {2, 4, 8}) CHECK(rows[2 * n - 1].gap <= 0.6 * rows[n - 1].gap + 1e-12 * scale);
    CHECK(rows[15].gap <= 1e-6 * scale);

    // Swapping the roles of the two words gives beta_2143 = beta_1234.
    const auto swapped = limit_formula_experiment(rep, b, a, 16);
    CHECK(max_diff(swapped[15].target, rows[15].target) <= 1e-8 * scale);
    CHECK(swapped[15].gap <= 1e-6 * scale);

    try {
      limit_formula_experiment(rep, a, a, 4);
      FAIL("expected NotTransverse");
    } catch (const MathError& e) {
      CHECK(e.kind() == ErrorKind::NotTransverse);
    }

    const auto zero = AffineRepresentation::make(rep.rho, {Matrix::zero(3), Matrix::zero(3)});
    for (const auto& r : limit_formula_experiment(zero, a, b, 4)) {
      CHECK(max_abs(r.defect) == 0.0);
      CHECK(max_abs(r.target) == 0.0);
    }
  }

  TEST_CASE("derivative experiment") {
    const Matrix g{{2, 0, 0}, {0, 1, 0}, {0, 0, 0.5}};
    const Matrix xd = Matrix::diagonal(std::vector<double>{0.3, 0.1, -0.4});
    const auto d1 = derivative_experiment(g, xd, 1e-3);
    CHECK(max_diff(d1.finite_difference, {0.3, 0.1, -0.4}) < 1e-9);
    CHECK(d1.error < 1e-9);

    const Matrix up{{0, 1, 2}, {0, 0, 3}, {0, 0, 0}};
    const auto d2 = derivative_experiment(g, up, 1e-3);
    CHECK(max_abs(d2.finite_difference) < 1e-9);
    CHECK(max_abs(d2.margulis) == 0.0);

    Rng rng(74);
    for (int trial = 0; trial < 30; ++trial) {
      const Matrix gg = random_loxodromic(rng, 3, 0.5, true);
      const Matrix x = random_traceless(rng, 3);
      const auto e1 = derivative_experiment(gg, x, 1e-3);
      const auto e2 = derivative_experiment(gg, x, 5e-4);
      if (e1.error > 1e-8) CHECK(e1.error / e2.error == doctest::Approx(4.0).epsilon(0.1));
    }
    CHECK_THROWS_AS(derivative_experiment(g, xd, 0.0), MathError);
    CHECK_THROWS_AS(derivative_experiment(g, xd, 0.1), MathError);
  }

  TEST_CASE("convexity probe") {
    Rng rng(75);
    const auto rep = schottky_lift(2, rng, 0.5);
    const GroupWord a = parse_word("a", 2);
    const GroupWord b = parse_word("b", 2);
    const auto rows = convexity_probe(rep, a, b, 1, 2, 8);
    REQUIRE(rows.size() == 8);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].gap < rows[i - 1].gap);
    // The gap is the bounded defect spread over length 3k, so 3k * gap tends
    // to the norm of the cross ratio from the limit experiment.
    const double beta = norm(limit_formula_experiment(rep, a, b, 1)[0].target);
    CHECK(std::abs(24.0 * rows[7].gap - beta) < 1e-3 * (1 + beta));

    const auto zero = AffineRepresentation::make(rep.rho, {Matrix::zero(2), Matrix::zero(2)});
    for (const auto& r : convexity_probe(zero, a, b, 2, 3, 3)) {
      CHECK(max_abs(r.observed) == 0.0);
      CHECK(max_abs(r.predicted) == 0.0);
    }
    CHECK_THROWS_AS(convexity_probe(rep, a, b, 0, 1, 2), MathError);
  }

  TEST_CASE("anosov gap probe") {
    Rng rng(76);
    const auto lifted = schottky_lift(3, rng, 0.0);
    CHECK(anosov_gap_probe(lifted, 6).floor > 0.1);

    const auto [a, b] = schottky_generators(3.0, std::numbers::pi / 2);
    const auto with_identity = AffineRepresentation::make({a, Matrix::identity(2)}, {Matrix::zero(2), Matrix::zero(2)});
    CHECK(std::abs(anosov_gap_probe(with_identity, 4).floor) < 1e-12);

    const Matrix unip{{1, 1, 1}, {0, 1, 1}, {0, 0, 1}};
    const auto u1 = AffineRepresentation::make({unip}, {Matrix::zero(3)});
    const double f3 = anosov_gap_probe(u1, 3).floor;
    const double f12 = anosov_gap_probe(u1, 12).floor;
    CHECK(f12 < f3);
    CHECK_THROWS_AS(anosov_gap_probe(u1, 1), MathError);
  }
}
