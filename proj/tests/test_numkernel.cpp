#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "margulis/error.hpp"
#include "margulis/numkernel.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace margulis;
using namespace test_support;

TEST_SUITE("numkernel") {
  TEST_CASE("diagonal matrix has the identity frame") {
    const Matrix g{{2, 0, 0}, {0, 1, 0}, {0, 0, 0.5}};
    const auto lox = eigen_loxodromic(g);
    CHECK(lox.eigenvalues == std::vector<double>{2.0, 1.0, 0.5});
    CHECK(max_abs_diff(lox.frame, Matrix::identity(3)) < 1e-15);
    CHECK(lox.gap == doctest::Approx(1.0));
  }

  TEST_CASE("quarter turn has complex spectrum") {
    const Matrix r{{0, -1}, {1, 0}};
    try {
      eigen_loxodromic(r);
      FAIL("expected ComplexSpectrum");
    } catch (const MathError& e) {
      CHECK(e.kind() == ErrorKind::ComplexSpectrum);
    }
  }

  TEST_CASE("modulus collision and singular input are reported") {
    const Matrix g{{2, 0, 0}, {0, -2, 0}, {0, 0, 0.25}};
    CHECK_THROWS_AS(eigen_loxodromic(g), MathError);
    try {
      eigen_loxodromic(g);
    } catch (const MathError& e) {
      CHECK(e.kind() == ErrorKind::ModulusCollision);
    }
    const Matrix s{{1, 2}, {2, 4}};
    try {
      eigen_loxodromic(s);
      FAIL("expected Singular");
    } catch (const MathError& e) {
      CHECK(e.kind() == ErrorKind::Singular);
    }
  }

  TEST_CASE("conjugated diagonal recovers spectrum and frame up to column scaling") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix h = random_sl(rng, 3);
      const Matrix g = h * Matrix::diagonal(std::vector<double>{3.0, 1.0, 1.0 / 3.0}) * inverse(h);
      const auto lox = eigen_loxodromic(g);
      const auto roots = oracle::eigenvalues(g);
      for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(lox.eigenvalues[i] - roots[i].real()) < 1e-9);
        CHECK(std::abs(roots[i].imag()) < 1e-9);
      }
      CHECK(std::abs(lox.eigenvalues[0] - 3.0) < 1e-10);
      // Each frame column is parallel to the matching column of h.
      for (std::size_t j = 0; j < 3; ++j) {
        const auto col = lox.frame.column(j);
        CHECK(oracle::distance_to_span(oracle::gram_schmidt(h.columns(j, 1)), 1, col) < 1e-9);
      }
      CHECK(std::abs(determinant(lox.frame) - 1.0) < 1e-12);
    }
  }

  TEST_CASE("eigen_loxodromic reconstructs random inputs") {
    Rng rng(12);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
      const Matrix g = random_loxodromic(rng, n, 0.2, trial % 2 == 1);
      const auto lox = eigen_loxodromic(g);
      const Matrix back = lox.frame * Matrix::diagonal(lox.eigenvalues) * inverse(lox.frame);
      REQUIRE(max_abs_diff(back, g) <= 1e-9 * g.max_abs());
      double prod = 1.0;
      for (double l : lox.eigenvalues) prod *= l;
      CHECK(std::abs(prod - 1.0) < 1e-9);
      for (std::size_t i = 0; i + 1 < n; ++i) {
        CHECK(std::abs(lox.eigenvalues[i]) > std::abs(lox.eigenvalues[i + 1]));
      }
    }
  }

  TEST_CASE("eigen_loxodromic is deterministic") {
    Rng rng(13);
    const Matrix g = random_loxodromic(rng, 5, 0.2, true);
    const auto a = eigen_loxodromic(g);
    const auto b = eigen_loxodromic(g);
    CHECK(a.frame == b.frame);
    CHECK(std::memcmp(a.eigenvalues.data(), b.eigenvalues.data(), 5 * sizeof(double)) == 0);
  }

  TEST_CASE("frame columns have their largest entry positive before rescaling") {
    Rng rng(14);
    const Matrix g = random_loxodromic(rng, 4, 0.3, true);
    const auto lox = eigen_loxodromic(g);
    for (std::size_t j = 0; j + 1 < 4; ++j) {
      const auto c = lox.frame.column(j);
      std::size_t lead = 0;
      for (std::size_t i = 1; i < 4; ++i) {
        if (std::abs(c[i]) > std::abs(c[lead])) lead = i;
      }
      CHECK(c[lead] > 0);
    }
  }

  TEST_CASE("singular values") {
    CHECK(singular_values(Matrix{{2, 0}, {0, 0.5}}) == std::vector<double>{2.0, 0.5});
    const double c = std::cos(0.3), s = std::sin(0.3);
    for (double x : singular_values(Matrix{{c, -s}, {s, c}})) CHECK(x == doctest::Approx(1.0).epsilon(1e-14));
    Rng rng(15);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
      const Matrix g = random_sl(rng, n);
      const auto sv = singular_values(g);
      const auto ref = oracle::singular_values(g);
      double prod = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(sv[i] - ref[i]) < 1e-9 * sv[0]);
        prod *= sv[i];
      }
      CHECK(prod == doctest::Approx(std::abs(determinant(g))).epsilon(1e-12));
      const auto inv = singular_values(inverse(g));
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(inv[i] - 1.0 / sv[n - 1 - i]) <= 1e-9 * inv[i]);
    }
    try {
      singular_values(Matrix{{1, 1}, {1, 1}});
      FAIL("expected Singular");
    } catch (const MathError& e) {
      CHECK(e.kind() == ErrorKind::Singular);
    }
  }

  TEST_CASE("matrix exponential") {
    CHECK(matrix_exp(Matrix::zero(3)) == Matrix::identity(3));
    const Matrix e = matrix_exp(Matrix::diagonal(std::vector<double>{1.5, -0.25, -1.25}));
    CHECK(e(0, 0) == doctest::Approx(std::exp(1.5)).epsilon(1e-14));
    CHECK(e(1, 1) == doctest::Approx(std::exp(-0.25)).epsilon(1e-14));
    CHECK(e(2, 2) == doctest::Approx(std::exp(-1.25)).epsilon(1e-14));
    CHECK(e(0, 1) == 0.0);

    Rng rng(16);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
      Matrix x = random_traceless(rng, n);
      x *= uniform(rng, 0.1, 2.0) / x.frobenius_norm();
      const Matrix p = matrix_exp(x) * matrix_exp(-x);
      CHECK(max_abs_diff(p, Matrix::identity(n)) < 1e-10);
      const Matrix ref = oracle::exp_series(x);
      CHECK(max_abs_diff(matrix_exp(x), ref) <= 1e-12 * ref.max_abs());
    }
    // Larger norms against the series evaluated through exp(X/8)^8.
    for (int trial = 0; trial < 50; ++trial) {
      Matrix x = random_traceless(rng, 3);
      x *= uniform(rng, 2.0, 10.0) / x.frobenius_norm();
      Matrix ref = oracle::exp_series(x * 0.125, 40);
      for (int s = 0; s < 3; ++s) ref = oracle::mul(ref, ref);
      CHECK(max_abs_diff(matrix_exp(x), ref) <= 1e-12 * ref.max_abs());
    }
  }

  TEST_CASE("linear solves") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix g = random_sl(rng, 4);
      const Matrix b = random_matrix(rng, 4);
      const Matrix x = solve(g, b);
      CHECK(max_abs_diff(g * x, b) < 1e-12);
      CHECK(max_abs_diff(inverse(g), oracle::inverse(g)) < 1e-12);
      CHECK(determinant(g) == doctest::Approx(1.0).epsilon(1e-12));
    }
    try {
      inverse(Matrix{{1, 0}, {0, 1e-13}});
      FAIL("expected Singular");
    } catch (const MathError& e) {
      CHECK(e.kind() == ErrorKind::Singular);
    }
  }

  TEST_CASE("householder qr") {
    Rng rng(18);
    const Matrix a = random_matrix(rng, 5);
    const QR f = householder_qr(a);
    CHECK(max_abs_diff(f.q * f.r, a) < 1e-14);
    CHECK(max_abs_diff(f.q.transpose() * f.q, Matrix::identity(5)) < 1e-14);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(f.r(i, i) >= 0);
      for (std::size_t j = 0; j < i; ++j) CHECK(f.r(i, j) == 0.0);
    }
  }

  TEST_CASE("tolerance policy") {
    const Tolerances t = Tolerances::with_base(1e-6);
    CHECK(t.unimodular == 1e-6);
    CHECK(t.modulus_gap == 1e-6);
    CHECK(t.realness == 1e-8);
    CHECK(is_unimodular(Matrix{{1.0000001, 0}, {0, 1}}, t));
    CHECK_FALSE(is_unimodular(Matrix{{1.0000001, 0}, {0, 1}}));
    CHECK(is_traceless(Matrix{{1, 0}, {0, -1}}));
    CHECK_FALSE(is_traceless(Matrix{{1, 0}, {0, -0.9}}));
  }

  TEST_CASE("product spectrum agrees with the explicit product on short products") {
    Rng rng(19);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
      std::vector<Matrix> f, fi;
      for (int i = 0; i < 3; ++i) {
        f.push_back(random_loxodromic(rng, n, 0.5, true));
        fi.push_back(inverse(f.back()));
      }
      const Matrix p = f[0] * f[1] * f[2];
      LoxodromicData lox;
      try {
        lox = eigen_loxodromic(p);
      } catch (const MathError&) {
        continue;
      }
      if (lox.gap < 1e-2) continue;
      const auto ps = product_spectrum(f, fi);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(ps.log_moduli[i] - std::log(std::abs(lox.eigenvalues[i]))) < 1e-9);
        CHECK(ps.signs[i] == (lox.eigenvalues[i] < 0 ? -1 : 1));
      }
      // Rotation 1 is f[1] f[2] f[0]; its attracting flag is f[0]^-1 F+(p).
      const Matrix q1 = fi[0] * lox.frame;
      for (std::size_t p1 = 1; p1 <= n; ++p1) {
        CHECK(oracle::distance_to_span(ps.attracting[1], p1, q1.column(p1 - 1)) < 1e-8);
        CHECK(oracle::distance_to_span(ps.repelling[1], p1, q1.column(n - p1)) < 1e-8);
      }
    }
  }

  TEST_CASE("product log singular values match the explicit product") {
    Rng rng(20);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
      std::vector<Matrix> f;
      for (int i = 0; i < 4; ++i) f.push_back(random_sl(rng, n));
      const Matrix p = f[0] * f[1] * f[2] * f[3];
      const auto sv = singular_values(p);
      const auto logs = product_log_singular_values(f);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(logs[i] - std::log(sv[i])) < 1e-9);
    }
  }
}
