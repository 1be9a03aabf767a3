#include "whfact/core.hpp"

#include "doctest.h"
#include "support.hpp"

#include <cmath>
#include <stdexcept>

using namespace whfact;

TEST_CASE("tolerances validate") {
  Tolerances tol;
  CHECK_NOTHROW(tol.validate());
  tol.residual_tol = -1.0;
  CHECK_THROWS_AS(tol.validate(), std::invalid_argument);
  tol = Tolerances{};
  tol.circle_samples = 0;
  CHECK_THROWS_AS(tol.validate(), std::invalid_argument);
  tol = Tolerances{};
  tol.inversion_rcond = 0.0;
  CHECK_THROWS_AS(tol.validate(), std::invalid_argument);
}

TEST_CASE("spectral radius") {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = Complex(0.3, 0.4);  // modulus 0.5
  d(1, 1) = -0.25;
  d(2, 2) = Complex(0.0, 0.45);
  CHECK(spectral_radius(d) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(spectral_radius(ComplexMatrix(0, 0)) == 0.0);
  CHECK_THROWS_AS(spectral_radius(ComplexMatrix::Zero(2, 3)), std::invalid_argument);

  // similarity does not change it
  SplitMix64 rng(7);
  ComplexMatrix s = whtest::random_matrix(rng, 3, 3) + 3.0 * ComplexMatrix::Identity(3, 3);
  CHECK(spectral_radius(s * d * s.inverse()) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("operator norm is the largest singular value") {
  CHECK(operator_norm(whtest::scalar(-3.0)) == doctest::Approx(3.0));
  ComplexMatrix n = ComplexMatrix::Zero(2, 2);
  n(0, 1) = 2.0;  // nilpotent: spectral radius 0, norm 2
  CHECK(operator_norm(n) == doctest::Approx(2.0));
  CHECK(spectral_radius(n) == doctest::Approx(0.0));
  CHECK(operator_norm(ComplexMatrix(0, 3)) == 0.0);
}

TEST_CASE("reciprocal condition number") {
  CHECK(reciprocal_condition(ComplexMatrix::Identity(4, 4)) == doctest::Approx(1.0));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 1.0;
  CHECK(reciprocal_condition(d) == doctest::Approx(0.25));
  d(1, 1) = 0.0;
  CHECK(reciprocal_condition(d) == doctest::Approx(0.0));
  CHECK(reciprocal_condition(ComplexMatrix(0, 0)) == doctest::Approx(1.0));
  CHECK(reciprocal_condition(ComplexMatrix::Zero(2, 3)) == 0.0);
}

TEST_CASE("is_invertible verdict carries the estimate") {
  Verdict good = is_invertible(2.0 * ComplexMatrix::Identity(3, 3));
  CHECK(good.ok);
  CHECK(good.measures.count("rcond") == 1);
  CHECK(good.measures["rcond"] > 0.5);

  Verdict bad = is_invertible(ComplexMatrix::Zero(3, 3));
  CHECK_FALSE(bad.ok);
}

TEST_CASE("sylvester solver against a planted solution") {
  SplitMix64 rng(11);
  ComplexMatrix a = 0.3 * whtest::random_matrix(rng, 4, 4);   // spectrum well inside
  ComplexMatrix b = 2.0 * ComplexMatrix::Identity(3, 3) + 0.3 * whtest::random_matrix(rng, 3, 3);
  ComplexMatrix z0 = whtest::random_matrix(rng, 3, 4);
  ComplexMatrix c = z0 * a - b * z0;
  ComplexMatrix z = solve_sylvester(a, b, c);
  CHECK(whtest::dist(z, z0) <= 1e-11 * (1.0 + operator_norm(z0)));
}

TEST_CASE("sylvester solver rejects overlapping spectra") {
  ComplexMatrix one = ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(solve_sylvester(one, one, one), std::domain_error);
}

TEST_CASE("unit circle samples") {
  auto pts = unit_circle_samples(8);
  REQUIRE(pts.size() == 8);
  CHECK(std::abs(pts[0] - Complex(1.0, 0.0)) <= 1e-15);
  for (const Complex& z : pts) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-14);
  // equally spaced: the sum vanishes
  Complex sum = 0.0;
  for (const Complex& z : pts) sum += z;
  CHECK(std::abs(sum) <= 1e-13);
  CHECK_THROWS_AS(unit_circle_samples(0), std::invalid_argument);
}

TEST_CASE("checked_inverse") {
  SplitMix64 rng(3);
  ComplexMatrix m = whtest::random_matrix(rng, 3, 3) + 4.0 * ComplexMatrix::Identity(3, 3);
  Tolerances tol;
  ComplexMatrix inv = checked_inverse(m, tol, "test");
  CHECK(whtest::dist(m * inv, ComplexMatrix::Identity(3, 3)) <= 1e-12);

  try {
    checked_inverse(ComplexMatrix::Zero(2, 2), tol, "zero-block");
    FAIL("expected domain_error");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("zero-block") != std::string::npos);
  }

  // 0 x 0 inverts to itself
  CHECK(checked_inverse(ComplexMatrix(0, 0), tol, "empty").size() == 0);
}

TEST_CASE("finite_entries") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  CHECK(finite_entries(m));
  m(0, 1) = Complex(std::nan(""), 0.0);
  CHECK_FALSE(finite_entries(m));
  m(0, 1) = Complex(0.0, std::numeric_limits<double>::infinity());
  CHECK_FALSE(finite_entries(m));
}
