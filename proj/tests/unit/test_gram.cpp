#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "viscycle/errors.hpp"
#include "viscycle/gram.hpp"

using namespace viscycle;
using doctest::Approx;

TEST_CASE("gram_det examples") {
  CHECK(gram_det({1.0, 1.0, 1.0, 0.0}) == Approx(0.0));
  CHECK(gram_det({0.5, 0.5, 0.0, 1.3}) == Approx(0.0));
  CHECK(std::abs(gram_det({0.75, 0.75, 0.25, 0.0})) <= 1e-15);
  CHECK_THROWS_AS(gram_det({1.5, 0.5, 0.5, 0.0}), DomainError);
}

TEST_CASE("gram_det agrees with the cofactor expansion for any phase") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double r12 = u(rng), r23 = u(rng), r13 = u(rng), phase = 6.283 * u(rng);
    CHECK(gram_det({r12, r23, r13, phase}) ==
          Approx(oracle::gram_det_cofactor(r12, r23, r13, std::polar(1.0, phase))).epsilon(1e-12));
  }
}

TEST_CASE("property: realized pure-state triples have det G >= 0") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 100000; ++trial) {
    const Eigen::Vector2cd k1 = oracle::ket_from_bloch(oracle::random_unit_vector(rng));
    const Eigen::Vector2cd k2 = oracle::ket_from_bloch(oracle::random_unit_vector(rng));
    const Eigen::Vector2cd k3 = oracle::ket_from_bloch(oracle::random_unit_vector(rng));
    const std::complex<double> g12 = k1.dot(k2);
    const std::complex<double> g23 = k2.dot(k3);
    const std::complex<double> g13 = k1.dot(k3);
    // gauge-invariant phase arg(g13) - arg(g12) - arg(g23)
    const double phase = std::arg(g13) - std::arg(g12) - std::arg(g23);
    const double det = gram_det({std::norm(g12), std::norm(g23), std::norm(g13), phase});
    REQUIRE(det >= -1e-10);
  }
}

TEST_CASE("min_r13 examples") {
  CHECK(min_r13(0.75, 0.75) == Approx(0.25).epsilon(1e-14));
  CHECK(min_r13(0.5, 0.5) == 0.0);
  // brute-force scan gives the same value on its grid
  CHECK(min_r13(0.9, 0.9) == Approx(0.64).epsilon(1e-14));
  CHECK(std::abs(oracle::brute_min_r13(0.9, 0.9) - 0.64) <= 2e-4);
  CHECK_THROWS_AS(min_r13(-0.1, 0.5), DomainError);
  CHECK_THROWS_AS(min_r13(0.5, 1.1), DomainError);
}

TEST_CASE("brute_min_r13 agrees with a full (r13, phase) determinant scan") {
  // Direct double loop over the complex-phase cofactor expansion, coarse grids.
  const auto full_scan = [](double r12, double r23) {
    for (int m = 0; m <= 1000; ++m) {
      const double r13 = m / 1000.0;
      for (int k = 0; k < 629; ++k) {
        const double det = oracle::gram_det_cofactor(r12, r23, r13, std::polar(1.0, 0.01 * k));
        if (det >= -1e-9) return r13;
      }
    }
    return std::nan("");
  };
  for (double r12 : {0.05, 0.3, 0.55, 0.75, 0.95}) {
    for (double r23 : {0.15, 0.5, 0.75, 0.85}) {
      CHECK(oracle::brute_min_r13(r12, r23, 1e-3, 0.01) == full_scan(r12, r23));
    }
  }
}

TEST_CASE("min_r13 matches the determinant scan on a coarse grid") {
  for (double r12 : oracle::unit_grid(11)) {
    for (double r23 : oracle::unit_grid(11)) {
      const double brute = oracle::brute_min_r13(r12, r23);
      REQUIRE(std::isfinite(brute));
      CHECK(std::abs(min_r13(r12, r23) - brute) <= 2e-4);
    }
  }
}

TEST_CASE("min_r13 vanishes exactly when r12 + r23 <= 1") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const double r12 = u(rng);
    const double r23 = (1.0 - r12) * u(rng);
    REQUIRE(min_r13(r12, r23) == 0.0);
  }
}

TEST_CASE("feasible examples") {
  CHECK(feasible(0.75, 0.75, 0.25));
  CHECK_FALSE(feasible(1.0, 1.0, 0.0));
  CHECK(feasible(0.5, 0.5, 0.2));
  CHECK(min_r13(0.5, 0.5) == 0.0);
  CHECK(max_r13(0.5, 0.5) == Approx(1.0));
  CHECK_FALSE(feasible(0.75, 0.75, 0.2));
}

TEST_CASE("property: feasible iff det at phase 0 is nonnegative and r13 within the roots") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20000; ++trial) {
    const double r12 = u(rng), r23 = u(rng), r13 = u(rng);
    const bool f = feasible(r12, r23, r13);
    const double det0 = oracle::gram_det_cofactor(r12, r23, r13, 1.0);
    if (std::abs(det0) > 1e-9) {
      CHECK(f == (det0 >= 0.0));
      CHECK(f == (r13 >= min_r13(r12, r23) && r13 <= max_r13(r12, r23)));
    }
  }
}

TEST_CASE("max_S_given examples") {
  CHECK(max_S_given(0.75, 0.75) == Approx(1.25).epsilon(1e-14));
  CHECK(max_S_given(1.0, 1.0) == Approx(1.0));
  // trigonometric form on the r12 + r23 > 1 branch
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, std::numbers::pi / 4.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double b = u(rng), g = u(rng);
    const double r12 = std::cos(b) * std::cos(b);
    const double r23 = std::cos(g) * std::cos(g);
    if (r12 + r23 <= 1.0) continue;
    const double trig = r12 + r23 - std::cos(b + g) * std::cos(b + g);
    CHECK(max_S_given(r12, r23) == Approx(trig).epsilon(1e-12));
  }
}

TEST_CASE("grid maximum of max_S_given is 5/4 at (3/4, 3/4)") {
  double best = -1.0;
  double at12 = 0.0, at23 = 0.0;
  for (double r12 : oracle::unit_grid(201)) {
    for (double r23 : oracle::unit_grid(201)) {
      const double s = max_S_given(r12, r23);
      if (s > best) {
        best = s;
        at12 = r12;
        at23 = r23;
      }
    }
  }
  CHECK(best == Approx(1.25).epsilon(1e-12));
  CHECK(at12 == Approx(0.75));
  CHECK(at23 == Approx(0.75));
}
