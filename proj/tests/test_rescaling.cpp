#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "juliadim/rescaling.hpp"

using namespace juliadim;

TEST_CASE("hyperbola endpoints lie on the curve") {
  for (double a : {0.3, kPi / 2, 2.0, 3.0}) {
    HyperbolaEndpoints e = hyperbola_endpoints(a, 2.0);
    double c = kHyperbolaCoefficient * std::sin(a);
    CHECK(e.b_star.real() * e.b_star.imag() == doctest::Approx(-c).epsilon(1e-12));
    CHECK(e.z_star.real() * e.z_star.imag() == doctest::Approx(-c).epsilon(1e-12));
    CHECK(e.z_star.real() == 2.0);
    CHECK(std::abs(e.b_star) == doctest::Approx(std::sqrt(2 * kHyperbolaCoefficient)));
  }
  CHECK_THROWS_AS(hyperbola_endpoints(0.0, 2.0), DomainError);
  CHECK_THROWS_AS(hyperbola_endpoints(1.0, 0.5), DomainError);
}

TEST_CASE("arc samples stay on the curve") {
  HyperbolaArc arc(1.2, 3.0);
  auto pts = arc.sample(64);
  REQUIRE(pts.size() == 128);
  double c = kHyperbolaCoefficient * std::sin(1.2);
  for (Complex z : pts) CHECK(z.real() * z.imag() == doctest::Approx(-c).epsilon(1e-10));
  CHECK(pts.front() == arc.endpoints().b_star);
  CHECK(pts[63] == arc.endpoints().z_star);
  CHECK(pts[64] == -pts[0]);
  // Chord lengths sum to at most the arc length and approach it.
  double chords = 0;
  for (int k = 1; k < 64; ++k) chords += std::abs(pts[k] - pts[k - 1]);
  CHECK(chords <= arc.branch_length() + 1e-9);
  CHECK(chords == doctest::Approx(arc.branch_length()).epsilon(1e-3));
}

TEST_CASE("degenerate arc at pi") {
  HyperbolaArc arc(kPi, 2.0);
  CHECK(arc.degenerate());
  CHECK_THROWS_AS(arc.point(0.1), DomainError);
  double x0 = std::sqrt(2 * kHyperbolaCoefficient);
  CHECK(arc.branch_length() == doctest::Approx(2.0 - x0));
  for (Complex z : arc.sample(16)) {
    CHECK(z.imag() == 0.0);
    CHECK(std::abs(z.real()) >= x0 - 1e-15);
    CHECK(std::abs(z.real()) <= 2.0 + 1e-15);
  }
}

TEST_CASE("Hausdorff distance against all pairs") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Complex> X, Y;
  for (int i = 0; i < 120; ++i) X.emplace_back(u(rng), u(rng));
  for (int i = 0; i < 90; ++i) Y.emplace_back(2 * u(rng), 0.5 * u(rng));
  auto directed = [](const std::vector<Complex>& A, const std::vector<Complex>& B) {
    double worst = 0;
    for (auto a : A) {
      double best = INFINITY;
      for (auto b : B) best = std::min(best, std::abs(a - b));
      worst = std::max(worst, best);
    }
    return worst;
  };
  double oracle = std::max(directed(X, Y), directed(Y, X));
  CHECK(hausdorff_distance(X, Y) == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(hausdorff_distance(X, Y, 1) == hausdorff_distance(X, Y, 4));
  CHECK(hausdorff_distance(X, X) == 0.0);
}

TEST_CASE("rescaled windows approach the hyperbola") {
  auto rows = convergence_study(kPi / 2, 2.0, {0.04, 0.01, 0.0025}, 18);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].d_H < rows[i - 1].d_H);
  CHECK(rows.back().d_H < 0.1);
  CHECK_THROWS_AS(convergence_study(kPi / 2, 2.0, {0.01, 0.04}, 12), DomainError);
}

TEST_CASE("wrong coefficient is detected") {
  auto good = convergence_study(kPi / 2, 2.0, {0.0025}, 18);
  auto bad = convergence_study(kPi / 2, 2.0, {0.0025}, 18, 0.25);
  CHECK(bad[0].d_H > 2 * good[0].d_H);
}

TEST_CASE("rescaled window points") {
  Complex delta(0.0, 0.01);
  auto pts = rescaled_window(delta, 2.0, 14);
  REQUIRE(!pts.empty());
  for (Complex z : pts) CHECK(std::abs(z.real()) <= 2.0 + 1e-12);
}

TEST_CASE("band check") {
  for (Complex delta : {Complex(-0.01), Complex(0, 0.01), Complex(0.01, 0.01)}) {
    BandReport r = band_check(delta, 16);
    CHECK_FALSE(r.skipped);
    CHECK(r.right_slab > 0);
    CHECK(r.violations() == 0);
  }
  CHECK(band_check(-0.1, 10).skipped);
  CHECK(band_check(0.0, 10).skipped);
}
