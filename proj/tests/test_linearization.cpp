#include <cmath>
#include <random>

#include "doctest.h"
#include "juliadim/linearization.hpp"

using namespace juliadim;

TEST_CASE("chart fixes the origin") {
  KoenigsChart chart(0.0);
  CHECK(koenigs_forward(chart, 0.0).value == Complex(0, 0));
  CHECK(koenigs_inverse(chart, 0.0) == Complex(0, 0));
}

TEST_CASE("truncations converge at the rate 1/lambda") {
  KoenigsChart chart(0.0);
  Complex z = 0.01;
  Complex a = chart.forward(z, 10), b = chart.forward(z, 11), c = chart.forward(z, 12);
  double ratio = std::abs(c - b) / std::abs(b - a);
  CHECK(ratio == doctest::Approx(0.25).epsilon(0.05));
  KoenigsValue v = koenigs_forward(chart, z);
  CHECK(v.converged);
  CHECK(std::abs(v.value - chart.forward(z, 40)) < 1e-8);
}

TEST_CASE("conjugacy with the map") {
  for (Complex delta : {Complex(0.0), Complex(-0.04), Complex(0.02, 0.05)}) {
    KoenigsChart chart(delta);
    double r = chart.radius() / 8;
    for (int k = 0; k < 16; ++k) {
      Complex z = std::polar(r * (k % 4 + 1) / 4.0, 2 * kPi * k / 16);
      Complex lhs = koenigs_forward(chart, chart.g(z)).value;
      Complex rhs = chart.lambda() * koenigs_forward(chart, z).value;
      CHECK(std::abs(lhs - rhs) < 1e-9);
    }
  }
}

TEST_CASE("round trip on random points") {
  KoenigsChart chart(Complex(-0.03, 0.02));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    Complex z(u(rng), u(rng));
    z *= chart.radius() / 4 / std::max(1.0, std::abs(z));
    worst = std::max(worst, std::abs(koenigs_inverse(chart, koenigs_forward(chart, z).value) - z));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("second coefficient of the inverse at zero") {
  // Inverse chart h(w) = w + a w^2 + ..., h(lambda w) = g(h(w)) gives
  // a = 1 / (lambda^2 - lambda).
  KoenigsChart chart(0.0);
  double lambda = 4.0;
  double oracle = 1.0 / (lambda * lambda - lambda);
  auto coeff = [&](double w) { return ((koenigs_inverse(chart, w) - w) / (w * w)).real(); };
  // Richardson step removes the linear error term.
  double w = 1e-3;
  double richardson = 2 * coeff(w / 2) - coeff(w);
  CHECK(richardson == doctest::Approx(oracle).epsilon(1e-5));
}

TEST_CASE("derivative at the origin is one") {
  KoenigsChart chart(-0.02);
  auto slope = [&](double h) {
    return std::abs((koenigs_forward(chart, h).value - koenigs_forward(chart, -h).value) / (2 * h) - 1.0);
  };
  double e1 = slope(1e-2), e2 = slope(5e-3);
  CHECK(e1 < 1e-3);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("calibrated radius") {
  CHECK(calibrate_radius(0.0) >= 0.05);
  CHECK(calibrate_radius(-0.1) > 0);
  double lo = 1, hi = 0;
  for (double r : {0.005, 0.02, 0.05})
    for (int k = 0; k < 8; ++k) {
      double x = calibrate_radius(std::polar(r, 2 * kPi * (k + 0.5) / 8));
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  CHECK(hi / lo < 2.0);
}

TEST_CASE("charts stay close to the identity on their disc") {
  KoenigsChart chart(0.03);
  for (int k = 0; k < 64; ++k) {
    Complex z = std::polar(0.999 * chart.radius(), 2 * kPi * k / 64);
    CHECK(std::abs(koenigs_forward(chart, z).value / z - 1.0) < 0.5);
    CHECK(std::abs(koenigs_inverse(chart, z) / z - 1.0) < 0.5);
  }
}

TEST_CASE("radius violations") {
  KoenigsChart chart(0.0);
  CHECK_THROWS_AS(koenigs_forward(chart, 2 * chart.radius()), DomainError);
  CHECK_THROWS_AS(koenigs_inverse(chart, 2 * chart.radius()), DomainError);
  CHECK_THROWS_AS(KoenigsChart(0.2), DomainError);
}
