#include <cmath>
#include <vector>

#include "doctest.h"
#include "juliadim/pressure.hpp"

using namespace juliadim;

namespace {

// Real preimages of x0 at depth n for delta = 0, by plain recursion.
void real_preimages(double x, int n, std::vector<double>& out) {
  if (n == 0) {
    out.push_back(x);
    return;
  }
  double r = std::sqrt(x + 2.0);
  real_preimages(r, n - 1, out);
  real_preimages(-r, n - 1, out);
}

}  // namespace

TEST_CASE("pressure at tau = 0 counts branches") {
  for (int n = 1; n <= 12; ++n) {
    CHECK(pressure_at(0.0, 0.0, n) == std::log(2.0));
    CHECK(pressure_at(-0.1, 0.0, n) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  }
}

TEST_CASE("pressure at zero matches the Chebyshev sum") {
  // |(f^n)'(z)| = 2^n sqrt((4 - x0^2) / (4 - z^2)) with f^n(z) = x0.
  const int n = 12;
  double x0 = default_base_point(0.0).real();
  std::vector<double> pre;
  real_preimages(x0, n, pre);
  double sum = 0;
  for (double z : pre) sum += std::ldexp(std::sqrt((4 - z * z) / (4 - x0 * x0)), -n);
  CHECK(pressure_at(0.0, 1.0, n) == doctest::Approx(std::log(sum) / n).epsilon(1e-12));
  for (int m = 2; m <= 20; m += 3) CHECK(std::abs(pressure_at(0.0, 1.0, m)) < 0.75 / m);
}

TEST_CASE("pressure sign outside the Mandelbrot set") {
  CHECK(pressure_at(-0.1, 1.0, 18) < 0);
}

TEST_CASE("pressure decreases in tau") {
  std::vector<double> taus;
  for (int k = 0; k <= 20; ++k) taus.push_back(0.5 + 0.05 * k);
  PressureCurve c = pressure_curve(Complex(-0.02, 0.03), 14, taus);
  for (std::size_t i = 1; i < c.samples.size(); ++i)
    CHECK(c.samples[i].second < c.samples[i - 1].second);
  CHECK(c.root_estimate > 0.5);
  CHECK(c.root_estimate < 1.5);
  // At the root the depth-n weights sum to one.
  double p = pressure_at(Complex(-0.02, 0.03), c.root_estimate, 14);
  CHECK(std::abs(std::expm1(14 * p)) < 1e-12);
}

TEST_CASE("base point independence") {
  Complex delta(-0.03, 0.01);
  PressureOptions other;
  other.base_point = std::sqrt(std::sqrt(std::sqrt(fixed_point(delta).p + 2.0 - delta) + 2.0 - delta) +
                               2.0 - delta);
  double g8 = std::abs(pressure_at(delta, 1.0, 8) - pressure_at(delta, 1.0, 8, other));
  double g16 = std::abs(pressure_at(delta, 1.0, 16) - pressure_at(delta, 1.0, 16, other));
  CHECK(g16 < g8);
  CHECK(g16 * 16 < 1.0);
}

TEST_CASE("pressure is reproducible across thread counts") {
  PressureOptions one, many;
  one.threads = 1;
  many.threads = 3;
  CHECK(pressure_at(Complex(0.01, 0.04), 0.93, 17, one) ==
        pressure_at(Complex(0.01, 0.04), 0.93, 17, many));
}

TEST_CASE("dimension at zero") {
  DimensionEstimate e = dimension(0.0, 1e-8);
  CHECK(e.d_value == doctest::Approx(1.0).epsilon(2e-3));
  CHECK(e.extrapolation_error >= 0);
}

TEST_CASE("dimension on the negative real ray") {
  DimensionEstimate e = dimension(-0.0025, 1e-8);
  double expected = 0.375 * std::sqrt(0.0025);
  CHECK((1 - e.d_value) == doctest::Approx(expected).epsilon(0.25));
  CHECK(e.d_value > 0.5);
  CHECK(e.d_value < 1.5);
}

TEST_CASE("dimension rises toward one along the imaginary ray") {
  double d1 = dimension(Complex(0, 0.04), 1e-8).d_value;
  double d2 = dimension(Complex(0, 0.01), 1e-8).d_value;
  CHECK(d1 < 1);
  CHECK(d2 > d1);
  CHECK(d2 < 1);
}

TEST_CASE("dimension refuses bad requests") {
  CHECK_THROWS_AS(dimension(1e-7, 1e-8), DomainError);
  CHECK_THROWS_AS(dimension(-0.04, 1e-14), DomainError);
  CHECK_THROWS_AS(pressure_at(-0.04, 1.0, 27), DomainError);
}

TEST_CASE("scan keeps going after a failed row") {
  std::vector<RayParameter> rays{RayParameter::make(kPi, 0.04), RayParameter::make(kPi, 1e-6),
                                 RayParameter::make(kPi, 0.04)};
  auto rows = dimension_scan(rays, 1e-6);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].error.empty());
  CHECK_FALSE(rows[1].error.empty());
  CHECK(rows[2].estimate.d_value == rows[0].estimate.d_value);
}

TEST_CASE("Aitken step on a geometric sequence") {
  CHECK(aitken(1.5, 1.25, 1.125) == doctest::Approx(1.0));
}
