#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "juliadim/dynamics.hpp"
#include "juliadim/preimage_tree.hpp"

using namespace juliadim;

TEST_CASE("fixed point at zero") {
  FixedPointData fp = fixed_point(0.0);
  CHECK(fp.p == Complex(2, 0));
  CHECK(fp.lambda == Complex(4, 0));
}

TEST_CASE("fixed point on the negative real axis") {
  // Larger root of z^2 - z - 2 + delta = 0.
  double delta = -0.1;
  double oracle = (1.0 + std::sqrt(1.0 + 4.0 * (2.0 - delta))) / 2.0;
  FixedPointData fp = fixed_point(delta);
  CHECK(fp.p.real() == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(fp.lambda.real() == doctest::Approx(2 * oracle).epsilon(1e-14));
  CHECK(std::abs(f(delta, fp.p) - fp.p) < 1e-12);
}

TEST_CASE("fixed point off the axis follows its series") {
  Complex delta(0.0, 0.09);
  Complex series = 2.0 - delta / 3.0 - delta * delta / 27.0;
  FixedPointData fp = fixed_point(delta);
  CHECK(std::abs(fp.p - series) < 1e-4);
  CHECK(fp.p.imag() == doctest::Approx(-0.03).epsilon(0.1));
}

TEST_CASE("fixed point residual over a parameter grid") {
  for (double r : {0.01, 0.05, 0.1, 0.2})
    for (int k = 1; k < 16; ++k) {
      Complex delta = std::polar(r, 2 * kPi * k / 16);
      FixedPointData fp = fixed_point(delta);
      CHECK(std::abs(f(delta, fp.p) - fp.p) < 1e-12 * (1 + std::abs(fp.p)));
    }
  CHECK_THROWS_AS(fixed_point(3.0), DomainError);
}

TEST_CASE("orbits") {
  CHECK(apply(0.0, 2.0, 5).value == Complex(2, 0));
  CHECK(apply(0.0, 0.0, 2).value == Complex(2, 0));
  CHECK(apply(0.01, 0.0, 1).value.real() == doctest::Approx(-1.99));
  CHECK(apply(0.3, 1.0, 0).value == Complex(1, 0));
  OrbitValue big = apply(0.0, 3.0, 40);
  CHECK(big.escaped);
}

TEST_CASE("orbit derivative") {
  CHECK(orbit_derivative(0.0, 2.0, 3).value == Complex(64, 0));
  for (int k = 1; k <= 10; ++k)
    CHECK(std::abs(orbit_derivative(0.0, -2.0, k).value) == doctest::Approx(std::pow(4.0, k)));
  // |(f^n)'(2 cos t)| = 2^n |sin(2^n t) / sin t|
  for (double t : {0.3, 1.1, 2.0, 2.9}) {
    double x = 2 * std::cos(t);
    for (int n = 1; n <= 4; ++n) {
      double law = std::ldexp(std::abs(std::sin(std::ldexp(t, n)) / std::sin(t)), n);
      CHECK(std::abs(orbit_derivative(0.0, x, n).value) == doctest::Approx(law).epsilon(1e-10));
    }
  }
}

TEST_CASE("inverse branches") {
  CHECK(inverse_branch(0.0, 2.0, Branch::plus) == Complex(2, 0));
  CHECK_THROWS_AS(inverse_branch(0.0, -2.0, Branch::plus), DomainError);
  CHECK(inverse_branch(0.0, 0.0, Branch::plus).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(inverse_branch(0.0, 0.0, Branch::minus).real() == doctest::Approx(-std::sqrt(2.0)));
  // Negative real argument: the plus branch takes the positive imaginary root.
  Complex up = inverse_branch(0.0, -3.0, Branch::plus);
  CHECK(up.imag() == doctest::Approx(1.0));
  CHECK(std::abs(up.real()) < 1e-15);
}

TEST_CASE("branch round trips on sampled points") {
  Complex delta(-0.02, 0.03);
  PointSet s = julia_sample(delta, 10, SampleMode::full_tree, 1);
  for (Complex z : s.points) {
    Complex w = f(delta, z);
    Complex back = inverse_branch(delta, w, z.real() > 0 ? Branch::plus : Branch::minus);
    CHECK(std::abs(back - z) <= 1e-12 * std::max(1.0, std::abs(z)));
  }
}

TEST_CASE("escape test against the ellipse") {
  CHECK(escape_test(-0.01, 3.0) == Containment::escaped);
  CHECK(escape_test(-0.01, 0.0) == Containment::inside_bound);
  double r = 1.2;
  CHECK(r - 1 / r < 0.5);
  CHECK(escape_test(-0.04, Complex(0, 0.5)) == Containment::escaped);
  CHECK(containment_ellipse(-0.04).semi_minor() == doctest::Approx(r - 1 / r));
}

TEST_CASE("words") {
  CHECK(word_from_index(0, 3) == "+++");
  CHECK(word_from_index(1, 3) == "++-");
  CHECK(word_from_index(4, 3) == "-++");
  for (std::uint64_t i = 0; i < 64; ++i) CHECK(index_from_word(word_from_index(i, 6)) == i);
}

TEST_CASE("full tree samples at zero") {
  PointSet one = julia_sample(0.0, 1, SampleMode::full_tree, 1);
  REQUIRE(one.points.size() == 2);
  CHECK(one.points[0] == Complex(2, 0));
  CHECK(one.points[1] == Complex(-2, 0));
  CHECK(one.words[0] == "+");
  CHECK(one.words[1] == "-");

  PointSet two = julia_sample(0.0, 2, SampleMode::full_tree, 1);
  REQUIRE(two.points.size() == 3);
  int total = 0, at_zero = 0;
  for (std::size_t i = 0; i < two.points.size(); ++i) {
    total += two.multiplicity[i];
    if (two.points[i] == 0.0) at_zero = two.multiplicity[i];
  }
  CHECK(total == 4);
  CHECK(at_zero == 2);
}

TEST_CASE("samples stay in the strip and the ellipse") {
  PointSet s = julia_sample(-0.1, 12, SampleMode::full_tree, 1);
  CHECK(s.points.size() == 4096);
  for (Complex z : s.points) {
    CHECK(std::abs(z.imag()) <= 2 * std::sqrt(0.1));
    CHECK(escape_test(-0.1, z) == Containment::inside_bound);
  }
}

TEST_CASE("samples are symmetric under negation") {
  Complex delta(0.01, -0.03);
  PointSet s = julia_sample(delta, 8, SampleMode::full_tree, 1);
  auto key = [](Complex z) {
    return std::make_pair(std::round(z.real() * 1e9), std::round(z.imag() * 1e9));
  };
  std::set<std::pair<double, double>> all;
  for (Complex z : s.points) all.insert(key(z));
  for (Complex z : s.points) CHECK(all.count(key(-z)) == 1);
}

TEST_CASE("random walk is reproducible") {
  PointSet a = julia_sample(-0.05, 30, SampleMode::random_walk, 7, 500);
  PointSet b = julia_sample(-0.05, 30, SampleMode::random_walk, 7, 500);
  PointSet c = julia_sample(-0.05, 30, SampleMode::random_walk, 8, 500);
  CHECK(a.points == b.points);
  CHECK(a.points != c.points);
  for (Complex z : a.points) CHECK(escape_test(-0.05, z) == Containment::inside_bound);
  CHECK_THROWS_AS(julia_sample(-0.05, 25, SampleMode::full_tree, 1), DomainError);
}

TEST_CASE("admissibility") {
  CHECK_NOTHROW(require_admissible(0.0, "test"));
  CHECK_NOTHROW(require_admissible(-0.01, "test"));
  CHECK_THROWS_AS(require_admissible(1e-6, "test"), DomainError);
  CHECK_THROWS_AS(require_admissible(0.3, "test"), DomainError);
  // Real parameters in (0, 1/4) lie inside the Mandelbrot set.
  CHECK_THROWS_AS(require_admissible(0.1, "test"), DomainError);
}

TEST_CASE("preimage tree layout") {
  PreimageTree tree(-0.05, fixed_point(-0.05).p, 6);
  for (int n = 1; n <= 6; ++n) {
    const auto& lv = tree.level(n);
    const auto& up = tree.level(n - 1);
    for (std::size_t i = 0; i < lv.size(); ++i) {
      CHECK(std::abs(f(-0.05, lv[i]) - up[i % up.size()]) < 1e-13);
      double lg = std::log(std::abs(orbit_derivative(-0.05, lv[i], n).value));
      CHECK(tree.log_derivative(n)[i] == doctest::Approx(lg).epsilon(1e-12));
    }
  }
}
