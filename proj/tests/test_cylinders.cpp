#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "juliadim/cylinders.hpp"

using namespace juliadim;

TEST_CASE("patterns") {
  CHECK(cylinder_pattern({CylinderFamily::plus2, 0}) == "+-");
  CHECK(cylinder_pattern({CylinderFamily::plus2, 2}) == "+++-");
  CHECK(cylinder_pattern({CylinderFamily::minus2, 2}) == "-++-");
  CHECK(cylinder_pattern({CylinderFamily::zero_plus, 0}) == "++");
  CHECK(cylinder_pattern({CylinderFamily::zero_plus, 3}) == "+-++-");
  CHECK(cylinder_pattern({CylinderFamily::zero_minus, 3}) == "--++-");
}

TEST_CASE("first plus cylinder maps to the left half") {
  CylinderSample s = cylinder_points(-0.1, {CylinderFamily::plus2, 0}, 10);
  REQUIRE(!s.points.points.empty());
  for (Complex z : s.points.points) {
    CHECK(z.real() > 0);
    CHECK(f(-0.1, z).real() < 0);
  }
}

TEST_CASE("zero cylinders stay away from zero") {
  // Lower bound min|z| > K^-1 |lambda|^(-n/2) has no proviso.
  for (Complex delta : {Complex(-0.1), Complex(-1e-4)}) {
    double lambda = std::abs(fixed_point(delta).lambda);
    for (int n = 4; n <= 10; ++n) {
      CylinderId id{CylinderFamily::zero_plus, n};
      CylinderSample s = cylinder_points(delta, id, default_cylinder_depth(id));
      CHECK(s.min_abs * std::pow(lambda, n / 2.0) > 1.0);
    }
  }
}

TEST_CASE("zero cylinders above sqrt|delta| shrink like lambda^(-n/2)") {
  // The upper bound only applies to cylinders lying above the sqrt|delta|
  // scale; at delta = -0.1 no cylinder with n >= 4 does.
  for (Complex delta : {Complex(-1e-4), Complex(-1e-5)}) {
    double lambda = std::abs(fixed_point(delta).lambda);
    double hi = 0, lo = INFINITY;
    int used = 0;
    for (int n = 2; n <= 12; ++n) {
      CylinderId id{CylinderFamily::zero_plus, n};
      CylinderSample s = cylinder_points(delta, id, default_cylinder_depth(id));
      if (s.min_abs <= std::sqrt(std::abs(delta))) continue;
      double scaled = s.max_abs * std::pow(lambda, n / 2.0);
      hi = std::max(hi, scaled);
      lo = std::min(lo, scaled);
      ++used;
    }
    CHECK(used >= 5);
    CHECK(hi / lo < 2.0);
  }
}

TEST_CASE("diameter slope at zero") {
  std::vector<double> x, y;
  for (int n = 4; n <= 12; ++n) {
    CylinderId id{CylinderFamily::zero_minus, n};
    x.push_back(n);
    y.push_back(std::log(cylinder_points(0.0, id, default_cylinder_depth(id)).diam_estimate));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / x.size(), my += y[i] / y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
  CHECK(sxy / sxx == doctest::Approx(-0.5 * std::log(4.0)).epsilon(0.1));
}

TEST_CASE("depth too small is an error") {
  CHECK_THROWS_AS(cylinder_points(-0.1, {CylinderFamily::plus2, 6}, 4), DomainError);
}

TEST_CASE("set diameter against all pairs") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  std::vector<Complex> pts;
  for (int i = 0; i < 300; ++i) pts.emplace_back(g(rng), 0.3 * g(rng));
  double brute = 0;
  for (auto a : pts)
    for (auto b : pts) brute = std::max(brute, std::abs(a - b));
  CHECK(set_diameter(pts) == doctest::Approx(brute).epsilon(1e-14));
  CHECK(set_diameter({Complex(1, 1)}) == 0.0);
  std::vector<Complex> line{0.0, 1.0, 2.0, 3.0};
  CHECK(set_diameter(line) == doctest::Approx(3.0));
}

TEST_CASE("windows") {
  WindowSet w1 = window_set(-0.04, 1.0, 16);
  WindowSet w2 = window_set(-0.04, 2.0, 16);
  REQUIRE(!w1.points.points.empty());
  for (Complex z : w1.points.points) CHECK(std::abs(z.real()) <= 0.2);
  CHECK(w2.points.points.size() >= w1.points.points.size());
  for (const auto& word : w1.points.words)
    CHECK(std::find(w2.points.words.begin(), w2.points.words.end(), word) !=
          w2.points.words.end());
  CHECK(window_set(-0.0001, 1.0, 6).warning.size() > 0);
  auto fraction = [](double t) {
    return double(window_set(-t, 2.0, 14).points.points.size()) / (1 << 14);
  };
  CHECK(fraction(0.0025) < fraction(0.01));
  CHECK(fraction(0.01) < fraction(0.04));
}

TEST_CASE("itinerary and measure index") {
  Complex delta = -0.1;
  Complex p = fixed_point(delta).p;
  CHECK(cylinder_measure_index(delta, p).is_sentinel());
  CHECK(cylinder_measure_index(delta, p).family == CylinderFamily::plus2);
  CHECK(itinerary(delta, p, 4) == "++++");

  for (int n = 2; n <= 6; ++n) {
    CylinderId id{CylinderFamily::zero_plus, n};
    CylinderSample s = cylinder_points(delta, id, n + 8);
    for (std::size_t i = 0; i < s.points.points.size(); i += 7) {
      Complex z = s.points.points[i];
      CHECK(cylinder_measure_index(delta, z, CylinderPartition::zero) == id);
      CylinderId image = cylinder_measure_index(delta, f(delta, f(delta, z)),
                                                CylinderPartition::fixed_point);
      CHECK(image == CylinderId{CylinderFamily::plus2, n - 2});
    }
  }
}

TEST_CASE("plus half is partitioned by the plus cylinders") {
  Complex delta(-0.02, 0.05);
  PointSet s = julia_sample(delta, 12, SampleMode::full_tree, 1);
  for (Complex z : s.points) {
    if (z.real() <= 0) continue;
    CylinderId id = cylinder_measure_index(delta, z, CylinderPartition::fixed_point);
    CHECK(id.family == CylinderFamily::plus2);
    if (id.is_sentinel()) continue;
    std::string pat = cylinder_pattern(id);
    CHECK(itinerary(delta, z, static_cast<int>(pat.size())) == pat);
  }
}
