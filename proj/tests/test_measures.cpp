#include <cmath>
#include <limits>
#include <string>

#include "doctest.h"
#include "juliadim/cylinders.hpp"
#include "juliadim/measures.hpp"
#include "juliadim/pressure.hpp"

using namespace juliadim;

namespace {

double arcsine_density(double x) { return (2.0 / kPi) / std::sqrt(1.0 - x * x / 4.0); }

std::size_t nearest(const MeasureAtoms& a, Complex z) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (std::abs(a.points[i] - z) < std::abs(a.points[best] - z)) best = i;
  return best;
}

}  // namespace

TEST_CASE("conformal atoms at zero reproduce Lebesgue measure") {
  MeasureAtoms a = conformal_atoms(0.0, 1.0, 14);
  CHECK(a.total_mass() == doctest::Approx(4.0).epsilon(1e-12));
  double right = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.points[i].real() > 0) right += a.weights[i];
  CHECK(right == doctest::Approx(2.0).epsilon(1e-3));
  double below_one = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.points[i].real() < 1.0) below_one += a.weights[i];
  CHECK(below_one == doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("conformality on cylinders") {
  // A = C^{-2}_n has itinerary -+^n-, f(A) = C^{+2}_{n-1} has +^n-.
  Complex delta = -0.04;
  double d = dimension(delta, 1e-10).d_value;
  MeasureAtoms a = conformal_atoms(delta, d, 18);
  for (int n = 1; n <= 5; ++n) {
    std::string minus = "-" + std::string(n, '+') + "-";
    std::string plus = std::string(n, '+') + "-";
    double image = 0, pulled = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::string it = itinerary(delta, a.points[i], n + 2);
      if (it.compare(0, minus.size(), minus) == 0)
        pulled += std::pow(std::abs(2.0 * a.points[i]), d) * a.weights[i];
      if (it.compare(0, plus.size(), plus) == 0) image += a.weights[i];
    }
    CHECK(pulled == doctest::Approx(image).epsilon(0.02));
  }
}

TEST_CASE("conformal atoms need a pressure root") {
  CHECK_THROWS_AS(conformal_atoms(-0.04, 1.0, 12), DomainError);
}

TEST_CASE("invariant density at zero is the arcsine law") {
  MeasureAtoms c = conformal_atoms(0.0, 1.0, 14);
  MeasureAtoms inv = invariant_density_adaptive(c, 12);
  CHECK(inv.total_mass() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(inv.density_change <= kDensityTol);
  std::size_t z0 = nearest(inv, 0.0);
  CHECK(inv.density[z0] == doctest::Approx(arcsine_density(inv.points[z0].real())).epsilon(0.02));
  std::size_t z1 = nearest(inv, 1.9);
  CHECK(inv.density[z1] == doctest::Approx(arcsine_density(inv.points[z1].real())).epsilon(0.05));
  double lyap = integrate(inv, [](Complex z) { return std::log(std::abs(2.0 * z)); });
  CHECK(lyap == doctest::Approx(4 * std::log(2.0)).epsilon(0.02));
}

TEST_CASE("density is nearly constant around zero for small delta") {
  // The plateau is flat on B(0, 0.3) but sits above 2/pi by roughly
  // 10 sqrt|delta|, so the absolute band needs |delta| a bit below 0.01.
  auto plateau = [](double t) {
    Complex delta = -t;
    double d = dimension(delta, 1e-10).d_value;
    MeasureAtoms inv = invariant_density_adaptive(conformal_atoms(delta, d, 14), 12);
    double lo = INFINITY, hi = 0;
    for (std::size_t i = 0; i < inv.size(); ++i)
      if (std::abs(inv.points[i]) < 0.3) {
        lo = std::min(lo, inv.density[i]);
        hi = std::max(hi, inv.density[i]);
      }
    return std::pair{lo, hi};
  };
  auto [lo1, hi1] = plateau(0.01);
  CHECK(hi1 / lo1 < 1.1);
  auto [lo2, hi2] = plateau(0.0025);
  CHECK(hi2 / lo2 < 1.1);
  CHECK(lo2 > 0.9 * 2 / kPi);
  CHECK(hi2 < 1.1 * 2 / kPi);
  CHECK(std::abs(hi2 - 2 / kPi) < std::abs(hi1 - 2 / kPi));
}

TEST_CASE("too few density iterations are reported") {
  Complex delta = -0.0025;
  double d = dimension(delta, 1e-8).d_value;
  MeasureAtoms c = conformal_atoms(delta, d, 12);
  CHECK_THROWS_AS(invariant_density(c, 2), ConvergenceError);
  DensityIterates it = density_iterates(c, 6);
  CHECK(it.change[6] < it.change[2]);
}

TEST_CASE("invariance under the map") {
  Complex delta(0.0, -0.04);
  double d = dimension(delta, 1e-10).d_value;
  MeasureAtoms inv = invariant_density_adaptive(conformal_atoms(delta, d, 16), 12);
  auto check = [&](auto u) {
    double a = integrate(inv, u);
    double b = integrate(inv, [&](Complex z) { return u(f(delta, z)); });
    CHECK(std::abs(a - b) / kMeasureMass < 0.03);
  };
  check([](Complex z) { return z.real(); });
  check([](Complex z) { return std::norm(z); });
  check([](Complex z) { return z.real() > 0 ? 1.0 : 0.0; });
}

TEST_CASE("integration basics") {
  MeasureAtoms a = conformal_atoms(0.0, 1.0, 10);
  CHECK(integrate(a, [](Complex) { return 1.0; }) == doctest::Approx(4.0).epsilon(1e-13));
  auto u = [](Complex z) { return z.real() * z.real(); };
  auto v = [](Complex z) { return std::cos(z.real()); };
  double lin = integrate(a, [&](Complex z) { return 2 * u(z) - 3 * v(z); });
  CHECK(std::abs(lin - (2 * integrate(a, u) - 3 * integrate(a, v))) < 1e-12);
  CHECK_THROWS_AS(integrate(a, [](Complex z) {
                    return z.real() > 1.5 ? std::numeric_limits<double>::quiet_NaN() : 0.0;
                  }),
                  DomainError);
  CHECK(integrate(a, u, 1) == integrate(a, u, 4));
}

TEST_CASE("rescaled measure bookkeeping") {
  Complex delta = -0.01;
  double d = dimension(delta, 1e-10).d_value;
  MeasureAtoms a = conformal_atoms(delta, d, 12);
  RescaledMeasure r = rescale_measure(a);
  double s = std::sqrt(0.01);
  CHECK(r.scale == doctest::Approx(s));
  double big = 0, small = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(r.points[i].real()) <= 2) big += r.weights[i];
    if (std::abs(a.points[i].real()) <= 2 * s) small += a.weights[i];
    CHECK(std::abs(r.points[i] * s - a.points[i]) < 1e-15);
  }
  CHECK(big == doctest::Approx(std::pow(0.01, -d / 2) * small).epsilon(1e-12));
  MeasureAtoms empty = a;
  empty.points.clear();
  empty.weights.clear();
  CHECK(rescale_measure(empty).points.empty());
  CHECK_THROWS_AS(rescale_measure(conformal_atoms(0.0, 1.0, 6)), DomainError);
}
