#include "juliadim/linearization.hpp"

#include <cmath>

namespace juliadim {

namespace {

constexpr int kCirclePoints = 64;

Complex circle_point(double r, int k) {
  double a = 2.0 * kPi * k / kCirclePoints;
  return {r * std::cos(a), r * std::sin(a)};
}

void check_parameter(Complex delta) {
  if (!(std::abs(delta) < kParameterRadius))
    throw DomainError("Koenigs chart: |delta| must be below 0.15");
}

}  // namespace

KoenigsChart::KoenigsChart(Complex delta)
    : KoenigsChart(delta, calibrate_radius(delta), 0) {
  n_terms_ = choose_terms(delta, radius_);
}

KoenigsChart::KoenigsChart(Complex delta, double radius, int n_terms)
    : delta_(delta), radius_(radius), n_terms_(n_terms) {
  check_parameter(delta);
  auto fp = fixed_point(delta);
  p_ = fp.p;
  lambda_ = fp.lambda;
}

Complex KoenigsChart::g_inverse(Complex y) const {
  // Root of u^2 + lambda u - y near 0, in cancellation-free form.
  Complex s = paper_sqrt(lambda_ * lambda_ + 4.0 * y);
  return 2.0 * y / (lambda_ + s);
}

Complex KoenigsChart::forward(Complex z, int n) const {
  Complex u = z;
  Complex scale = 1.0;
  for (int k = 0; k < n; ++k) {
    u = g_inverse(u);
    scale *= lambda_;
  }
  return scale * u;
}

Complex KoenigsChart::inverse(Complex w, int n) const {
  Complex u = w;
  for (int k = 0; k < n; ++k) u /= lambda_;
  for (int k = 0; k < n; ++k) u = g(u);
  return u;
}

KoenigsValue koenigs_forward(const KoenigsChart& chart, Complex z) {
  if (!(std::abs(z) < chart.radius()))
    throw DomainError("koenigs_forward: point outside chart radius");
  int n = chart.n_terms();
  KoenigsValue v;
  v.value = chart.forward(z, n);
  if (n > 0) {
    v.last_increment = std::abs(v.value - chart.forward(z, n - 1));
    v.converged = v.last_increment <= kKoenigsTol;
  }
  return v;
}

Complex koenigs_inverse(const KoenigsChart& chart, Complex w) {
  if (!(std::abs(w) < chart.radius()))
    throw DomainError("koenigs_inverse: point outside chart radius");
  return chart.inverse(w, chart.n_terms());
}

int choose_terms(Complex delta, double radius) {
  KoenigsChart c(delta, radius, 0);
  std::vector<Complex> prev(kCirclePoints);
  for (int k = 0; k < kCirclePoints; ++k) prev[k] = circle_point(radius, k);
  for (int n = 1; n <= kKoenigsMaxTerms; ++n) {
    double sup = 0.0;
    for (int k = 0; k < kCirclePoints; ++k) {
      Complex v = c.forward(circle_point(radius, k), n);
      sup = std::max(sup, std::abs(v - prev[k]));
      prev[k] = v;
    }
    if (sup < kKoenigsTol) return n;
  }
  return kKoenigsMaxTerms;
}

double calibrate_radius(Complex delta) {
  check_parameter(delta);
  for (double r = 0.25; r >= 1e-3; r *= 0.5) {
    int n = choose_terms(delta, r);
    KoenigsChart c(delta, r, n);
    bool ok = true;
    for (int k = 0; k < kCirclePoints && ok; ++k) {
      Complex z = circle_point(r, k);
      if (std::abs(c.forward(z, n) / z - 1.0) >= 0.5) ok = false;
      if (std::abs(c.inverse(z, n) / z - 1.0) >= 0.5) ok = false;
    }
    if (ok) return r;
  }
  throw ConvergenceError("calibrate_radius: no radius >= 1e-3 satisfies the bounds");
}

}  // namespace juliadim
