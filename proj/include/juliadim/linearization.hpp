#pragma once

#include "juliadim/dynamics.hpp"

namespace juliadim {

inline constexpr double kParameterRadius = 0.15;

// Koenigs chart at the repelling fixed point, in the centred coordinate
// g(u) = f(u + p) - p = lambda u + u^2.
class KoenigsChart {
 public:
  // Calibrates the radius and picks the truncation depth.
  explicit KoenigsChart(Complex delta);
  KoenigsChart(Complex delta, double radius, int n_terms);

  Complex delta() const { return delta_; }
  Complex p() const { return p_; }
  Complex lambda() const { return lambda_; }
  double radius() const { return radius_; }
  int n_terms() const { return n_terms_; }

  // lambda^n g^{-n}(z) with the branch of g^{-1} fixing 0.
  Complex forward(Complex z, int n) const;
  // g^n(w / lambda^n)
  Complex inverse(Complex w, int n) const;

  Complex g(Complex u) const { return lambda_ * u + u * u; }
  Complex g_inverse(Complex y) const;

 private:
  Complex delta_, p_, lambda_;
  double radius_;
  int n_terms_;
};

struct KoenigsValue {
  Complex value;
  double last_increment = 0.0;
  bool converged = true;
};

inline constexpr double kKoenigsTol = 1e-12;
inline constexpr int kKoenigsMaxTerms = 60;

KoenigsValue koenigs_forward(const KoenigsChart& chart, Complex z);
Complex koenigs_inverse(const KoenigsChart& chart, Complex w);

// Largest dyadic r <= 1/4 where both chart directions stay within 1/2 of
// the identity (relative) on a 64-point circle.
double calibrate_radius(Complex delta);

// Smallest n with sup-norm change below kKoenigsTol on the circle of the
// given radius, capped at kKoenigsMaxTerms.
int choose_terms(Complex delta, double radius);

}  // namespace juliadim
