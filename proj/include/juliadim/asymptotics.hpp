#pragma once

#include <vector>

namespace juliadim {

enum class QuadratureScheme { adaptive, fixed_rule };

// Integral of sqrt(sin x) over [a, b], 0 <= a <= b <= pi.
double sqrt_sin_integral(double a, double b,
                         QuadratureScheme scheme = QuadratureScheme::adaptive);

// Limit of sqrt|delta| d'_v along the ray of angle alpha in (0, 2 pi).
double omega(double alpha);
double omega_limit_at_zero();

// Unique zero of omega on (0, pi/2).
double alpha_zero(double tol = 1e-10);

// sqrt(6) / (3 pi log 2), the slope of 1 - d on the negative real ray.
double dimension_slope_constant();

struct OmegaProfile {
  std::vector<double> alpha;
  std::vector<double> value;
};

// Grid alpha_i = pi i / points, i = 1..points.
OmegaProfile omega_profile(int points);

enum class KeyIntegralKind { finite_R, limit_R };

struct KeyIntegralValue {
  double alpha = 0.0;
  double R = 0.0;
  double value = 0.0;
  double gamma = 0.0;
  KeyIntegralKind kind = KeyIntegralKind::finite_R;
};

// Angle of the outer arc endpoint: arctan(coefficient sin(alpha) / R^2).
double gamma_angle(double alpha, double R, double coefficient = 1.0 / 3.0);

// alpha in (0, pi]; angles in (pi, 2 pi) are mirrored.
KeyIntegralValue key_integral(double alpha, double R,
                              KeyIntegralKind kind = KeyIntegralKind::finite_R);

enum class KConstantKind { inv_abs, inv_abs_sq };

// Limits of the rescaled integrals of 1/|z| and 1/|z|^2 over the window.
double k_constant(double alpha, double R, KConstantKind kind,
                  QuadratureScheme scheme = QuadratureScheme::adaptive);

}  // namespace juliadim
