#include "juliadim/asymptotics.hpp"

#include <cmath>

#include "juliadim/numeric.hpp"
#include "juliadim/quadrature.hpp"

namespace juliadim {

namespace {

constexpr double kHalfPi = kPi / 2.0;

double integrate(const RealFn& f, double a, double b, QuadratureScheme s) {
  if (s == QuadratureScheme::adaptive) return integrate_adaptive(f, a, b, 1e-14);
  return integrate_gauss_legendre(f, a, b, 16, 20);
}

// With x = u^2 (or x = pi - u^2) the square-root zero of sin at the ends
// of [0, pi] becomes the smooth integrand 2u sqrt(sin u^2).
double substituted(double u) {
  double s = std::sin(u * u);
  return s <= 0.0 ? 0.0 : 2.0 * u * std::sqrt(s);
}

double check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0 * kPi))
    throw DomainError("angle must lie in (0, 2 pi)");
  return alpha > kPi ? 2.0 * kPi - alpha : alpha;
}

double check_alpha_half(double alpha) {
  if (!(alpha > 0.0 && alpha <= kPi))
    throw DomainError("angle must lie in (0, pi]");
  return alpha;
}

}  // namespace

double sqrt_sin_integral(double a, double b, QuadratureScheme scheme) {
  if (!(a >= 0.0 && a <= b && b <= kPi))
    throw DomainError("sqrt_sin_integral: need 0 <= a <= b <= pi");
  if (a == b) return 0.0;
  CompensatedSum total;
  if (a < kHalfPi) {
    double hi = std::min(b, kHalfPi);
    total.add(integrate(substituted, std::sqrt(a), std::sqrt(hi), scheme));
  }
  if (b > kHalfPi) {
    double lo = std::max(a, kHalfPi);
    total.add(integrate(substituted, std::sqrt(kPi - b), std::sqrt(kPi - lo),
                        scheme));
  }
  return total.value();
}

double omega_limit_at_zero() {
  return 1.0 / (std::sqrt(6.0) * kPi * std::log(2.0));
}

double omega(double alpha) {
  alpha = check_alpha(alpha);
  double tail = alpha == kPi ? 0.0
                             : 0.5 * std::sqrt(std::sin(alpha)) *
                                   sqrt_sin_integral(alpha, kPi);
  return omega_limit_at_zero() * (std::cos(alpha) - tail);
}

double alpha_zero(double tol) {
  if (!(tol >= 1e-10))
    throw DomainError("alpha_zero: tolerance below 1e-10");
  int changes = 0;
  double lo = 0.0, hi = 0.0, flo = 0.0, fhi = 0.0;
  double prev_a = 0.01, prev_f = omega(prev_a);
  for (double a = 0.02; a < kHalfPi; a += 0.01) {
    double fa = omega(a);
    if ((fa > 0) != (prev_f > 0)) {
      ++changes;
      lo = prev_a;
      hi = a;
      flo = prev_f;
      fhi = fa;
    }
    prev_a = a;
    prev_f = fa;
  }
  double fend = omega(kHalfPi);
  if ((fend > 0) != (prev_f > 0)) {
    ++changes;
    lo = prev_a;
    hi = kHalfPi;
    flo = prev_f;
    fhi = fend;
  }
  if (changes != 1)
    throw NoBracketError("alpha_zero: expected exactly one sign change on (0, pi/2)");
  return bracketed_secant(omega, lo, hi, flo, fhi, tol);
}

double dimension_slope_constant() {
  return std::sqrt(6.0) / (3.0 * kPi * std::log(2.0));
}

OmegaProfile omega_profile(int points) {
  if (points < 1) throw DomainError("omega_profile: empty grid");
  OmegaProfile p;
  for (int i = 1; i <= points; ++i) {
    double a = kPi * i / points;
    p.alpha.push_back(a);
    p.value.push_back(omega(a));
  }
  return p;
}

double gamma_angle(double alpha, double R, double coefficient) {
  return std::atan(coefficient * std::sin(alpha) / (R * R));
}

KeyIntegralValue key_integral(double alpha, double R, KeyIntegralKind kind) {
  alpha = check_alpha(alpha);
  if (!(R >= 1.0)) throw DomainError("key_integral: R must be >= 1");
  KeyIntegralValue v;
  v.alpha = alpha;
  v.R = R;
  v.kind = kind;
  const double s6 = std::sqrt(6.0);
  if (kind == KeyIntegralKind::limit_R) {
    double tail = alpha == kPi ? 0.0
                               : 0.5 * s6 * std::sqrt(std::sin(alpha)) *
                                     sqrt_sin_integral(alpha, kPi);
    v.value = -s6 * std::cos(alpha) + tail;
    return v;
  }
  if (alpha == kPi) {
    v.value = s6 - 2.0 / R;
    return v;
  }
  double g = gamma_angle(alpha, R);
  v.gamma = g;
  double sa = std::sin(alpha);
  v.value = s6 * std::cos(alpha) * (std::sqrt(std::sin(2.0 * g) / sa) - 1.0) +
            0.5 * s6 * std::sqrt(sa) * sqrt_sin_integral(alpha, kPi - 2.0 * g);
  return v;
}

double k_constant(double alpha, double R, KConstantKind kind,
                  QuadratureScheme scheme) {
  alpha = check_alpha_half(alpha);
  if (!(R >= 1.0)) throw DomainError("k_constant: R must be >= 1");
  if (kind == KConstantKind::inv_abs)
    return std::log(1.5) + 2.0 * std::log(R / std::sin(alpha / 2.0));
  if (alpha == kPi) return std::sqrt(6.0) - 2.0 / R;
  // Integral of (-sin 2t)^(-1/2) over [(alpha - pi)/2, -gamma]; split at
  // -pi/4 and substitute t = -u^2 and t = -pi/2 + u^2 so that the
  // inverse-square-root ends become 2u / sqrt(sin 2u^2).
  auto g = [](double u) {
    if (u == 0.0) return std::sqrt(2.0);
    return 2.0 * u / std::sqrt(std::sin(2.0 * u * u));
  };
  double lo = 0.5 * (alpha - kPi);
  double hi = -gamma_angle(alpha, R);
  const double mid = -kPi / 4.0;
  CompensatedSum acc;
  if (hi > mid) {
    double a = std::max(lo, mid);
    acc.add(integrate(g, std::sqrt(-hi), std::sqrt(-a), scheme));
  }
  if (lo < mid) {
    double b = std::min(hi, mid);
    acc.add(integrate(g, std::sqrt(lo + kHalfPi), std::sqrt(b + kHalfPi), scheme));
  }
  return 2.0 * std::sqrt(1.5) / std::sqrt(std::sin(alpha)) * acc.value();
}

}  // namespace juliadim
