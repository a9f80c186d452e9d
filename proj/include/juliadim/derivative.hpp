#pragma once

#include <memory>
#include <string>
#include <vector>

#include "juliadim/measures.hpp"
#include "juliadim/pressure.hpp"

namespace juliadim {

inline constexpr double kPhiDotBudget = 100.0;
inline constexpr double kPhiDotTol = 1e-8;
inline constexpr int kPhiDotCap = 200;
inline constexpr double kNearZero = 1e-9;

struct PhiDotSeries {
  Complex value;
  double remainder_bound = 0.0;
  int terms = 0;
  std::vector<Complex> partial_sums;
  bool near_zero = false;   // orbit entered |z| < 1e-9
  int hitting_time = -1;
};

// Truncated series -sum_{k=1..m} 1/(f^k)'(z), extended past m until the
// tail bound B/|(f^m)'(z)| drops below 1e-8 (cap 200 terms).
PhiDotSeries phi_dot(Complex delta, Complex z, int m, double budget = kPhiDotBudget);

// Re(v phi_dot / z), v the unit direction of delta.
double integrand_f1(Complex direction, Complex z, Complex phi_dot_value);

enum class DerivativeMethod { formula, finite_difference };

const char* method_name(DerivativeMethod m);

struct DerivativeEstimate {
  RayParameter ray;
  DerivativeMethod method = DerivativeMethod::formula;
  double value = 0.0;        // d'_v
  double scaled = 0.0;       // sqrt(t) d'_v
  double scaled_exponent = 0.0;  // t^(1 - d/2) d'_v
  double error = 0.0;
  double d = 0.0;
  double d_error = 0.0;
  int depth = 0;
  int density_iterations = 0;
  double numerator = 0.0;
  double denominator = 0.0;
  double excluded_mass = 0.0;
  bool noise_dominated = false;
  std::string notes;
};

inline constexpr int kDefaultAtomLevel = 14;

struct DerivativeOptions {
  // The density iteration count is the smallest m up to this cap whose
  // relative sup-change is below 1e-4.
  int max_density_iterations = 12;
  int threads = 0;
};

// Everything the integrals over the invariant measure need for one ray
// point and one set of atoms.
struct DerivativeContext {
  RayParameter ray;
  Complex delta;
  Complex direction;
  DimensionEstimate dimension;
  MeasureAtoms invariant;
  std::vector<Complex> phi_dot;
  std::vector<char> excluded;
  double excluded_mass = 0.0;
};

DerivativeContext build_derivative_context(const RayParameter& ray,
                                           const DimensionEstimate& dim,
                                           MeasureAtoms invariant, int threads = 0);

// Invariant atoms at the given level with the adaptive iteration count.
MeasureAtoms derivative_atoms(Complex delta, double d, int level,
                              const DerivativeOptions& opt = {});

// -d (integral of Re(v phi_dot / z)) / (integral of log|2z|) over the
// invariant atoms.
double formula_value(const DerivativeContext& ctx, double* numerator = nullptr,
                     double* denominator = nullptr);

// depth is the level of the atoms; the density looks further down.
DerivativeEstimate derivative_formula(const RayParameter& ray, int depth, double tol,
                                      const DerivativeOptions& opt = {});

DerivativeEstimate derivative_fd(const RayParameter& ray, double h, double tol,
                                 const DerivativeOptions& opt = {});

inline constexpr std::size_t kSparseWindowAtoms = 50;

struct KeyIntegralReport {
  RayParameter ray;
  double R = 0.0;
  int depth = 0;
  double d = 0.0;
  std::size_t window_atoms = 0;
  double window_mass = 0.0;
  double scaled_integral = 0.0;   // |delta|^(1-d/2) int_N Re(-v/z^2) dmu
  double target = 0.0;            // (2/pi) I_{alpha,R}
  double gap = 0.0;               // relative
  double scaled_phi_integral = 0.0;  // |delta|^(1-d/2) int_N Re(v phi_dot/z) dmu
  double phi_target = 0.0;        // (1/3)(2/pi) I_{alpha,R}
  double phi_gap = 0.0;
  std::string warning;
};

KeyIntegralReport key_integral_check(const DerivativeContext& ctx, double R);
KeyIntegralReport key_integral_check(const RayParameter& ray, double R, int depth,
                                     const DerivativeOptions& opt = {});

// |delta|^(1-d/2) times the integral of |phi_dot / z| outside the window.
double scaled_tail_integral(const DerivativeContext& ctx, double R);

}  // namespace juliadim
