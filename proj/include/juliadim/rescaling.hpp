#pragma once

#include <string>
#include <vector>

#include "juliadim/cylinders.hpp"
#include "juliadim/dynamics.hpp"

namespace juliadim {

inline constexpr double kHyperbolaCoefficient = 1.0 / 3.0;

struct HyperbolaEndpoints {
  Complex b_star;
  Complex z_star;
  double gamma = 0.0;
};

// Endpoints of the right branch of xy = -c sin(alpha), sqrt(2c) sin(alpha/2)
// <= x <= R; c = 1/3 is the limit of the rescaled Julia windows.
HyperbolaEndpoints hyperbola_endpoints(double alpha, double R,
                                       double coefficient = kHyperbolaCoefficient);

class HyperbolaArc {
 public:
  HyperbolaArc(double alpha, double R, double coefficient = kHyperbolaCoefficient);

  double alpha() const { return alpha_; }
  double R() const { return R_; }
  double coefficient() const { return c_; }
  bool degenerate() const { return degenerate_; }
  const HyperbolaEndpoints& endpoints() const { return ends_; }

  // Polar parameter range [(alpha - pi)/2, -gamma].
  double t_begin() const { return t0_; }
  double t_end() const { return t1_; }

  // Point of the right branch at polar angle t; the left branch is -point.
  Complex point(double t) const;
  // `per_branch` points uniform in t on each branch; for alpha = pi the
  // branches are real segments sampled uniformly in x.
  std::vector<Complex> sample(int per_branch = 512) const;
  double branch_length() const;

 private:
  double alpha_, R_, c_;
  bool degenerate_;
  double t0_, t1_;
  HyperbolaEndpoints ends_;
};

// Max of the two directed sup-min distances.
double hausdorff_distance(const std::vector<Complex>& X,
                          const std::vector<Complex>& Y, int threads = 0);

// Window points scaled by 1/sqrt|delta|.
std::vector<Complex> rescaled_window(Complex delta, double R, int depth,
                                     int threads = 0);

struct HausdorffReport {
  Complex delta;
  double t = 0.0;
  double R = 0.0;
  double d_H = 0.0;
  std::size_t window_points = 0;
  std::size_t arc_points = 0;
  int depth = 0;
  std::string warning;
};

inline constexpr int kArcSamples = 512;

// alpha in (0, pi], t_schedule strictly decreasing.
std::vector<HausdorffReport> convergence_study(double alpha, double R,
                                               const std::vector<double>& t_schedule,
                                               int depth,
                                               double coefficient = kHyperbolaCoefficient,
                                               int threads = 0);

struct BandReport {
  Complex delta;
  bool skipped = false;
  std::string diagnostic;
  std::size_t samples = 0;
  std::size_t right_slab = 0;
  std::size_t left_slab = 0;
  std::size_t violations_right = 0;
  std::size_t violations_left = 0;
  std::size_t violations_real = 0;
  std::size_t violations() const {
    return violations_right + violations_left + violations_real;
  }
};

inline constexpr double kBandRegime = 0.05;

BandReport band_check(Complex delta, int depth, int threads = 0);

}  // namespace juliadim
