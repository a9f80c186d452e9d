#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "juliadim/dynamics.hpp"

namespace juliadim {

inline constexpr int kPressureDepthCap = 26;

struct PressureOptions {
  // Root of the preimage tree; defaults to the beta fixed point q_delta.
  std::optional<Complex> base_point;
  int threads = 0;
};

Complex default_base_point(Complex delta);

// (1/n) log sum over the 2^n depth-n preimages of |(f^n)'|^(-tau).
double pressure_at(Complex delta, double tau, int n,
                   const PressureOptions& opt = {});

// log Z_k(tau) for k = 0..n from one depth-first traversal.
std::vector<double> log_partition_sums(Complex delta, double tau, int n,
                                       const PressureOptions& opt = {});

// Levels of log|(f^k)'| over the preimage tree, grown one level at a time.
// Partition sums against it are cheap, so repeated tau evaluations during
// root finding reuse one traversal.
class LogDerivativeLevels {
 public:
  LogDerivativeLevels(Complex delta, Complex base, int threads = 0);
  int depth() const { return static_cast<int>(logs_.size()) - 1; }
  void grow_to(int n);
  double log_partition(int n, double tau) const;
  // log(Z_n / 2^n)
  double log_mean(int n, double tau) const;
  const std::vector<double>& level(int n) const { return logs_.at(n); }

 private:
  Complex delta_;
  int threads_;
  std::vector<Complex> frontier_;
  std::vector<std::vector<double>> logs_;
};

inline constexpr int kCachedLevelsDepth = 24;

struct PressureCurve {
  Complex delta;
  int depth = 0;
  std::vector<std::pair<double, double>> samples;
  double root_estimate = 0.0;
};

// Samples tau -> P_n(tau) and solves P_n = 0 inside [0.5, 1.5].
PressureCurve pressure_curve(Complex delta, int n,
                             const std::vector<double>& taus,
                             const PressureOptions& opt = {});

struct DimensionOptions {
  int min_depth = 6;
  int max_depth = kPressureDepthCap;
  PressureOptions pressure;
};

struct DimensionEstimate {
  Complex delta;
  double d_value = 0.0;
  int depth_used = 0;
  double extrapolation_error = 0.0;
  bool depth_cap_reached = false;
  std::string warning;
  std::vector<double> roots;        // per-depth roots, from min_depth
  std::vector<double> extrapolants; // Aitken values on the root sequence
};

inline constexpr double kMinDimensionTol = 1e-12;

// Depth-n root of log Z_n - log Z_(n-1) (bracket [0.5, 1.5]).
double increment_root(const LogDerivativeLevels& levels, int n,
                      double xtol = 1e-14);

DimensionEstimate dimension(Complex delta, double target_tol,
                            const DimensionOptions& opt = {});

struct ScanRow {
  RayParameter ray;
  DimensionEstimate estimate;
  double seconds = 0.0;
  std::string error;  // non-empty when the row failed
};

std::vector<ScanRow> dimension_scan(const std::vector<RayParameter>& rays,
                                    double tol,
                                    const DimensionOptions& opt = {});

double aitken(double x0, double x1, double x2);

}  // namespace juliadim
