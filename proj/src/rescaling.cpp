#include "juliadim/rescaling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "juliadim/asymptotics.hpp"

namespace juliadim {

HyperbolaEndpoints hyperbola_endpoints(double alpha, double R, double coefficient) {
  if (!(alpha > 0.0 && alpha <= kPi))
    throw DomainError("hyperbola_endpoints: alpha must lie in (0, pi]");
  if (!(R >= 1.0)) throw DomainError("hyperbola_endpoints: R must be >= 1");
  double r0 = std::sqrt(2.0 * coefficient);
  HyperbolaEndpoints e;
  e.b_star = Complex(r0 * std::sin(alpha / 2.0), -r0 * std::cos(alpha / 2.0));
  e.z_star = Complex(R, -coefficient * std::sin(alpha) / R);
  e.gamma = gamma_angle(alpha, R, coefficient);
  if (alpha == kPi) {
    e.b_star = Complex(r0, 0.0);
    e.z_star = Complex(R, 0.0);
    e.gamma = 0.0;
  }
  return e;
}

HyperbolaArc::HyperbolaArc(double alpha, double R, double coefficient)
    : alpha_(alpha), R_(R), c_(coefficient) {
  ends_ = hyperbola_endpoints(alpha, R, coefficient);
  degenerate_ = (alpha == kPi);
  t0_ = 0.5 * (alpha - kPi);
  t1_ = -ends_.gamma;
}

Complex HyperbolaArc::point(double t) const {
  if (degenerate_) throw DomainError("HyperbolaArc: degenerate arc has no polar form");
  double s2 = std::sin(2.0 * t);
  double h = std::sqrt(-2.0 * c_ * std::sin(alpha_) / s2);
  return {h * std::cos(t), h * std::sin(t)};
}

std::vector<Complex> HyperbolaArc::sample(int per_branch) const {
  if (per_branch < 2) throw DomainError("HyperbolaArc: need at least 2 samples");
  std::vector<Complex> out;
  out.reserve(2 * per_branch);
  for (int k = 0; k < per_branch; ++k) {
    double s = static_cast<double>(k) / (per_branch - 1);
    Complex z;
    if (degenerate_) {
      double x0 = ends_.b_star.real();
      z = Complex(x0 + s * (R_ - x0), 0.0);
    } else {
      // Pin the ends exactly to the closed-form endpoints.
      if (k == 0) z = ends_.b_star;
      else if (k == per_branch - 1) z = ends_.z_star;
      else z = point(t0_ + s * (t1_ - t0_));
    }
    out.push_back(z);
  }
  for (int k = 0; k < per_branch; ++k) out.push_back(-out[k]);
  return out;
}

double HyperbolaArc::branch_length() const {
  if (degenerate_) return R_ - ends_.b_star.real();
  // Arc length of x -> -c sin(alpha) / x between the endpoint abscissae.
  double k = c_ * std::sin(alpha_);
  auto ds = [k](double x) { return std::sqrt(1.0 + k * k / (x * x * x * x)); };
  double a = ends_.b_star.real(), b = R_;
  double sum = 0.0;
  const int n = 4096;
  double h = (b - a) / n;
  for (int i = 0; i < n; ++i) {
    double x = a + (i + 0.5) * h;
    sum += ds(x) * h;
  }
  return sum;
}

namespace {

class GridIndex {
 public:
  explicit GridIndex(const std::vector<Complex>& pts) : pts_(pts) {
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (Complex z : pts) {
      x0 = std::min(x0, z.real());
      x1 = std::max(x1, z.real());
      y0 = std::min(y0, z.imag());
      y1 = std::max(y1, z.imag());
    }
    double extent = std::max({x1 - x0, y1 - y0, 1e-300});
    int side = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(pts.size()))));
    h_ = extent / side;
    if (h_ <= 0.0) h_ = 1.0;
    x0_ = x0;
    y0_ = y0;
    nx_ = std::max(1, static_cast<int>((x1 - x0) / h_) + 1);
    ny_ = std::max(1, static_cast<int>((y1 - y0) / h_) + 1);
    start_.assign(static_cast<std::size_t>(nx_) * ny_ + 1, 0);
    std::vector<std::size_t> cell(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      cell[i] = cell_of(pts[i]);
      ++start_[cell[i] + 1];
    }
    for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
    order_.resize(pts.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < pts.size(); ++i) order_[fill[cell[i]]++] = i;
  }

  double nearest(Complex q) const {
    int ci = clamp_x(q.real()), cj = clamp_y(q.imag());
    double best = INFINITY;
    int max_r = std::max(nx_, ny_);
    for (int r = 0; r <= max_r; ++r) {
      if (best <= (r - 1) * h_) break;
      for (int i = ci - r; i <= ci + r; ++i) {
        if (i < 0 || i >= nx_) continue;
        bool edge_col = (i == ci - r || i == ci + r);
        for (int j = cj - r; j <= cj + r; ++j) {
          if (j < 0 || j >= ny_) continue;
          if (!edge_col && j != cj - r && j != cj + r) continue;
          std::size_t c = static_cast<std::size_t>(i) * ny_ + j;
          for (std::size_t k = start_[c]; k < start_[c + 1]; ++k)
            best = std::min(best, std::abs(pts_[order_[k]] - q));
        }
      }
    }
    return best;
  }

 private:
  int clamp_x(double x) const {
    return std::clamp(static_cast<int>(std::floor((x - x0_) / h_)), 0, nx_ - 1);
  }
  int clamp_y(double y) const {
    return std::clamp(static_cast<int>(std::floor((y - y0_) / h_)), 0, ny_ - 1);
  }
  std::size_t cell_of(Complex z) const {
    return static_cast<std::size_t>(clamp_x(z.real())) * ny_ + clamp_y(z.imag());
  }

  const std::vector<Complex>& pts_;
  double h_, x0_, y0_;
  int nx_, ny_;
  std::vector<std::size_t> start_, order_;
};

double directed(const std::vector<Complex>& X, const std::vector<Complex>& Y,
                int threads) {
  GridIndex grid(Y);
  std::vector<double> part((X.size() + 4095) / 4096, 0.0);
  parallel_for(part.size(), threads, [&](std::size_t b) {
    std::size_t lo = b * 4096, hi = std::min(X.size(), lo + 4096);
    double m = 0.0;
    for (std::size_t i = lo; i < hi; ++i) m = std::max(m, grid.nearest(X[i]));
    part[b] = m;
  });
  return part.empty() ? 0.0 : *std::max_element(part.begin(), part.end());
}

}  // namespace

double hausdorff_distance(const std::vector<Complex>& X,
                          const std::vector<Complex>& Y, int threads) {
  if (X.empty() || Y.empty())
    throw DomainError("hausdorff_distance: point sets must be nonempty");
  return std::max(directed(X, Y, threads), directed(Y, X, threads));
}

std::vector<Complex> rescaled_window(Complex delta, double R, int depth, int threads) {
  WindowSet w = window_set(delta, R, depth, threads);
  double s = std::sqrt(std::abs(delta));
  std::vector<Complex> out;
  out.reserve(w.points.points.size());
  for (Complex z : w.points.points) out.push_back(z / s);
  return out;
}

std::vector<HausdorffReport> convergence_study(double alpha, double R,
                                               const std::vector<double>& t_schedule,
                                               int depth, double coefficient,
                                               int threads) {
  if (!(alpha > 0.0 && alpha <= kPi))
    throw DomainError("convergence_study: alpha must lie in (0, pi]");
  for (std::size_t i = 1; i < t_schedule.size(); ++i)
    if (!(t_schedule[i] < t_schedule[i - 1]))
      throw DomainError("convergence_study: t schedule must be decreasing");
  HyperbolaArc arc(alpha, R, coefficient);
  auto arc_pts = arc.sample(kArcSamples);
  std::vector<HausdorffReport> out;
  for (double t : t_schedule) {
    HausdorffReport r;
    r.delta = RayParameter::make(alpha, t).delta();
    r.t = t;
    r.R = R;
    r.depth = depth;
    WindowSet w = window_set(r.delta, R, depth, threads);
    r.warning = w.warning;
    std::vector<Complex> pts;
    double s = std::sqrt(t);
    for (Complex z : w.points.points) pts.push_back(z / s);
    r.window_points = pts.size();
    r.arc_points = arc_pts.size();
    r.d_H = pts.empty() ? INFINITY : hausdorff_distance(pts, arc_pts, threads);
    out.push_back(r);
  }
  return out;
}

BandReport band_check(Complex delta, int depth, int threads) {
  BandReport rep;
  rep.delta = delta;
  double a = std::abs(delta);
  if (!(a > 0.0 && a < kBandRegime)) {
    rep.skipped = true;
    rep.diagnostic = "band_check skipped: needs 0 < |delta| < 0.05";
    return rep;
  }
  Complex p = fixed_point(delta).p;
  double slab = std::pow(a, 15.0 / 16.0);
  double band = std::pow(a, 17.0 / 16.0);
  double re_bound = p.real() + a * a;
  PointSet s = julia_sample(delta, depth, SampleMode::full_tree, 0, 0, threads);
  rep.samples = s.points.size();
  for (Complex z : s.points) {
    if (z.real() >= p.real() - slab) {
      ++rep.right_slab;
      if (!(std::abs(z.imag() - p.imag()) < band)) ++rep.violations_right;
    }
    if (z.real() <= -p.real() + slab) {
      ++rep.left_slab;
      if (!(std::abs(z.imag() + p.imag()) < band)) ++rep.violations_left;
    }
    if (!(std::abs(z.real()) < re_bound)) ++rep.violations_real;
  }
  return rep;
}

}  // namespace juliadim
