#include "juliadim/pressure.hpp"

#include <chrono>
#include <cmath>

namespace juliadim {

namespace {

constexpr int kSplitLevels = 8;

struct DfsState {
  Complex delta;
  double tau;
  int depth;
  std::vector<CompensatedSum> sums;  // indexed by level
};

void dfs(DfsState& s, Complex z, double log_der, int level,
         std::uint64_t index) {
  Complex arg = z + 2.0 - s.delta;
  if (arg == 0.0)
    throw BranchError("pressure traversal hit the critical value",
                      word_from_index(index, level));
  Complex r = paper_sqrt(arg);
  double child_log = log_der + std::log(2.0 * std::abs(r));
  double w = std::exp(-s.tau * child_log);
  s.sums[level + 1].add(w);
  s.sums[level + 1].add(w);
  if (level + 1 == s.depth) return;
  std::uint64_t bit = std::uint64_t{1} << level;
  dfs(s, r, child_log, level + 1, index);
  dfs(s, -r, child_log, level + 1, index | bit);
}

}  // namespace

Complex default_base_point(Complex delta) {
  return beta_fixed_point(delta).p;
}

namespace {

// log(Z_k / 2^k) for k = 0..n. Dividing by 2^k is exact, so at tau = 0
// every entry is exactly 0.
std::vector<double> log_mean_sums(Complex delta, double tau, int n,
                                  const PressureOptions& opt) {
  if (n < 1 || n > kPressureDepthCap)
    throw DomainError("pressure depth must lie in [1, 26]");
  Complex base = opt.base_point.value_or(default_base_point(delta));
  int threads = resolve_threads(opt.threads);
  int split = std::min(kSplitLevels, n);

  std::vector<double> out(n + 1);
  out[0] = 0.0;
  std::vector<Complex> pts{base};
  std::vector<double> logs{0.0};
  for (int k = 0; k < split; ++k) {
    std::size_t half = pts.size();
    std::vector<Complex> np(2 * half);
    std::vector<double> nl(2 * half);
    for (std::size_t i = 0; i < half; ++i) {
      Complex arg = pts[i] + 2.0 - delta;
      if (arg == 0.0)
        throw BranchError("pressure traversal hit the critical value",
                          word_from_index(i, k + 1));
      Complex r = paper_sqrt(arg);
      double l = logs[i] + std::log(2.0 * std::abs(r));
      np[i] = r;
      np[i + half] = -r;
      nl[i] = nl[i + half] = l;
    }
    CompensatedSum s;
    for (double l : nl) s.add(std::exp(-tau * l));
    out[k + 1] = std::log(std::ldexp(s.value(), -(k + 1)));
    pts = std::move(np);
    logs = std::move(nl);
  }
  if (split == n) return out;

  std::vector<std::vector<CompensatedSum>> partial(pts.size());
  parallel_for(pts.size(), threads, [&](std::size_t i) {
    DfsState st{delta, tau, n - split, std::vector<CompensatedSum>(n - split + 1)};
    dfs(st, pts[i], logs[i], 0, 0);
    partial[i] = std::move(st.sums);
  });
  for (int k = split + 1; k <= n; ++k) {
    CompensatedSum s;
    for (const auto& p : partial) s.add(p[k - split]);
    out[k] = std::log(std::ldexp(s.value(), -k));
  }
  return out;
}

}  // namespace

std::vector<double> log_partition_sums(Complex delta, double tau, int n,
                                       const PressureOptions& opt) {
  auto out = log_mean_sums(delta, tau, n, opt);
  for (int k = 0; k <= n; ++k) out[k] += k * std::log(2.0);
  return out;
}

double pressure_at(Complex delta, double tau, int n,
                   const PressureOptions& opt) {
  require_admissible(delta, "pressure_at");
  auto sums = log_mean_sums(delta, tau, n, opt);
  return std::log(2.0) + sums[n] / n;
}

LogDerivativeLevels::LogDerivativeLevels(Complex delta, Complex base,
                                         int threads)
    : delta_(delta), threads_(resolve_threads(threads)), frontier_{base} {
  logs_.push_back({0.0});
}

void LogDerivativeLevels::grow_to(int n) {
  if (n > kCachedLevelsDepth)
    throw DomainError("cached pressure levels limited to depth 24");
  constexpr std::size_t chunk = 1 << 14;
  while (depth() < n) {
    int k = depth();
    const auto& cur_log = logs_.back();
    std::size_t half = frontier_.size();
    std::vector<Complex> next(2 * half);
    std::vector<double> next_log(2 * half);
    std::size_t chunks = (half + chunk - 1) / chunk;
    parallel_for(chunks, threads_, [&](std::size_t c) {
      std::size_t lo = c * chunk, hi = std::min(half, lo + chunk);
      for (std::size_t i = lo; i < hi; ++i) {
        Complex arg = frontier_[i] + 2.0 - delta_;
        if (arg == 0.0)
          throw BranchError("pressure traversal hit the critical value",
                            word_from_index(i, k + 1));
        Complex r = paper_sqrt(arg);
        double l = cur_log[i] + std::log(2.0 * std::abs(r));
        next[i] = r;
        next[i + half] = -r;
        next_log[i] = next_log[i + half] = l;
      }
    });
    frontier_ = std::move(next);
    logs_.push_back(std::move(next_log));
  }
}

double LogDerivativeLevels::log_mean(int n, double tau) const {
  const auto& l = logs_.at(n);
  double s = deterministic_sum(l.size(), threads_, [&](std::size_t i) {
    return std::exp(-tau * l[i]);
  });
  return std::log(std::ldexp(s, -n));
}

double LogDerivativeLevels::log_partition(int n, double tau) const {
  return log_mean(n, tau) + n * std::log(2.0);
}

PressureCurve pressure_curve(Complex delta, int n,
                             const std::vector<double>& taus,
                             const PressureOptions& opt) {
  require_admissible(delta, "pressure_curve");
  if (n < 1 || n > kPressureDepthCap)
    throw DomainError("pressure depth must lie in [1, 26]");
  PressureCurve c;
  c.delta = delta;
  c.depth = n;
  std::function<double(double)> p;
  std::optional<LogDerivativeLevels> lv;
  if (n <= kCachedLevelsDepth) {
    lv.emplace(delta, opt.base_point.value_or(default_base_point(delta)),
               opt.threads);
    lv->grow_to(n);
    p = [&](double tau) {
      return std::log(2.0) + lv->log_mean(n, tau) / n;
    };
  } else {
    p = [&](double tau) { return pressure_at(delta, tau, n, opt); };
  }
  for (double tau : taus) c.samples.emplace_back(tau, p(tau));
  double lo = p(0.5), hi = p(1.5);
  if (!(lo > 0.0 && hi < 0.0))
    throw NoBracketError("pressure_curve: P_n has no sign change on [0.5, 1.5]");
  c.root_estimate = bracketed_secant(p, 0.5, 1.5, lo, hi, 1e-14);
  return c;
}

double increment_root(const LogDerivativeLevels& levels, int n, double xtol) {
  if (n < 1 || n > levels.depth())
    throw DomainError("increment_root: level not available");
  auto g = [&](double tau) {
    return levels.log_partition(n, tau) - levels.log_partition(n - 1, tau);
  };
  double lo = g(0.5), hi = g(1.5);
  if (!(lo > 0.0 && hi < 0.0))
    throw NoBracketError("dimension: pressure has no sign change on [0.5, 1.5] at depth " +
                         std::to_string(n));
  return bracketed_secant(g, 0.5, 1.5, lo, hi, xtol);
}

double aitken(double x0, double x1, double x2) {
  double d1 = x1 - x0, d2 = x2 - x1;
  double den = d2 - d1;
  if (den == 0.0 || std::abs(den) <= 1e-3 * std::abs(d2)) return x2;
  return x2 - d2 * d2 / den;
}

namespace {

double dfs_increment_root(Complex delta, int n, const PressureOptions& opt) {
  auto g = [&](double tau) {
    auto s = log_partition_sums(delta, tau, n, opt);
    return s[n] - s[n - 1];
  };
  double lo = g(0.5), hi = g(1.5);
  if (!(lo > 0.0 && hi < 0.0))
    throw NoBracketError("dimension: pressure has no sign change on [0.5, 1.5] at depth " +
                         std::to_string(n));
  return bracketed_secant(g, 0.5, 1.5, lo, hi, 1e-14);
}

}  // namespace

DimensionEstimate dimension(Complex delta, double target_tol,
                            const DimensionOptions& opt) {
  require_admissible(delta, "dimension");
  if (!(target_tol >= kMinDimensionTol))
    throw DomainError("dimension: tolerance below 1e-12");
  if (opt.min_depth < 2 || opt.max_depth > kPressureDepthCap ||
      opt.min_depth > opt.max_depth)
    throw DomainError("dimension: bad depth schedule");
  Complex base = opt.pressure.base_point.value_or(default_base_point(delta));
  PressureOptions popt = opt.pressure;
  popt.base_point = base;

  DimensionEstimate est;
  est.delta = delta;
  LogDerivativeLevels levels(delta, base, opt.pressure.threads);
  for (int n = opt.min_depth; n <= opt.max_depth; ++n) {
    double root;
    if (n <= kCachedLevelsDepth) {
      levels.grow_to(n);
      root = increment_root(levels, n);
    } else {
      root = dfs_increment_root(delta, n, popt);
    }
    est.roots.push_back(root);
    est.depth_used = n;
    std::size_t m = est.roots.size();
    if (m >= 3)
      est.extrapolants.push_back(
          aitken(est.roots[m - 3], est.roots[m - 2], est.roots[m - 1]));
    std::size_t e = est.extrapolants.size();
    if (e >= 2) {
      est.d_value = est.extrapolants[e - 1];
      est.extrapolation_error =
          std::abs(est.extrapolants[e - 1] - est.extrapolants[e - 2]);
      if (est.extrapolation_error < target_tol) return est;
    } else {
      est.d_value = root;
      est.extrapolation_error =
          m >= 2 ? std::abs(est.roots[m - 1] - est.roots[m - 2]) : 1.0;
    }
  }
  est.depth_cap_reached = true;
  est.warning = "depth cap reached before tolerance; best estimate returned";
  return est;
}

std::vector<ScanRow> dimension_scan(const std::vector<RayParameter>& rays,
                                    double tol, const DimensionOptions& opt) {
  std::vector<ScanRow> rows;
  for (const auto& ray : rays) {
    ScanRow row;
    row.ray = ray;
    auto t0 = std::chrono::steady_clock::now();
    try {
      row.estimate = dimension(ray.delta(), tol, opt);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    row.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace juliadim
