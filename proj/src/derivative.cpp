#include "juliadim/derivative.hpp"

#include <cmath>
#include <sstream>

#include "juliadim/asymptotics.hpp"

namespace juliadim {

PhiDotSeries phi_dot(Complex delta, Complex z, int m, double budget) {
  if (m < 1) throw DomainError("phi_dot: m must be >= 1");
  PhiDotSeries s;
  CompensatedSum re, im;
  Complex w = z;
  Complex der = 1.0;
  for (int k = 1; k <= kPhiDotCap; ++k) {
    if (std::abs(w) < kNearZero) {
      s.near_zero = true;
      s.hitting_time = k - 1;
      break;
    }
    der *= 2.0 * w;
    w = f(delta, w);
    Complex term = -1.0 / der;
    re.add(term.real());
    im.add(term.imag());
    s.terms = k;
    s.partial_sums.emplace_back(re.value(), im.value());
    s.remainder_bound = budget / std::abs(der);
    if (k >= m && s.remainder_bound < kPhiDotTol) break;
    if (!(std::abs(w) <= kEscapeRadius)) break;
  }
  s.value = Complex(re.value(), im.value());
  return s;
}

double integrand_f1(Complex direction, Complex z, Complex phi_dot_value) {
  if (std::abs(z) < 1e-12) throw DomainError("integrand_f1: |z| below 1e-12");
  return (direction * phi_dot_value / z).real();
}

const char* method_name(DerivativeMethod m) {
  return m == DerivativeMethod::formula ? "formula" : "finite_difference";
}

DerivativeContext build_derivative_context(const RayParameter& ray,
                                           const DimensionEstimate& dim,
                                           MeasureAtoms invariant, int threads) {
  if (invariant.kind != MeasureKind::invariant)
    throw DomainError("derivative: needs invariant atoms");
  DerivativeContext ctx;
  ctx.ray = ray;
  ctx.delta = ray.delta();
  ctx.direction = ray.direction();
  ctx.dimension = dim;
  ctx.invariant = std::move(invariant);
  std::size_t n = ctx.invariant.size();
  ctx.phi_dot.resize(n);
  ctx.excluded.assign(n, 0);
  parallel_for_ranges(n, 1024, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      PhiDotSeries s = phi_dot(ctx.delta, ctx.invariant.points[i], 1);
      ctx.phi_dot[i] = s.value;
      if (s.near_zero || s.remainder_bound >= kPhiDotTol) ctx.excluded[i] = 1;
    }
  });
  CompensatedSum ex;
  for (std::size_t i = 0; i < n; ++i)
    if (ctx.excluded[i]) ex.add(ctx.invariant.weights[i]);
  ctx.excluded_mass = ex.value();
  if (ctx.excluded_mass > 1e-3 * kMeasureMass) {
    std::ostringstream os;
    os << "derivative: phi_dot failed on mass " << ctx.excluded_mass
       << " (above 0.1% of the total)";
    throw ConvergenceError(os.str());
  }
  return ctx;
}

MeasureAtoms derivative_atoms(Complex delta, double d, int level,
                              const DerivativeOptions& opt) {
  if (level < 2) throw DomainError("derivative: atom level must be >= 2");
  MeasureAtoms conf = conformal_atoms(measure_tree(delta, level, opt.threads), d, level);
  return invariant_density_adaptive(conf, opt.max_density_iterations, opt.threads);
}

double formula_value(const DerivativeContext& ctx, double* numerator,
                     double* denominator) {
  const auto& a = ctx.invariant;
  std::vector<double> f1(a.size()), lg(a.size()), w(a.weights);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ctx.excluded[i]) {
      w[i] = 0.0;
      continue;
    }
    f1[i] = integrand_f1(ctx.direction, a.points[i], ctx.phi_dot[i]);
    lg[i] = std::log(2.0 * std::abs(a.points[i]));
  }
  double num = weighted_sum(w, f1);
  double den = weighted_sum(w, lg);
  if (numerator) *numerator = num;
  if (denominator) *denominator = den;
  return -ctx.dimension.d_value * num / den;
}

namespace {

void check_ray(const RayParameter& ray) {
  if (!(ray.t > 0.0)) throw DomainError("derivative: needs t > 0");
}

}  // namespace

DerivativeEstimate derivative_formula(const RayParameter& ray, int depth, double tol,
                                      const DerivativeOptions& opt) {
  check_ray(ray);
  if (depth < 4) throw DomainError("derivative_formula: depth must be >= 4");
  Complex delta = ray.delta();
  DimensionOptions dopt;
  dopt.pressure.threads = opt.threads;
  DimensionEstimate dim = dimension(delta, tol, dopt);

  MeasureAtoms conf = conformal_atoms(measure_tree(delta, depth, opt.threads), dim.d_value, depth);
  DensityIterates it = density_iterates(conf, opt.max_density_iterations, opt.threads);
  int m = converged_iterations(it);
  if (m < 0) {
    std::ostringstream os;
    os << "derivative_formula: density sup-change " << it.change.back()
       << " above 1e-4 after " << opt.max_density_iterations << " iterations";
    throw ConvergenceError(os.str());
  }

  DerivativeEstimate e;
  e.ray = ray;
  e.method = DerivativeMethod::formula;
  e.d = dim.d_value;
  e.d_error = dim.extrapolation_error;
  e.depth = depth;
  e.density_iterations = m;

  DerivativeContext ctx =
      build_derivative_context(ray, dim, invariant_from_iterates(conf, it, m), opt.threads);
  e.value = formula_value(ctx, &e.numerator, &e.denominator);
  e.excluded_mass = ctx.excluded_mass;

  // Discretization error: coarser atoms and fewer density iterations.
  MeasureAtoms coarse =
      conformal_atoms(measure_tree(delta, depth - 2, opt.threads), dim.d_value, depth - 2);
  DensityIterates coarse_it = density_iterates(coarse, m, opt.threads);
  double shallow = formula_value(build_derivative_context(
      ray, dim, invariant_from_iterates(coarse, coarse_it, m), opt.threads));
  double fewer = formula_value(build_derivative_context(
      ray, dim, invariant_from_iterates(conf, it, std::max(1, m - 2)), opt.threads));
  e.error = std::abs(e.value - shallow) + std::abs(e.value - fewer) +
            std::abs(e.value) * e.d_error / e.d;
  e.scaled = std::sqrt(ray.t) * e.value;
  e.scaled_exponent = std::pow(ray.t, 1.0 - e.d / 2.0) * e.value;
  std::ostringstream os;
  os << "atoms at level " << depth << ", density iterations " << m
     << "; variants: depth-2 " << shallow << ", m-2 " << fewer;
  e.notes = os.str();
  return e;
}

DerivativeEstimate derivative_fd(const RayParameter& ray, double h, double tol,
                                 const DerivativeOptions& opt) {
  check_ray(ray);
  if (!(h > 0.0 && ray.t - h > 0.0))
    throw DomainError("derivative_fd: needs 0 < h < t");
  DimensionOptions dopt;
  dopt.pressure.threads = opt.threads;
  double dtol = std::max(kMinDimensionTol, tol / 10.0);
  auto dim_at = [&](double t) {
    return dimension(RayParameter::make(ray.alpha, t).delta(), dtol, dopt);
  };
  auto plus = dim_at(ray.t + h), minus = dim_at(ray.t - h);
  auto plus2 = dim_at(ray.t + h / 2), minus2 = dim_at(ray.t - h / 2);

  DerivativeEstimate e;
  e.ray = ray;
  e.method = DerivativeMethod::finite_difference;
  e.d = 0.5 * (plus.d_value + minus.d_value);
  e.d_error = std::max(plus.extrapolation_error, minus.extrapolation_error);
  e.depth = std::max(plus.depth_used, minus.depth_used);
  double full = (plus.d_value - minus.d_value) / (2.0 * h);
  double half = (plus2.d_value - minus2.d_value) / h;
  double noise = (plus.extrapolation_error + minus.extrapolation_error) / (2.0 * h);
  double noise_half = (plus2.extrapolation_error + minus2.extrapolation_error) / h;
  e.value = full;
  // Central differences are second order, so |D(h) - d'| ~ (4/3)|D(h) - D(h/2)|.
  e.error = noise + noise_half + (4.0 / 3.0) * std::abs(full - half);
  e.noise_dominated = std::abs(plus.d_value - minus.d_value) <
                      20.0 * (plus.extrapolation_error + minus.extrapolation_error);
  e.scaled = std::sqrt(ray.t) * e.value;
  e.scaled_exponent = std::pow(ray.t, 1.0 - e.d / 2.0) * e.value;
  std::ostringstream os;
  os << "h " << h << "; half-step estimate " << half;
  e.notes = os.str();
  return e;
}

KeyIntegralReport key_integral_check(const DerivativeContext& ctx, double R) {
  if (!(R >= 1.0)) throw DomainError("key_integral_check: R must be >= 1");
  KeyIntegralReport r;
  r.ray = ctx.ray;
  r.R = R;
  r.depth = ctx.invariant.level;
  r.d = ctx.dimension.d_value;
  const auto& a = ctx.invariant;
  double bound = R * std::sqrt(ctx.ray.t);
  std::vector<double> w(a.size(), 0.0), key(a.size(), 0.0), phi(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Complex z = a.points[i];
    if (std::abs(z.real()) > bound || ctx.excluded[i]) continue;
    w[i] = a.weights[i];
    ++r.window_atoms;
    key[i] = (-ctx.direction / (z * z)).real();
    phi[i] = integrand_f1(ctx.direction, z, ctx.phi_dot[i]);
  }
  double scale = std::pow(ctx.ray.t, 1.0 - r.d / 2.0);
  r.window_mass = deterministic_sum(std::span<const double>(w));
  r.scaled_integral = scale * weighted_sum(w, key);
  r.scaled_phi_integral = scale * weighted_sum(w, phi);
  r.target = (2.0 / kPi) * key_integral(ctx.ray.alpha, R).value;
  r.phi_target = r.target / 3.0;
  r.gap = std::abs(r.scaled_integral - r.target) / std::abs(r.target);
  r.phi_gap = std::abs(r.scaled_phi_integral - r.phi_target) / std::abs(r.phi_target);
  if (r.window_atoms < kSparseWindowAtoms)
    r.warning = "key_integral_check: sparse window (" + std::to_string(r.window_atoms) +
                " atoms)";
  return r;
}

KeyIntegralReport key_integral_check(const RayParameter& ray, double R, int depth,
                                     const DerivativeOptions& opt) {
  check_ray(ray);
  DimensionOptions dopt;
  dopt.pressure.threads = opt.threads;
  DimensionEstimate dim = dimension(ray.delta(), 1e-8, dopt);
  return key_integral_check(
      build_derivative_context(ray, dim, derivative_atoms(ray.delta(), dim.d_value, depth, opt),
                               opt.threads),
      R);
}

double scaled_tail_integral(const DerivativeContext& ctx, double R) {
  const auto& a = ctx.invariant;
  double bound = R * std::sqrt(ctx.ray.t);
  std::vector<double> w(a.size(), 0.0), val(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Complex z = a.points[i];
    if (std::abs(z.real()) <= bound || ctx.excluded[i]) continue;
    w[i] = a.weights[i];
    val[i] = std::abs(ctx.phi_dot[i] / z);
  }
  return std::pow(ctx.ray.t, 1.0 - ctx.dimension.d_value / 2.0) * weighted_sum(w, val);
}

}  // namespace juliadim
