#include "juliadim/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "juliadim/numeric.hpp"

namespace juliadim {

namespace {

const double kXgk[8] = {0.991455371120812639206854697526329,
                        0.949107912342758524526189684047851,
                        0.864864423359769072789712788640926,
                        0.741531185599394439863864773280788,
                        0.586087235467691130294144845693013,
                        0.405845151377397166906606412076961,
                        0.207784955007898467600689403773245,
                        0.000000000000000000000000000000000};
const double kWgk[8] = {0.022935322010529224963732008058970,
                        0.063092092629978553290700663189204,
                        0.104790010322250183839876322541518,
                        0.140653259715525918745189590510238,
                        0.169004726639267902826583426598550,
                        0.190350578064785409913256402421014,
                        0.204432940075298892414161999234649,
                        0.209482141084727828012999174891714};
const double kWg[4] = {0.129484966168869693270611432679082,
                       0.279705391489276667901467771423780,
                       0.381830050505118944950369775488975,
                       0.417959183673469387755102040816327};

void gk15(const RealFn& f, double a, double b, double& result, double& err) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = f(c);
  double k = fc * kWgk[7];
  double g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    double x = h * kXgk[j];
    double s = f(c - x) + f(c + x);
    k += kWgk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  result = k * h;
  err = std::abs((k - g) * h);
}

void adaptive(const RealFn& f, double a, double b, double tol, int depth,
              CompensatedSum& acc) {
  double r, e;
  gk15(f, a, b, r, e);
  if (e <= tol || b - a <= 1e-15 * std::max(1.0, std::abs(a))) {
    acc.add(r);
    return;
  }
  if (depth == 0)
    throw ConvergenceError("integrate_adaptive: tolerance not reached");
  double m = 0.5 * (a + b);
  adaptive(f, a, m, 0.5 * tol, depth - 1, acc);
  adaptive(f, m, b, 0.5 * tol, depth - 1, acc);
}

struct Rule {
  std::vector<double> x, w;
};

Rule legendre_rule(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

const Rule& cached_rule(int n) {
  static std::mutex mu;
  static std::map<int, Rule> rules;
  std::lock_guard<std::mutex> lock(mu);
  auto it = rules.find(n);
  if (it == rules.end()) it = rules.emplace(n, legendre_rule(n)).first;
  return it->second;
}

}  // namespace

double integrate_adaptive(const RealFn& f, double a, double b, double abs_tol,
                          int max_depth) {
  if (a == b) return 0.0;
  if (b < a) return -integrate_adaptive(f, b, a, abs_tol, max_depth);
  CompensatedSum acc;
  adaptive(f, a, b, abs_tol, max_depth, acc);
  return acc.value();
}

double integrate_gauss_legendre(const RealFn& f, double a, double b,
                                int panels, int order) {
  if (a == b) return 0.0;
  const Rule& rule = cached_rule(order);
  double h = (b - a) / panels;
  CompensatedSum acc;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * h;
    double c = lo + 0.5 * h;
    for (int i = 0; i < order; ++i)
      acc.add(0.5 * h * rule.w[i] * f(c + 0.5 * h * rule.x[i]));
  }
  return acc.value();
}

}  // namespace juliadim
