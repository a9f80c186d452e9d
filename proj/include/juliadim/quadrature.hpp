#pragma once

#include <functional>

namespace juliadim {

using RealFn = std::function<double(double)>;

// Adaptive bisection with a 7/15-point Gauss-Kronrod pair.
double integrate_adaptive(const RealFn& f, double a, double b,
                          double abs_tol = 1e-13, int max_depth = 60);

// Composite Gauss-Legendre rule with fixed panels and order.
double integrate_gauss_legendre(const RealFn& f, double a, double b,
                                int panels = 16, int order = 20);

}  // namespace juliadim
