#include "juliadim/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "juliadim/dynamics.hpp"
#include "juliadim/pressure.hpp"

namespace juliadim {

double MeasureAtoms::total_mass() const {
  return deterministic_sum(std::span<const double>(weights));
}

std::string MeasureAtoms::word(std::size_t i) const {
  return word_from_index(i, level);
}

std::shared_ptr<const PreimageTree> measure_tree(Complex delta, int depth,
                                                 int threads) {
  require_admissible(delta, "measure_tree");
  TreeOptions opt;
  opt.threads = threads;
  return std::make_shared<const PreimageTree>(delta, default_base_point(delta),
                                              depth, opt);
}

namespace {

double log_sum_exp(const std::vector<double>& logs, double d, int threads) {
  double lmin = *std::min_element(logs.begin(), logs.end());
  double s = deterministic_sum(logs.size(), threads, [&](std::size_t i) {
    return std::exp(-d * (logs[i] - lmin));
  });
  return std::log(s) - d * lmin;
}

constexpr double kExponentMismatch = 0.02;

}  // namespace

MeasureAtoms conformal_atoms(std::shared_ptr<const PreimageTree> tree, double d,
                             int n) {
  if (!tree) throw DomainError("conformal_atoms: missing tree");
  if (n < 1 || n > tree->depth())
    throw DomainError("conformal_atoms: level outside the tree");
  if (!(d > 0.5 && d < 1.5))
    throw DomainError("conformal_atoms: exponent outside (0.5, 1.5)");
  int threads = tree->threads();
  const auto& logs = tree->log_derivative(n);
  double inc = log_sum_exp(logs, d, threads) -
               log_sum_exp(tree->log_derivative(n - 1), d, threads);
  if (std::abs(inc) > kExponentMismatch)
    throw DomainError("conformal_atoms: exponent is not a pressure root at depth " +
                      std::to_string(n));

  MeasureAtoms a;
  a.delta = tree->delta();
  a.exponent = d;
  a.kind = MeasureKind::conformal;
  a.level = n;
  a.tree = tree;
  a.points = tree->level(n);
  double lmin = *std::min_element(logs.begin(), logs.end());
  a.weights.resize(logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i)
    a.weights[i] = std::exp(-d * (logs[i] - lmin));
  double total = deterministic_sum(std::span<const double>(a.weights), threads);
  for (double& w : a.weights) w *= kMeasureMass / total;
  return a;
}

MeasureAtoms conformal_atoms(Complex delta, double d, int depth, int threads) {
  return conformal_atoms(measure_tree(delta, depth, threads), d, depth);
}

namespace {

// s = z + 2 and c = 2 - z are carried along so that preimages close to the
// critical point keep their relative accuracy: 2 - sqrt(a) is evaluated as
// (c + delta) / (2 + sqrt(a)).
void descend(Complex delta, double d, Complex s, Complex c, double log_der, int level,
             int m, CompensatedSum* sums) {
  Complex arg = s - delta;
  if (arg == 0.0) throw BranchError("density: preimage walk hit the critical value", "");
  Complex r = paper_sqrt(arg);
  Complex far = 2.0 + r;
  Complex near = (c + delta) / far;
  double l = log_der + std::log(2.0 * std::abs(r));
  double w = std::exp(-d * l);
  sums[level + 1].add(w);
  sums[level + 1].add(w);
  if (level + 1 == m) return;
  descend(delta, d, far, near, l, level + 1, m, sums);
  descend(delta, d, near, far, l, level + 1, m, sums);
}

}  // namespace

DensityIterates density_iterates(const MeasureAtoms& conformal, int m, int threads) {
  if (m < 1 || m > kMaxDensityIterations)
    throw DomainError("density_iterates: m must lie in [1, 16]");
  if (conformal.kind != MeasureKind::conformal)
    throw DomainError("density_iterates: needs conformal atoms");
  std::size_t count = conformal.size();
  double d = conformal.exponent;
  DensityIterates it;
  it.h.assign(m + 1, std::vector<double>(count, 1.0));
  it.change.assign(m + 1, 0.0);
  parallel_for_ranges(count, 64, threads, [&](std::size_t lo, std::size_t hi) {
    std::vector<CompensatedSum> sums(m + 1);
    for (std::size_t i = lo; i < hi; ++i) {
      std::fill(sums.begin(), sums.end(), CompensatedSum{});
      Complex z = conformal.points[i];
      descend(conformal.delta, d, z + 2.0, 2.0 - z, 0.0, 0, m, sums.data());
      for (int j = 1; j <= m; ++j) it.h[j][i] = sums[j].value();
    }
  });
  for (int j = 0; j <= m; ++j) {
    double norm = weighted_sum(conformal.weights, it.h[j]) / kMeasureMass;
    for (double& v : it.h[j]) v /= norm;
    if (j == 0) {
      it.change[0] = INFINITY;
      continue;
    }
    double c = 0.0;
    for (std::size_t i = 0; i < count; ++i)
      c = std::max(c, std::abs(it.h[j][i] / it.h[j - 1][i] - 1.0));
    it.change[j] = c;
  }
  return it;
}

MeasureAtoms invariant_from_iterates(const MeasureAtoms& conformal,
                                     const DensityIterates& it, int m) {
  if (m < 1 || m >= static_cast<int>(it.h.size()))
    throw DomainError("invariant_from_iterates: iteration not available");
  MeasureAtoms a = conformal;
  a.kind = MeasureKind::invariant;
  a.density = it.h[m];
  a.density_iterations = m;
  a.density_change = it.change[m];
  for (std::size_t i = 0; i < a.size(); ++i) a.weights[i] = conformal.weights[i] * a.density[i];
  double total = deterministic_sum(std::span<const double>(a.weights));
  for (double& w : a.weights) w *= kMeasureMass / total;
  return a;
}

MeasureAtoms invariant_density(const MeasureAtoms& conformal, int m, int threads) {
  DensityIterates it = density_iterates(conformal, m, threads);
  if (it.change[m] > kDensityTol) {
    std::ostringstream os;
    os << "invariant_density: relative sup-change " << it.change[m]
       << " above 1e-4 at m = " << m;
    throw ConvergenceError(os.str());
  }
  return invariant_from_iterates(conformal, it, m);
}

int converged_iterations(const DensityIterates& it) {
  for (std::size_t j = 1; j < it.change.size(); ++j)
    if (it.change[j] <= kDensityTol) return static_cast<int>(j);
  return -1;
}

MeasureAtoms invariant_density_adaptive(const MeasureAtoms& conformal, int m_max,
                                        int threads) {
  DensityIterates it = density_iterates(conformal, m_max, threads);
  int m = converged_iterations(it);
  if (m < 0) {
    std::ostringstream os;
    os << "invariant_density: relative sup-change " << it.change[m_max]
       << " above 1e-4 at m = " << m_max;
    throw ConvergenceError(os.str());
  }
  return invariant_from_iterates(conformal, it, m);
}

RescaledMeasure rescale_measure(const MeasureAtoms& atoms) {
  if (atoms.delta == 0.0) throw DomainError("rescale_measure: delta must be nonzero");
  RescaledMeasure r;
  r.base = atoms;
  r.scale = std::sqrt(std::abs(atoms.delta));
  double mass_factor = std::pow(std::abs(atoms.delta), -atoms.exponent / 2.0);
  r.points.reserve(atoms.size());
  r.weights.reserve(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    r.points.push_back(atoms.points[i] / r.scale);
    r.weights.push_back(atoms.weights[i] * mass_factor);
  }
  return r;
}

double weighted_sum(const std::vector<double>& weights,
                    const std::vector<double>& values, int threads) {
  return deterministic_sum(weights.size(), threads, [&](std::size_t i) {
    return weights[i] * values[i];
  });
}

double integrate(const MeasureAtoms& atoms, const ComplexIntegrand& u,
                 int threads) {
  std::vector<double> values(atoms.size());
  parallel_for_ranges(atoms.size(), 4096, threads,
                      [&](std::size_t lo, std::size_t hi) {
                        for (std::size_t i = lo; i < hi; ++i)
                          values[i] = atoms.weights[i] == 0.0 ? 0.0 : u(atoms.points[i]);
                      });
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      std::ostringstream os;
      os << "integrate: non-finite integrand at atom " << i << " (z = "
         << atoms.points[i].real() << (atoms.points[i].imag() < 0 ? "" : "+")
         << atoms.points[i].imag() << "i)";
      throw DomainError(os.str());
    }
  }
  return weighted_sum(atoms.weights, values, threads);
}

}  // namespace juliadim
