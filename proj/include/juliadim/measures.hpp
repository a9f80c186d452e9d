#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "juliadim/preimage_tree.hpp"

namespace juliadim {

inline constexpr double kMeasureMass = 4.0;

enum class MeasureKind { conformal, invariant };

struct MeasureAtoms {
  Complex delta;
  double exponent = 1.0;
  MeasureKind kind = MeasureKind::conformal;
  int level = 0;
  std::vector<Complex> points;
  std::vector<double> weights;
  // Invariant atoms only: the density h at each point, scaled so that
  // its integral against the conformal measure is 4.
  std::vector<double> density;
  int density_iterations = 0;
  double density_change = 0.0;
  std::shared_ptr<const PreimageTree> tree;

  std::size_t size() const { return points.size(); }
  double total_mass() const;
  // Branch word of atom i (atoms are indexed like their tree level).
  std::string word(std::size_t i) const;
};

// Preimage tree for measures, rooted at the beta fixed point and keeping
// every level.
std::shared_ptr<const PreimageTree> measure_tree(Complex delta, int depth,
                                                 int threads = 0);

// Weights proportional to |(f^n)'|^(-d) at the level-n preimages. The
// exponent must be a pressure root at this depth: the increment
// log Z_n(d) - log Z_(n-1)(d) has to be small.
MeasureAtoms conformal_atoms(std::shared_ptr<const PreimageTree> tree, double d,
                             int n);
MeasureAtoms conformal_atoms(Complex delta, double d, int depth,
                             int threads = 0);

inline constexpr double kDensityTol = 1e-4;
inline constexpr int kMaxDensityIterations = 16;

// Iterates h_j = L^j(1) at the atoms for j = 0..m, where L is the transfer
// operator with weight |f'|^(-d). Each h_j is scaled so that its integral
// against the conformal atoms is 4. change[j] is the relative sup-change
// between h_(j-1) and h_j.
struct DensityIterates {
  std::vector<std::vector<double>> h;
  std::vector<double> change;
};

// Walks the 2^m preimages of every atom depth-first, so memory stays
// independent of m.
DensityIterates density_iterates(const MeasureAtoms& conformal, int m, int threads = 0);

// Invariant atoms from h_m. Fails when change[m] exceeds 1e-4.
MeasureAtoms invariant_density(const MeasureAtoms& conformal, int m, int threads = 0);
MeasureAtoms invariant_from_iterates(const MeasureAtoms& conformal,
                                     const DensityIterates& it, int m);

// Smallest m <= m_max whose change is below 1e-4.
int converged_iterations(const DensityIterates& it);
MeasureAtoms invariant_density_adaptive(const MeasureAtoms& conformal, int m_max,
                                        int threads = 0);

struct RescaledMeasure {
  MeasureAtoms base;
  double scale = 1.0;  // sqrt|delta|
  std::vector<Complex> points;
  std::vector<double> weights;
};

RescaledMeasure rescale_measure(const MeasureAtoms& atoms);

using ComplexIntegrand = std::function<double(Complex)>;

double integrate(const MeasureAtoms& atoms, const ComplexIntegrand& u,
                 int threads = 1);

// Deterministic compensated sum of weights[i] * values[i].
double weighted_sum(const std::vector<double>& weights,
                    const std::vector<double>& values, int threads = 1);

}  // namespace juliadim
