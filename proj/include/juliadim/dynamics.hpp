#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "juliadim/numeric.hpp"

namespace juliadim {

// delta = t * exp(i alpha), alpha in (0, 2 pi), t >= 0.
struct RayParameter {
  double alpha = kPi;
  double t = 0.0;

  static RayParameter make(double alpha, double t);
  Complex delta() const;
  Complex direction() const;
};

struct FixedPointData {
  Complex p;
  Complex lambda;
};

class Ellipse {
 public:
  explicit Ellipse(double r);
  double r() const { return r_; }
  double semi_major() const { return r_ + 1.0 / r_; }
  double semi_minor() const { return r_ - 1.0 / r_; }
  bool contains(Complex z) const;

 private:
  double r_;
};

enum class Branch { plus, minus };

enum class Containment { inside_bound, escaped };

inline constexpr double kEscapeRadius = 1e8;

Complex f(Complex delta, Complex z);

// Repelling fixed point p = 1/2 + (3/2) sqrt(1 - 4 delta / 9), lambda = 2p.
FixedPointData fixed_point(Complex delta);

// The other fixed point q = 1/2 - (3/2) sqrt(1 - 4 delta / 9); q = -1 at
// delta = 0, where its preimage tree avoids the critical point.
FixedPointData beta_fixed_point(Complex delta);

struct OrbitValue {
  Complex value;
  bool escaped = false;
};

OrbitValue apply(Complex delta, Complex z, int n);

// (f^n)'(z) as the product of 2 f^k(z).
OrbitValue orbit_derivative(Complex delta, Complex z, int n);

Complex inverse_branch(Complex delta, Complex w, Branch sign);

Containment escape_test(Complex delta, Complex z);

// Lemma-style bound J within the ellipse of parameter 1 + sqrt|delta|.
Ellipse containment_ellipse(Complex delta);

// Rejects parameters where the critical orbit stays bounded for 1000
// iterates (proxy for lying outside the Mandelbrot set) or where |delta|
// is too small to resolve; delta = 0 itself is always admitted.
void require_admissible(Complex delta, const char* who);
bool critical_orbit_escapes(Complex delta, int max_iter = 1000);

inline constexpr double kMinResolvedDelta = 1e-5;

// Word over {+,-}: letter k is the sign of Re f^k(z).
std::string word_from_index(std::uint64_t index, int length);
std::uint64_t index_from_word(const std::string& word);

enum class SampleMode { full_tree, random_walk };

struct PointSet {
  std::vector<Complex> points;
  std::vector<std::string> words;
  std::vector<int> multiplicity;
};

inline constexpr int kMaxFullTreeDepth = 24;

// Preimages of p_delta. full_tree: all 2^depth nodes, exact duplicates
// merged with multiplicity. random_walk: `count` random words.
PointSet julia_sample(Complex delta, int depth, SampleMode mode,
                      std::uint64_t seed, int count = 4096, int threads = 0);

}  // namespace juliadim
