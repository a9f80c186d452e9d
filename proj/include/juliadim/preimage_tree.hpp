#pragma once

#include <vector>

#include "juliadim/numeric.hpp"

namespace juliadim {

struct TreeOptions {
  bool keep_all_levels = true;
  bool log_derivatives = true;
  // Allow an exact hit of the critical value (only meaningful at delta = 0);
  // both children become 0.
  bool allow_critical = false;
  int threads = 0;
};

inline constexpr int kMaxStoredTreeDepth = 24;

// Breadth-first preimage tree of a root point. Level n holds 2^n points;
// node i at level n has word word_from_index(i, n), its parent is
// i mod 2^(n-1), and its descendants at level N are i + j 2^n.
class PreimageTree {
 public:
  PreimageTree(Complex delta, Complex root, int depth, TreeOptions opt = {});

  Complex delta() const { return delta_; }
  Complex root() const { return root_; }
  int depth() const { return depth_; }
  int threads() const { return threads_; }
  bool has_level(int n) const;

  const std::vector<Complex>& level(int n) const;
  // log |(f^n)'(z_w)| for the level-n points.
  const std::vector<double>& log_derivative(int n) const;

 private:
  Complex delta_;
  Complex root_;
  int depth_;
  int threads_;
  int first_kept_;
  std::vector<std::vector<Complex>> points_;
  std::vector<std::vector<double>> logs_;
};

}  // namespace juliadim
