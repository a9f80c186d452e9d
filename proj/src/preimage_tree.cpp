#include "juliadim/preimage_tree.hpp"

#include <cmath>

#include "juliadim/dynamics.hpp"

namespace juliadim {

namespace {
constexpr std::size_t kChunk = 1 << 14;
}

PreimageTree::PreimageTree(Complex delta, Complex root, int depth,
                           TreeOptions opt)
    : delta_(delta),
      root_(root),
      depth_(depth),
      threads_(resolve_threads(opt.threads)) {
  if (depth < 0 || depth > kMaxStoredTreeDepth)
    throw DomainError("preimage tree depth must lie in [0, 24]");
  first_kept_ = opt.keep_all_levels ? 0 : depth;
  points_.resize(depth + 1);
  logs_.resize(depth + 1);

  std::vector<Complex> cur{root};
  std::vector<double> cur_log{0.0};
  const double log2 = std::log(2.0);
  for (int k = 0; k < depth; ++k) {
    std::size_t half = cur.size();
    std::vector<Complex> next(2 * half);
    std::vector<double> next_log(opt.log_derivatives ? 2 * half : 0);
    std::size_t chunks = (half + kChunk - 1) / kChunk;
    parallel_for(chunks, threads_, [&](std::size_t c) {
      std::size_t lo = c * kChunk, hi = std::min(half, lo + kChunk);
      for (std::size_t i = lo; i < hi; ++i) {
        Complex arg = cur[i] + 2.0 - delta;
        Complex r;
        if (arg == 0.0) {
          if (!opt.allow_critical)
            throw BranchError("preimage tree hit the critical value",
                              word_from_index(i, k + 1));
          r = 0.0;
        } else {
          r = paper_sqrt(arg);
        }
        next[i] = r;
        next[i + half] = -r;
        if (opt.log_derivatives) {
          double l = cur_log[i] + log2 + std::log(std::abs(r));
          next_log[i] = l;
          next_log[i + half] = l;
        }
      }
    });
    if (k >= first_kept_) {
      points_[k] = std::move(cur);
      if (opt.log_derivatives) logs_[k] = std::move(cur_log);
    }
    cur = std::move(next);
    cur_log = std::move(next_log);
  }
  points_[depth] = std::move(cur);
  if (opt.log_derivatives) logs_[depth] = std::move(cur_log);
}

bool PreimageTree::has_level(int n) const {
  return n >= first_kept_ && n <= depth_;
}

const std::vector<Complex>& PreimageTree::level(int n) const {
  if (!has_level(n)) throw DomainError("preimage tree level not stored");
  return points_[n];
}

const std::vector<double>& PreimageTree::log_derivative(int n) const {
  if (!has_level(n) || logs_[n].size() != points_[n].size())
    throw DomainError("preimage tree log-derivatives not stored");
  return logs_[n];
}

}  // namespace juliadim
