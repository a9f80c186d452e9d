#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace juliadim {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the operation's domain (bad parameter, radius, depth...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An inverse branch met the critical value; word names the tree node.
class BranchError : public Error {
 public:
  BranchError(const std::string& what, std::string word)
      : Error(what + " at word '" + word + "'"), word_(std::move(word)) {}
  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

class NoBracketError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Square root with Re > 0, and Im > 0 on the negative real axis.
Complex paper_sqrt(Complex z);

// Kahan-Babuska (Neumaier) running sum.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  void add(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Block size for deterministic reductions. Results never depend on the
// number of threads, only on this constant.
inline constexpr std::size_t kReductionBlock = 4096;

int resolve_threads(int requested);

// Runs fn(i) for i in [0, count) on up to `threads` workers. Callers write
// into per-index slots, so scheduling order cannot leak into results.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn);

// Runs fn(lo, hi) over consecutive ranges of `chunk` indices.
void parallel_for_ranges(std::size_t count, std::size_t chunk, int threads,
                         const std::function<void(std::size_t, std::size_t)>& fn);

// Compensated sum of term(i), i in [0, n), reduced in fixed blocks.
double deterministic_sum(std::size_t n, int threads,
                         const std::function<double(std::size_t)>& term);

double deterministic_sum(std::span<const double> values, int threads = 1);

// Illinois-modified regula falsi on a sign-changing bracket.
double bracketed_secant(const std::function<double(double)>& f, double a,
                        double b, double fa, double fb, double xtol,
                        int max_iter = 100);

std::uint64_t fnv1a(std::string_view bytes,
                    std::uint64_t seed = 14695981039346656037ull);

// Shortest round-trip decimal for a double.
std::string format_double(double x);

}  // namespace juliadim
