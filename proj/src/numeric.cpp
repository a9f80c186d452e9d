#include "juliadim/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <thread>

namespace juliadim {

Complex paper_sqrt(Complex z) {
  if (z.imag() == 0.0 && z.real() < 0.0) return {0.0, std::sqrt(-z.real())};
  return std::sqrt(z);
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn) {
  int workers = std::min<std::size_t>(resolve_threads(threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void parallel_for_ranges(std::size_t count, std::size_t chunk, int threads,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  std::size_t chunks = (count + chunk - 1) / chunk;
  parallel_for(chunks, threads, [&](std::size_t c) {
    std::size_t lo = c * chunk;
    fn(lo, std::min(count, lo + chunk));
  });
}

double deterministic_sum(std::size_t n, int threads,
                         const std::function<double(std::size_t)>& term) {
  std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<CompensatedSum> partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    std::size_t lo = b * kReductionBlock;
    std::size_t hi = std::min(n, lo + kReductionBlock);
    CompensatedSum s;
    for (std::size_t i = lo; i < hi; ++i) s.add(term(i));
    partial[b] = s;
  });
  CompensatedSum total;
  for (const auto& p : partial) total.add(p);
  return total.value();
}

double deterministic_sum(std::span<const double> values, int threads) {
  return deterministic_sum(values.size(), threads,
                           [&](std::size_t i) { return values[i]; });
}

double bracketed_secant(const std::function<double(double)>& f, double a,
                        double b, double fa, double fb, double xtol,
                        int max_iter) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0))
    throw NoBracketError("bracketed_secant: no sign change");
  int side = 0;
  double c = a;
  for (int it = 0; it < max_iter; ++it) {
    c = (a * fb - b * fa) / (fb - fa);
    double fc = f(c);
    if (fc == 0.0 || std::abs(b - a) < xtol) return c;
    if ((fc > 0) == (fb > 0)) {
      b = c;
      fb = fc;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = c;
      fa = fc;
      if (side == 1) fb *= 0.5;
      side = 1;
    }
    if (std::abs(b - a) < xtol) return (fa == 0.0) ? a : c;
  }
  throw ConvergenceError("bracketed_secant: iteration limit");
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace juliadim
