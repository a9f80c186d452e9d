#include "juliadim/dynamics.hpp"

#include <cmath>
#include <map>
#include <random>

#include "juliadim/preimage_tree.hpp"

namespace juliadim {

RayParameter RayParameter::make(double alpha, double t) {
  if (!(alpha > 0.0 && alpha < 2.0 * kPi))
    throw DomainError("ray angle must lie in (0, 2 pi)");
  if (!(t >= 0.0) || !std::isfinite(t))
    throw DomainError("ray magnitude must be finite and >= 0");
  return {alpha, t};
}

Complex RayParameter::delta() const { return t * direction(); }

Complex RayParameter::direction() const {
  // Quarter turns are exact so that real and imaginary rays stay on the axes.
  if (alpha == kPi / 2) return {0.0, 1.0};
  if (alpha == kPi) return {-1.0, 0.0};
  if (alpha == 3 * kPi / 2) return {0.0, -1.0};
  return {std::cos(alpha), std::sin(alpha)};
}

Ellipse::Ellipse(double r) : r_(r) {
  if (!(r > 1.0)) throw DomainError("ellipse parameter must exceed 1");
}

bool Ellipse::contains(Complex z) const {
  double a = semi_major(), b = semi_minor();
  double x = z.real() / a, y = z.imag() / b;
  return x * x + y * y <= 1.0;
}

Complex f(Complex delta, Complex z) { return z * z - 2.0 + delta; }

static Complex fixed_point_root(Complex delta) {
  if (std::abs(delta) >= 2.25)
    throw DomainError("fixed_point: |delta| must be below 9/4");
  return paper_sqrt(1.0 - 4.0 * delta / 9.0);
}

FixedPointData fixed_point(Complex delta) {
  Complex p = 0.5 + 1.5 * fixed_point_root(delta);
  return {p, 2.0 * p};
}

FixedPointData beta_fixed_point(Complex delta) {
  Complex q = 0.5 - 1.5 * fixed_point_root(delta);
  return {q, 2.0 * q};
}

OrbitValue apply(Complex delta, Complex z, int n) {
  if (n < 0) throw DomainError("apply: n must be >= 0");
  for (int k = 0; k < n; ++k) {
    z = f(delta, z);
    if (!(std::abs(z) <= kEscapeRadius)) return {z, true};
  }
  return {z, false};
}

OrbitValue orbit_derivative(Complex delta, Complex z, int n) {
  if (n < 1) throw DomainError("orbit_derivative: n must be >= 1");
  Complex d = 1.0;
  for (int k = 0; k < n; ++k) {
    d *= 2.0 * z;
    z = f(delta, z);
    if (!(std::abs(z) <= kEscapeRadius) || !(std::abs(d) <= 1e300))
      return {d, true};
  }
  return {d, false};
}

Complex inverse_branch(Complex delta, Complex w, Branch sign) {
  Complex arg = w + 2.0 - delta;
  if (arg == 0.0)
    throw DomainError("inverse_branch: critical value, preimage is 0");
  Complex r = paper_sqrt(arg);
  return sign == Branch::plus ? r : -r;
}

Ellipse containment_ellipse(Complex delta) {
  return Ellipse(1.0 + std::sqrt(std::abs(delta)));
}

Containment escape_test(Complex delta, Complex z) {
  if (delta == 0.0) throw DomainError("escape_test: requires delta != 0");
  return containment_ellipse(delta).contains(z) ? Containment::inside_bound
                                                : Containment::escaped;
}

bool critical_orbit_escapes(Complex delta, int max_iter) {
  Ellipse e = containment_ellipse(delta);
  Complex z = 0.0;
  for (int k = 0; k < max_iter; ++k) {
    z = f(delta, z);
    if (!e.contains(z)) return true;
  }
  return false;
}

void require_admissible(Complex delta, const char* who) {
  if (delta == 0.0) return;
  double a = std::abs(delta);
  if (a < kMinResolvedDelta)
    throw DomainError(std::string(who) +
                      ": |delta| below 1e-5 needs unresolvable depth");
  if (a >= 0.25)
    throw DomainError(std::string(who) + ": |delta| outside the studied range");
  if (!critical_orbit_escapes(delta))
    throw DomainError(std::string(who) +
                      ": critical orbit bounded, parameter not admissible");
}

std::string word_from_index(std::uint64_t index, int length) {
  std::string w(static_cast<std::size_t>(length), '+');
  for (int k = 0; k < length; ++k)
    if ((index >> (length - 1 - k)) & 1u) w[k] = '-';
  return w;
}

std::uint64_t index_from_word(const std::string& word) {
  std::uint64_t i = 0;
  for (char c : word) {
    if (c != '+' && c != '-') throw DomainError("word letters must be + or -");
    i = (i << 1) | (c == '-' ? 1u : 0u);
  }
  return i;
}

PointSet julia_sample(Complex delta, int depth, SampleMode mode,
                      std::uint64_t seed, int count, int threads) {
  if (depth < 1) throw DomainError("julia_sample: depth must be >= 1");
  Complex root = fixed_point(delta).p;
  PointSet out;
  if (mode == SampleMode::full_tree) {
    if (depth > kMaxFullTreeDepth)
      throw DomainError("julia_sample: full tree depth above 24");
    TreeOptions opt;
    opt.keep_all_levels = false;
    opt.log_derivatives = false;
    opt.allow_critical = (delta == 0.0);
    opt.threads = threads;
    PreimageTree tree(delta, root, depth, opt);
    const auto& pts = tree.level(depth);
    if (delta != 0.0) {
      out.points = pts;
      out.multiplicity.assign(pts.size(), 1);
      out.words.reserve(pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i)
        out.words.push_back(word_from_index(i, depth));
      return out;
    }
    // At delta = 0 the tree passes through the critical point and
    // whole subtrees coincide; merge them.
    std::map<std::pair<double, double>, std::size_t> seen;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::pair<double, double> key{pts[i].real() + 0.0, pts[i].imag() + 0.0};
      auto [it, fresh] = seen.emplace(key, out.points.size());
      if (fresh) {
        out.points.push_back(pts[i]);
        out.words.push_back(word_from_index(i, depth));
        out.multiplicity.push_back(1);
      } else {
        ++out.multiplicity[it->second];
      }
    }
    return out;
  }
  if (count < 1) throw DomainError("julia_sample: count must be >= 1");
  std::mt19937_64 rng(seed);
  out.points.reserve(count);
  for (int s = 0; s < count; ++s) {
    std::string word(static_cast<std::size_t>(depth), '+');
    for (int k = 0; k < depth; ++k)
      if (rng() & 1u) word[k] = '-';
    Complex z = root;
    for (int k = depth - 1; k >= 0; --k) {
      Branch b = word[k] == '+' ? Branch::plus : Branch::minus;
      if (z + 2.0 - delta == 0.0) {
        if (delta != 0.0) throw BranchError("julia_sample: critical value", word);
        z = 0.0;
        continue;
      }
      z = inverse_branch(delta, z, b);
    }
    out.points.push_back(z);
    out.words.push_back(std::move(word));
    out.multiplicity.push_back(1);
  }
  return out;
}

}  // namespace juliadim
