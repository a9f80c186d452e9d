#include "juliadim/cylinders.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "juliadim/preimage_tree.hpp"

namespace juliadim {

const char* family_name(CylinderFamily f) {
  switch (f) {
    case CylinderFamily::plus2: return "plus2";
    case CylinderFamily::minus2: return "minus2";
    case CylinderFamily::zero_plus: return "zero_plus";
    case CylinderFamily::zero_minus: return "zero_minus";
  }
  return "?";
}

std::string cylinder_pattern(CylinderId id) {
  if (id.index < 0 || id.is_sentinel())
    throw DomainError("cylinder_pattern: index must be a finite n >= 0");
  int n = id.index;
  switch (id.family) {
    case CylinderFamily::plus2:
      return std::string(n + 1, '+') + "-";
    case CylinderFamily::minus2:
      return "-" + std::string(n, '+') + "-";
    case CylinderFamily::zero_plus:
      return n == 0 ? "++" : "+-" + std::string(n - 1, '+') + "-";
    case CylinderFamily::zero_minus:
      return n == 0 ? "-+" : "--" + std::string(n - 1, '+') + "-";
  }
  return {};
}

namespace {

void merge_duplicates(PointSet& s) {
  PointSet out;
  std::map<std::pair<double, double>, std::size_t> seen;
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    std::pair<double, double> key{s.points[i].real() + 0.0, s.points[i].imag() + 0.0};
    auto [it, fresh] = seen.emplace(key, out.points.size());
    if (fresh) {
      out.points.push_back(s.points[i]);
      out.words.push_back(s.words[i]);
      out.multiplicity.push_back(s.multiplicity[i]);
    } else {
      out.multiplicity[it->second] += s.multiplicity[i];
    }
  }
  s = std::move(out);
}

double cross(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

}  // namespace

double set_diameter(const std::vector<Complex>& pts) {
  if (pts.size() < 2) return 0.0;
  std::vector<Complex> p(pts);
  std::sort(p.begin(), p.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  std::vector<Complex> hull(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p[i]) <= 0) --k;
    hull[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], p[i]) <= 0) --k;
    hull[k++] = p[i];
  }
  hull.resize(k > 1 ? k - 1 : k);
  if (hull.size() < 2) hull = {p.front(), p.back()};
  double best = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j)
      best = std::max(best, std::abs(hull[i] - hull[j]));
  return best;
}

CylinderSample cylinder_points(Complex delta, CylinderId id, int depth,
                               int threads) {
  require_admissible(delta, "cylinder_points");
  std::string pattern = cylinder_pattern(id);
  int L = static_cast<int>(pattern.size());
  if (depth < L)
    throw DomainError("cylinder_points: depth " + std::to_string(depth) +
                      " too small for a pattern of length " + std::to_string(L));
  int sub = depth - L;
  if (sub > kMaxStoredTreeDepth)
    throw DomainError("cylinder_points: depth too large");
  TreeOptions opt;
  opt.keep_all_levels = false;
  opt.log_derivatives = false;
  opt.allow_critical = (delta == 0.0);
  opt.threads = threads;
  PreimageTree tree(delta, fixed_point(delta).p, sub, opt);
  const auto& base = tree.level(sub);

  CylinderSample s;
  s.id = id;
  s.points.points.resize(base.size());
  s.points.words.resize(base.size());
  s.points.multiplicity.assign(base.size(), 1);
  for (std::size_t i = 0; i < base.size(); ++i) {
    Complex z = base[i];
    std::string word = pattern + word_from_index(i, sub);
    for (int k = L - 1; k >= 0; --k) {
      Complex arg = z + 2.0 - delta;
      if (arg == 0.0) {
        if (delta != 0.0) throw BranchError("cylinder_points: critical value", word);
        z = 0.0;
        continue;
      }
      z = inverse_branch(delta, z, pattern[k] == '+' ? Branch::plus : Branch::minus);
    }
    s.points.points[i] = z;
    s.points.words[i] = std::move(word);
  }
  if (delta == 0.0) merge_duplicates(s.points);
  s.diam_estimate = set_diameter(s.points.points);
  s.min_abs = INFINITY;
  s.max_abs = 0.0;
  for (Complex z : s.points.points) {
    s.min_abs = std::min(s.min_abs, std::abs(z));
    s.max_abs = std::max(s.max_abs, std::abs(z));
  }
  return s;
}

WindowSet window_set(Complex delta, double R, int depth, int threads) {
  if (delta == 0.0) throw DomainError("window_set: delta must be nonzero");
  if (!(R >= 1.0)) throw DomainError("window_set: R must be >= 1");
  PointSet all = julia_sample(delta, depth, SampleMode::full_tree, 0, 0, threads);
  double bound = R * std::sqrt(std::abs(delta));
  WindowSet w;
  w.R = R;
  w.depth = depth;
  for (std::size_t i = 0; i < all.points.size(); ++i) {
    if (std::abs(all.points[i].real()) <= bound) {
      w.points.points.push_back(all.points[i]);
      w.points.words.push_back(std::move(all.words[i]));
      w.points.multiplicity.push_back(all.multiplicity[i]);
    }
  }
  if (w.points.points.size() < kSparseWindow)
    w.warning = "window_set: only " + std::to_string(w.points.points.size()) +
                " points survive; depth too shallow for this delta";
  return w;
}

std::string itinerary(Complex delta, Complex z, int length) {
  std::string s;
  s.reserve(length);
  for (int k = 0; k < length; ++k) {
    if (z.real() == 0.0)
      throw DomainError("itinerary: orbit meets the imaginary axis");
    s.push_back(z.real() > 0.0 ? '+' : '-');
    z = f(delta, z);
    if (!(std::abs(z) <= kEscapeRadius))
      throw DomainError("itinerary: orbit escapes, point not in the Julia set");
  }
  return s;
}

CylinderId cylinder_measure_index(Complex delta, Complex z,
                                  CylinderPartition partition, int max_depth) {
  Complex p = fixed_point(delta).p;
  double tol = 1e-12 * (1.0 + std::abs(p));
  bool zero = partition == CylinderPartition::zero ||
              (partition == CylinderPartition::automatic && std::abs(z.real()) < 1.0);
  if (!zero) {
    if (std::abs(z - p) <= tol) return {CylinderFamily::plus2, CylinderId::kSentinel};
    if (std::abs(z + p) <= tol) return {CylinderFamily::minus2, CylinderId::kSentinel};
  } else if (-p + 2.0 - delta != 0.0) {
    Complex b = inverse_branch(delta, -p, Branch::plus);
    if (std::abs(z - b) <= tol) return {CylinderFamily::zero_plus, CylinderId::kSentinel};
    if (std::abs(z + b) <= tol) return {CylinderFamily::zero_minus, CylinderId::kSentinel};
  }

  std::string it;
  try {
    it = itinerary(delta, z, max_depth);
  } catch (const DomainError&) {
    // Escape after a long stretch near p: use the prefix computed so far.
    it.clear();
    Complex w = z;
    for (int k = 0; k < max_depth && std::abs(w) <= kEscapeRadius && w.real() != 0.0; ++k) {
      it.push_back(w.real() > 0.0 ? '+' : '-');
      w = f(delta, w);
    }
  }
  auto first_minus_from = [&](std::size_t from) -> std::size_t {
    for (std::size_t k = from; k < it.size(); ++k)
      if (it[k] == '-') return k;
    throw DomainError("cylinder_measure_index: no cylinder found within max depth");
  };
  if (it.empty()) throw DomainError("cylinder_measure_index: empty itinerary");
  if (!zero) {
    std::size_t pos = first_minus_from(1);
    if (it[0] == '+') return {CylinderFamily::plus2, static_cast<int>(pos) - 1};
    return {CylinderFamily::minus2, static_cast<int>(pos) - 1};
  }
  if (it.size() < 2) throw DomainError("cylinder_measure_index: itinerary too short");
  CylinderFamily fam = it[0] == '+' ? CylinderFamily::zero_plus : CylinderFamily::zero_minus;
  if (it[1] == '+') return {fam, 0};
  std::size_t pos = first_minus_from(2);
  return {fam, static_cast<int>(pos) - 1};
}

}  // namespace juliadim
