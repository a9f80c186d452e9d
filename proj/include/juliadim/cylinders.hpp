#pragma once

#include <climits>
#include <string>
#include <vector>

#include "juliadim/dynamics.hpp"

namespace juliadim {

enum class CylinderFamily { plus2, minus2, zero_plus, zero_minus };

const char* family_name(CylinderFamily f);

struct CylinderId {
  CylinderFamily family = CylinderFamily::plus2;
  int index = 0;

  // Index of the special points that belong to no cylinder of their
  // family: +-p for plus2/minus2 and +-b (the preimages of -p) for the
  // zero families.
  static constexpr int kSentinel = INT_MAX;
  bool is_sentinel() const { return index == kSentinel; }
  bool operator==(const CylinderId&) const = default;
};

// Itinerary prefix that defines the cylinder.
std::string cylinder_pattern(CylinderId id);

struct CylinderSample {
  CylinderId id;
  PointSet points;
  double diam_estimate = 0.0;
  double min_abs = 0.0;
  double max_abs = 0.0;
};

// Depth-`depth` preimage points of p whose word starts with the pattern.
CylinderSample cylinder_points(Complex delta, CylinderId id, int depth,
                               int threads = 0);
inline int default_cylinder_depth(CylinderId id) { return id.index + 10; }

// Exact diameter of a finite set (convex hull, then all hull pairs).
double set_diameter(const std::vector<Complex>& pts);

struct WindowSet {
  PointSet points;
  double R = 1.0;
  int depth = 0;
  std::string warning;
};

inline constexpr std::size_t kSparseWindow = 50;

// Preimage points with |Re z| <= R sqrt|delta|.
WindowSet window_set(Complex delta, double R, int depth, int threads = 0);

enum class CylinderPartition { automatic, fixed_point, zero };

// Itinerary of z: letter k is the sign of Re f^k(z).
std::string itinerary(Complex delta, Complex z, int length);

// Cylinder of z in the chosen partition, found from its forward orbit.
// automatic uses the zero families for |Re z| < 1.
CylinderId cylinder_measure_index(Complex delta, Complex z,
                                  CylinderPartition partition = CylinderPartition::automatic,
                                  int max_depth = 60);

}  // namespace juliadim
