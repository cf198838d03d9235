#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "toricmmp/linalg.hpp"

namespace toricmmp {

/// An integral H-polytope {x in Z^dim : a_i . x >= c_i}.
struct IntPolytope {
  int dim = 0;
  IntMat normals;
  std::vector<long long> bounds;

  void add(IntVec a, long long c) {
    normals.push_back(std::move(a));
    bounds.push_back(c);
  }
  void add_equality(const IntVec& a, long long c) {
    add(a, c);
    IntVec neg(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) neg[i] = -a[i];
    add(neg, -c);
  }
  bool contains(const IntVec& x) const {
    for (std::size_t i = 0; i < normals.size(); ++i)
      if (dot(normals[i], x) < bounds[i]) return false;
    return true;
  }
};

/// Vertices of {x in R^dim : a_i . x >= c_i} (exact, deduplicated, sorted).
/// Brute force over dim-subsets of tight constraints; fine for the small
/// systems used here. Empty when the polyhedron is empty or has no vertex.
template <class F>
std::vector<Vec<F>> vertices(int dim, const IntMat& normals, const Vec<F>& bounds);

std::vector<RatVec> vertices(const IntPolytope& p);

/// Axis-aligned integer bounding box of a bounded polytope (empty optional if
/// the real polytope is empty).
std::optional<std::pair<IntVec, IntVec>> bounding_box(const IntPolytope& p);

/// Calls visit on every lattice point (lexicographic order). The polytope
/// must be bounded.
void for_each_lattice_point(const IntPolytope& p, const std::function<void(const IntVec&)>& visit);

std::vector<IntVec> lattice_points(const IntPolytope& p);

/// Counts lattice points without materializing them: the last coordinate is
/// handled as an interval.
long long count_lattice_points(const IntPolytope& p);

}  // namespace toricmmp
