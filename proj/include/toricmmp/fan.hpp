#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "toricmmp/linalg.hpp"

namespace toricmmp {

/// A cone of a fan, stored as sorted ray indices.
using Cone = std::vector<int>;

struct FanFlags {
  bool smooth = false;
  bool simplicial = false;
  bool complete = false;
};

/// An interior codimension-one cone of a simplicial fan and its linear
/// relation. The relation is primitive, supported on the wall rays and the two
/// off-wall rays, and positive on the off-wall rays.
struct Wall {
  Cone cone;
  std::array<int, 2> adjacent{};  // indices into Fan::max_cones()
  std::array<int, 2> off_wall{};  // ray of each adjacent cone not on the wall
  IntVec relation;                // one entry per ray of the fan
};

/// A rational polyhedral fan with primitive ray generators.
///
/// Values are immutable after build(); derived data (walls, inverse cone
/// matrices) is computed on first use and shared between copies.
class Fan {
 public:
  /// Validates and normalizes. Non-primitive rays are divided by their gcd and
  /// reported through `warnings` (code NonPrimitiveRay). Throws Error with
  /// codes InvalidRay, DuplicateRay, InvalidCone, DanglingRay, OverlappingCones.
  static Fan build(int rank, std::vector<IntVec> rays, std::vector<Cone> max_cones,
                   std::vector<std::string>* warnings = nullptr);

  int rank() const { return rank_; }
  int num_rays() const { return static_cast<int>(rays_.size()); }
  const std::vector<IntVec>& rays() const { return rays_; }
  const IntVec& ray(int i) const { return rays_[i]; }
  const std::vector<Cone>& max_cones() const { return cones_; }
  const FanFlags& flags() const { return flags_; }
  bool is_simplicial() const { return flags_.simplicial; }
  bool is_complete() const { return flags_.complete; }
  /// #rays - rank; the Picard number for complete simplicial fans.
  int picard_rank() const { return num_rays() - rank_; }

  /// Interior walls in a deterministic order. Throws NotSimplicial.
  const std::vector<Wall>& walls() const;

  std::optional<int> ray_index(const IntVec& v) const;

  /// A maximal cone containing v and the coordinates of v in its rays
  /// (simplicial fans). The first containing cone in storage order wins.
  struct Location {
    int cone = -1;
    RatVec coords;
  };
  std::optional<Location> locate(const IntVec& v) const;

  /// True when the ray set c spans a cone of the fan (a face of a maximal cone).
  bool has_cone(const Cone& c) const;

  /// Inverse of the ray matrix of a full-dimensional simplicial maximal cone:
  /// row j gives the linear form that is 1 on ray j of the cone and 0 on the others.
  const RatMat& cone_inverse(int cone) const;

  /// |det| of a full-dimensional simplicial cone's ray matrix.
  const Integer& cone_multiplicity(int cone) const;

  /// Same rays in the same order and the same set of maximal cones.
  friend bool operator==(const Fan& a, const Fan& b);

  /// Order-independent description: sorted cones written with ray vectors.
  std::string canonical_string() const;
  std::uint64_t canonical_hash() const;

  /// Memoized derived data attached to this fan value under a key.
  std::shared_ptr<const void> memo(const std::string& key,
                                   const std::function<std::shared_ptr<const void>()>& make) const;

 private:
  struct Cache;
  Fan() = default;
  void compute_flags();
  void ensure_simplicial_data() const;

  int rank_ = 0;
  std::vector<IntVec> rays_;
  std::vector<Cone> cones_;
  FanFlags flags_;
  std::shared_ptr<Cache> cache_;
};

using FanPtr = std::shared_ptr<const Fan>;

inline FanPtr make_fan(Fan f) { return std::make_shared<const Fan>(std::move(f)); }

/// Star subdivision at the primitive vector v (simplicial fans). Identity when
/// v is already a ray. The new ray is appended. Throws VectorOutsideSupport.
Fan star_subdivision(const Fan& f, const IntVec& v);

/// A GL(n, Z) matrix A with A * rays(a) = rays(b) as sets and mapping cones to
/// cones, if one exists.
std::optional<IntMat> find_isomorphism(const Fan& a, const Fan& b);
inline bool isomorphic(const Fan& a, const Fan& b) { return find_isomorphism(a, b).has_value(); }

/// True when the fans have the same ray vectors and the same cones, ignoring order.
bool same_fan(const Fan& a, const Fan& b);

/// Facets of a (possibly non-simplicial) full-dimensional cone given by its
/// rays: each facet as the subset of ray indices lying on it.
std::vector<Cone> cone_facets(const Fan& f, const Cone& c);

}  // namespace toricmmp
