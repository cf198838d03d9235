#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "toricmmp/birational.hpp"

namespace toricmmp {

using Rng = std::mt19937_64;

/// Face fan of the convex hull of the given points (rank 2 or 3). The origin
/// must be interior and every facet a triangle (rank 3). Rays are the
/// primitive vectors on the points, in input order.
std::optional<Fan> face_fan(int rank, const std::vector<IntVec>& points);

/// A random complete simplicial projective fan: angular fans in rank 2,
/// face fans of random hulls in rank 3. Throws UnsupportedDimension.
Fan random_fan(Rng& rng, int rank, int max_rays);

/// An integral ample Cartier (hence free) class: an LP vertex of
/// {a : a.C >= 1 on the Mori cone}, cleared of denominators.
IntVec ample_class(const Fan& f);

/// The smallest positive integral multiple of d that is Cartier (simplicial fans).
IntVec cartier_multiple(const Fan& f, const RatVec& d);

/// ample_class scaled and perturbed by small random integers, still ample.
IntVec generic_ample(const Fan& f, Rng& rng);

/// Boundary coefficients drawn from {0, 1/4, 1/3, 1/2, 2/3, 3/4} plus one ample
/// ghost of small random weight, so the boundary is big and the pair klt.
ToricPair random_klt_pair(Rng& rng, FanPtr fan);

/// A big klt pair with K+Delta pseudo-effective (rejection sampling).
ToricPair random_effective_pair(Rng& rng, FanPtr fan);

/// Rays e1, e2, e3, e1+e2-e3 (indices 0..3) completed to a smooth projective
/// fan in which cones {0,2,3} and {1,2,3} share the wall {2,3}, plus extra
/// rays. The class of that wall is extremal with relation u0+u1-u2-u3 = 0.
FanPtr flip_instance_fan();

/// (X, S + Delta) on flip_instance_fan() with S = D_2 of coefficient 1, half of
/// an ample ghost and half of the free class 6 D_4. K+Delta is negative on the
/// flipping ray (as is S) and positive on the other extremal ray.
ToricPair plflip_instance();

/// Index of the Mori cone generator containing the wall {2,3} of the flip instance.
CurveClass plflip_ray(const ToricPair& p);

}  // namespace toricmmp
