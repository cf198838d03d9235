#pragma once

#include <vector>

#include "toricmmp/divisor.hpp"

namespace toricmmp {

/// The class of the invariant curve of a wall, recorded through its
/// intersection numbers with the ray divisors.
struct CurveClass {
  int wall = -1;               // representative wall (smallest index)
  std::vector<int> walls;      // every wall whose curve lies on this ray of the Mori cone
  std::vector<Rational> pairing;  // D_r . C for each ray r
};

/// Curve class of a single wall: D_r.C = (b_r / b_a) * mult(wall) / mult(cone_a).
CurveClass wall_class(const Fan& f, int wall);

Scalar intersection(const TDivisor& d, const CurveClass& c);

/// Extremal generators of the cone spanned by the wall classes, each carrying
/// all walls on its ray. Throws NotComplete, NotSimplicial.
std::vector<CurveClass> mori_cone(const Fan& f);

/// Mori cone generators with (K+Delta).C < 0 (ghosts included).
std::vector<CurveClass> negative_rays(const ToricPair& p);

bool is_nef(const Fan& f, const TDivisor& d);
bool is_ample(const Fan& f, const TDivisor& d);

struct Positivity {
  bool effective = false;
  bool nef = false;
  bool ample = false;
  bool big = false;
  bool semiample = false;
  bool pseudoeffective = false;
  bool mobile = false;
};

/// effective: every coefficient is nonnegative. mobile: pseudo-effective with
/// no divisorial stable base locus. Throws IncompleteFan, NotSimplicial.
Positivity positivity(const Fan& f, const TDivisor& d);

struct Threshold {
  Scalar t;
  std::vector<CurveClass> critical;
};

/// Smallest t in [0, t0] with K+Delta+tH nef and the generators that become
/// zero there. Throws NotNefAtT0.
Threshold nef_threshold(const ToricPair& p, const TDivisor& h, const Scalar& t0);

}  // namespace toricmmp
