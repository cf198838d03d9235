#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toricmmp/fan.hpp"
#include "toricmmp/polytope.hpp"
#include "toricmmp/scalar.hpp"

namespace toricmmp {

/// A torus-invariant divisor: one coefficient per ray of a fan.
struct TDivisor {
  std::vector<Scalar> coeffs;

  TDivisor() = default;
  explicit TDivisor(std::size_t n) : coeffs(n, Scalar(0)) {}
  explicit TDivisor(std::vector<Scalar> c) : coeffs(std::move(c)) {}
  static TDivisor from_ints(const IntVec& v);

  std::size_t size() const { return coeffs.size(); }
  Scalar& operator[](std::size_t i) { return coeffs[i]; }
  const Scalar& operator[](std::size_t i) const { return coeffs[i]; }

  bool is_integral() const;
  bool is_rational() const;
  bool is_zero() const;
  /// Integer coefficients; throws when some coefficient is not an integer.
  IntVec to_ints() const;

  TDivisor& operator+=(const TDivisor& o);
  TDivisor& operator-=(const TDivisor& o);
  friend TDivisor operator+(TDivisor a, const TDivisor& b) { return a += b; }
  friend TDivisor operator-(TDivisor a, const TDivisor& b) { return a -= b; }
  friend TDivisor operator*(const Scalar& s, TDivisor d);
  friend bool operator==(const TDivisor& a, const TDivisor& b) { return a.coeffs == b.coeffs; }

  std::string to_string() const;
};

/// A base point free linear system |G| on the model where it was introduced,
/// entering the pair as w times a general member. The vertices of the section
/// polytope on that model are kept so that the order of vanishing of a general
/// member along any toric valuation can be evaluated on later models.
struct Ghost {
  IntVec cls;
  Scalar weight;
  std::vector<IntVec> vertices;
};

/// A pair (X, Delta): invariant boundary plus weighted general members of
/// free linear systems.
struct ToricPair {
  FanPtr fan;
  TDivisor boundary;
  std::vector<Ghost> ghosts;

  const Fan& X() const { return *fan; }
};

/// Builds a ghost after checking that cls is base point free on f. Weight
/// must lie in [0, 1]. Throws GhostNotFree, InvalidWeight.
Ghost make_ghost(const Fan& f, const IntVec& cls, const Scalar& weight);

/// Validates coefficient ranges and sizes. Boundary coefficients in [0, 1].
ToricPair make_pair(FanPtr fan, TDivisor boundary, std::vector<Ghost> ghosts = {});

TDivisor canonical_divisor(const Fan& f);

/// K + Delta including the ghost classes (the class used by every numerical test).
TDivisor log_canonical_class(const ToricPair& p);

/// Invariant boundary plus the ghost classes.
TDivisor boundary_class(const ToricPair& p);

/// Rays with boundary coefficient exactly 1.
std::vector<int> round_down_support(const ToricPair& p);

/// Lattice polytope {m : <m,u_r> >= -floor(d_r)} of sections of the integral part.
IntPolytope section_polytope(const Fan& f, const TDivisor& d);

/// Number of lattice points of the section polytope. Throws IncompleteFan.
long long h0(const Fan& f, const TDivisor& d);

/// Coefficient-wise floor and fractional part.
TDivisor round_down(const TDivisor& d);
TDivisor fractional_part(const TDivisor& d);

/// Real section polytope {m in R^n : <m,u_r> >= -d_r} is nonempty; when it is,
/// a point of it is returned as the certificate.
std::optional<Vec<Scalar>> pseudo_effective_certificate(const Fan& f, const TDivisor& d);
bool is_pseudo_effective(const Fan& f, const TDivisor& d);
/// The real section polytope is full-dimensional.
bool is_big(const Fan& f, const TDivisor& d);

/// Every maximal cone has a character m with <m,u_r> = -d_r on its rays, and
/// these characters are integral and lie in the section polytope.
bool is_free(const Fan& f, const IntVec& d);
/// Some positive multiple is Cartier: the characters of every maximal cone are
/// integral (for d itself).
bool is_cartier(const Fan& f, const TDivisor& d);

/// Fixed part of |D| for an integral D: per ray the minimum over the lattice
/// points of P_D of <m,u_r> + d_r. Throws NoSections, IncompleteFan.
struct MobFix {
  IntVec mob;
  IntVec fix;
};
MobFix mobile_fixed(const Fan& f, const IntVec& d);

struct BaseLocus {
  bool all = false;        // no section of any tested multiple
  bool stable = true;      // false when levels m and 2m disagreed up to the cap
  std::vector<int> rays;   // divisorial components
  Integer level;           // the accepted multiple
};

/// Divisorial part of the stable base locus. Rational divisors are tested at
/// m = (lcm of coefficient denominators) * (lcm of vertex denominators of P_D)
/// and 2m, doubling up to 2^cap_exponent. Quadratic divisors use the
/// asymptotic criterion on the real polytope.
BaseLocus stable_base_locus(const Fan& f, const TDivisor& d, int cap_exponent = 6);

/// Minimum of <m,u> over the lattice points of a bounded polytope.
std::optional<long long> lattice_min(const IntPolytope& p, const IntVec& u);

/// Least common multiple of all coefficient denominators (rational divisors).
Integer denominator_lcm(const TDivisor& d);

/// Order of vanishing of a general member of a ghost along the toric valuation
/// v, evaluated on fan f (to which the ghost class has been transported).
Rational ghost_multiplicity(const Fan& f, const Ghost& g, const IntVec& v);

/// Value at v of the piecewise linear function that is linear on the cones of
/// f and takes value d_r at u_r. Throws VectorOutsideSupport, NotSimplicial.
Scalar support_value(const Fan& f, const TDivisor& d, const IntVec& v);

/// Drops the coefficient of a removed ray.
TDivisor drop_ray(const TDivisor& d, int ray);
IntVec drop_ray(const IntVec& d, int ray);

}  // namespace toricmmp
