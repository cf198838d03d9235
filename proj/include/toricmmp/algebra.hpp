#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toricmmp/birational.hpp"

namespace toricmmp {

/// Divisors B_1, ..., B_h on a fixed fan (terms[i-1] = B_i).
struct AdditiveSequence {
  std::vector<TDivisor> terms;
  int horizon() const { return static_cast<int>(terms.size()); }
};

struct AdditivityReport {
  bool additive = true;
  std::optional<std::pair<int, int>> violation;  // (i, j) with B_i + B_j not <= B_{i+j}
};

/// Exhaustive check of B_i + B_j <= B_{i+j} for i + j <= horizon.
AdditivityReport check_additive(const AdditiveSequence& seq);

/// B_m = Mob(mD) for an integral D, m = 1..horizon.
AdditiveSequence mobile_sequence(const Fan& f, const IntVec& d, int horizon);

struct ConvexLimit {
  bool exact = false;  // the supremum of B_m/m is attained and stable over the window
  int attained_at = 0;
  TDivisor lower;      // coefficient-wise max of B_m/m over the window
  TDivisor upper;      // the given bound (or lower when exact)
};

/// Coefficient-wise supremum of B_m/m. Exact when the maximum is attained in
/// the first half of the window and never exceeded afterwards. Throws Unbounded
/// when some B_m/m exceeds the bound.
ConvexLimit convex_limit(const AdditiveSequence& seq, const TDivisor& bound);

/// N_i = m_i * P on a curve germ: m_i + m_j <= m_{i+j}, d_i = m_i / i.
struct CurveAlgebraInstance {
  std::vector<Integer> m;  // m[i-1] = m_i
  Scalar b;
  std::optional<Scalar> d;

  int horizon() const { return static_cast<int>(m.size()); }
  Rational d_at(int i) const { return Rational(m[i - 1], i); }
};

/// m_i = floor(i d).
CurveAlgebraInstance floor_instance(const Scalar& d, const Scalar& b, int horizon);

/// Superadditivity of the multiplicities (curve model of check_additive).
AdditivityReport check_additive(const CurveAlgebraInstance& inst);

struct SaturationReport {
  bool saturated = true;
  std::optional<std::pair<int, int>> witness;  // (i, j) with ceil(j d_i - b) > j d_j
};

/// ceil(j d_i - b) <= j d_j for all window >= i >= j > 0.
SaturationReport saturation_check(const CurveAlgebraInstance& inst, int window);

struct RationalityCertificate {
  bool rational = false;
  Scalar d;
  int j = 0;            // rational: d = d_j with j d integral; irrational: <j d> > b
  Integer bound;        // search bound used in the irrational case
};

/// Throws BoundExceeded (with the continued fraction state) or InvalidInput
/// when the limit is unknown.
RationalityCertificate rationality_certificate(const CurveAlgebraInstance& inst);

/// 4 * prod (a_i + 1) over the partial quotients needed to reach a convergent
/// denominator above 2 / (1 - b), plus two more.
Integer witness_bound(const Scalar& d, const Scalar& b);

/// Mob ceil(j D_i + F) <= j D_j for window >= i >= j > 0 with D_i = M_i / i.
/// Throws CeilingNegative when ceil(F) has a negative coefficient.
struct MobSaturationReport {
  bool saturated = true;
  std::optional<std::pair<int, int>> witness;
};
MobSaturationReport mob_saturation_divisor(const Fan& f, const std::vector<IntVec>& mobile, const TDivisor& fdiv,
                                           int window);

struct DiophantineGap {
  IntVec m;
  int j = 0;
  Scalar gap;  // sup norm of jD - M
};

/// Free integral M and j with |jD - M|_sup < eps and jD - M not effective.
/// Throws RationalD, NotSemiample, BoundExceeded.
DiophantineGap diophantine_gap(const Fan& f, const TDivisor& d, const Scalar& eps, int max_j = 1000000);

/// A graded semigroup given degree by degree: piece(d) lists the elements of degree d.
struct GradedSemigroup {
  std::function<std::vector<IntVec>(int)> piece;
  std::string description;
  /// Analytic information: an irrational slope makes fg verdicts Unknown.
  bool irrational_slope = false;
};

GradedSemigroup numerical_semigroup(const std::vector<long long>& generators);
/// {(d, x) : alpha d <= x <= beta d}.
GradedSemigroup cone_semigroup(const Scalar& alpha, const Scalar& beta);
/// Characters of H^0(X, dN): the lattice points of P_{dN}.
GradedSemigroup section_semigroup(FanPtr f, const IntVec& n);
/// Degrees divisible by k, regraded by d / k.
GradedSemigroup truncation(const GradedSemigroup& s, int k);

enum class FgVerdict { FG, Unknown };
std::string to_string(FgVerdict v);

struct FgCertificate {
  FgVerdict verdict = FgVerdict::Unknown;
  int bound = 0;
  std::vector<std::pair<int, IntVec>> generators;  // indecomposables of degree <= bound
  std::vector<int> new_generators;                 // per degree 1..3*bound: indecomposables found
  bool regenerated = false;                        // generators give every element up to 3*bound
};

/// Indecomposables up to the bound and regeneration up to three times it.
FgCertificate fg_certificate(const GradedSemigroup& s, int bound);

struct TruncationReport {
  FgCertificate full;
  FgCertificate truncated;
  bool agree = false;
  /// Elements of the full algebra not in R_(k)^+ R, up to the bound: module generators of R over R_(k).
  std::vector<int> module_generator_degrees;
};
TruncationReport truncation_fg(const GradedSemigroup& s, int k, int degree_bound);

/// The restricted algebra of a pl flip on its boundary component S, computed
/// on the projective model N = k(K+Delta) + cA with A nef and zero exactly on
/// the flipping ray.
struct AdjointAlgebraModel {
  Integer k;
  long long c = 0;
  IntVec a;
  TDivisor n;
  CurveClass ray;
  FanPtr t_fan;                             // the divisor S as a toric variety
  std::vector<int> t_rays;                  // ray of X behind each ray of T
  std::vector<long long> component_sizes;   // m = 0..m_max
  std::vector<std::optional<TDivisor>> theta;  // Theta_m on T, m = 1..m_max
  TDivisor theta_limit;
  FgCertificate certificate;
  FgCertificate full_certificate;           // the section ring of N on X
  FanPtr proj_fan;                          // normal fan of P_N: the flipped side
};

/// Throws NotPlFlip.
AdjointAlgebraModel restricted_algebra(const ToricPair& p, int s, int m_max);

struct SaturationVerdict {
  bool preconditions = false;  // saturated and rational within the window
  FgVerdict verdict = FgVerdict::Unknown;
  std::optional<Scalar> d;
  int stabilized_at = 0;
  FgCertificate certificate;
};

/// The curve algebra {(i, x) : 0 <= x <= m_i}: fg when saturated with a rational
/// limit attained in the window.
SaturationVerdict fg_from_saturation_semiample(const CurveAlgebraInstance& inst, int window);

}  // namespace toricmmp
