#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "toricmmp/birational.hpp"

namespace toricmmp {

enum class Outcome { MinimalModel, MoriFiberSpace, Aborted };
std::string to_string(Outcome o);

struct MMPStep {
  ToricPair before;
  std::optional<TDivisor> h;  // scaling divisor on `before` (scaling runs)
  Scalar t;                   // threshold at which the step happens (scaling runs)
  CurveClass ray;
  ContractionResult action;
  ToricPair after;            // equals `before` for the final fibering step
};

struct MMPTrace {
  ToricPair initial;
  std::optional<TDivisor> h;
  std::optional<Scalar> t0;
  std::vector<MMPStep> steps;
  Outcome outcome = Outcome::Aborted;
  std::string reason;

  const ToricPair& final_pair() const { return steps.empty() ? initial : steps.back().after; }
};

/// Ray selection for mori_mmp. Interactive calls `choose` with the candidate
/// rays and their contraction types and expects an index into them.
struct Strategy {
  enum class Kind { FirstCritical, DivisorialFirst, Random, Interactive };
  Kind kind = Kind::FirstCritical;
  std::uint64_t seed = 0;
  std::function<int(const ToricPair&, const std::vector<ContractionResult>&)> choose;

  static Strategy parse(const std::string& name, std::uint64_t seed = 0);
};
std::string to_string(Strategy::Kind k);

/// 10 * binomial(#rays, rank).
int default_step_cap(const Fan& f);

/// Contracts or flips negative extremal rays chosen by the strategy until K+Delta
/// is nef or a fibering contraction is met. Aborted(StepCap) past the cap.
MMPTrace mori_mmp(const ToricPair& p, const Strategy& strategy, int step_cap = 0);

/// Smallest t >= 0 with K+Delta+tH nef (H ample).
Scalar nef_start(const ToricPair& p, const TDivisor& h);

/// MMP with scaling of H from t0. Among critical rays the order is fibering,
/// divisorial, flipping, then the smallest wall index. Throws NotNefAtT0.
MMPTrace mmp_with_scaling(const ToricPair& p, const TDivisor& h, const Scalar& t0, int step_cap = 0);

/// Re-checks that K+Delta_i+t_i H_i is nef before and after every step and that
/// t is weakly decreasing. Returns a description of the first failure.
std::optional<std::string> verify_scaling_trace(const MMPTrace& trace);

/// At a flip, A(v) weakly increases on the valuation test sets of both sides
/// and strictly increases for v centered in either flipping locus. Returns a
/// description of the first failure; other steps pass trivially.
std::optional<std::string> check_discrepancy_monotone(const MMPStep& step);

/// Index map from the rays of the final model to the rays of the initial one.
std::vector<int> surviving_rays(const MMPTrace& trace);

/// Divisor on the initial model carried to the final model of the trace.
TDivisor transport(const MMPTrace& trace, const TDivisor& d);

struct SpecialTermination {
  int n = 0;                           // no step from n on meets S
  std::vector<bool> incident;          // per step: exceptional locus meets S
  std::vector<bool> iso_in_codim_one;  // per step: the 2-cones through S are unchanged
};

/// S is a ray index of the initial model with boundary coefficient 1.
/// Throws SNotInModel.
SpecialTermination special_termination_report(const MMPTrace& trace, int s);

struct Augmented {
  ToricPair pair;
  TDivisor delta_prime;
};

/// Raises the coefficients of the divisorial stable base locus of K+Delta to 1.
/// Throws AllBaseLocus.
Augmented useless_divisor_augment(const ToricPair& p);

/// K+Delta = sum r_i M_i + F with M_i free integral classes, r_1 <= ... <= r_k,
/// F >= 0 supported on the stable base locus.
struct Decomposition {
  std::vector<Scalar> r;
  std::vector<IntVec> mobile;
  TDivisor fixed;
  std::vector<Integer> levels;
};

/// Rational classes: Mob/Fix at m = level * 2^j, j <= 6, first free mobile
/// part. Quadratic classes: two bracketing rational approximations decomposed
/// separately. Throws DecompositionFailed.
Decomposition decompose(const ToricPair& p);

struct BendingResult {
  Decomposition decomposition;
  TDivisor delta_prime;
  std::vector<MMPTrace> stages;
  ToricPair final_pair;
  bool nef = false;
  int flips_checked = 0;  // flipping steps on which the support condition was verified
};

/// The bending pipeline: decompose, augment, scale by an ample class, then by
/// the mobile parts, and strip the useless divisors. Throws NotBig,
/// NotPseudoEffective, NotKlt, DecompositionFailed.
BendingResult bending(const ToricPair& p, int step_cap = 0);
/// bending() restricted to rational coefficients (InvalidInput otherwise).
BendingResult bending_I(const ToricPair& p, int step_cap = 0);
/// bending() for any coefficients; k >= 1 mobile parts required.
BendingResult bending_II(const ToricPair& p, int step_cap = 0);

struct MinimalModel {
  ToricPair pair;
  BendingResult run;
};
MinimalModel minimal_model(const ToricPair& p);

struct ModelEntry {
  FanPtr fan;
  ToricPair pair;
  std::vector<std::vector<Rational>> witnesses;  // points w of the cube with K+Delta_w nef here
};
struct ModelSet {
  std::vector<ModelEntry> models;
};

/// Minimal models of (X, Delta + sum w_i D_i) for w in [-eps, eps]^r, r <= 3:
/// the center plus an exact sweep of every edge of the cube. Throws
/// NotKltInCube, NotBigInCube, NotPseudoEffective.
ModelSet finiteness_explorer(const ToricPair& p, const std::vector<TDivisor>& directions, const Rational& eps);

/// Minimal models on the grid of step eps/8, deduplicated up to isomorphism.
ModelSet grid_models(const ToricPair& p, const std::vector<TDivisor>& directions, const Rational& eps);

/// Same fans up to lattice isomorphism, as multisets.
bool same_models(const ModelSet& a, const ModelSet& b);
/// Every model of a is isomorphic to one of b.
bool models_subset(const ModelSet& a, const ModelSet& b);

/// A deterministic ample class used by the explorer, the drivers and the CLI.
TDivisor default_ample(const Fan& f);

struct FiberSpace {
  Scalar c;
  MMPTrace trace;
};
/// Throws AlreadyPseudoEffective.
FiberSpace mori_fiber_space(const ToricPair& p, const TDivisor& h);

struct CanonicalRing {
  Integer k;                   // index with k(K+Delta) integral on the model
  int search_bound = 0;        // a priori bound on generator degrees
  int max_generator_degree = 0;
  int num_generators = 0;
  bool verified = false;       // generators regenerate all degrees <= 3 * search_bound
  std::vector<long long> hilbert;  // h0(j k (K+Delta)) for j = 0..20
};

/// Generators of the section ring of a nef class with integral multiple kL.
CanonicalRing section_ring(const Fan& f, const TDivisor& l);
CanonicalRing canonical_ring_fg(const ToricPair& p);

/// h0(j k L) for j = 0..degree.
std::vector<long long> hilbert_function(const Fan& f, const TDivisor& l, int degree);

struct CoxRing {
  int generators = 0;
  int grading_rank = 0;
  bool fano = false;
  std::vector<IntVec> degrees;  // class of each ray variable in an integral basis of the relations
};
CoxRing cox_ring(const Fan& f);

}  // namespace toricmmp
