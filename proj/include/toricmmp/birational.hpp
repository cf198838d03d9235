#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toricmmp/curves.hpp"

namespace toricmmp {

enum class ContractionKind { Fibering, Divisorial, Flipping };
std::string to_string(ContractionKind k);

struct FibrationDescriptor {
  int base_rank = 0;
  std::vector<int> fiber_rays;  // rays whose span is collapsed
};

/// Sign pattern of an extremal ray's relation and what contracting it does.
/// J+ / J- are the rays with positive / negative intersection with the ray.
struct ContractionResult {
  ContractionKind kind = ContractionKind::Fibering;
  CurveClass ray;
  std::vector<int> j_plus, j_minus;
  std::vector<Cone> links;          // the sets Z with J+ u J- u Z a merged cone
  std::vector<Cone> old_cones;      // maximal cones meeting the locus of the ray
  std::vector<Cone> new_cones;      // their replacement
  std::optional<int> removed_ray;   // divisorial
  std::optional<FibrationDescriptor> fibration;
  FanPtr target;                    // divisorial: the new model; flipping: the base with merged cones
};

/// Classifies and performs the contraction of an extremal ray R with
/// (K+Delta).R < 0. Throws NotExtremal, NotNegative, NoOtherChamber.
ContractionResult contract(const ToricPair& p, const CurveClass& r);

/// Unchecked variant used by the drivers and by tests that contract rays
/// regardless of sign.
ContractionResult classify_ray(const Fan& f, const CurveClass& r);

/// The pair on the target of a divisorial contraction.
ToricPair apply_divisorial(const ToricPair& p, const ContractionResult& c);

/// Replaces the cones of a flipping contraction by the other chamber of each
/// merged cone and verifies that K+Delta is positive on the new walls.
/// Throws NotFlipping, NoOtherChamber, SignNotReversed.
ToricPair flip(const ToricPair& p, const ContractionResult& c);

enum class SingularityClass { Terminal, Klt, Plt, Lc, NotLc };
std::string to_string(SingularityClass s);
inline bool is_klt(SingularityClass s) { return s == SingularityClass::Terminal || s == SingularityClass::Klt; }

struct LogDiscrepancyReport {
  IntVec valuation;
  Scalar value;
  SingularityClass pair_class = SingularityClass::Klt;
};

/// A(v) = psi(v) - sum of w * mult_v(general member of ghost), where psi is
/// linear on cones with psi(u_r) = 1 - delta_r. Throws OutsideSupport,
/// NotQCartier, InvalidValuation.
Scalar log_discrepancy(const ToricPair& p, const IntVec& v);
LogDiscrepancyReport log_discrepancy_report(const ToricPair& p, const IntVec& v);

/// Test valuations: all rays, sums of two rays of a common cone, and the sum
/// of the rays of each maximal cone (made primitive).
std::vector<IntVec> singularity_test_set(const Fan& f);
SingularityClass classify_singularities(const ToricPair& p);

/// Primitive vectors u_a, u_a+u_b and u_a+u_b+u_c for rays of a common cone.
std::vector<IntVec> valuation_test_set(const Fan& f);

struct PlFlipReport {
  bool is_pl = false;
  int relative_picard = 0;
  std::optional<std::pair<long long, long long>> p_q;
  std::string reason;
};

/// Checks that contracting the face spanned by the given classes is a pl
/// flipping contraction with respect to the boundary component S, and finds
/// p, q > 0 with p(K+Delta) and qS Cartier and numerically equal over the base.
/// Throws NotPlt.
PlFlipReport classify_pl_flip(const ToricPair& p, int s, const std::vector<CurveClass>& face);

}  // namespace toricmmp
