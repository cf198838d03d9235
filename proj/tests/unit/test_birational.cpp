#include "doctest.h"
#include "fixtures.hpp"

using namespace toricmmp;
using namespace fixtures;

namespace {

// Rays e1, e2, e3, e1+e2-e3 and the relation u1 + u2 = u3 + u4.
FanPtr quadric_cone(bool diagonal_34) {
  std::vector<IntVec> rays{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}};
  std::vector<Cone> cones = diagonal_34 ? std::vector<Cone>{{0, 2, 3}, {1, 2, 3}} : std::vector<Cone>{{0, 1, 2}, {0, 1, 3}};
  return make_fan(Fan::build(3, rays, cones));
}

}  // namespace

TEST_CASE("log discrepancy of a point blowup") {
  ToricPair p = make_pair(p1xp1(), TDivisor(4));
  CHECK(log_discrepancy(p, {1, 1}) == Scalar(2));
  CHECK(classify_singularities(p) == SingularityClass::Terminal);
  ToricPair half = make_pair(p2(), div({q(1, 2), 0, q(1, 3)}));
  CHECK(is_klt(classify_singularities(half)));
  ToricPair s = make_pair(p2(), div({1, 0, 0}));
  CHECK(classify_singularities(s) == SingularityClass::Plt);
  ToricPair two = make_pair(p2(), div({1, 1, 0}));
  CHECK(classify_singularities(two) == SingularityClass::Lc);
  CHECK(code_of([&] { log_discrepancy(p, {2, 2}); }) == "InvalidValuation");
}

TEST_CASE("log discrepancy on a singular cone") {
  // Cone over (1,0), (1,2): v = (1,1) has coordinates 1/2, 1/2.
  auto f = make_fan(Fan::build(2, {{1, 0}, {1, 2}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
  ToricPair p = make_pair(f, TDivisor(4));
  CHECK(log_discrepancy(p, {1, 1}) == Scalar(1));
  CHECK(classify_singularities(p) == SingularityClass::Klt);
}

TEST_CASE("divisorial contraction of F1 gives the plane") {
  ToricPair p = make_pair(hirzebruch(1), TDivisor(4));
  CurveClass e;
  for (const auto& c : mori_cone(p.X()))
    if (c.pairing[1] < 0) e = c;
  auto res = contract(p, e);
  CHECK(res.kind == ContractionKind::Divisorial);
  REQUIRE(res.removed_ray);
  CHECK(*res.removed_ray == 1);
  CHECK(res.target->num_rays() == 3);
  CHECK(isomorphic(*res.target, *p2()));
  ToricPair q = apply_divisorial(p, res);
  CHECK(q.X().picard_rank() == p.X().picard_rank() - 1);
}

TEST_CASE("the plane fibres over a point") {
  ToricPair p = make_pair(p2(), TDivisor(3));
  auto res = contract(p, mori_cone(p.X())[0]);
  CHECK(res.kind == ContractionKind::Fibering);
  REQUIRE(res.fibration);
  CHECK(res.fibration->base_rank == 0);
}

TEST_CASE("F1 fibre class fibres over a line") {
  ToricPair p = make_pair(hirzebruch(1), TDivisor(4));
  for (const auto& c : mori_cone(p.X())) {
    auto res = contract(p, c);
    if (res.kind == ContractionKind::Fibering) CHECK(res.fibration->base_rank == 1);
  }
}

TEST_CASE("contract rejects non-negative rays") {
  Ghost g = make_ghost(*p2(), {4, 0, 0}, Scalar(1));
  ToricPair p = make_pair(p2(), TDivisor(3), {g});
  CHECK(code_of([&] { contract(p, mori_cone(p.X())[0]); }) == "NotNegative");
}

TEST_CASE("valuation test set contains sums of up to three rays") {
  auto f = quadric_cone(true);
  auto vs = valuation_test_set(*f);
  CHECK(std::find(vs.begin(), vs.end(), IntVec{1, 0, 1}) != vs.end());
  CHECK(std::find(vs.begin(), vs.end(), IntVec{2, 1, 0}) != vs.end());
}
