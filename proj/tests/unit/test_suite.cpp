#include "doctest.h"
#include "fixtures.hpp"
#include "toricmmp/suite.hpp"

using namespace toricmmp;
using namespace fixtures;

TEST_CASE("face fan of the octahedron is P1^3") {
  std::vector<IntVec> pts{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  auto f = face_fan(3, pts);
  REQUIRE(f);
  CHECK(f->max_cones().size() == 8);
  CHECK(f->flags().smooth);
  CHECK(f->is_complete());
}

TEST_CASE("face fan rejects non-simplicial hulls and exterior origins") {
  std::vector<IntVec> cube;
  for (int a : {-1, 1})
    for (int b : {-1, 1})
      for (int c : {-1, 1}) cube.push_back({a, b, c});
  CHECK_FALSE(face_fan(3, cube));
  CHECK_FALSE(face_fan(2, {{1, 0}, {1, 1}, {0, 1}}));
  CHECK(face_fan(2, {{1, 0}, {0, 1}, {-1, -1}}));
}

TEST_CASE("random fans are complete simplicial and carry ample classes") {
  Rng rng(7);
  for (int rank : {2, 3})
    for (int i = 0; i < 10; ++i) {
      Fan f = random_fan(rng, rank, rank == 2 ? 7 : 9);
      CHECK(f.is_complete());
      CHECK(f.is_simplicial());
      IntVec a = ample_class(f);
      CHECK(is_ample(f, TDivisor::from_ints(a)));
      CHECK(is_free(f, a));
      IntVec h = generic_ample(f, rng);
      CHECK(is_ample(f, TDivisor::from_ints(h)));
    }
  CHECK(code_of([&] { random_fan(rng, 5, 8); }) == "UnsupportedDimension");
}

TEST_CASE("random pairs are klt with big boundary") {
  Rng rng(11);
  for (int i = 0; i < 10; ++i) {
    auto f = make_fan(random_fan(rng, 2, 6));
    ToricPair p = random_effective_pair(rng, f);
    CHECK(is_klt(classify_singularities(p)));
    CHECK(is_big(p.X(), boundary_class(p)));
    CHECK(is_pseudo_effective(p.X(), log_canonical_class(p)));
  }
}

TEST_CASE("flip instance") {
  auto f = flip_instance_fan();
  CHECK(f->ray(0) == IntVec{1, 0, 0});
  CHECK(f->ray(1) == IntVec{0, 1, 0});
  CHECK(f->ray(2) == IntVec{0, 0, 1});
  CHECK(f->ray(3) == IntVec{1, 1, -1});
  CHECK(f->flags().smooth);
  ToricPair p = plflip_instance();
  CurveClass r = plflip_ray(p);
  CHECK(r.pairing[0] == 1);
  CHECK(r.pairing[1] == 1);
  CHECK(r.pairing[2] == -1);
  CHECK(r.pairing[3] == -1);
  CHECK(intersection(log_canonical_class(p), r).sign() < 0);
  CHECK(classify_singularities(p) == SingularityClass::Plt);
  auto c = contract(p, r);
  CHECK(c.kind == ContractionKind::Flipping);
  ToricPair q = flip(p, c);
  CHECK(q.X().has_cone({0, 1, 2}));
  CHECK(q.X().has_cone({0, 1, 3}));
  CHECK_FALSE(q.X().has_cone({0, 2, 3}));
  MESSAGE("flip instance rays: " << f->num_rays());
}
