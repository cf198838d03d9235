#include "doctest.h"
#include "toricmmp/error.hpp"
#include "toricmmp/fan.hpp"

using namespace toricmmp;

namespace {

Fan p2() { return Fan::build(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}}); }
Fan f1() { return Fan::build(2, {{1, 0}, {0, 1}, {-1, 1}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

std::string code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST_CASE("projective plane fan") {
  Fan f = p2();
  CHECK(f.flags().smooth);
  CHECK(f.flags().simplicial);
  CHECK(f.flags().complete);
  CHECK(f.picard_rank() == 1);
  CHECK(f.walls().size() == 3);
}

TEST_CASE("incomplete fan") {
  Fan f = Fan::build(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {0, 2}});
  CHECK_FALSE(f.flags().complete);
  CHECK(f.walls().size() == 1);
}

TEST_CASE("Hirzebruch surface F1") {
  Fan f = f1();
  CHECK(f.flags().smooth);
  CHECK(f.flags().complete);
  CHECK(f.walls().size() == 4);
}

TEST_CASE("classification flags") {
  Fan sq = Fan::build(3, {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}, {{0, 1, 2, 3}});
  CHECK_FALSE(sq.flags().simplicial);
  CHECK(code_of([&] { sq.walls(); }) == "NotSimplicial");
  Fan w = Fan::build(2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(w.flags().simplicial);
  CHECK(w.flags().complete);
  CHECK_FALSE(w.flags().smooth);
}

TEST_CASE("build rejects bad input") {
  std::vector<std::string> warn;
  Fan f = Fan::build(2, {{2, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}}, &warn);
  CHECK(warn.size() == 1);
  CHECK(f.ray(0) == IntVec{1, 0});
  CHECK(code_of([] { Fan::build(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 1}, {0, 2}}); }) == "OverlappingCones");
  CHECK(code_of([] { Fan::build(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 1}}); }) == "DanglingRay");
  CHECK(code_of([] { Fan::build(2, {{1, 0}, {1, 0}}, {{0, 1}}); }) == "DuplicateRay");
  CHECK(code_of([] { Fan::build(2, {{0, 0}}, {{0}}); }) == "InvalidRay");
  CHECK(code_of([] { Fan::build(2, {{1, 0}, {-1, 0}}, {{0, 1}}); }) == "InvalidCone");
}

TEST_CASE("wall relations are positive on the off-wall rays") {
  Fan f = f1();
  for (const auto& w : f.walls()) {
    CHECK(w.relation[w.off_wall[0]] > 0);
    CHECK(w.relation[w.off_wall[1]] > 0);
    IntVec sum(2, 0);
    for (int r = 0; r < f.num_rays(); ++r)
      for (int i = 0; i < 2; ++i) sum[i] += w.relation[r] * f.ray(r)[i];
    CHECK(is_zero_vec(sum));
  }
}

TEST_CASE("star subdivision of the plane at (1,1) gives F1") {
  Fan b = star_subdivision(p2(), {1, 1});
  CHECK(b.num_rays() == 4);
  CHECK(b.flags().complete);
  CHECK(b.flags().smooth);
  CHECK(isomorphic(b, f1()));
  CHECK_FALSE(isomorphic(b, p2()));
  Fan same = star_subdivision(p2(), {0, 1});
  CHECK(same == p2());
  Fan open = Fan::build(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {0, 2}});
  CHECK(code_of([&] { star_subdivision(open, {-1, 1}); }) == "VectorOutsideSupport");
}

TEST_CASE("P1xP1 is not isomorphic to F1 but F1 variants are") {
  Fan p1p1 = Fan::build(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  Fan f1b = Fan::build(2, {{1, 0}, {0, 1}, {-1, -1}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK_FALSE(isomorphic(p1p1, f1()));
  CHECK(isomorphic(f1b, f1()));
  CHECK(p1p1.canonical_hash() != f1().canonical_hash());
}
