#include "doctest.h"
#include "fixtures.hpp"
#include "toricmmp/io.hpp"
#include "toricmmp/suite.hpp"

using namespace toricmmp;
using namespace fixtures;

TEST_CASE("Scalars serialize exactly") {
  CHECK(io::to_json(Scalar(q(3, 4))) == "3/4");
  Scalar r(q(1, 2), q(-1, 3), 5);
  io::Json j = io::to_json(r);
  CHECK(j["root"] == 5);
  CHECK(io::scalar_from_json(j) == r);
  CHECK(io::scalar_from_json(io::Json("1/2+1/2*sqrt(2)")) == Scalar(q(1, 2), q(1, 2), 2));
  CHECK(code_of([] { io::scalar_from_json(io::Json("x")); }) == "ParseError");
}

TEST_CASE("Fans and pairs round-trip") {
  auto f = hirzebruch(2);
  io::Json fj = io::to_json(*f);
  CHECK(fj["rays"][2][1] == "2");
  CHECK(io::fan_from_json(fj) == *f);

  ToricPair p = make_pair(f, div({q(1, 2), q(0), q(1, 3), q(0)}), {make_ghost(*f, {1, 0, 0, 0}, Scalar(q(1, 4)))});
  io::Json pj = io::to_json(p);
  CHECK(pj["boundary"]["coeffs"].size() == 2);
  ToricPair back = io::pair_from_json(pj);
  CHECK(back.X() == p.X());
  CHECK(back.boundary.coeffs == p.boundary.coeffs);
  CHECK(io::to_json(back) == pj);
}

TEST_CASE("Invalid files are rejected") {
  io::Json overlap = {{"rank", 2}, {"rays", {{1, 0}, {0, 1}, {-1, -1}, {1, 1}}}, {"max_cones", {{0, 1}, {1, 2}, {2, 0}, {0, 3}}}};
  CHECK(code_of([&] { io::fan_from_json(overlap); }) == "OverlappingCones");
  io::Json mixed = io::to_json(make_pair(p2(), TDivisor(3)));
  mixed["boundary"]["coeffs"]["0"] = {{"a", "0"}, {"b", "1/4"}, {"root", 2}};
  mixed["boundary"]["coeffs"]["1"] = {{"a", "0"}, {"b", "1/4"}, {"root", 3}};
  CHECK(code_of([&] { io::pair_from_json(mixed); }) == "MixedRoot");
  io::Json missing = {{"rank", 2}};
  CHECK(code_of([&] { io::fan_from_json(missing); }) == "ParseError");
}

TEST_CASE("Traces round-trip through the parser") {
  ToricPair p = plflip_instance();
  MMPTrace tr = mmp_with_scaling(p, default_ample(p.X()), nef_start(p, default_ample(p.X())));
  io::Json j = io::to_json(tr);
  CHECK(j["steps"].size() == tr.steps.size());
  io::TraceRecord back = io::trace_from_json(io::Json::parse(j.dump(2)));
  CHECK(io::to_json(back) == j);
  CHECK(back.outcome == to_string(tr.outcome));
}

TEST_CASE("Curve instances and semigroup files") {
  auto inst = floor_instance(Scalar(q(1, 2)), Scalar(q(1, 2)), 10);
  io::Json j = io::to_json(inst);
  auto back = io::instance_from_json(j);
  CHECK(back.m == inst.m);
  CHECK(*back.d == *inst.d);
  auto s = io::semigroup_from_json({{"numerical", {3, 5}}});
  CHECK(s.piece(8).size() == 1);
  CHECK(s.piece(7).empty());
}
