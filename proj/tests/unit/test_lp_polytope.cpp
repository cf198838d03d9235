#include "doctest.h"
#include "toricmmp/lp.hpp"
#include "toricmmp/polytope.hpp"

using namespace toricmmp;

TEST_CASE("lp maximizes over a triangle") {
  lp::Problem<Rational> p;
  p.num_vars = 2;
  p.add({Rational(1), Rational(0)}, lp::Relation::GreaterEq, Rational(0));
  p.add({Rational(0), Rational(1)}, lp::Relation::GreaterEq, Rational(0));
  p.add({Rational(1), Rational(1)}, lp::Relation::LessEq, Rational(3, 2));
  p.objective = {Rational(2), Rational(1)};
  auto r = lp::solve(p);
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.value == Rational(3));
}

TEST_CASE("lp detects infeasible and unbounded problems") {
  lp::Problem<Rational> p;
  p.num_vars = 1;
  p.add({Rational(1)}, lp::Relation::GreaterEq, Rational(2));
  p.add({Rational(1)}, lp::Relation::LessEq, Rational(1));
  CHECK(lp::solve(p).status == lp::Status::Infeasible);
  lp::Problem<Rational> q;
  q.num_vars = 1;
  q.add({Rational(1)}, lp::Relation::GreaterEq, Rational(2));
  q.objective = {Rational(1)};
  CHECK(lp::solve(q).status == lp::Status::Unbounded);
}

TEST_CASE("lp over a quadratic field") {
  lp::Problem<Scalar> p;
  p.num_vars = 1;
  p.add({Scalar(1)}, lp::Relation::LessEq, Scalar::sqrt_of(2));
  p.objective = {Scalar(1)};
  auto r = lp::solve(p);
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.value == Scalar::sqrt_of(2));
}

TEST_CASE("lattice points agree with a box scan") {
  IntPolytope p;
  p.dim = 3;
  p.add({1, 0, 0}, -2);
  p.add({0, 1, 0}, -1);
  p.add({0, 0, 1}, 0);
  p.add({-1, -2, -3}, -5);
  p.add({2, -1, 1}, -4);
  long long brute = 0;
  for (long long x = -10; x <= 10; ++x)
    for (long long y = -10; y <= 10; ++y)
      for (long long z = -10; z <= 10; ++z)
        if (p.contains({x, y, z})) ++brute;
  CHECK(count_lattice_points(p) == brute);
  CHECK(static_cast<long long>(lattice_points(p).size()) == brute);
}

TEST_CASE("empty polytope has no lattice points") {
  IntPolytope p;
  p.dim = 2;
  p.add({1, 0}, 1);
  p.add({-1, 0}, 0);
  p.add({0, 1}, 0);
  p.add({0, -1}, 0);
  CHECK(count_lattice_points(p) == 0);
}
