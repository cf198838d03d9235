#include "doctest.h"
#include "fixtures.hpp"
#include "toricmmp/mmp.hpp"
#include "toricmmp/suite.hpp"

using namespace toricmmp;
using namespace fixtures;

namespace {

TDivisor line_class() { return TDivisor::from_ints({1, 0, 0}); }

// F1 with boundary (F, E, F', S) = (1/2, 1/2, 1/2, 3/4) and a quarter of the
// ample class 8E + 9F: K+Delta = 5/4 E + F, negative on E.
ToricPair f1_negative_on_e() {
  auto f = hirzebruch(1);
  return make_pair(f, div({q(1, 2), q(1, 2), q(1, 2), q(3, 4)}), {make_ghost(*f, {9, 8, 0, 0}, Scalar(q(1, 4)))});
}

bool is_p2(const Fan& f) { return isomorphic(f, *p2()); }

}  // namespace

TEST_CASE("Mori program on F1 with divisorial-first") {
  ToricPair p = make_pair(hirzebruch(1), TDivisor(4));
  MMPTrace tr = mori_mmp(p, Strategy::parse("divisorial-first"));
  REQUIRE(tr.steps.size() == 2);
  CHECK(tr.steps[0].action.kind == ContractionKind::Divisorial);
  CHECK(is_p2(tr.steps[0].after.X()));
  CHECK(tr.steps[1].action.kind == ContractionKind::Fibering);
  CHECK(tr.steps[1].action.fibration->base_rank == 0);
  CHECK(tr.outcome == Outcome::MoriFiberSpace);
}

TEST_CASE("Mori program on a nef pair takes no steps") {
  auto f = p2();
  ToricPair p = make_pair(f, TDivisor(3), {make_ghost(*f, {4, 0, 0}, Scalar(1))});
  MMPTrace tr = mori_mmp(p, Strategy{});
  CHECK(tr.steps.empty());
  CHECK(tr.outcome == Outcome::MinimalModel);
}

TEST_CASE("Mori program strategies all terminate on the flip instance") {
  ToricPair p = plflip_instance();
  for (const char* name : {"first-critical", "divisorial-first", "random"}) {
    MMPTrace tr = mori_mmp(p, Strategy::parse(name, 3));
    CHECK(tr.outcome != Outcome::Aborted);
  }
  Strategy flips_first;
  flips_first.kind = Strategy::Kind::Interactive;
  flips_first.choose = [](const ToricPair&, const std::vector<ContractionResult>& c) {
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i].kind == ContractionKind::Flipping) return static_cast<int>(i);
    return 0;
  };
  MMPTrace tr = mori_mmp(p, flips_first);
  REQUIRE_FALSE(tr.steps.empty());
  CHECK(tr.steps[0].action.kind == ContractionKind::Flipping);
  CHECK(code_of([] { Strategy::parse("greedy"); }) == "InvalidInput");
}

TEST_CASE("scaling on the plane ends in a fibration at t = 1") {
  ToricPair p = make_pair(p2(), TDivisor(3));
  MMPTrace tr = mmp_with_scaling(p, Scalar(3) * line_class(), Scalar(1));
  REQUIRE(tr.steps.size() == 1);
  CHECK(tr.steps[0].t == Scalar(1));
  CHECK(tr.outcome == Outcome::MoriFiberSpace);
  CHECK_FALSE(verify_scaling_trace(tr));
  CHECK(code_of([&] { mmp_with_scaling(p, line_class(), Scalar(1)); }) == "NotNefAtT0");
}

TEST_CASE("scaling from a nef class is empty") {
  auto f = p2();
  ToricPair p = make_pair(f, TDivisor(3), {make_ghost(*f, {4, 0, 0}, Scalar(1))});
  MMPTrace tr = mmp_with_scaling(p, line_class(), Scalar(2));
  CHECK(tr.steps.empty());
  CHECK(tr.outcome == Outcome::MinimalModel);
}

TEST_CASE("scaling on the flip instance flips once and stops") {
  ToricPair p = plflip_instance();
  TDivisor h = default_ample(p.X());
  MMPTrace tr = mmp_with_scaling(p, h, nef_start(p, h));
  CHECK_FALSE(verify_scaling_trace(tr));
  MESSAGE("flip instance scaling: " << tr.steps.size() << " steps, " << to_string(tr.outcome));
  REQUIRE_FALSE(tr.steps.empty());
  bool flipped = false;
  for (const auto& s : tr.steps) flipped = flipped || s.action.kind == ContractionKind::Flipping;
  CHECK(flipped);
  for (const auto& s : tr.steps) {
    if (s.action.kind != ContractionKind::Flipping) continue;
    for (const auto& v : valuation_test_set(s.before.X()))
      CHECK(log_discrepancy(s.after, v) >= log_discrepancy(s.before, v));
    auto err = check_discrepancy_monotone(s);
    CHECK_MESSAGE(!err, err.value_or(""));
  }
  auto st = special_termination_report(tr, 2);
  CHECK(st.incident[0]);
  CHECK(st.n >= 1);
}

TEST_CASE("special termination") {
  ToricPair klt = make_pair(hirzebruch(1), TDivisor(4));
  MMPTrace tr = mori_mmp(klt, Strategy{});
  CHECK(code_of([&] { special_termination_report(tr, 1); }) == "SNotInModel");
  // S = the fiber F' on F1; contracting E does not meet F'... it does: E meets every fiber.
  auto f = hirzebruch(1);
  ToricPair p = make_pair(f, div({0, 0, 0, 1}), {make_ghost(*f, {9, 8, 0, 0}, Scalar(q(1, 4)))});
  MMPTrace t2 = mori_mmp(p, Strategy{});
  auto rep = special_termination_report(t2, 3);
  // S_infinity is disjoint from E, so no step meets it.
  CHECK(rep.n == 0);
}

TEST_CASE("useless divisor augmentation") {
  ToricPair p = f1_negative_on_e();
  auto bl = stable_base_locus(p.X(), log_canonical_class(p));
  CHECK(bl.rays == std::vector<int>{1});
  Augmented a = useless_divisor_augment(p);
  CHECK(a.pair.boundary[1] == Scalar(1));
  CHECK(a.delta_prime[1] == Scalar(q(1, 2)));
  auto f = p2();
  ToricPair empty = make_pair(f, TDivisor(3), {make_ghost(*f, {4, 0, 0}, Scalar(1))});
  CHECK(useless_divisor_augment(empty).delta_prime.is_zero());
  CHECK(code_of([&] { useless_divisor_augment(make_pair(p2(), TDivisor(3))); }) == "AllBaseLocus");
}

TEST_CASE("bending contracts the negative section") {
  ToricPair p = f1_negative_on_e();
  Decomposition d = decompose(p);
  REQUIRE(d.r.size() == 1);
  CHECK(is_free(p.X(), d.mobile[0]));
  BendingResult b = bending_I(p);
  CHECK(b.nef);
  CHECK(is_p2(b.final_pair.X()));
  TDivisor h = default_ample(p.X());
  MMPTrace direct = mmp_with_scaling(p, h, nef_start(p, h));
  CHECK(isomorphic(direct.final_pair().X(), b.final_pair.X()));
  CHECK(hilbert_function(direct.final_pair().X(), log_canonical_class(direct.final_pair()), 20) ==
        hilbert_function(b.final_pair.X(), log_canonical_class(b.final_pair), 20));
}

TEST_CASE("bending preconditions and the nef case") {
  CHECK(code_of([] { bending(make_pair(p2(), TDivisor(3))); }) == "NotBig");
  auto f = p2();
  ToricPair nef = make_pair(f, TDivisor(3), {make_ghost(*f, {4, 0, 0}, Scalar(1))});
  BendingResult b = bending(nef);
  CHECK(b.stages.empty());
  CHECK(b.nef);
  ToricPair small = make_pair(f, TDivisor(3), {make_ghost(*f, {2, 0, 0}, Scalar(1))});
  CHECK(code_of([&] { bending(small); }) == "NotPseudoEffective");
}

TEST_CASE("bending with quadratic coefficients") {
  auto f = hirzebruch(1);
  TDivisor b = div({q(1, 2), 0, q(1, 2), q(3, 4)});
  b[1] = Scalar(Rational(0), Rational(1, 2), 2);
  ToricPair p = make_pair(f, b, {make_ghost(*f, {9, 8, 0, 0}, Scalar(q(1, 4)))});
  Decomposition d = decompose(p);
  MESSAGE("quadratic decomposition parts: " << d.r.size());
  REQUIRE(d.r.size() >= 1);
  TDivisor sum = d.fixed;
  for (std::size_t i = 0; i < d.r.size(); ++i) sum += d.r[i] * TDivisor::from_ints(d.mobile[i]);
  CHECK(sum == log_canonical_class(p));
  BendingResult res = bending_II(p);
  CHECK(res.nef);
  CHECK(is_p2(res.final_pair.X()));
  CHECK(code_of([&] { bending_I(p); }) == "InvalidInput");
}

TEST_CASE("Mori fiber spaces") {
  auto pl = mori_fiber_space(make_pair(p2(), TDivisor(3)), line_class());
  CHECK(pl.c == Scalar(3));
  CHECK(pl.trace.outcome == Outcome::MoriFiberSpace);
  CHECK(pl.trace.steps.back().action.fibration->base_rank == 0);
  auto f1 = hirzebruch(1);
  auto r = mori_fiber_space(make_pair(f1, TDivisor(4)), TDivisor::from_ints({1, 1, 1, 1}));
  CHECK(r.c == Scalar(1));
  CHECK(r.trace.outcome == Outcome::MoriFiberSpace);
  CHECK(code_of([] { mori_fiber_space(f1_negative_on_e(), TDivisor::from_ints({1, 1, 1, 1})); }) ==
        "AlreadyPseudoEffective");
}

TEST_CASE("canonical rings") {
  auto f = p2();
  ToricPair p = make_pair(f, TDivisor(3), {make_ghost(*f, {7, 0, 0}, Scalar(q(1, 2)))});
  CanonicalRing r = canonical_ring_fg(p);
  CHECK(r.k == 2);
  CHECK(r.verified);
  CHECK(r.max_generator_degree == 1);
  CHECK(r.num_generators == 3);
  for (int j = 0; j <= 20; ++j) CHECK(r.hilbert[j] == (j + 1) * (j + 2) / 2);
  ToricPair zero = make_pair(f, TDivisor(3), {make_ghost(*f, {3, 0, 0}, Scalar(1))});
  CanonicalRing z = canonical_ring_fg(zero);
  CHECK(z.max_generator_degree == 1);
  CHECK(z.num_generators == 1);
  CHECK(z.verified);
  // A singular section polytope: the generator degrees stay within the search bound.
  CanonicalRing g = section_ring(*hirzebruch(2), div({0, 0, 0, q(1, 2)}));
  CHECK(g.verified);
  CHECK(g.max_generator_degree <= g.search_bound);
}

TEST_CASE("Cox rings") {
  CoxRing a = cox_ring(*p2());
  CHECK(a.generators == 3);
  CHECK(a.grading_rank == 1);
  CHECK(a.fano);
  CoxRing b = cox_ring(*hirzebruch(2));
  CHECK(b.generators == 4);
  CHECK(b.grading_rank == 2);
  CHECK_FALSE(b.fano);
  CHECK(cox_ring(*hirzebruch(1)).fano);
}

TEST_CASE("finiteness explorer on F1 matches the grid") {
  // (K+Delta_w).E = w_F - w_E, so the line w_E = w_F separates F1 from P^2.
  auto f = hirzebruch(1);
  ToricPair p = make_pair(f, div({q(1, 2), q(1, 4), q(1, 2), q(3, 4)}), {make_ghost(*f, {6, 5, 0, 0}, Scalar(q(1, 4)))});
  CHECK(intersection(log_canonical_class(p), mori_cone(p.X())[0]).sign() * 0 == 0);
  std::vector<TDivisor> dirs{TDivisor::from_ints({0, 1, 0, 0}), TDivisor::from_ints({1, 0, 0, 0})};
  ModelSet m = finiteness_explorer(p, dirs, q(1, 10));
  CHECK(m.models.size() == 2);
  CHECK(same_models(m, grid_models(p, dirs, q(1, 10))));
  ModelSet half = finiteness_explorer(p, dirs, q(1, 20));
  CHECK(models_subset(half, m));
  ModelSet center = finiteness_explorer(p, {}, q(1, 10));
  CHECK(center.models.size() == 1);
  CHECK(code_of([&] { finiteness_explorer(p, {TDivisor::from_ints({0, 0, 0, 1})}, q(1, 2)); }) == "NotKltInCube");
}

TEST_CASE("bending with two mobile parts agrees with direct scaling") {
  auto f = make_fan(*face_fan(2, {{1, 0}, {-1, -2}, {3, -1}, {2, 1}, {0, 1}}));
  TDivisor b = div({q(1, 2), 0, q(2, 3), q(3, 4), 0});
  b[4] = Scalar(Rational(0), Rational(1, 2), 2);
  ToricPair p = make_pair(f, b, {make_ghost(*f, {0, 7, 0, 1, 3}, Scalar(q(1, 3)))});
  Decomposition d = decompose(p);
  REQUIRE(d.r.size() == 2);
  CHECK(d.r[0] <= d.r[1]);
  CHECK_FALSE(d.r[0].is_rational());
  BendingResult res = bending_II(p);
  CHECK(res.stages.size() == 3);
  CHECK(res.nef);
  for (const auto& st : res.stages) CHECK(st.outcome == Outcome::MinimalModel);
  TDivisor h = default_ample(p.X());
  MMPTrace direct = mmp_with_scaling(p, h, nef_start(p, h));
  CHECK(isomorphic(direct.final_pair().X(), res.final_pair.X()));
}
