#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "toricmmp/algebra.hpp"
#include "toricmmp/suite.hpp"

using namespace toricmmp;
using namespace fixtures;

namespace {

// Brute-force Mob on a rank 2 fan: scan a box of characters.
IntVec mob_oracle(const Fan& f, const IntVec& d) {
  IntVec fix(d.size(), 1LL << 40);
  bool any = false;
  for (long long x = -40; x <= 40; ++x)
    for (long long y = -40; y <= 40; ++y) {
      bool ok = true;
      for (int r = 0; r < f.num_rays() && ok; ++r)
        if (x * f.ray(r)[0] + y * f.ray(r)[1] + d[r] < 0) ok = false;
      if (!ok) continue;
      any = true;
      for (int r = 0; r < f.num_rays(); ++r) fix[r] = std::min(fix[r], x * f.ray(r)[0] + y * f.ray(r)[1] + d[r]);
    }
  IntVec mob(d.size(), 0);
  if (!any) return mob;
  for (std::size_t r = 0; r < d.size(); ++r) mob[r] = d[r] - fix[r];
  return mob;
}

std::set<long long> numerical_oracle(const std::vector<long long>& gens, long long top) {
  std::set<long long> s{0};
  for (long long x = 1; x <= top; ++x)
    for (long long g : gens)
      if (x >= g && s.count(x - g)) s.insert(x);
  return s;
}

TDivisor one(const Scalar& x) { return TDivisor(std::vector<Scalar>{x}); }

CurveAlgebraInstance root2_instance(const Rational& b, int horizon) {
  return floor_instance(Scalar(Rational(0), Rational(1, 2), 2), Scalar(b), horizon);
}

}  // namespace

TEST_CASE("Additivity of explicit sequences") {
  AdditiveSequence lin;
  for (int m = 1; m <= 6; ++m) lin.terms.push_back(TDivisor::from_ints({m, 2 * m, 0}));
  CHECK(check_additive(lin).additive);

  AdditiveSequence bad = lin;
  bad.terms[3] = TDivisor::from_ints({3, 8, 0});
  auto rep = check_additive(bad);
  CHECK_FALSE(rep.additive);
  REQUIRE(rep.violation);
  CHECK(*rep.violation == std::pair<int, int>{1, 3});
}

TEST_CASE("Mobile parts on F1 form an additive sequence") {
  auto f = hirzebruch(1);
  for (const IntVec& d : {IntVec{1, 1, 0, 0}, IntVec{0, 1, 0, 0}, IntVec{0, 2, 1, 0}}) {
    AdditiveSequence seq = mobile_sequence(*f, d, 8);
    CHECK(check_additive(seq).additive);
    for (int m = 1; m <= 8; ++m) {
      IntVec md(d.size());
      for (std::size_t r = 0; r < d.size(); ++r) md[r] = m * d[r];
      CHECK(seq.terms[m - 1].to_ints() == mob_oracle(*f, md));
    }
  }
}

TEST_CASE("Convex limits") {
  AdditiveSequence half;
  for (int i = 1; i <= 20; ++i) half.terms.push_back(one(Scalar(i / 2)));
  auto lim = convex_limit(half, one(Scalar(1)));
  CHECK(lim.exact);
  CHECK(lim.attained_at == 2);
  CHECK(lim.lower[0] == Scalar(q(1, 2)));

  AdditiveSequence constant;
  for (int i = 1; i <= 6; ++i) constant.terms.push_back(TDivisor::from_ints({3 * i, i}));
  auto c = convex_limit(constant, TDivisor::from_ints({5, 5}));
  CHECK(c.exact);
  CHECK(c.attained_at == 1);
  CHECK(c.lower.to_ints() == IntVec{3, 1});

  AdditiveSequence squares;
  for (int i = 1; i <= 20; ++i) squares.terms.push_back(one(Scalar(i * i)));
  CHECK(code_of([&] { convex_limit(squares, one(Scalar(10))); }) == "Unbounded");
}

TEST_CASE("Saturation of curve instances") {
  auto half = floor_instance(Scalar(q(1, 2)), Scalar(q(1, 2)), 50);
  CHECK(check_additive(half).additive);
  CHECK(saturation_check(half, 50).saturated);

  auto r2 = root2_instance(q(9, 10), 50);
  CHECK(check_additive(r2).additive);
  auto rep = saturation_check(r2, 50);
  CHECK_FALSE(rep.saturated);
  REQUIRE(rep.witness);
  auto [i, j] = *rep.witness;
  // ceil(j m_i / i - 9/10) > m_j, checked over Q.
  Rational lhs = Rational(r2.m[i - 1] * j, i) - q(9, 10);
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), lhs.get_num_mpz_t(), lhs.get_den_mpz_t());
  CHECK(c > r2.m[j - 1]);

  CHECK(code_of([&] { saturation_check(half, 51); }) == "InvalidInput");
}

TEST_CASE("Rationality certificates") {
  auto half = floor_instance(Scalar(q(1, 2)), Scalar(q(1, 2)), 50);
  auto cert = rationality_certificate(half);
  CHECK(cert.rational);
  CHECK(cert.j == 2);

  auto integral = floor_instance(Scalar(3), Scalar(q(1, 2)), 5);
  auto ci = rationality_certificate(integral);
  CHECK(ci.rational);
  CHECK(ci.j == 1);

  auto r2 = root2_instance(q(9, 10), 50);
  auto w = rationality_certificate(r2);
  CHECK_FALSE(w.rational);
  CHECK(w.j == 7);
  CHECK(w.bound == 5832);
  CHECK((Scalar(w.j) * *r2.d).fractional_part() > r2.b);

  auto low = root2_instance(q(1, 2), 10);
  CHECK(rationality_certificate(low).j == 1);

  CurveAlgebraInstance unknown = half;
  unknown.d.reset();
  CHECK(code_of([&] { rationality_certificate(unknown); }) == "InvalidInput");
}

TEST_CASE("Mob saturation on F1") {
  auto f = hirzebruch(1);
  std::vector<IntVec> mobile;
  for (int i = 1; i <= 6; ++i) mobile.push_back(mobile_fixed(*f, {i, i, 0, 0}).mob);
  TDivisor fd = div({q(-1, 2), q(-1, 3), q(0), q(-1, 4)});
  CHECK(mob_saturation_divisor(*f, mobile, fd, 6).saturated);

  std::vector<IntVec> free_seq;
  for (int i = 1; i <= 6; ++i) free_seq.push_back({i, 0, 0, 0});
  CHECK(mob_saturation_divisor(*f, free_seq, TDivisor(4), 6).saturated);

  // Oracle: the same check with the brute-force mobile part.
  for (int i = 1; i <= 6; ++i)
    for (int j = 1; j <= i; ++j) {
      IntVec c(4);
      for (int r = 0; r < 4; ++r) c[r] = (Scalar(Rational(static_cast<long>(mobile[i - 1][r] * j), i)) + fd[r]).ceil().get_si();
      IntVec mob = mob_oracle(*f, c);
      for (int r = 0; r < 4; ++r) CHECK(mob[r] <= mobile[j - 1][r]);
    }

  CHECK(code_of([&] { mob_saturation_divisor(*f, mobile, div({q(-1), q(0), q(0), q(0)}), 6); }) ==
        "CeilingNegative");
}

TEST_CASE("Diophantine approximation of an irrational free class") {
  auto f = hirzebruch(1);
  const Scalar d0(Rational(0), Rational(1, 2), 2);
  TDivisor d(4);
  d[0] = d0;
  auto gap = diophantine_gap(*f, d, Scalar(q(1, 100)));
  // Oracle: the first j with j*sqrt(2)/2 just below an integer, within 1/100.
  int expect = 0;
  for (int j = 1; j < 1000 && !expect; ++j) {
    long double x = j * std::sqrt(2.0L) / 2;
    if (std::ceil(x) - x < 0.01L) expect = j;
  }
  CHECK(gap.j == expect);
  CHECK(gap.gap < Scalar(q(1, 100)));
  CHECK(gap.m[0] > 0);
  CHECK(gap.m[1] == 0);
  CHECK(gap.m[2] == 0);
  CHECK(gap.m[3] == 0);
  CHECK((Scalar(gap.j) * d0 - Scalar(gap.m[0])).sign() < 0);

  auto coarse = diophantine_gap(*f, d, Scalar(1));
  CHECK(coarse.j == 1);
  CHECK(coarse.m == IntVec{1, 0, 0, 0});

  CHECK(code_of([&] { diophantine_gap(*f, TDivisor::from_ints({1, 0, 0, 0}), Scalar(q(1, 100))); }) == "RationalD");
  TDivisor neg(4);
  neg[1] = d0;
  CHECK(code_of([&] { diophantine_gap(*f, neg, Scalar(q(1, 100))); }) == "NotSemiample");
}

TEST_CASE("Truncation of the numerical semigroup <3,5>") {
  auto s = numerical_semigroup({3, 5});
  auto oracle = numerical_oracle({3, 5}, 60);
  for (int d = 0; d <= 30; ++d) CHECK(s.piece(d).size() == (oracle.count(d) ? 1U : 0U));

  auto rep = truncation_fg(s, 2, 10);
  CHECK(rep.agree);
  CHECK(rep.full.verdict == FgVerdict::FG);
  CHECK(rep.truncated.verdict == FgVerdict::FG);
  std::vector<int> full_deg, trunc_deg;
  for (const auto& g : rep.full.generators) full_deg.push_back(g.first);
  for (const auto& g : rep.truncated.generators) trunc_deg.push_back(g.first);
  CHECK(full_deg == std::vector<int>{3, 5});
  CHECK(trunc_deg == std::vector<int>{3, 4, 5});
  CHECK(rep.module_generator_degrees == std::vector<int>{0, 3, 5});

  // Brute force: indecomposables of the even part of the oracle.
  std::vector<int> brute;
  for (long long x : oracle) {
    if (x == 0 || x % 2 || x > 20) continue;
    bool dec = false;
    for (long long y : oracle)
      if (y > 0 && y < x && y % 2 == 0 && oracle.count(x - y)) dec = true;
    if (!dec) brute.push_back(static_cast<int>(x / 2));
  }
  CHECK(brute == trunc_deg);

  auto same = truncation_fg(s, 1, 10);
  CHECK(same.agree);
  CHECK(same.module_generator_degrees == std::vector<int>{0});
}

TEST_CASE("Cone semigroups") {
  auto rat = cone_semigroup(Scalar(q(1, 3)), Scalar(q(1, 2)));
  auto cert = fg_certificate(rat, 5);
  CHECK(cert.verdict == FgVerdict::FG);
  CHECK(cert.regenerated);

  auto irr = cone_semigroup(Scalar(0), Scalar::sqrt_of(2));
  auto rep = truncation_fg(irr, 2, 6);
  CHECK(rep.full.verdict == FgVerdict::Unknown);
  CHECK(rep.truncated.verdict == FgVerdict::Unknown);
  CHECK(rep.agree);
  CHECK_FALSE(rep.full.new_generators.empty());
}

TEST_CASE("Restricted algebra of the pl flip") {
  ToricPair p = plflip_instance();
  auto m = restricted_algebra(p, 2, 4);
  CHECK(m.k == 2);
  CHECK(m.certificate.verdict == FgVerdict::FG);
  CHECK(m.full_certificate.verdict == FgVerdict::FG);
  ToricPair flipped = flip(p, contract(p, plflip_ray(p)));
  CHECK(same_fan(flipped.X(), *m.proj_fan));
  CHECK(m.t_fan->is_complete());
  CHECK(m.t_fan->rank() == 2);

  const IntVec nv = m.n.to_ints();
  REQUIRE(m.component_sizes.size() == 5);
  for (int deg = 0; deg <= 4; ++deg) {
    // Oracle: characters u with <u, e3> = -deg N_S inside P_{deg N}.
    long long count = 0;
    for (long long x = -60; x <= 60; ++x)
      for (long long y = -60; y <= 60; ++y) {
        IntVec u{x, y, -deg * nv[2]};
        bool ok = true;
        for (int r = 0; r < p.X().num_rays() && ok; ++r)
          if (dot(u, p.X().ray(r)) + deg * nv[r] < 0) ok = false;
        if (ok) ++count;
      }
    CHECK(m.component_sizes[deg] == count);
  }
  // Restriction never gains sections.
  for (int deg = 1; deg <= 4; ++deg) {
    TDivisor bound(m.t_fan->num_rays());
    for (int t = 0; t < m.t_fan->num_rays(); ++t)
      bound[t] = Scalar(Integer(m.k * deg)) * (m.theta_limit[t] - Scalar(1));
    CHECK(m.component_sizes[deg] <= h0(*m.t_fan, bound));
  }

  auto base = restricted_algebra(p, 2, 0);
  CHECK(base.component_sizes == std::vector<long long>{1});
  CHECK(base.theta.empty());

  ToricPair lower = p;
  lower.boundary[2] = Scalar(q(1, 2));
  CHECK(code_of([&] { restricted_algebra(lower, 2, 2); }) == "NotPlFlip");
}

TEST_CASE("Finite generation from saturation") {
  auto half = floor_instance(Scalar(q(1, 2)), Scalar(q(1, 2)), 50);
  auto v = fg_from_saturation_semiample(half, 50);
  CHECK(v.preconditions);
  CHECK(v.verdict == FgVerdict::FG);
  CHECK(v.stabilized_at == 2);

  CurveAlgebraInstance constant;
  constant.b = Scalar(q(1, 2));
  for (int i = 1; i <= 12; ++i) constant.m.push_back(2 * i);
  auto c = fg_from_saturation_semiample(constant, 12);
  CHECK(c.verdict == FgVerdict::FG);
  CHECK(c.stabilized_at == 1);

  auto r2 = root2_instance(q(9, 10), 50);
  auto w = fg_from_saturation_semiample(r2, 50);
  CHECK_FALSE(w.preconditions);
  CHECK(w.verdict == FgVerdict::Unknown);
}
