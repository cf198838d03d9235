#include "toricmmp/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "toricmmp/error.hpp"
#include "toricmmp/lp.hpp"
#include "toricmmp/suite.hpp"

namespace toricmmp {

namespace {

bool leq(const TDivisor& a, const TDivisor& b) {
  for (std::size_t r = 0; r < a.size(); ++r)
    if (a[r] > b[r]) return false;
  return true;
}

IntVec scaled(const IntVec& v, long long m) {
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = m * v[i];
  return r;
}

IntVec minus(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

std::string cf_state(const Scalar& d) {
  std::ostringstream os;
  os << "[";
  auto cf = continued_fraction(d, 12);
  for (std::size_t i = 0; i < cf.size(); ++i) os << (i ? (i == 1 ? "; " : ", ") : "") << cf[i].get_str();
  os << "]";
  return os.str();
}

// Memoized pieces so repeated queries of a degree are cheap.
GradedSemigroup memoized(std::function<std::vector<IntVec>(int)> raw, std::string description, bool irrational) {
  auto cache = std::make_shared<std::map<int, std::vector<IntVec>>>();
  GradedSemigroup s;
  s.piece = [cache, raw = std::move(raw)](int d) {
    auto it = cache->find(d);
    if (it != cache->end()) return it->second;
    auto v = raw(d);
    std::sort(v.begin(), v.end());
    cache->emplace(d, v);
    return v;
  };
  s.description = std::move(description);
  s.irrational_slope = irrational;
  return s;
}

}  // namespace

AdditivityReport check_additive(const AdditiveSequence& seq) {
  AdditivityReport rep;
  const int h = seq.horizon();
  for (int i = 1; i <= h; ++i)
    for (int j = i; i + j <= h; ++j) {
      TDivisor sum = seq.terms[i - 1];
      sum += seq.terms[j - 1];
      if (!leq(sum, seq.terms[i + j - 1])) {
        rep.additive = false;
        rep.violation = {i, j};
        return rep;
      }
    }
  return rep;
}

AdditiveSequence mobile_sequence(const Fan& f, const IntVec& d, int horizon) {
  AdditiveSequence seq;
  for (int m = 1; m <= horizon; ++m) seq.terms.push_back(TDivisor::from_ints(mobile_fixed(f, scaled(d, m)).mob));
  return seq;
}

ConvexLimit convex_limit(const AdditiveSequence& seq, const TDivisor& bound) {
  const int h = seq.horizon();
  if (h == 0) fail("InvalidInput", ErrorKind::Input, "empty sequence");
  ConvexLimit out;
  out.lower = TDivisor(bound.size());
  for (int m = 1; m <= h; ++m) {
    TDivisor q = Scalar(Rational(1, m)) * seq.terms[m - 1];
    for (std::size_t r = 0; r < q.size(); ++r) {
      if (q[r] > bound[r])
        fail("Unbounded", ErrorKind::Precondition,
             "B_" + std::to_string(m) + "/" + std::to_string(m) + " exceeds the bound on ray " + std::to_string(r));
      if (m == 1 || q[r] > out.lower[r]) out.lower[r] = q[r];
    }
  }
  for (int m = 1; m <= h; ++m) {
    TDivisor q = Scalar(Rational(1, m)) * seq.terms[m - 1];
    if (q.coeffs == out.lower.coeffs) {
      out.attained_at = m;
      break;
    }
  }
  out.exact = out.attained_at > 0 && 2 * out.attained_at <= h;
  out.upper = out.exact ? out.lower : bound;
  return out;
}

CurveAlgebraInstance floor_instance(const Scalar& d, const Scalar& b, int horizon) {
  CurveAlgebraInstance inst;
  inst.b = b;
  inst.d = d;
  for (int i = 1; i <= horizon; ++i) inst.m.push_back((Scalar(i) * d).floor());
  return inst;
}

AdditivityReport check_additive(const CurveAlgebraInstance& inst) {
  AdditivityReport rep;
  const int h = inst.horizon();
  for (int i = 1; i <= h; ++i)
    for (int j = i; i + j <= h; ++j)
      if (inst.m[i - 1] + inst.m[j - 1] > inst.m[i + j - 1]) {
        rep.additive = false;
        rep.violation = {i, j};
        return rep;
      }
  return rep;
}

SaturationReport saturation_check(const CurveAlgebraInstance& inst, int window) {
  if (window > inst.horizon()) fail("InvalidInput", ErrorKind::Input, "window exceeds the horizon");
  SaturationReport rep;
  for (int i = 1; i <= window; ++i)
    for (int j = 1; j <= i; ++j) {
      Scalar lhs = Scalar(Rational(inst.m[i - 1] * j, i)) - inst.b;
      if (lhs.ceil() > inst.m[j - 1]) {
        rep.saturated = false;
        rep.witness = {i, j};
        return rep;
      }
    }
  return rep;
}

Integer witness_bound(const Scalar& d, const Scalar& b) {
  if (b >= Scalar(1)) fail("InvalidInput", ErrorKind::Input, "b must be below 1");
  const Scalar target = Scalar(2) / (Scalar(1) - b);
  auto cf = continued_fraction(d, 64);
  Integer q_prev = 0, q = 1;
  std::size_t needed = cf.size();
  for (std::size_t i = 1; i < cf.size(); ++i) {
    Integer next = cf[i] * q + q_prev;
    q_prev = q;
    q = next;
    if (Scalar(q) > target) {
      needed = i;
      break;
    }
  }
  Integer prod = 4;
  for (std::size_t i = 1; i <= std::min(needed + 2, cf.size() - 1); ++i) prod *= cf[i] + 1;
  return prod;
}

RationalityCertificate rationality_certificate(const CurveAlgebraInstance& inst) {
  if (!inst.d) fail("InvalidInput", ErrorKind::Input, "the limit d is not given");
  const Scalar& d = *inst.d;
  RationalityCertificate out;
  out.d = d;
  if (d.is_rational()) {
    Integer j = d.rational_part().get_den();
    if (j > inst.horizon())
      fail("BoundExceeded", ErrorKind::Cap, "the denominator of d exceeds the horizon");
    int ji = static_cast<int>(j.get_si());
    if (Rational(inst.m[ji - 1], ji) != d.rational_part())
      fail("BoundExceeded", ErrorKind::Cap, "d_j differs from d at the denominator j = " + std::to_string(ji));
    out.rational = true;
    out.j = ji;
    out.bound = j;
    return out;
  }
  out.bound = witness_bound(d, inst.b);
  if (!out.bound.fits_slong_p() || out.bound > 100000000)
    fail("BoundExceeded", ErrorKind::Cap, "search bound too large; continued fraction " + cf_state(d));
  const long bound = out.bound.get_si();
  for (long j = 1; j <= bound; ++j)
    if ((Scalar(j) * d).fractional_part() > inst.b) {
      out.j = static_cast<int>(j);
      return out;
    }
  fail("BoundExceeded", ErrorKind::Cap,
       "no j <= " + out.bound.get_str() + " with <jd> > b; continued fraction " + cf_state(d));
}

MobSaturationReport mob_saturation_divisor(const Fan& f, const std::vector<IntVec>& mobile, const TDivisor& fdiv,
                                           int window) {
  for (const auto& c : fdiv.coeffs)
    if (c.ceil() < 0) fail("CeilingNegative", ErrorKind::Precondition, "ceil(F) has a negative coefficient");
  if (window > static_cast<int>(mobile.size())) fail("InvalidInput", ErrorKind::Input, "window exceeds the sequence");
  MobSaturationReport rep;
  for (int i = 1; i <= window; ++i)
    for (int j = 1; j <= i; ++j) {
      IntVec ceil(f.num_rays());
      for (int r = 0; r < f.num_rays(); ++r)
        ceil[r] = (Scalar(Rational(static_cast<long>(mobile[i - 1][r] * j), i)) + fdiv[r]).ceil().get_si();
      IntVec mob;
      try {
        mob = mobile_fixed(f, ceil).mob;
      } catch (const Error& e) {
        if (e.code() != "NoSections") throw;
        continue;
      }
      for (int r = 0; r < f.num_rays(); ++r)
        if (mob[r] > mobile[j - 1][r]) {
          rep.saturated = false;
          rep.witness = {i, j};
          return rep;
        }
    }
  return rep;
}

DiophantineGap diophantine_gap(const Fan& f, const TDivisor& d, const Scalar& eps, int max_j) {
  if (d.is_rational()) fail("RationalD", ErrorKind::Precondition, "D is a Q-divisor");
  if (eps.sign() <= 0) fail("InvalidInput", ErrorKind::Input, "eps must be positive");
  if (!is_nef(f, d)) fail("NotSemiample", ErrorKind::Precondition, "D is not nef");
  const int n = f.num_rays();
  std::vector<double> approx(n);
  for (int r = 0; r < n; ++r) approx[r] = d[r].to_double();
  const double eps_d = eps.to_double() + 1e-9;
  for (int j = 1; j <= max_j; ++j) {
    bool near = true;
    for (int r = 0; r < n && near; ++r) {
      double x = j * approx[r];
      double fr = x - std::floor(x);
      if (std::min(fr, 1 - fr) > eps_d) near = false;
    }
    if (!near) continue;
    std::vector<std::vector<long long>> options(n);
    std::vector<Scalar> jd(n);
    bool ok = true;
    for (int r = 0; r < n && ok; ++r) {
      jd[r] = Scalar(j) * d[r];
      Integer lo = jd[r].floor(), hi = jd[r].ceil();
      if (lo == hi) {
        options[r].push_back(lo.get_si());
        continue;
      }
      if (jd[r] - Scalar(lo) < eps) options[r].push_back(lo.get_si());
      if (Scalar(hi) - jd[r] < eps) options[r].push_back(hi.get_si());
      if (options[r].empty()) ok = false;
    }
    if (!ok) continue;
    std::vector<std::size_t> pick(n, 0);
    while (true) {
      IntVec m(n);
      bool negative = false;
      Scalar gap(0);
      for (int r = 0; r < n; ++r) {
        m[r] = options[r][pick[r]];
        Scalar diff = jd[r] - Scalar(m[r]);
        if (diff.sign() < 0) negative = true;
        if (diff.abs() > gap) gap = diff.abs();
      }
      if (negative && is_free(f, m)) return {m, j, gap};
      int r = n - 1;
      while (r >= 0 && pick[r] + 1 == options[r].size()) pick[r--] = 0;
      if (r < 0) break;
      ++pick[r];
    }
  }
  fail("BoundExceeded", ErrorKind::Cap, "no approximation found for j <= " + std::to_string(max_j));
}

GradedSemigroup numerical_semigroup(const std::vector<long long>& generators) {
  auto member = std::make_shared<std::vector<bool>>(1, true);
  auto raw = [member, generators](int d) -> std::vector<IntVec> {
    if (d < 0) return {};
    while (static_cast<int>(member->size()) <= d) {
      const long long x = static_cast<long long>(member->size());
      bool in = false;
      for (long long g : generators)
        if (g > 0 && g <= x && (*member)[x - g]) in = true;
      member->push_back(in);
    }
    if ((*member)[d]) return {IntVec{}};
    return {};
  };
  std::string desc = "<";
  for (std::size_t i = 0; i < generators.size(); ++i) desc += (i ? "," : "") + std::to_string(generators[i]);
  return memoized(raw, desc + ">", false);
}

GradedSemigroup cone_semigroup(const Scalar& alpha, const Scalar& beta) {
  if (alpha > beta) fail("InvalidInput", ErrorKind::Input, "alpha exceeds beta");
  auto raw = [alpha, beta](int d) {
    std::vector<IntVec> out;
    Integer lo = (Scalar(d) * alpha).ceil(), hi = (Scalar(d) * beta).floor();
    for (Integer x = lo; x <= hi; ++x) out.push_back({x.get_si()});
    return out;
  };
  return memoized(raw, "cone[" + alpha.to_string() + ", " + beta.to_string() + "]",
                  !alpha.is_rational() || !beta.is_rational());
}

GradedSemigroup section_semigroup(FanPtr f, const IntVec& n) {
  auto raw = [f, n](int d) { return lattice_points(section_polytope(*f, TDivisor::from_ints(scaled(n, d)))); };
  return memoized(raw, "sections", false);
}

GradedSemigroup truncation(const GradedSemigroup& s, int k) {
  if (k < 1) fail("InvalidInput", ErrorKind::Input, "k must be positive");
  GradedSemigroup t;
  t.piece = [s, k](int d) { return s.piece(k * d); };
  t.description = s.description + "_(" + std::to_string(k) + ")";
  t.irrational_slope = s.irrational_slope;
  return t;
}

std::string to_string(FgVerdict v) { return v == FgVerdict::FG ? "FG" : "Unknown"; }

FgCertificate fg_certificate(const GradedSemigroup& s, int bound) {
  if (bound < 1) fail("InvalidInput", ErrorKind::Input, "bound must be positive");
  FgCertificate out;
  out.bound = bound;
  const int top = 3 * bound;
  std::vector<std::set<IntVec>> elems(top + 1);
  for (int d = 0; d <= top; ++d) {
    auto v = s.piece(d);
    elems[d].insert(v.begin(), v.end());
  }
  std::vector<std::pair<int, IntVec>> indecomposable;
  out.new_generators.assign(top, 0);
  for (int d = 1; d <= top; ++d)
    for (const auto& x : elems[d]) {
      bool decomposable = false;
      for (const auto& [dg, g] : indecomposable)
        if (elems[d - dg].count(minus(x, g))) {
          decomposable = true;
          break;
        }
      if (decomposable) continue;
      indecomposable.emplace_back(d, x);
      ++out.new_generators[d - 1];
      if (d <= bound) out.generators.emplace_back(d, x);
    }
  std::vector<std::set<IntVec>> reach(top + 1);
  reach[0] = elems[0];
  out.regenerated = true;
  for (int d = 1; d <= top; ++d) {
    for (const auto& [dg, g] : out.generators) {
      if (dg > d) continue;
      for (const auto& y : reach[d - dg]) {
        IntVec z(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) z[i] = y[i] + g[i];
        reach[d].insert(z);
      }
    }
    if (reach[d] != elems[d]) out.regenerated = false;
  }
  out.verdict = out.regenerated && !s.irrational_slope ? FgVerdict::FG : FgVerdict::Unknown;
  return out;
}

TruncationReport truncation_fg(const GradedSemigroup& s, int k, int degree_bound) {
  TruncationReport rep;
  rep.full = fg_certificate(s, degree_bound);
  rep.truncated = fg_certificate(truncation(s, k), degree_bound);
  rep.agree = rep.full.verdict == rep.truncated.verdict;
  for (int d = 0; d <= degree_bound; ++d) {
    std::set<IntVec> here;
    for (const auto& x : s.piece(d)) here.insert(x);
    for (const auto& x : here) {
      bool in_ideal = false;
      for (int e = k; e <= d && !in_ideal; e += k) {
        auto rest = s.piece(d - e);
        std::set<IntVec> rs(rest.begin(), rest.end());
        for (const auto& y : s.piece(e))
          if (rs.count(minus(x, y))) {
            in_ideal = true;
            break;
          }
      }
      if (!in_ideal) rep.module_generator_degrees.push_back(d);
    }
  }
  return rep;
}

namespace {

Integer vertex_denominator(const Fan& f, const IntVec& n) {
  RatVec bounds;
  for (long long x : n) bounds.push_back(Rational(static_cast<long>(-x)));
  Integer den(1);
  for (const auto& v : vertices<Rational>(f.rank(), f.rays(), bounds))
    for (const auto& x : v) den = lcm(den, Integer(x.get_den()));
  return den;
}

// Normal fan of P_N when it is complete, simplicial and uses every ray.
std::optional<Fan> normal_fan(const Fan& f, const IntVec& n) {
  RatVec bounds;
  for (long long x : n) bounds.push_back(Rational(static_cast<long>(-x)));
  std::set<Cone> cones;
  std::vector<bool> used(f.num_rays(), false);
  for (const auto& v : vertices<Rational>(f.rank(), f.rays(), bounds)) {
    Cone c;
    for (int r = 0; r < f.num_rays(); ++r) {
      Rational val(0);
      for (int i = 0; i < f.rank(); ++i) val += v[i] * Rational(static_cast<long>(f.ray(r)[i]));
      if (val == Rational(static_cast<long>(-n[r]))) c.push_back(r);
    }
    if (static_cast<int>(c.size()) != f.rank()) return std::nullopt;
    for (int r : c) used[r] = true;
    cones.insert(c);
  }
  for (bool u : used)
    if (!u) return std::nullopt;
  try {
    Fan out = Fan::build(f.rank(), f.rays(), std::vector<Cone>(cones.begin(), cones.end()));
    if (!out.is_complete() || !out.is_simplicial()) return std::nullopt;
    return out;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

AdjointAlgebraModel restricted_algebra(const ToricPair& p, int s, int m_max) {
  const Fan& f = p.X();
  const int n = f.rank();
  if (s < 0 || s >= f.num_rays()) fail("NotPlFlip", ErrorKind::Precondition, "S is not a ray of the model");
  if (p.boundary[s] != Scalar(1)) fail("NotPlFlip", ErrorKind::Precondition, "the coefficient of S is not 1");
  if (m_max < 0) fail("InvalidInput", ErrorKind::Input, "m_max must be nonnegative");
  std::optional<CurveClass> ray;
  for (const auto& g : negative_rays(p))
    if (g.pairing[s] < 0 && classify_ray(f, g).kind == ContractionKind::Flipping) {
      ray = g;
      break;
    }
  if (!ray) fail("NotPlFlip", ErrorKind::Precondition, "no flipping ray negative on S");
  PlFlipReport rep;
  try {
    rep = classify_pl_flip(p, s, {*ray});
  } catch (const Error& e) {
    fail("NotPlFlip", ErrorKind::Precondition, e.what());
  }
  if (!rep.is_pl) fail("NotPlFlip", ErrorKind::Precondition, rep.reason);
  const TDivisor l = log_canonical_class(p);
  if (!l.is_rational()) fail("NotPlFlip", ErrorKind::Precondition, "K+Delta is not a Q-divisor");

  AdjointAlgebraModel out;
  out.ray = *ray;
  out.k = denominator_lcm(l);
  const auto gens = mori_cone(f);
  lp::Problem<Rational> lpp;
  lpp.num_vars = f.num_rays();
  lpp.nonneg.assign(f.num_rays(), true);
  for (const auto& g : gens) {
    RatVec row(g.pairing.begin(), g.pairing.end());
    if (g.wall == ray->wall) lpp.add(row, lp::Relation::Equal, Rational(0));
    else lpp.add(row, lp::Relation::GreaterEq, Rational(1));
  }
  lpp.objective.assign(f.num_rays(), Rational(-1));
  auto sol = lp::solve(lpp);
  if (sol.status != lp::Status::Optimal) fail("NotPlFlip", ErrorKind::Precondition, "the ray is not contractible");
  out.a = cartier_multiple(f, sol.x);

  IntVec kl(f.num_rays());
  for (int r = 0; r < f.num_rays(); ++r) kl[r] = (Scalar(out.k) * l[r]).floor().get_si();
  IntVec nv;
  for (long long c = 0; c <= 200; ++c) {
    IntVec cand(f.num_rays());
    for (int r = 0; r < f.num_rays(); ++r) cand[r] = kl[r] + c * out.a[r];
    TDivisor cd = TDivisor::from_ints(cand);
    bool positive = true;
    for (const auto& g : gens)
      if (g.wall != ray->wall && intersection(cd, g).sign() <= 0) positive = false;
    if (!positive || !is_big(f, cd)) continue;
    if (auto nf = normal_fan(f, cand)) {
      out.c = c;
      nv = cand;
      out.proj_fan = make_fan(*nf);
      break;
    }
  }
  if (!out.proj_fan) fail("SearchCap", ErrorKind::Cap, "no projective model found for c <= 200");
  out.n = TDivisor::from_ints(nv);

  // The divisor S as a toric variety: the quotient fan of the star of S.
  const auto basis = complete_basis(f.ray(s));
  const IntMat& w = basis.inverse;
  std::vector<IntVec> t_vecs;
  std::map<int, int> t_index;
  for (int r = 0; r < f.num_rays(); ++r) {
    if (r == s || !f.has_cone({std::min(r, s), std::max(r, s)})) continue;
    IntVec bar(n - 1);
    for (int i = 1; i < n; ++i) bar[i - 1] = dot(w[i], f.ray(r));
    t_index[r] = static_cast<int>(t_vecs.size());
    out.t_rays.push_back(r);
    t_vecs.push_back(primitive(bar));
  }
  std::vector<Cone> t_cones;
  for (const auto& cone : f.max_cones()) {
    if (std::find(cone.begin(), cone.end(), s) == cone.end()) continue;
    Cone c;
    for (int r : cone)
      if (r != s) c.push_back(t_index.at(r));
    std::sort(c.begin(), c.end());
    t_cones.push_back(c);
  }
  out.t_fan = make_fan(Fan::build(n - 1, t_vecs, t_cones));
  const int tn = static_cast<int>(t_vecs.size());

  // Face of P_{mN} on S in the coordinates y_i = <u, b_i>, i >= 1.
  const FanPtr fp = p.fan;
  const IntVec us = f.ray(s);
  IntMat cols(n - 1, IntVec(n));
  for (int i = 1; i < n; ++i)
    for (int x = 0; x < n; ++x) cols[i - 1][x] = basis.basis[x][i];
  auto face = [fp, nv, us, cols, s](int m) {
    IntPolytope poly = section_polytope(*fp, TDivisor::from_ints(scaled(nv, m)));
    poly.add_equality(us, -m * nv[s]);
    std::vector<IntVec> pts;
    for (const auto& u : lattice_points(poly)) {
      IntVec y(cols.size());
      for (std::size_t i = 0; i < cols.size(); ++i) y[i] = dot(u, cols[i]);
      pts.push_back(y);
    }
    return pts;
  };
  GradedSemigroup restricted = memoized(face, "restricted", false);

  out.theta_limit = TDivisor(tn);
  bool any = false;
  for (int m = 0; m <= m_max; ++m) {
    auto pts = restricted.piece(m);
    out.component_sizes.push_back(static_cast<long long>(pts.size()));
    if (m == 0) continue;
    if (pts.empty()) {
      out.theta.push_back(std::nullopt);
      continue;
    }
    TDivisor theta(tn);
    for (int t = 0; t < tn; ++t) {
      long long mn = dot(pts.front(), t_vecs[t]);
      for (const auto& y : pts) mn = std::min(mn, dot(y, t_vecs[t]));
      theta[t] = Scalar(Rational(static_cast<long>(-mn)) / Rational(out.k * m)) + Scalar(1);
      if (!any || theta[t] > out.theta_limit[t]) out.theta_limit[t] = theta[t];
    }
    any = true;
    out.theta.push_back(theta);
  }

  const long long den = vertex_denominator(f, nv).get_si();
  out.certificate = fg_certificate(restricted, static_cast<int>(n * den));
  out.full_certificate = fg_certificate(section_semigroup(fp, nv), static_cast<int>((n + 1) * den));
  return out;
}

SaturationVerdict fg_from_saturation_semiample(const CurveAlgebraInstance& inst, int window) {
  SaturationVerdict out;
  if (window < 1 || !saturation_check(inst, window).saturated) return out;
  Scalar d = inst.d ? *inst.d : Scalar(inst.d_at(1));
  if (!inst.d)
    for (int i = 2; i <= window; ++i) d = std::max(d, Scalar(inst.d_at(i)));
  out.d = d;
  if (!d.is_rational() || d.sign() < 0) return out;
  const Integer den = d.rational_part().get_den();
  if (den > window) return out;
  const int j = static_cast<int>(den.get_si());
  for (int i = j; i <= window; i += j)
    if (Scalar(inst.d_at(i)) != d) return out;
  out.preconditions = true;
  out.stabilized_at = j;
  if (3 * j > inst.horizon()) return out;
  const std::vector<Integer> m = inst.m;
  GradedSemigroup s;
  s.piece = [m](int i) {
    std::vector<IntVec> pts;
    const long long top = i == 0 ? 0 : m[i - 1].get_si();
    for (long long x = 0; x <= top; ++x) pts.push_back({x});
    return pts;
  };
  s.description = "curve";
  out.certificate = fg_certificate(s, j);
  out.verdict = out.certificate.verdict;
  return out;
}

}  // namespace toricmmp
