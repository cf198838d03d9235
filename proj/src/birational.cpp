#include "toricmmp/birational.hpp"

#include <algorithm>
#include <set>

#include "toricmmp/error.hpp"

namespace toricmmp {

std::string to_string(ContractionKind k) {
  switch (k) {
    case ContractionKind::Fibering: return "fibering";
    case ContractionKind::Divisorial: return "divisorial";
    case ContractionKind::Flipping: return "flipping";
  }
  return "?";
}

std::string to_string(SingularityClass s) {
  switch (s) {
    case SingularityClass::Terminal: return "terminal";
    case SingularityClass::Klt: return "klt";
    case SingularityClass::Plt: return "plt";
    case SingularityClass::Lc: return "lc";
    case SingularityClass::NotLc: return "not-lc";
  }
  return "?";
}

namespace {

Cone sorted(Cone c) {
  std::sort(c.begin(), c.end());
  return c;
}

Cone without(const Cone& c, int r) {
  Cone out;
  for (int x : c)
    if (x != r) out.push_back(x);
  return out;
}

Cone merged(const ContractionResult& c, const Cone& z) {
  Cone m = c.j_plus;
  m.insert(m.end(), c.j_minus.begin(), c.j_minus.end());
  m.insert(m.end(), z.begin(), z.end());
  return sorted(m);
}

bool same_direction(const CurveClass& a, const CurveClass& b) {
  return primitive_from_rational(RatVec(a.pairing.begin(), a.pairing.end())) ==
         primitive_from_rational(RatVec(b.pairing.begin(), b.pairing.end()));
}

}  // namespace

ContractionResult classify_ray(const Fan& f, const CurveClass& r) {
  ContractionResult out;
  out.ray = r;
  for (int i = 0; i < f.num_rays(); ++i) {
    int s = sgn(r.pairing[i]);
    if (s > 0) out.j_plus.push_back(i);
    else if (s < 0) out.j_minus.push_back(i);
  }
  std::set<int> j(out.j_plus.begin(), out.j_plus.end());
  j.insert(out.j_minus.begin(), out.j_minus.end());
  std::set<Cone> links;
  for (int w : r.walls) {
    const Wall& wall = f.walls()[w];
    Cone z;
    for (int x : wall.cone)
      if (!j.count(x)) z.push_back(x);
    links.insert(sorted(z));
  }
  out.links.assign(links.begin(), links.end());

  std::set<Cone> present;
  for (const auto& c : f.max_cones()) present.insert(sorted(c));

  if (out.j_minus.empty()) {
    out.kind = ContractionKind::Fibering;
    IntMat rows;
    for (int x : out.j_plus) rows.push_back(f.ray(x));
    out.fibration = FibrationDescriptor{f.rank() - rank_int(rows), out.j_plus};
    return out;
  }
  out.kind = out.j_minus.size() == 1 ? ContractionKind::Divisorial : ContractionKind::Flipping;
  for (const auto& z : out.links) {
    Cone m = merged(out, z);
    for (int jp : out.j_plus) {
      Cone c = without(m, jp);
      if (!present.count(c))
        fail("NoOtherChamber", ErrorKind::Precondition,
             "the locus of the ray is not a union of circuit chambers (missing cone)");
      out.old_cones.push_back(c);
    }
    if (out.kind == ContractionKind::Divisorial) {
      out.new_cones.push_back(without(m, out.j_minus[0]));
    } else {
      for (int jm : out.j_minus) out.new_cones.push_back(without(m, jm));
    }
  }

  std::set<Cone> old(out.old_cones.begin(), out.old_cones.end());
  if (out.kind == ContractionKind::Divisorial) {
    const int r0 = out.j_minus[0];
    out.removed_ray = r0;
    std::vector<Cone> cones;
    for (const auto& c : present) {
      if (old.count(c)) continue;
      if (std::binary_search(c.begin(), c.end(), r0))
        fail("NoOtherChamber", ErrorKind::Invariant, "a cone through the contracted ray is not in the locus");
      cones.push_back(c);
    }
    for (const auto& c : out.new_cones) cones.push_back(c);
    std::vector<IntVec> rays;
    for (int i = 0; i < f.num_rays(); ++i)
      if (i != r0) rays.push_back(f.ray(i));
    for (auto& c : cones)
      for (auto& x : c)
        if (x > r0) --x;
    out.target = make_fan(Fan::build(f.rank(), rays, cones));
  } else {
    std::vector<Cone> cones;
    for (const auto& c : present)
      if (!old.count(c)) cones.push_back(c);
    for (const auto& z : out.links) cones.push_back(merged(out, z));
    out.target = make_fan(Fan::build(f.rank(), f.rays(), cones));
  }
  return out;
}

ContractionResult contract(const ToricPair& p, const CurveClass& r) {
  bool extremal = false;
  for (const auto& g : mori_cone(p.X()))
    if (same_direction(g, r)) extremal = true;
  if (!extremal) fail("NotExtremal", ErrorKind::Precondition, "the class does not span an extremal ray");
  if (intersection(log_canonical_class(p), r).sign() >= 0)
    fail("NotNegative", ErrorKind::Precondition, "K+Delta is not negative on the ray");
  return classify_ray(p.X(), r);
}

ToricPair apply_divisorial(const ToricPair& p, const ContractionResult& c) {
  if (c.kind != ContractionKind::Divisorial) fail("NotDivisorial", ErrorKind::Precondition, "not a divisorial contraction");
  ToricPair q;
  q.fan = c.target;
  q.boundary = drop_ray(p.boundary, *c.removed_ray);
  for (const auto& g : p.ghosts) q.ghosts.push_back(Ghost{drop_ray(g.cls, *c.removed_ray), g.weight, g.vertices});
  return q;
}

ToricPair flip(const ToricPair& p, const ContractionResult& c) {
  if (c.kind != ContractionKind::Flipping) fail("NotFlipping", ErrorKind::Precondition, "not a flipping contraction");
  const Fan& f = p.X();
  std::set<Cone> old(c.old_cones.begin(), c.old_cones.end());
  std::vector<Cone> cones;
  for (const auto& cone : f.max_cones())
    if (!old.count(sorted(cone))) cones.push_back(cone);
  for (const auto& cone : c.new_cones) cones.push_back(cone);
  ToricPair q = p;
  q.fan = make_fan(Fan::build(f.rank(), f.rays(), cones));
  TDivisor l = log_canonical_class(q);
  // The walls inside the merged cones now carry the flipped curves.
  std::set<Cone> merged_cones;
  for (const auto& z : c.links) merged_cones.insert(merged(c, z));
  const auto& ws = q.X().walls();
  bool found = false;
  for (int i = 0; i < static_cast<int>(ws.size()); ++i) {
    Cone all = ws[i].cone;
    all.push_back(ws[i].off_wall[0]);
    all.push_back(ws[i].off_wall[1]);
    if (!merged_cones.count(sorted(all))) continue;
    found = true;
    if (intersection(l, wall_class(q.X(), i)).sign() <= 0)
      fail("SignNotReversed", ErrorKind::Invariant, "K+Delta is not positive on a flipped wall");
  }
  if (!found) fail("NoOtherChamber", ErrorKind::Invariant, "no flipped wall found");
  return q;
}

Scalar log_discrepancy(const ToricPair& p, const IntVec& v) {
  const Fan& f = p.X();
  if (static_cast<int>(v.size()) != f.rank() || is_zero_vec(v))
    fail("InvalidValuation", ErrorKind::Input, "valuation must be a nonzero vector of length rank");
  if (gcd_of(v) != 1) fail("InvalidValuation", ErrorKind::Input, "valuation must be primitive");
  if (!f.is_simplicial()) fail("NotQCartier", ErrorKind::Precondition, "K+Delta is Q-Cartier only on simplicial fans");
  if (!f.locate(v)) fail("OutsideSupport", ErrorKind::Precondition, "valuation outside the support");
  TDivisor psi(f.num_rays());
  for (int r = 0; r < f.num_rays(); ++r) psi[r] = Scalar(1) - p.boundary[r];
  Scalar a = support_value(f, psi, v);
  for (const auto& g : p.ghosts)
    if (!g.weight.is_zero()) a -= g.weight * Scalar(ghost_multiplicity(f, g, v));
  return a;
}

std::vector<IntVec> singularity_test_set(const Fan& f) {
  std::set<IntVec> out;
  for (const auto& r : f.rays()) out.insert(r);
  for (const auto& c : f.max_cones()) {
    IntVec bary(f.rank(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      bary = add(bary, f.ray(c[i]));
      for (std::size_t j = i + 1; j < c.size(); ++j) out.insert(primitive(add(f.ray(c[i]), f.ray(c[j]))));
    }
    out.insert(primitive(bary));
  }
  return {out.begin(), out.end()};
}

std::vector<IntVec> valuation_test_set(const Fan& f) {
  std::set<IntVec> out;
  for (const auto& c : f.max_cones()) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      out.insert(f.ray(c[i]));
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        IntVec s = add(f.ray(c[i]), f.ray(c[j]));
        out.insert(primitive(s));
        for (std::size_t k = j + 1; k < c.size(); ++k) out.insert(primitive(add(s, f.ray(c[k]))));
      }
    }
  }
  return {out.begin(), out.end()};
}

SingularityClass classify_singularities(const ToricPair& p) {
  bool klt = true, plt = true, lc = true, terminal = true;
  for (const auto& v : singularity_test_set(p.X())) {
    Scalar a = log_discrepancy(p, v);
    bool is_ray = p.X().ray_index(v).has_value();
    if (a.sign() < 0) lc = false;
    if (a.sign() <= 0) {
      klt = false;
      if (!is_ray) plt = false;
    }
    if (!is_ray && a <= Scalar(1)) terminal = false;
  }
  if (!lc) return SingularityClass::NotLc;
  if (klt) return terminal ? SingularityClass::Terminal : SingularityClass::Klt;
  if (plt) return SingularityClass::Plt;
  return SingularityClass::Lc;
}

LogDiscrepancyReport log_discrepancy_report(const ToricPair& p, const IntVec& v) {
  return LogDiscrepancyReport{v, log_discrepancy(p, v), classify_singularities(p)};
}

PlFlipReport classify_pl_flip(const ToricPair& p, int s, const std::vector<CurveClass>& face) {
  const Fan& f = p.X();
  if (s < 0 || s >= f.num_rays()) fail("NotPlt", ErrorKind::Precondition, "S is not a ray of the model");
  if (p.boundary[s] != Scalar(1)) fail("NotPlt", ErrorKind::Precondition, "the coefficient of S is not 1");
  auto cls = classify_singularities(p);
  if (cls != SingularityClass::Plt) fail("NotPlt", ErrorKind::Precondition, "the pair is " + to_string(cls));
  PlFlipReport rep;
  if (face.empty()) {
    rep.reason = "empty face";
    return rep;
  }
  RatMat m;
  for (const auto& c : face) m.push_back(RatVec(c.pairing.begin(), c.pairing.end()));
  rep.relative_picard = rank(m);
  if (rep.relative_picard != 1) {
    rep.reason = "relative Picard number " + std::to_string(rep.relative_picard);
    return rep;
  }
  const CurveClass& r = face.front();
  TDivisor l = log_canonical_class(p);
  TDivisor sd(f.num_rays());
  sd[s] = Scalar(1);
  Scalar lr = intersection(l, r), sr = intersection(sd, r);
  if (lr.sign() >= 0) {
    rep.reason = "K+Delta is not negative on the ray";
    return rep;
  }
  if (sr.sign() >= 0) {
    rep.reason = "-S is not positive on the ray";
    return rep;
  }
  if (classify_ray(f, r).kind != ContractionKind::Flipping) {
    rep.reason = "the contraction is not small";
    return rep;
  }
  rep.is_pl = true;
  if (!l.is_rational()) {
    rep.reason = "irrational K+Delta: no integer (p, q)";
    return rep;
  }
  // p (K+Delta).R = q S.R, so p/q = S.R / (K+Delta).R.
  Rational ratio = sr.rational_part() / lr.rational_part();
  Integer pn = ratio.get_num(), qn = ratio.get_den();
  for (long c = 1; c <= 1000; ++c) {
    TDivisor pl = Scalar(Integer(pn * c)) * l, qs = Scalar(Integer(qn * c)) * sd;
    if (pl.is_integral() && is_cartier(f, pl) && is_cartier(f, qs)) {
      rep.p_q = std::make_pair(Integer(pn * c).get_si(), Integer(qn * c).get_si());
      return rep;
    }
  }
  rep.reason = "no Cartier multiple found";
  return rep;
}

}  // namespace toricmmp
