#include "toricmmp/curves.hpp"

#include <map>

#include "toricmmp/error.hpp"
#include "toricmmp/lp.hpp"

namespace toricmmp {

CurveClass wall_class(const Fan& f, int wall) {
  const Wall& w = f.walls()[wall];
  IntMat rows;
  for (int r : w.cone) rows.push_back(f.ray(r));
  Integer tau = w.cone.empty() ? Integer(1) : max_minor_gcd(rows);
  const Integer& sigma = f.cone_multiplicity(w.adjacent[0]);
  Rational scale(tau, sigma);
  scale.canonicalize();
  scale /= static_cast<long>(w.relation[w.off_wall[0]]);
  CurveClass c;
  c.wall = wall;
  c.walls = {wall};
  c.pairing.resize(f.num_rays());
  for (int r = 0; r < f.num_rays(); ++r) c.pairing[r] = scale * static_cast<long>(w.relation[r]);
  return c;
}

Scalar intersection(const TDivisor& d, const CurveClass& c) {
  Scalar s(0);
  for (std::size_t r = 0; r < c.pairing.size(); ++r)
    if (!is_zero(c.pairing[r]) && !d[r].is_zero()) s += d[r] * Scalar(c.pairing[r]);
  return s;
}

namespace {

std::vector<CurveClass> compute_mori_cone(const Fan& f) {
  const auto& ws = f.walls();
  std::map<IntVec, CurveClass> groups;
  std::vector<IntVec> order;
  for (int i = 0; i < static_cast<int>(ws.size()); ++i) {
    CurveClass c = wall_class(f, i);
    IntVec key = primitive_from_rational(RatVec(c.pairing.begin(), c.pairing.end()));
    auto it = groups.find(key);
    if (it == groups.end()) {
      groups.emplace(key, c);
      order.push_back(key);
    } else {
      it->second.walls.push_back(i);
    }
  }
  std::vector<CurveClass> gens;
  const int nr = f.num_rays();
  for (std::size_t i = 0; i < order.size(); ++i) {
    lp::Problem<Rational> p;
    p.num_vars = static_cast<int>(order.size()) - 1;
    if (p.num_vars == 0) {
      gens.push_back(groups.at(order[i]));
      continue;
    }
    p.nonneg.assign(p.num_vars, true);
    for (int r = 0; r < nr; ++r) {
      RatVec row;
      for (std::size_t j = 0; j < order.size(); ++j)
        if (j != i) row.push_back(Rational(static_cast<long>(order[j][r])));
      p.add(row, lp::Relation::Equal, Rational(static_cast<long>(order[i][r])));
    }
    if (!lp::feasible(p)) gens.push_back(groups.at(order[i]));
  }
  std::sort(gens.begin(), gens.end(), [](const CurveClass& a, const CurveClass& b) { return a.wall < b.wall; });
  return gens;
}

}  // namespace

std::vector<CurveClass> mori_cone(const Fan& f) {
  if (!f.is_complete()) fail("NotComplete", ErrorKind::Precondition, "Mori cone needs a complete fan");
  if (!f.is_simplicial()) fail("NotSimplicial", ErrorKind::Precondition, "Mori cone needs a simplicial fan");
  auto ptr = f.memo("mori_cone", [&f] {
    return std::static_pointer_cast<const void>(std::make_shared<const std::vector<CurveClass>>(compute_mori_cone(f)));
  });
  return *std::static_pointer_cast<const std::vector<CurveClass>>(ptr);
}

std::vector<CurveClass> negative_rays(const ToricPair& p) {
  TDivisor l = log_canonical_class(p);
  std::vector<CurveClass> out;
  for (const auto& c : mori_cone(p.X()))
    if (intersection(l, c).sign() < 0) out.push_back(c);
  return out;
}

bool is_nef(const Fan& f, const TDivisor& d) {
  if (f.is_complete()) {
    for (const auto& c : mori_cone(f))
      if (intersection(d, c).sign() < 0) return false;
    return true;
  }
  for (int i = 0; i < static_cast<int>(f.walls().size()); ++i)
    if (intersection(d, wall_class(f, i)).sign() < 0) return false;
  return true;
}

bool is_ample(const Fan& f, const TDivisor& d) {
  if (!f.is_complete()) return false;
  for (const auto& c : mori_cone(f))
    if (intersection(d, c).sign() <= 0) return false;
  return true;
}

Positivity positivity(const Fan& f, const TDivisor& d) {
  if (!f.is_complete()) fail("IncompleteFan", ErrorKind::Precondition, "positivity needs a complete fan");
  if (!f.is_simplicial()) fail("NotSimplicial", ErrorKind::Precondition, "positivity needs a simplicial fan");
  Positivity p;
  p.effective = true;
  for (const auto& c : d.coeffs)
    if (c.sign() < 0) p.effective = false;
  p.nef = is_nef(f, d);
  p.ample = is_ample(f, d);
  p.big = is_big(f, d);
  p.semiample = p.nef;
  p.pseudoeffective = is_pseudo_effective(f, d);
  if (p.pseudoeffective) {
    auto bl = stable_base_locus(f, d);
    p.mobile = !bl.all && bl.rays.empty();
  }
  return p;
}

Threshold nef_threshold(const ToricPair& p, const TDivisor& h, const Scalar& t0) {
  TDivisor l = log_canonical_class(p);
  auto gens = mori_cone(p.X());
  Threshold out;
  out.t = Scalar(0);
  for (const auto& c : gens) {
    Scalar lc = intersection(l, c), hc = intersection(h, c);
    if ((lc + t0 * hc).sign() < 0)
      fail("NotNefAtT0", ErrorKind::Precondition, "K+Delta+t0*H is negative on wall " + std::to_string(c.wall));
    if (hc.sign() > 0) {
      Scalar cand = -lc / hc;
      if (cand > out.t) out.t = cand;
    }
  }
  if (out.t > t0) out.t = t0;
  if (out.t.sign() == 0) return out;
  for (const auto& c : gens) {
    Scalar hc = intersection(h, c);
    if (hc.sign() > 0 && (intersection(l, c) + out.t * hc).is_zero()) out.critical.push_back(c);
  }
  return out;
}

}  // namespace toricmmp
