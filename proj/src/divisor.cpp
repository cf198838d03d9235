#include "toricmmp/divisor.hpp"

#include <algorithm>
#include <set>

#include "toricmmp/error.hpp"
#include "toricmmp/lp.hpp"

namespace toricmmp {

TDivisor TDivisor::from_ints(const IntVec& v) {
  TDivisor d(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) d.coeffs[i] = Scalar(static_cast<long>(v[i]));
  return d;
}

bool TDivisor::is_integral() const {
  for (const auto& c : coeffs)
    if (!c.is_rational() || c.rational_part().get_den() != 1) return false;
  return true;
}

bool TDivisor::is_rational() const {
  for (const auto& c : coeffs)
    if (!c.is_rational()) return false;
  return true;
}

bool TDivisor::is_zero() const {
  for (const auto& c : coeffs)
    if (!c.is_zero()) return false;
  return true;
}

IntVec TDivisor::to_ints() const {
  if (!is_integral()) fail("NotIntegral", ErrorKind::Precondition, "divisor " + to_string() + " is not integral");
  IntVec v(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) v[i] = coeffs[i].rational_part().get_num().get_si();
  return v;
}

TDivisor& TDivisor::operator+=(const TDivisor& o) {
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

TDivisor& TDivisor::operator-=(const TDivisor& o) {
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
  return *this;
}

TDivisor operator*(const Scalar& s, TDivisor d) {
  for (auto& c : d.coeffs) c *= s;
  return d;
}

std::string TDivisor::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) s += ", ";
    s += coeffs[i].to_string();
  }
  return s + ")";
}

namespace {

void require_complete(const Fan& f) {
  if (!f.is_complete()) fail("IncompleteFan", ErrorKind::Precondition, "operation needs a complete fan");
}

/// Character m with <m,u_r> = -d_r on the rays of a maximal cone, if the
/// system is consistent and determined.
std::optional<RatVec> cone_character(const Fan& f, const Cone& c, const RatVec& d) {
  const int n = f.rank();
  RatMat aug;
  for (int r : c) {
    RatVec row = to_field<Rational>(f.ray(r));
    row.push_back(-d[r]);
    aug.push_back(row);
  }
  auto piv = row_reduce(aug);
  if (!piv.empty() && piv.back() == n) return std::nullopt;
  if (static_cast<int>(piv.size()) < n) return std::nullopt;
  RatVec m(n);
  for (int i = 0; i < n; ++i) m[i] = aug[i][n];
  return m;
}

RatVec rational_coeffs(const TDivisor& d) {
  RatVec r;
  for (const auto& c : d.coeffs) {
    if (!c.is_rational()) fail("IrrationalCoefficient", ErrorKind::Precondition, "rational divisor expected");
    r.push_back(c.rational_part());
  }
  return r;
}

}  // namespace

Ghost make_ghost(const Fan& f, const IntVec& cls, const Scalar& weight) {
  if (static_cast<int>(cls.size()) != f.num_rays())
    fail("InvalidDivisor", ErrorKind::Input, "ghost class has the wrong number of coefficients");
  if (weight < Scalar(0) || weight > Scalar(1))
    fail("InvalidWeight", ErrorKind::Input, "ghost weight " + weight.to_string() + " outside [0,1]");
  if (!f.is_complete()) fail("IncompleteFan", ErrorKind::Precondition, "ghosts need a complete fan");
  if (!is_free(f, cls)) fail("GhostNotFree", ErrorKind::Input, "ghost class is not base point free");
  Ghost g{cls, weight, {}};
  RatVec d(cls.size());
  for (std::size_t i = 0; i < cls.size(); ++i) d[i] = Rational(static_cast<long>(cls[i]));
  std::set<IntVec> verts;
  for (const auto& c : f.max_cones()) {
    auto m = cone_character(f, c, d);
    IntVec v;
    for (const auto& x : *m) v.push_back(x.get_num().get_si());
    verts.insert(v);
  }
  g.vertices.assign(verts.begin(), verts.end());
  return g;
}

ToricPair make_pair(FanPtr fan, TDivisor boundary, std::vector<Ghost> ghosts) {
  if (static_cast<int>(boundary.size()) != fan->num_rays())
    fail("InvalidDivisor", ErrorKind::Input, "boundary has the wrong number of coefficients");
  for (const auto& c : boundary.coeffs)
    if (c < Scalar(0) || c > Scalar(1))
      fail("InvalidCoefficient", ErrorKind::Input, "boundary coefficient " + c.to_string() + " outside [0,1]");
  for (const auto& g : ghosts)
    if (static_cast<int>(g.cls.size()) != fan->num_rays())
      fail("InvalidDivisor", ErrorKind::Input, "ghost class has the wrong number of coefficients");
  return ToricPair{std::move(fan), std::move(boundary), std::move(ghosts)};
}

TDivisor canonical_divisor(const Fan& f) {
  TDivisor k(f.num_rays());
  for (auto& c : k.coeffs) c = Scalar(-1);
  return k;
}

TDivisor boundary_class(const ToricPair& p) {
  TDivisor b = p.boundary;
  for (const auto& g : p.ghosts) b += g.weight * TDivisor::from_ints(g.cls);
  return b;
}

TDivisor log_canonical_class(const ToricPair& p) { return canonical_divisor(p.X()) + boundary_class(p); }

std::vector<int> round_down_support(const ToricPair& p) {
  std::vector<int> s;
  for (std::size_t i = 0; i < p.boundary.size(); ++i)
    if (p.boundary[i] == Scalar(1)) s.push_back(static_cast<int>(i));
  return s;
}

IntPolytope section_polytope(const Fan& f, const TDivisor& d) {
  require_complete(f);
  IntPolytope p;
  p.dim = f.rank();
  for (int r = 0; r < f.num_rays(); ++r) p.add(f.ray(r), -d[r].floor().get_si());
  return p;
}

long long h0(const Fan& f, const TDivisor& d) { return count_lattice_points(section_polytope(f, d)); }

TDivisor round_down(const TDivisor& d) {
  TDivisor r(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) r[i] = Scalar(d[i].floor());
  return r;
}

TDivisor fractional_part(const TDivisor& d) {
  TDivisor r(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) r[i] = d[i].fractional_part();
  return r;
}

std::optional<Vec<Scalar>> pseudo_effective_certificate(const Fan& f, const TDivisor& d) {
  require_complete(f);
  lp::Problem<Scalar> p;
  p.num_vars = f.rank();
  for (int r = 0; r < f.num_rays(); ++r) p.add(to_field<Scalar>(f.ray(r)), lp::Relation::GreaterEq, -d[r]);
  auto res = lp::solve(p);
  if (res.status != lp::Status::Optimal) return std::nullopt;
  return res.x;
}

bool is_pseudo_effective(const Fan& f, const TDivisor& d) { return pseudo_effective_certificate(f, d).has_value(); }

bool is_big(const Fan& f, const TDivisor& d) {
  require_complete(f);
  const int n = f.rank();
  lp::Problem<Scalar> p;
  p.num_vars = n + 1;
  for (int r = 0; r < f.num_rays(); ++r) {
    Vec<Scalar> row = to_field<Scalar>(f.ray(r));
    row.push_back(Scalar(-1));
    p.add(row, lp::Relation::GreaterEq, -d[r]);
  }
  Vec<Scalar> cap(n + 1, Scalar(0));
  cap[n] = Scalar(1);
  p.add(cap, lp::Relation::LessEq, Scalar(1));
  p.objective = cap;
  auto res = lp::solve(p);
  return res.status == lp::Status::Optimal && res.value > Scalar(0);
}

bool is_free(const Fan& f, const IntVec& d) {
  RatVec dr(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) dr[i] = Rational(static_cast<long>(d[i]));
  for (const auto& c : f.max_cones()) {
    auto m = cone_character(f, c, dr);
    if (!m) return false;
    for (const auto& x : *m)
      if (x.get_den() != 1) return false;
    for (int r = 0; r < f.num_rays(); ++r) {
      Rational s = 0;
      for (int i = 0; i < f.rank(); ++i) s += (*m)[i] * static_cast<long>(f.ray(r)[i]);
      if (s < -dr[r]) return false;
    }
  }
  return true;
}

bool is_cartier(const Fan& f, const TDivisor& d) {
  RatVec dr = rational_coeffs(d);
  for (const auto& c : f.max_cones()) {
    auto m = cone_character(f, c, dr);
    if (!m) return false;
    for (const auto& x : *m)
      if (x.get_den() != 1) return false;
  }
  return true;
}

std::optional<long long> lattice_min(const IntPolytope& p, const IntVec& u_in) {
  const int n = p.dim;
  IntVec u = primitive(u_in);
  auto comp = complete_basis(u);
  // In coordinates y = T^t m the first coordinate is <u,m>.
  IntMat normals(p.normals.size(), IntVec(n, 0));
  for (std::size_t k = 0; k < p.normals.size(); ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) normals[k][i] += comp.inverse[i][j] * p.normals[k][j];
  lp::Problem<Rational> lo, hi;
  lo.num_vars = hi.num_vars = n;
  for (std::size_t k = 0; k < normals.size(); ++k) {
    lo.add(to_field<Rational>(normals[k]), lp::Relation::GreaterEq, Rational(static_cast<long>(p.bounds[k])));
  }
  hi = lo;
  RatVec obj(n, Rational(0));
  obj[0] = -1;
  lo.objective = obj;
  obj[0] = 1;
  hi.objective = obj;
  auto rlo = lp::solve(lo);
  if (rlo.status != lp::Status::Optimal) return std::nullopt;
  auto rhi = lp::solve(hi);
  Rational min_v = -rlo.value, max_v = rhi.value;
  Integer from, to;
  mpz_cdiv_q(from.get_mpz_t(), min_v.get_num_mpz_t(), min_v.get_den_mpz_t());
  mpz_fdiv_q(to.get_mpz_t(), max_v.get_num_mpz_t(), max_v.get_den_mpz_t());
  for (long long c = from.get_si(); c <= to.get_si(); ++c) {
    if (n == 1) {
      bool ok = true;
      for (std::size_t k = 0; k < normals.size() && ok; ++k)
        if (normals[k][0] * c < p.bounds[k]) ok = false;
      if (ok) return c;
      continue;
    }
    IntPolytope slice;
    slice.dim = n - 1;
    for (std::size_t k = 0; k < normals.size(); ++k)
      slice.add(IntVec(normals[k].begin() + 1, normals[k].end()), p.bounds[k] - normals[k][0] * c);
    if (count_lattice_points(slice) > 0) return c;
  }
  return std::nullopt;
}

MobFix mobile_fixed(const Fan& f, const IntVec& d) {
  require_complete(f);
  IntPolytope p = section_polytope(f, TDivisor::from_ints(d));
  MobFix out{d, IntVec(d.size(), 0)};
  for (int r = 0; r < f.num_rays(); ++r) {
    auto mn = lattice_min(p, f.ray(r));
    if (!mn) fail("NoSections", ErrorKind::Precondition, "the linear system is empty");
    out.fix[r] = *mn + d[r];
    out.mob[r] = d[r] - out.fix[r];
  }
  return out;
}

Integer denominator_lcm(const TDivisor& d) {
  Integer l = 1;
  for (const auto& c : d.coeffs) l = lcm(l, denominator_lcm(c));
  return l;
}

BaseLocus stable_base_locus(const Fan& f, const TDivisor& d, int cap_exponent) {
  require_complete(f);
  BaseLocus out;
  if (!is_pseudo_effective(f, d)) {
    out.all = true;
    return out;
  }
  if (!d.is_rational()) {
    // Asymptotic criterion: the minimum of <m,u_r> + d_r over the real polytope.
    for (int r = 0; r < f.num_rays(); ++r) {
      lp::Problem<Scalar> p;
      p.num_vars = f.rank();
      for (int s = 0; s < f.num_rays(); ++s) p.add(to_field<Scalar>(f.ray(s)), lp::Relation::GreaterEq, -d[s]);
      Vec<Scalar> obj = to_field<Scalar>(f.ray(r));
      for (auto& x : obj) x = -x;
      p.objective = obj;
      auto res = lp::solve(p);
      if (-res.value + d[r] > Scalar(0)) out.rays.push_back(r);
    }
    out.level = 0;
    return out;
  }
  RatVec dr = rational_coeffs(d);
  RatVec bounds(dr.size());
  for (std::size_t i = 0; i < dr.size(); ++i) bounds[i] = -dr[i];
  Integer q = 1;
  for (const auto& v : vertices<Rational>(f.rank(), f.rays(), bounds))
    for (const auto& x : v) q = lcm(q, Integer(x.get_den()));
  Integer m = denominator_lcm(d) * q;
  auto locus_at = [&](const Integer& level) {
    TDivisor md = Scalar(level) * d;
    IntVec di = md.to_ints();
    std::vector<int> rays;
    IntPolytope p = section_polytope(f, md);
    for (int r = 0; r < f.num_rays(); ++r) {
      auto mn = lattice_min(p, f.ray(r));
      if (!mn) return std::optional<std::vector<int>>();
      if (*mn + di[r] > 0) rays.push_back(r);
    }
    return std::optional<std::vector<int>>(rays);
  };
  auto cur = locus_at(m);
  for (int j = 0; j < cap_exponent; ++j) {
    auto next = locus_at(2 * m);
    if (cur && next && *cur == *next) {
      out.rays = *cur;
      out.level = m;
      return out;
    }
    m *= 2;
    cur = next;
  }
  out.stable = false;
  out.level = m;
  if (cur) out.rays = *cur;
  else out.all = true;
  return out;
}

Scalar support_value(const Fan& f, const TDivisor& d, const IntVec& v) {
  if (!f.is_simplicial()) fail("NotSimplicial", ErrorKind::Precondition, "support function needs a simplicial fan");
  auto loc = f.locate(v);
  if (!loc) fail("VectorOutsideSupport", ErrorKind::Precondition, "valuation outside the support");
  const Cone& c = f.max_cones()[loc->cone];
  Scalar s(0);
  for (std::size_t j = 0; j < c.size(); ++j)
    if (!is_zero(loc->coords[j])) s += Scalar(loc->coords[j]) * d[c[j]];
  return s;
}

Rational ghost_multiplicity(const Fan& f, const Ghost& g, const IntVec& v) {
  Scalar phi = support_value(f, TDivisor::from_ints(g.cls), v);
  Rational best;
  bool first = true;
  for (const auto& m : g.vertices) {
    Rational val = phi.rational_part() + static_cast<long>(dot(m, v));
    if (first || val < best) best = val;
    first = false;
  }
  return best;
}

TDivisor drop_ray(const TDivisor& d, int ray) {
  TDivisor r = d;
  r.coeffs.erase(r.coeffs.begin() + ray);
  return r;
}

IntVec drop_ray(const IntVec& d, int ray) {
  IntVec r = d;
  r.erase(r.begin() + ray);
  return r;
}

}  // namespace toricmmp
