#include "toricmmp/suite.hpp"

#include <algorithm>
#include <set>

#include "toricmmp/error.hpp"
#include "toricmmp/lp.hpp"

namespace toricmmp {

namespace {

IntVec cross(const IntVec& a, const IntVec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

IntVec sub(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// Upper half-plane first, then counterclockwise.
bool angle_less(const IntVec& a, const IntVec& b) {
  auto half = [](const IntVec& v) { return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1; };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return a[0] * b[1] - a[1] * b[0] > 0;
}

std::optional<Fan> face_fan_2(const std::vector<IntVec>& points) {
  std::vector<int> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return angle_less(points[a], points[b]); });
  const std::size_t k = order.size();
  if (k < 3) return std::nullopt;
  std::vector<Cone> cones;
  for (std::size_t i = 0; i < k; ++i) {
    const IntVec& a = points[order[i]];
    const IntVec& b = points[order[(i + 1) % k]];
    if (a[0] * b[1] - a[1] * b[0] <= 0) return std::nullopt;
    Cone c{order[i], order[(i + 1) % k]};
    std::sort(c.begin(), c.end());
    cones.push_back(c);
  }
  std::vector<IntVec> rays;
  for (const auto& p : points) rays.push_back(primitive(p));
  try {
    return Fan::build(2, rays, cones);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<Fan> face_fan_3(const std::vector<IntVec>& points) {
  const int k = static_cast<int>(points.size());
  std::vector<Cone> facets;
  std::vector<bool> used(k, false);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      for (int l = j + 1; l < k; ++l) {
        IntVec n = cross(sub(points[j], points[i]), sub(points[l], points[i]));
        if (is_zero_vec(n)) continue;
        long long c = dot(n, points[i]);
        int side = 0;
        bool facet = true, coplanar = false;
        for (int x = 0; x < k && facet; ++x) {
          if (x == i || x == j || x == l) continue;
          long long s = dot(n, points[x]) - c;
          if (s == 0) {
            coplanar = true;
            continue;
          }
          int sg = s > 0 ? 1 : -1;
          if (side == 0) side = sg;
          else if (side != sg) facet = false;
        }
        if (!facet) continue;
        // A supporting plane through three points: the hull must be simplicial
        // there and the origin strictly on the inner side.
        if (coplanar) return std::nullopt;
        if (c == 0) return std::nullopt;
        int origin_side = -c > 0 ? 1 : -1;
        if (side != 0 && origin_side != side) return std::nullopt;
        facets.push_back({i, j, l});
        used[i] = used[j] = used[l] = true;
      }
  for (bool u : used)
    if (!u) return std::nullopt;
  std::vector<IntVec> rays;
  for (const auto& p : points) rays.push_back(primitive(p));
  try {
    return Fan::build(3, rays, facets);
  } catch (const Error&) {
    return std::nullopt;
  }
}

long long uniform(Rng& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

bool new_direction(const std::vector<IntVec>& pts, const IntVec& v) {
  IntVec pv = primitive(v);
  for (const auto& p : pts)
    if (primitive(p) == pv) return false;
  return true;
}

}  // namespace

std::optional<Fan> face_fan(int rank, const std::vector<IntVec>& points) {
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != rank || is_zero_vec(p)) return std::nullopt;
  if (rank == 2) return face_fan_2(points);
  if (rank == 3) return face_fan_3(points);
  fail("UnsupportedDimension", ErrorKind::Input, "face fans are built in rank 2 or 3");
}

Fan random_fan(Rng& rng, int rank, int max_rays) {
  if (rank != 2 && rank != 3)
    fail("UnsupportedDimension", ErrorKind::Input, "random fans are generated in rank 2 or 3 only");
  const int min_rays = rank + 1;
  if (max_rays < min_rays) max_rays = min_rays;
  const long long box = rank == 2 ? 3 : 2;
  for (int attempt = 0; attempt < 100000; ++attempt) {
    int count = static_cast<int>(uniform(rng, min_rays, max_rays));
    std::vector<IntVec> pts;
    int guard = 0;
    while (static_cast<int>(pts.size()) < count && guard++ < 1000) {
      IntVec v(rank);
      for (auto& x : v) x = uniform(rng, -box, box);
      if (is_zero_vec(v)) continue;
      if (rank == 2) v = primitive(v);
      if (new_direction(pts, v)) pts.push_back(v);
    }
    if (auto f = face_fan(rank, pts)) return *f;
  }
  fail("SearchCap", ErrorKind::Cap, "no random fan found");
}

IntVec ample_class(const Fan& f) {
  const auto gens = mori_cone(f);
  const int nr = f.num_rays();
  lp::Problem<Rational> p;
  p.num_vars = nr;
  p.nonneg.assign(nr, true);
  for (const auto& c : gens) p.add(RatVec(c.pairing.begin(), c.pairing.end()), lp::Relation::GreaterEq, Rational(1));
  p.objective.assign(nr, Rational(-1));
  auto res = lp::solve(p);
  if (res.status != lp::Status::Optimal) fail("NotProjective", ErrorKind::Precondition, "the fan carries no ample class");
  return cartier_multiple(f, res.x);
}

IntVec cartier_multiple(const Fan& f, const RatVec& d) {
  Integer den(1);
  for (const auto& x : d) den = lcm(den, x.get_den());
  for (int c = 0; c < static_cast<int>(f.max_cones().size()); ++c) {
    const RatMat& inv = f.cone_inverse(c);
    const Cone& cone = f.max_cones()[c];
    for (int col = 0; col < f.rank(); ++col) {
      Rational m(0);
      for (std::size_t j = 0; j < cone.size(); ++j) m -= d[cone[j]] * inv[j][col];
      m *= den;
      m.canonicalize();
      den *= m.get_den();
    }
  }
  IntVec out(d.size());
  for (std::size_t r = 0; r < d.size(); ++r) {
    Rational v = d[r] * den;
    v.canonicalize();
    out[r] = v.get_num().get_si();
  }
  return out;
}

IntVec generic_ample(const Fan& f, Rng& rng) {
  IntVec a = ample_class(f);
  for (int attempt = 0; attempt < 50; ++attempt) {
    IntVec h(a.size());
    for (std::size_t r = 0; r < a.size(); ++r) h[r] = 2 * a[r] + uniform(rng, 0, 1);
    if (is_ample(f, TDivisor::from_ints(h)) && is_free(f, h)) return h;
  }
  return a;
}

ToricPair random_klt_pair(Rng& rng, FanPtr fan) {
  static const Rational coeffs[] = {Rational(0), Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3),
                                    Rational(3, 4)};
  static const Rational weights[] = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(3)};
  TDivisor b(fan->num_rays());
  for (auto& c : b.coeffs) c = Scalar(coeffs[uniform(rng, 0, 5)]);
  // Scale the weight so the ghost is comparable to -K on the Mori cone.
  IntVec a = ample_class(*fan);
  TDivisor ad = TDivisor::from_ints(a), anti = -Scalar(1) * canonical_divisor(*fan);
  Rational ratio(1);
  for (const auto& c : mori_cone(*fan)) {
    Rational ac = intersection(ad, c).rational_part(), kc = intersection(anti, c).rational_part();
    Rational r = kc > 0 ? Rational(ac / kc) : ac;
    if (r > ratio) ratio = r;
  }
  Rational w = weights[uniform(rng, 0, 4)] / ratio;
  Integer den = (w.get_den() + w.get_num() - 1) / w.get_num();
  if (den < 1) den = 1;
  Ghost g = make_ghost(*fan, a, Scalar(Rational(Integer(1), den)));
  return make_pair(fan, b, {g});
}

ToricPair random_effective_pair(Rng& rng, FanPtr fan) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    ToricPair p = random_klt_pair(rng, fan);
    if (is_pseudo_effective(p.X(), log_canonical_class(p))) return p;
  }
  fail("SearchCap", ErrorKind::Cap, "no pseudo-effective pair found");
}

namespace {

bool has_wall(const Fan& f, const Cone& c) {
  for (const auto& w : f.walls())
    if (w.cone == c) return true;
  return false;
}

Fan search_flip_fan() {
  const std::vector<IntVec> base = {{1, 0, 0}, {0, 1, 0}, {0, 0, 2}, {2, 2, -2}};
  const std::vector<IntVec> extra = {{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}, {-1, -1, -1}, {-1, -1, 0}, {0, 0, 1},
                                     {-1, -1, 1}, {1, 1, -1}, {-1, 0, -1}, {0, -1, -1}, {1, 0, -1}, {0, 1, -1}};
  const int e = static_cast<int>(extra.size());
  for (int size = 1; size <= 4; ++size) {
    std::vector<int> pick(size);
    for (int i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      std::vector<IntVec> pts = base;
      for (int i : pick) pts.push_back(extra[i]);
      bool distinct = true;
      for (int i : pick) {
        std::vector<IntVec> others(pts.begin(), pts.end());
        others.erase(std::find(others.begin(), others.end(), extra[i]));
        if (!new_direction(others, extra[i])) distinct = false;
      }
      if (distinct) {
        if (auto f = face_fan(3, pts)) {
          if (f->flags().smooth && f->has_cone({0, 2, 3}) && f->has_cone({1, 2, 3}) && has_wall(*f, {2, 3})) {
            for (const auto& g : mori_cone(*f)) {
              bool ours = false;
              for (int w : g.walls)
                if (f->walls()[w].cone == Cone{2, 3}) ours = true;
              if (!ours || g.walls.size() != 1) continue;
              try {
                if (classify_ray(*f, g).kind == ContractionKind::Flipping) return *f;
              } catch (const Error&) {
              }
            }
          }
        }
      }
      int i = size - 1;
      while (i >= 0 && pick[i] == e - size + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  fail("SearchCap", ErrorKind::Invariant, "no completion of the flip configuration found");
}

}  // namespace

FanPtr flip_instance_fan() {
  static const FanPtr f = make_fan(search_flip_fan());
  return f;
}

CurveClass plflip_ray(const ToricPair& p) {
  for (const auto& g : mori_cone(p.X()))
    for (int w : g.walls)
      if (p.X().walls()[w].cone == Cone{2, 3}) return g;
  fail("NotExtremal", ErrorKind::Invariant, "the wall {2,3} is not on an extremal ray");
}

ToricPair plflip_instance() {
  FanPtr f = flip_instance_fan();
  TDivisor b(f->num_rays());
  b[2] = Scalar(1);
  IntVec fiber(f->num_rays(), 0);
  fiber[4] = 6;
  Ghost a = make_ghost(*f, ample_class(*f), Scalar(Rational(1, 2)));
  Ghost g = make_ghost(*f, fiber, Scalar(Rational(1, 2)));
  return make_pair(f, b, {a, g});
}

}  // namespace toricmmp
