#include "toricmmp/fan.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <functional>
#include <set>
#include <sstream>

#include "toricmmp/error.hpp"
#include "toricmmp/lp.hpp"

namespace toricmmp {

struct Fan::Cache {
  std::once_flag simplicial_once;
  std::vector<RatMat> inverses;
  std::vector<Integer> multiplicities;

  std::once_flag walls_once;
  std::vector<Wall> walls;

  std::mutex memo_mutex;
  std::map<std::string, std::shared_ptr<const void>> memo;
};

namespace {

std::string vec_string(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

IntMat cone_rows(const std::vector<IntVec>& rays, const Cone& c) {
  IntMat m;
  for (int i : c) m.push_back(rays[i]);
  return m;
}

/// Matrix whose columns are the given rays.
RatMat column_matrix(const std::vector<IntVec>& rays, const Cone& c, int rank) {
  RatMat m(rank, RatVec(c.size()));
  for (std::size_t j = 0; j < c.size(); ++j)
    for (int i = 0; i < rank; ++i) m[i][j] = Rational(static_cast<long>(rays[c[j]][i]));
  return m;
}

/// Is u a nonnegative combination of the given rays?
bool in_cone_lp(const std::vector<IntVec>& rays, const Cone& gens, const IntVec& u, int rank) {
  lp::Problem<Rational> p;
  p.num_vars = static_cast<int>(gens.size());
  p.nonneg.assign(gens.size(), true);
  for (int i = 0; i < rank; ++i) {
    RatVec row(gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) row[j] = Rational(static_cast<long>(rays[gens[j]][i]));
    p.add(row, lp::Relation::Equal, Rational(static_cast<long>(u[i])));
  }
  return lp::feasible(p);
}

bool strongly_convex(const std::vector<IntVec>& rays, const Cone& c, int rank) {
  lp::Problem<Rational> p;
  p.num_vars = rank;
  for (int i : c) p.add(to_field<Rational>(rays[i]), lp::Relation::GreaterEq, Rational(1));
  return lp::feasible(p);
}

/// Separating functional test for two cones that should meet in the face
/// spanned by their shared rays.
bool meet_in_face_lp(const std::vector<IntVec>& rays, const Cone& a, const Cone& b, const Cone& shared,
                     int rank) {
  lp::Problem<Rational> p;
  p.num_vars = rank;
  for (int i : shared) p.add(to_field<Rational>(rays[i]), lp::Relation::Equal, Rational(0));
  for (int i : a)
    if (!std::binary_search(shared.begin(), shared.end(), i))
      p.add(to_field<Rational>(rays[i]), lp::Relation::GreaterEq, Rational(1));
  for (int i : b)
    if (!std::binary_search(shared.begin(), shared.end(), i))
      p.add(to_field<Rational>(rays[i]), lp::Relation::LessEq, Rational(-1));
  return lp::feasible(p);
}

Rational eval(const RatVec& form, const IntVec& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s += form[i] * static_cast<long>(v[i]);
  return s;
}

}  // namespace

std::vector<Cone> cone_facets(const Fan& f, const Cone& c) {
  const int n = f.rank();
  std::set<Cone> facets;
  if (static_cast<int>(c.size()) < n - 1) return {};
  std::vector<int> pick(n - 1);
  std::vector<int> idx(n - 1);
  for (int i = 0; i < n - 1; ++i) idx[i] = i;
  const int k = static_cast<int>(c.size());
  while (true) {
    IntMat rows;
    for (int i : idx) rows.push_back(f.ray(c[i]));
    RatMat m = to_field<Rational>(rows);
    if (rank(m) == n - 1) {
      auto ns = nullspace(m, n);
      const RatVec& h = ns.front();
      int pos = 0, neg = 0;
      Cone on;
      for (int r : c) {
        int s = sgn(eval(h, f.ray(r)));
        if (s > 0) ++pos;
        else if (s < 0) ++neg;
        else on.push_back(r);
      }
      if (pos == 0 || neg == 0) facets.insert(on);
    }
    if (n - 1 == 0) break;
    int i = n - 2;
    while (i >= 0 && idx[i] == k - (n - 1) + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < n - 1; ++j) idx[j] = idx[j - 1] + 1;
  }
  return {facets.begin(), facets.end()};
}

Fan Fan::build(int rank, std::vector<IntVec> rays, std::vector<Cone> max_cones,
               std::vector<std::string>* warnings) {
  if (rank < 1) fail("InvalidRay", ErrorKind::Input, "rank must be >= 1");
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (static_cast<int>(rays[i].size()) != rank)
      fail("InvalidRay", ErrorKind::Input, "ray " + std::to_string(i) + " has the wrong length");
    if (is_zero_vec(rays[i])) fail("InvalidRay", ErrorKind::Input, "ray " + std::to_string(i) + " is zero");
    if (gcd_of(rays[i]) != 1) {
      if (warnings)
        warnings->push_back("NonPrimitiveRay: ray " + std::to_string(i) + " " + vec_string(rays[i]) +
                            " normalized");
      rays[i] = primitive(rays[i]);
    }
  }
  {
    std::set<IntVec> seen;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (!seen.insert(rays[i]).second)
        fail("DuplicateRay", ErrorKind::Input, "ray " + vec_string(rays[i]) + " listed twice");
  }
  const int nr = static_cast<int>(rays.size());
  std::vector<bool> used(nr, false);
  for (auto& c : max_cones) {
    if (c.empty()) fail("InvalidCone", ErrorKind::Input, "empty cone");
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end())
      fail("InvalidCone", ErrorKind::Input, "cone lists a ray twice");
    for (int i : c) {
      if (i < 0 || i >= nr) fail("InvalidCone", ErrorKind::Input, "ray index out of range");
      used[i] = true;
    }
  }
  for (int i = 0; i < nr; ++i)
    if (!used[i]) fail("DanglingRay", ErrorKind::Input, "ray " + vec_string(rays[i]) + " lies in no cone");

  const int nc = static_cast<int>(max_cones.size());
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b) {
      if (a == b) continue;
      if (std::includes(max_cones[b].begin(), max_cones[b].end(), max_cones[a].begin(), max_cones[a].end()))
        fail("InvalidCone", ErrorKind::Input,
             "cone " + std::to_string(a) + " is contained in cone " + std::to_string(b));
    }

  Fan f;
  f.rank_ = rank;
  f.rays_ = std::move(rays);
  f.cones_ = std::move(max_cones);
  f.cache_ = std::make_shared<Cache>();

  std::vector<bool> independent(nc);
  for (int c = 0; c < nc; ++c) {
    const Cone& cone = f.cones_[c];
    independent[c] = rank_int(cone_rows(f.rays_, cone)) == static_cast<int>(cone.size());
    if (independent[c]) continue;
    if (!strongly_convex(f.rays_, cone, rank))
      fail("InvalidCone", ErrorKind::Input, "cone " + std::to_string(c) + " is not strongly convex");
    for (std::size_t j = 0; j < cone.size(); ++j) {
      Cone others;
      for (std::size_t k = 0; k < cone.size(); ++k)
        if (k != j) others.push_back(cone[k]);
      if (in_cone_lp(f.rays_, others, f.rays_[cone[j]], rank))
        fail("InvalidCone", ErrorKind::Input,
             "ray " + std::to_string(cone[j]) + " is not extremal in cone " + std::to_string(c));
    }
  }

  // Cheap separating candidates for full-dimensional simplicial cones: the
  // linear form that is 1 on the non-shared rays of one cone and 0 on the shared ones.
  std::vector<std::optional<RatMat>> inv(nc);
  for (int c = 0; c < nc; ++c)
    if (independent[c] && static_cast<int>(f.cones_[c].size()) == rank)
      inv[c] = inverse(column_matrix(f.rays_, f.cones_[c], rank));

  auto candidate_separates = [&](int a, int b, const Cone& shared) {
    if (!inv[a]) return false;
    const Cone& ca = f.cones_[a];
    RatVec h(rank, Rational(0));
    for (std::size_t j = 0; j < ca.size(); ++j) {
      if (std::binary_search(shared.begin(), shared.end(), ca[j])) continue;
      for (int i = 0; i < rank; ++i) h[i] += (*inv[a])[j][i];
    }
    for (int r : f.cones_[b]) {
      if (std::binary_search(shared.begin(), shared.end(), r)) continue;
      if (sgn(eval(h, f.rays_[r])) >= 0) return false;
    }
    return true;
  };

  for (int a = 0; a < nc; ++a)
    for (int b = a + 1; b < nc; ++b) {
      Cone shared;
      std::set_intersection(f.cones_[a].begin(), f.cones_[a].end(), f.cones_[b].begin(), f.cones_[b].end(),
                            std::back_inserter(shared));
      if (candidate_separates(a, b, shared) || candidate_separates(b, a, shared)) continue;
      if (!meet_in_face_lp(f.rays_, f.cones_[a], f.cones_[b], shared, rank))
        fail("OverlappingCones", ErrorKind::Input,
             "cones " + std::to_string(a) + " and " + std::to_string(b) + " do not meet in a common face");
    }

  f.compute_flags();
  return f;
}

void Fan::compute_flags() {
  flags_ = {};
  bool simplicial = true, smooth = true, full = true;
  for (const auto& c : cones_) {
    IntMat rows = cone_rows(rays_, c);
    int r = rank_int(rows);
    if (r != static_cast<int>(c.size())) {
      simplicial = false;
      smooth = false;
    } else if (max_minor_gcd(rows) != 1) {
      smooth = false;
    }
    if (r != rank_) full = false;
  }
  bool complete = full && !cones_.empty();
  if (complete) {
    std::map<Cone, int> facet_count;
    for (const auto& c : cones_)
      for (const auto& fc : cone_facets(*this, c)) ++facet_count[fc];
    for (const auto& [fc, count] : facet_count)
      if (count != 2) complete = false;
  }
  flags_.simplicial = simplicial;
  flags_.smooth = smooth;
  flags_.complete = complete;
}

void Fan::ensure_simplicial_data() const {
  std::call_once(cache_->simplicial_once, [this] {
    cache_->inverses.resize(cones_.size());
    cache_->multiplicities.resize(cones_.size());
    for (std::size_t c = 0; c < cones_.size(); ++c) {
      if (static_cast<int>(cones_[c].size()) != rank_) continue;
      RatMat m = column_matrix(rays_, cones_[c], rank_);
      if (auto inv = inverse(m)) {
        cache_->inverses[c] = std::move(*inv);
        Integer d = det_int(cone_rows(rays_, cones_[c]));
        cache_->multiplicities[c] = abs(d);
      }
    }
  });
}

const RatMat& Fan::cone_inverse(int cone) const {
  ensure_simplicial_data();
  const auto& m = cache_->inverses[cone];
  if (m.empty()) fail("NotSimplicial", ErrorKind::Precondition, "cone is not full-dimensional simplicial");
  return m;
}

const Integer& Fan::cone_multiplicity(int cone) const {
  ensure_simplicial_data();
  return cache_->multiplicities[cone];
}

const std::vector<Wall>& Fan::walls() const {
  if (!flags_.simplicial) fail("NotSimplicial", ErrorKind::Precondition, "walls need a simplicial fan");
  std::call_once(cache_->walls_once, [this] {
    std::map<Cone, std::vector<std::pair<int, int>>> by_facet;
    for (int c = 0; c < static_cast<int>(cones_.size()); ++c) {
      if (static_cast<int>(cones_[c].size()) != rank_) continue;
      for (std::size_t j = 0; j < cones_[c].size(); ++j) {
        Cone facet;
        for (std::size_t k = 0; k < cones_[c].size(); ++k)
          if (k != j) facet.push_back(cones_[c][k]);
        by_facet[facet].push_back({c, cones_[c][j]});
      }
    }
    for (const auto& [facet, owners] : by_facet) {
      if (owners.size() != 2) continue;
      Wall w;
      w.cone = facet;
      w.adjacent = {owners[0].first, owners[1].first};
      w.off_wall = {owners[0].second, owners[1].second};
      Cone support = facet;
      support.push_back(w.off_wall[0]);
      support.push_back(w.off_wall[1]);
      RatMat m = column_matrix(rays_, support, rank_);
      auto ns = nullspace(m, static_cast<int>(support.size()));
      if (ns.size() != 1) fail("InvalidCone", ErrorKind::Invariant, "wall relation is not unique");
      IntVec coeffs = primitive_from_rational(ns.front());
      const std::size_t ia = support.size() - 2, ib = support.size() - 1;
      if (coeffs[ia] < 0)
        for (auto& x : coeffs) x = -x;
      if (coeffs[ia] <= 0 || coeffs[ib] <= 0)
        fail("OverlappingCones", ErrorKind::Invariant, "adjacent cones lie on the same side of a wall");
      w.relation.assign(rays_.size(), 0);
      for (std::size_t j = 0; j < support.size(); ++j) w.relation[support[j]] = coeffs[j];
      cache_->walls.push_back(std::move(w));
    }
  });
  return cache_->walls;
}

std::optional<int> Fan::ray_index(const IntVec& v) const {
  for (int i = 0; i < num_rays(); ++i)
    if (rays_[i] == v) return i;
  return std::nullopt;
}

std::optional<Fan::Location> Fan::locate(const IntVec& v) const {
  ensure_simplicial_data();
  for (int c = 0; c < static_cast<int>(cones_.size()); ++c) {
    const auto& inv = cache_->inverses[c];
    if (!inv.empty()) {
      RatVec coords(cones_[c].size());
      bool ok = true;
      for (std::size_t j = 0; j < cones_[c].size() && ok; ++j) {
        coords[j] = eval(inv[j], v);
        if (sgn(coords[j]) < 0) ok = false;
      }
      if (ok) return Location{c, coords};
    } else if (in_cone_lp(rays_, cones_[c], v, rank_)) {
      // Coordinates are only meaningful for simplicial cones; report the cone.
      RatMat m = column_matrix(rays_, cones_[c], rank_);
      RatVec coords(cones_[c].size(), Rational(0));
      if (static_cast<int>(cones_[c].size()) <= rank_ && toricmmp::rank(m) == static_cast<int>(cones_[c].size())) {
        // Solve the overdetermined but consistent system through the normal equations.
        RatMat aug = m;
        for (int i = 0; i < rank_; ++i) aug[i].push_back(Rational(static_cast<long>(v[i])));
        auto piv = row_reduce(aug);
        for (std::size_t r = 0; r < piv.size(); ++r)
          if (piv[r] < static_cast<int>(coords.size())) coords[piv[r]] = aug[r].back();
      }
      return Location{c, coords};
    }
  }
  return std::nullopt;
}

std::shared_ptr<const void> Fan::memo(const std::string& key,
                                     const std::function<std::shared_ptr<const void>()>& make) const {
  {
    std::lock_guard<std::mutex> lock(cache_->memo_mutex);
    auto it = cache_->memo.find(key);
    if (it != cache_->memo.end()) return it->second;
  }
  auto value = make();
  std::lock_guard<std::mutex> lock(cache_->memo_mutex);
  return cache_->memo.emplace(key, value).first->second;
}

bool Fan::has_cone(const Cone& c) const {
  Cone s = c;
  std::sort(s.begin(), s.end());
  for (const auto& mc : cones_)
    if (std::includes(mc.begin(), mc.end(), s.begin(), s.end())) return true;
  return false;
}

bool operator==(const Fan& a, const Fan& b) {
  if (a.rank_ != b.rank_ || a.rays_ != b.rays_) return false;
  std::set<Cone> ca(a.cones_.begin(), a.cones_.end()), cb(b.cones_.begin(), b.cones_.end());
  return ca == cb;
}

std::string Fan::canonical_string() const {
  std::vector<std::string> cones;
  for (const auto& c : cones_) {
    std::vector<IntVec> vs;
    for (int i : c) vs.push_back(rays_[i]);
    std::sort(vs.begin(), vs.end());
    std::string s = "[";
    for (const auto& v : vs) s += vec_string(v);
    cones.push_back(s + "]");
  }
  std::sort(cones.begin(), cones.end());
  std::string out = "rank" + std::to_string(rank_) + ":";
  for (const auto& s : cones) out += s;
  return out;
}

std::uint64_t Fan::canonical_hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : canonical_string()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

bool same_fan(const Fan& a, const Fan& b) { return a.canonical_string() == b.canonical_string(); }

Fan star_subdivision(const Fan& f, const IntVec& v_in) {
  if (!f.is_simplicial()) fail("NotSimplicial", ErrorKind::Precondition, "star subdivision needs a simplicial fan");
  if (is_zero_vec(v_in) || static_cast<int>(v_in.size()) != f.rank())
    fail("InvalidRay", ErrorKind::Input, "subdivision vector must be nonzero of length rank");
  IntVec v = primitive(v_in);
  if (f.ray_index(v)) return f;
  auto loc = f.locate(v);
  if (!loc) fail("VectorOutsideSupport", ErrorKind::Precondition, "vector " + vec_string(v) + " is outside the support");
  Cone tau;
  const Cone& home = f.max_cones()[loc->cone];
  for (std::size_t j = 0; j < home.size(); ++j)
    if (sgn(loc->coords[j]) > 0) tau.push_back(home[j]);
  const int new_ray = f.num_rays();
  std::vector<IntVec> rays = f.rays();
  rays.push_back(v);
  std::vector<Cone> cones;
  for (const auto& c : f.max_cones()) {
    if (!std::includes(c.begin(), c.end(), tau.begin(), tau.end())) {
      cones.push_back(c);
      continue;
    }
    for (int r : tau) {
      Cone nc;
      for (int x : c)
        if (x != r) nc.push_back(x);
      nc.push_back(new_ray);
      cones.push_back(nc);
    }
  }
  return Fan::build(f.rank(), rays, cones);
}

std::optional<IntMat> find_isomorphism(const Fan& a, const Fan& b) {
  const int n = a.rank();
  if (n != b.rank() || a.num_rays() != b.num_rays() || a.max_cones().size() != b.max_cones().size())
    return std::nullopt;
  // n independent rays of a, taken from one maximal cone.
  Cone base;
  for (const auto& c : a.max_cones()) {
    if (static_cast<int>(c.size()) < n) continue;
    Cone pick;
    for (int r : c) {
      Cone trial = pick;
      trial.push_back(r);
      if (rank_int(cone_rows(a.rays(), trial)) == static_cast<int>(trial.size())) pick = trial;
      if (static_cast<int>(pick.size()) == n) break;
    }
    if (static_cast<int>(pick.size()) == n) {
      base = pick;
      break;
    }
  }
  if (base.empty()) return std::nullopt;
  auto src_inv = inverse(column_matrix(a.rays(), base, n));
  if (!src_inv) return std::nullopt;

  std::set<Cone> b_cones;
  for (auto c : b.max_cones()) {
    std::sort(c.begin(), c.end());
    b_cones.insert(c);
  }
  std::map<IntVec, int> b_index;
  for (int i = 0; i < b.num_rays(); ++i) b_index[b.ray(i)] = i;

  // The base rays lie in one maximal cone of a; their images lie in one of b.
  for (const auto& target : b.max_cones()) {
    if (static_cast<int>(target.size()) < n) continue;
    std::vector<int> choice(n);
    std::vector<int> perm(target.size());
    // Enumerate ordered n-tuples of distinct rays of the target cone.
    std::function<std::optional<IntMat>(int, std::vector<bool>&)> rec =
        [&](int depth, std::vector<bool>& taken) -> std::optional<IntMat> {
      if (depth == n) {
        RatMat dst = column_matrix(b.rays(), choice, n);
        RatMat m(n, RatVec(n, Rational(0)));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) m[i][j] += dst[i][k] * (*src_inv)[k][j];
        IntMat mi(n, IntVec(n));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            if (m[i][j].get_den() != 1) return std::nullopt;
            mi[i][j] = m[i][j].get_num().get_si();
          }
        Integer d = det_int(mi);
        if (d != 1 && d != -1) return std::nullopt;
        std::vector<int> image(a.num_rays());
        for (int r = 0; r < a.num_rays(); ++r) {
          IntVec w(n, 0);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w[i] += mi[i][j] * a.ray(r)[j];
          auto it = b_index.find(w);
          if (it == b_index.end()) return std::nullopt;
          image[r] = it->second;
        }
        for (const auto& c : a.max_cones()) {
          Cone mapped;
          for (int r : c) mapped.push_back(image[r]);
          std::sort(mapped.begin(), mapped.end());
          if (!b_cones.count(mapped)) return std::nullopt;
        }
        return mi;
      }
      for (std::size_t k = 0; k < target.size(); ++k) {
        if (taken[k]) continue;
        taken[k] = true;
        choice[depth] = target[k];
        if (auto r = rec(depth + 1, taken)) return r;
        taken[k] = false;
      }
      return std::nullopt;
    };
    std::vector<bool> taken(target.size(), false);
    if (auto r = rec(0, taken)) return r;
  }
  return std::nullopt;
}

}  // namespace toricmmp
