#include "toricmmp/polytope.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace toricmmp {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

template <class F>
bool lex_less(const Vec<F>& x, const Vec<F>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < y[i]) return true;
    if (y[i] < x[i]) return false;
  }
  return false;
}

}  // namespace

template <class F>
std::vector<Vec<F>> vertices(int dim, const IntMat& normals, const Vec<F>& bounds) {
  std::vector<Vec<F>> out;
  const int m = static_cast<int>(normals.size());
  if (m < dim) return out;
  std::vector<int> idx(dim);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    Mat<F> a(dim, Vec<F>(dim));
    Vec<F> b(dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) a[i][j] = F(static_cast<long>(normals[idx[i]][j]));
      b[i] = bounds[idx[i]];
    }
    if (auto x = solve_square(a, b)) {
      bool ok = true;
      for (int r = 0; r < m && ok; ++r) {
        F s(0);
        for (int j = 0; j < dim; ++j)
          if (normals[r][j] != 0) s += F(static_cast<long>(normals[r][j])) * (*x)[j];
        if (s < bounds[r]) ok = false;
      }
      if (ok) out.push_back(*x);
    }
    int i = dim - 1;
    while (i >= 0 && idx[i] == m - dim + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < dim; ++j) idx[j] = idx[j - 1] + 1;
  }
  std::sort(out.begin(), out.end(), lex_less<F>);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template std::vector<Vec<Rational>> vertices<Rational>(int, const IntMat&, const Vec<Rational>&);
template std::vector<Vec<Scalar>> vertices<Scalar>(int, const IntMat&, const Vec<Scalar>&);

std::vector<RatVec> vertices(const IntPolytope& p) {
  RatVec b;
  for (long long c : p.bounds) b.emplace_back(static_cast<long>(c));
  return vertices<Rational>(p.dim, p.normals, b);
}

std::optional<std::pair<IntVec, IntVec>> bounding_box(const IntPolytope& p) {
  auto verts = vertices(p);
  if (verts.empty()) return std::nullopt;
  IntVec lo(p.dim), hi(p.dim);
  for (int j = 0; j < p.dim; ++j) {
    Rational mn = verts[0][j], mx = verts[0][j];
    for (const auto& v : verts) {
      mn = std::min(mn, v[j]);
      mx = std::max(mx, v[j]);
    }
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), mn.get_num_mpz_t(), mn.get_den_mpz_t());
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), mx.get_num_mpz_t(), mx.get_den_mpz_t());
    lo[j] = c.get_si();
    hi[j] = f.get_si();
  }
  return std::make_pair(lo, hi);
}

namespace {

struct Enumerator {
  const IntPolytope& p;
  IntVec lo, hi;
  IntVec x;
  std::vector<long long> partial;  // running a_i . x over fixed coordinates

  // Interval for the last coordinate given the partial sums.
  bool last_interval(long long& from, long long& to) const {
    const int d = p.dim - 1;
    from = lo[d];
    to = hi[d];
    for (std::size_t i = 0; i < p.normals.size(); ++i) {
      long long a = p.normals[i][d];
      long long rest = p.bounds[i] - partial[i];
      if (a > 0) from = std::max(from, ceil_div(rest, a));
      else if (a < 0) to = std::min(to, floor_div(rest, a));
      else if (rest > 0) return false;
    }
    return from <= to;
  }

  template <class Leaf>
  void recurse(int level, Leaf& leaf) {
    if (level == p.dim - 1) {
      long long from = 0, to = 0;
      if (last_interval(from, to)) leaf(from, to);
      return;
    }
    for (long long v = lo[level]; v <= hi[level]; ++v) {
      x[level] = v;
      for (std::size_t i = 0; i < p.normals.size(); ++i) partial[i] += p.normals[i][level] * v;
      recurse(level + 1, leaf);
      for (std::size_t i = 0; i < p.normals.size(); ++i) partial[i] -= p.normals[i][level] * v;
    }
  }
};

}  // namespace

void for_each_lattice_point(const IntPolytope& p, const std::function<void(const IntVec&)>& visit) {
  auto box = bounding_box(p);
  if (!box) return;
  Enumerator e{p, box->first, box->second, IntVec(p.dim, 0), std::vector<long long>(p.normals.size(), 0)};
  auto leaf = [&](long long from, long long to) {
    for (long long v = from; v <= to; ++v) {
      e.x[p.dim - 1] = v;
      visit(e.x);
    }
  };
  e.recurse(0, leaf);
}

std::vector<IntVec> lattice_points(const IntPolytope& p) {
  std::vector<IntVec> pts;
  for_each_lattice_point(p, [&](const IntVec& x) { pts.push_back(x); });
  return pts;
}

long long count_lattice_points(const IntPolytope& p) {
  auto box = bounding_box(p);
  if (!box) return 0;
  Enumerator e{p, box->first, box->second, IntVec(p.dim, 0), std::vector<long long>(p.normals.size(), 0)};
  long long count = 0;
  auto leaf = [&](long long from, long long to) { count += to - from + 1; };
  e.recurse(0, leaf);
  return count;
}

}  // namespace toricmmp
