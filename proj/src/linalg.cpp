#include "toricmmp/linalg.hpp"

#include <cstdlib>

#include "toricmmp/error.hpp"

namespace toricmmp {

long long gcd_of(const IntVec& v) {
  long long g = 0;
  for (long long x : v) g = std::gcd(g, std::llabs(x));
  return g;
}

IntVec primitive(const IntVec& v) {
  long long g = gcd_of(v);
  if (g == 0) return v;
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

bool is_zero_vec(const IntVec& v) {
  for (long long x : v)
    if (x != 0) return false;
  return true;
}

long long dot(const IntVec& a, const IntVec& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVec add(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVec primitive_from_rational(const RatVec& v) {
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, x.get_den());
  std::vector<Integer> num;
  Integer g = 0;
  for (const auto& x : v) {
    Integer n = x.get_num() * (den / x.get_den());
    num.push_back(n);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  IntVec out(v.size(), 0);
  if (g == 0) return out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Integer q = num[i] / g;
    if (!q.fits_slong_p()) fail("Overflow", ErrorKind::Invariant, "vector entry exceeds 64 bits");
    out[i] = q.get_si();
  }
  return out;
}

Integer det_int(const IntMat& m) {
  Rational d = determinant(to_field<Rational>(m));
  return d.get_num();
}

Integer max_minor_gcd(const IntMat& rows) {
  const int k = static_cast<int>(rows.size());
  if (k == 0) return 1;
  const int n = static_cast<int>(rows[0].size());
  Integer g = 0;
  std::vector<int> cols(k);
  std::iota(cols.begin(), cols.end(), 0);
  while (true) {
    IntMat sub(k, IntVec(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub[i][j] = rows[i][cols[j]];
    Integer d = det_int(sub);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    int i = k - 1;
    while (i >= 0 && cols[i] == n - k + i) --i;
    if (i < 0) break;
    ++cols[i];
    for (int j = i + 1; j < k; ++j) cols[j] = cols[j - 1] + 1;
  }
  return g;
}

namespace {

long long ext_gcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return std::llabs(a);
  }
  long long x1 = 0, y1 = 0;
  long long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

}  // namespace

UnimodularCompletion complete_basis(const IntVec& u) {
  const int n = static_cast<int>(u.size());
  if (gcd_of(u) != 1) fail("NonPrimitiveRay", ErrorKind::Input, "complete_basis needs a primitive vector");
  IntVec w = u;
  IntMat uu(n, IntVec(n, 0)), uinv(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) uu[i][i] = uinv[i][i] = 1;
  for (int i = n - 1; i >= 1; --i) {
    long long a = w[i - 1], b = w[i];
    if (b == 0) continue;
    long long x = 0, y = 0;
    long long g = ext_gcd(a, b, x, y);
    // Left-multiply rows (i-1, i) by [[x, y], [-b/g, a/g]] (determinant 1).
    long long p = -b / g, q = a / g;
    for (int c = 0; c < n; ++c) {
      long long r0 = uu[i - 1][c], r1 = uu[i][c];
      uu[i - 1][c] = x * r0 + y * r1;
      uu[i][c] = p * r0 + q * r1;
    }
    // Right-multiply columns (i-1, i) of the inverse by [[q, -y], [-p, x]].
    for (int r = 0; r < n; ++r) {
      long long c0 = uinv[r][i - 1], c1 = uinv[r][i];
      uinv[r][i - 1] = c0 * q - c1 * p;
      uinv[r][i] = -c0 * y + c1 * x;
    }
    w[i - 1] = g;
    w[i] = 0;
  }
  if (w[0] == -1) {
    for (int c = 0; c < n; ++c) uu[0][c] = -uu[0][c];
    for (int r = 0; r < n; ++r) uinv[r][0] = -uinv[r][0];
  }
  // uu * u = e1, so uinv = uu^{-1} has first column u.
  return {uinv, uu};
}

}  // namespace toricmmp
