#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace toricmmp {

using Integer = mpz_class;
using Rational = mpq_class;

/// An element a + b*sqrt(root) of a real quadratic field, or a rational
/// number when b == 0.
///
/// The root is carried by each value (0 for rationals). Arithmetic between two
/// irrational values with different roots throws MixedRoot, so a computation
/// lives in one field Q(sqrt(s)) at a time. All comparisons are exact.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : a_(v) {}                 // NOLINT(google-explicit-constructor)
  Scalar(long v) : a_(v) {}                // NOLINT(google-explicit-constructor)
  Scalar(long long v) : a_(static_cast<long>(v)) {}  // NOLINT
  Scalar(const Rational& v) : a_(v) {}     // NOLINT(google-explicit-constructor)
  Scalar(const Integer& v) : a_(v) {}      // NOLINT(google-explicit-constructor)
  Scalar(Rational a, Rational b, long root);

  /// Parses "p/q", "p", or "a+b*sqrt(s)" forms as produced by to_string().
  static Scalar parse(const std::string& text);
  static Scalar sqrt_of(long root) { return Scalar(Rational(0), Rational(1), root); }

  const Rational& rational_part() const { return a_; }
  const Rational& irrational_part() const { return b_; }
  long root() const { return root_; }
  bool is_rational() const { return b_ == 0; }

  int sign() const;
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

  friend bool operator==(const Scalar& x, const Scalar& y) { return (x - y).is_zero(); }
  friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Integer floor() const;
  Integer ceil() const;
  /// x - floor(x), always in [0, 1).
  Scalar fractional_part() const { return *this - Scalar(floor()); }
  Scalar abs() const { return sign() < 0 ? -*this : *this; }
  /// Conjugate a - b*sqrt(root).
  Scalar conjugate() const;

  double to_double() const;
  /// Exact text: "p/q" for rationals, "a+b*sqrt(s)" otherwise.
  std::string to_string() const;

 private:
  void normalize();
  static long common_root(const Scalar& x, const Scalar& y);

  Rational a_{0};
  Rational b_{0};
  long root_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Least common multiple of the denominators of a rational scalar's parts.
Integer denominator_lcm(const Scalar& s);

Integer lcm(const Integer& a, const Integer& b);

/// Continued fraction of a scalar: the first `count` partial quotients.
std::vector<Integer> continued_fraction(Scalar x, int count);

}  // namespace toricmmp
