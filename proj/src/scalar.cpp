#include "toricmmp/scalar.hpp"

#include <cmath>
#include <ostream>

#include "toricmmp/error.hpp"

namespace toricmmp {

namespace {

bool is_square_free(long s) {
  if (s <= 1) return false;
  for (long p = 2; p * p <= s; ++p)
    if (s % (p * p) == 0) return false;
  return true;
}

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != ' ') t.push_back(c);
  if (t.empty() || t == "+" || t == "-") fail("ParseError", ErrorKind::Input, "empty number");
  if (t.front() == '+') t.erase(t.begin());
  Rational r;
  try {
    if (r.set_str(t, 10) != 0) throw std::invalid_argument(t);
  } catch (const std::invalid_argument&) {
    fail("ParseError", ErrorKind::Input, "not a rational number: '" + text + "'");
  }
  if (r.get_den() == 0) fail("ParseError", ErrorKind::Input, "zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

}  // namespace

Scalar::Scalar(Rational a, Rational b, long root) : a_(std::move(a)), b_(std::move(b)), root_(root) {
  if (b_ != 0 && !is_square_free(root_))
    fail("ParseError", ErrorKind::Input, "root must be a square-free integer > 1, got " + std::to_string(root_));
  normalize();
}

void Scalar::normalize() {
  if (b_ == 0) root_ = 0;
}

long Scalar::common_root(const Scalar& x, const Scalar& y) {
  if (x.root_ == 0) return y.root_;
  if (y.root_ == 0 || y.root_ == x.root_) return x.root_;
  fail("MixedRoot", ErrorKind::Input,
       "cannot combine sqrt(" + std::to_string(x.root_) + ") and sqrt(" + std::to_string(y.root_) + ")");
}

int Scalar::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 * root.
  Rational lhs = a_ * a_;
  Rational rhs = b_ * b_ * root_;
  return lhs > rhs ? sa : sb;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  long r = common_root(*this, o);
  a_ += o.a_;
  b_ += o.b_;
  root_ = r;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  long r = common_root(*this, o);
  a_ -= o.a_;
  b_ -= o.b_;
  root_ = r;
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (o.b_ == 0) {
    a_ *= o.a_;
    b_ *= o.a_;
    normalize();
    return *this;
  }
  long r = common_root(*this, o);
  Rational na = a_ * o.a_ + b_ * o.b_ * r;
  Rational nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  root_ = r;
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) fail("DivisionByZero", ErrorKind::Invariant, "scalar division by zero");
  if (o.b_ == 0) {
    a_ /= o.a_;
    b_ /= o.a_;
    normalize();
    return *this;
  }
  // 1/(c + d sqrt r) = (c - d sqrt r) / (c^2 - d^2 r)
  Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * o.root_;
  Scalar inv(o.a_ / norm, -o.b_ / norm, o.root_);
  return *this *= inv;
}

Scalar Scalar::conjugate() const {
  Scalar r = *this;
  r.b_ = -r.b_;
  return r;
}

Integer Scalar::floor() const {
  if (b_ == 0) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a_.get_num_mpz_t(), a_.get_den_mpz_t());
    return q;
  }
  mpf_class approx(0, 256);
  mpf_class root_f(root_, 256);
  approx = mpf_class(a_, 256) + mpf_class(b_, 256) * sqrt(root_f);
  mpf_class fl(0, 256);
  mpf_floor(fl.get_mpf_t(), approx.get_mpf_t());
  Integer n(fl);
  // The approximation is very close; settle the last unit exactly.
  while (Scalar(n) > *this) n -= 1;
  while (Scalar(Integer(n + 1)) <= *this) n += 1;
  return n;
}

Integer Scalar::ceil() const {
  Integer f = floor();
  if (Scalar(f) == *this) return f;
  return f + 1;
}

double Scalar::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(root_));
}

std::string Scalar::to_string() const {
  if (b_ == 0) return a_.get_str();
  std::string irr = (b_ == 1 ? std::string() : (b_ == -1 ? std::string("-") : b_.get_str() + "*"));
  irr += "sqrt(" + std::to_string(root_) + ")";
  if (a_ == 0) return irr;
  if (b_ < 0) {
    Rational mb = -b_;
    std::string pos = (mb == 1 ? std::string() : mb.get_str() + "*") + "sqrt(" + std::to_string(root_) + ")";
    return a_.get_str() + "-" + pos;
  }
  return a_.get_str() + "+" + irr;
}

Scalar Scalar::parse(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (c != ' ') text.push_back(c);
  auto pos = text.find("sqrt(");
  if (pos == std::string::npos) return Scalar(parse_rational(text));
  auto close = text.find(')', pos);
  if (close == std::string::npos || close + 1 != text.size())
    fail("ParseError", ErrorKind::Input, "malformed quadratic scalar '" + raw + "'");
  long root = 0;
  try {
    root = std::stol(text.substr(pos + 5, close - pos - 5));
  } catch (const std::exception&) {
    fail("ParseError", ErrorKind::Input, "malformed root in '" + raw + "'");
  }
  // Coefficient of sqrt: the text between the last top-level sign and "sqrt(".
  std::string head = text.substr(0, pos);
  if (!head.empty() && head.back() == '*') head.pop_back();
  // Split head into rational part and coefficient at the last '+'/'-' that is
  // not the leading sign and not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = head.size(); i-- > 1;) {
    if (head[i] == '+' || head[i] == '-') {
      split = i;
      break;
    }
  }
  Rational a(0), b(1);
  std::string coeff = head;
  if (split != std::string::npos) {
    a = parse_rational(head.substr(0, split));
    coeff = head.substr(split);
  }
  if (coeff.empty() || coeff == "+") b = 1;
  else if (coeff == "-") b = -1;
  else b = parse_rational(coeff);
  return Scalar(a, b, root);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer denominator_lcm(const Scalar& s) {
  return lcm(s.rational_part().get_den(), s.irrational_part().get_den());
}

std::vector<Integer> continued_fraction(Scalar x, int count) {
  std::vector<Integer> out;
  for (int i = 0; i < count; ++i) {
    Integer q = x.floor();
    out.push_back(q);
    Scalar rest = x - Scalar(q);
    if (rest.is_zero()) break;
    x = Scalar(1) / rest;
  }
  return out;
}

}  // namespace toricmmp
