#pragma once

#include <functional>
#include <string>

#include "toricmmp/birational.hpp"
#include "toricmmp/error.hpp"

namespace fixtures {

using namespace toricmmp;

inline FanPtr p2() { return make_fan(Fan::build(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}})); }

/// F_a with rays (1,0), (0,1), (-1,a), (0,-1).
inline FanPtr hirzebruch(long long a) {
  return make_fan(Fan::build(2, {{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}));
}

inline FanPtr p1xp1() { return hirzebruch(0); }

inline std::string code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

inline TDivisor div(std::initializer_list<Rational> xs) {
  std::vector<Scalar> c;
  for (const auto& x : xs) c.emplace_back(x);
  return TDivisor(c);
}

inline Rational q(long n, long d = 1) { return Rational(n, d); }

}  // namespace fixtures
