#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace ksplit {

/// Arbitrary precision integer. Small values stay inline, so the common
/// case of tiny moduli does not allocate.
using Integer = boost::multiprecision::cpp_int;

/// Coordinate vector of a group element, or a generic integer vector.
using Vector = std::vector<Integer>;

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

/// Non-negative gcd; gcd(0, 0) = 0.
inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a) / gcd(a, b) * abs(b);
}

/// Remainder in [0, |m|). Identity when m == 0 (free coordinate).
inline Integer mod(const Integer& a, const Integer& m) {
  if (m == 0) return a;
  Integer r = a % m;
  if (r < 0) r += abs(m);
  return r;
}

/// Floor division, b != 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Extended gcd: returns g = gcd(a, b) >= 0 and sets x, y with a x + b y = g.
Integer extended_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y);

inline std::string to_string(const Integer& a) { return a.str(); }

std::string to_string(const Vector& v);

bool is_zero(const Vector& v);

}  // namespace ksplit
