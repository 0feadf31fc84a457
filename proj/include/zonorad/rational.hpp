#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace zr {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Error kinds map 1:1 onto the contracts of the public operations; the CLI
// translates them into exit statuses.
enum class ErrorKind {
  BadInput,
  ZeroDirection,
  LengthMismatch,
  NotPrimitive,
  SingularInput,
  BadIndexSet,
  BadParameters,
  RankDeficient,
  DimensionMismatch,
  DegenerateDimension,
  IrrationalDirection,
  ZeroCoordinate,
  NonPositiveVelocity,
  DegenerateVelocities,
  UnknownKind,
  BudgetExceeded,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }
inline Rat abs_rat(const Rat& a) { return a < 0 ? Rat(-a) : a; }

inline Int gcd_int(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline Int lcm_int(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs_int(a / gcd_int(a, b) * b);
}

// Largest integer <= r.
inline Int floor_rat(const Rat& r) {
  Int q = num(r) / den(r);
  if (num(r) < 0 && q * den(r) != num(r)) --q;
  return q;
}

inline Int ceil_rat(const Rat& r) { return -floor_rat(-r); }

// Nearest integer; half-integers round down for determinism.
inline Int round_rat(const Rat& r) { return floor_rat(r + Rat(1, 2)); }

// Fractional part in [0, 1).
inline Rat frac_rat(const Rat& r) { return r - Rat(floor_rat(r)); }

// Distance to the nearest integer, in [0, 1/2].
inline Rat dist_to_int(const Rat& r) {
  Rat f = frac_rat(r);
  Rat g = 1 - f;
  return f <= g ? f : g;
}

// Canonical serialization: "p" for integers, "p/q" otherwise (q > 0).
inline std::string rat_to_string(const Rat& r) {
  std::string s = num(r).str();
  if (den(r) != 1) {
    s += '/';
    s += den(r).str();
  }
  return s;
}

inline Rat rat_from_string(std::string_view s) {
  if (s.empty()) throw Error(ErrorKind::BadInput, "empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) return Rat(Int(std::string(s)));
    Int p{std::string(s.substr(0, slash))};
    Int q{std::string(s.substr(slash + 1))};
    if (q <= 0)
      throw Error(ErrorKind::BadInput,
                  "rational denominator must be positive: " + std::string(s));
    return Rat(p, q);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::BadInput,
                "cannot parse rational '" + std::string(s) + "'");
  }
}

}  // namespace zr
