#pragma once

#include <cstddef>
#include <vector>

#include "zonorad/rational.hpp"

namespace zr {

// Exact real number q_0 + q_1*xi_1 + ... + q_d*xi_d over abstract symbols
// xi_i that are pairwise linearly independent over Q (together with 1).
// Equality and zero tests are coordinate-wise, which makes rational
// dimension questions decidable.
struct FormalReal {
  RatVec coeffs;  // size d+1; coeffs[0] is the rational part

  FormalReal() : coeffs(1) {}
  explicit FormalReal(Rat rational_value, std::size_t symbols = 0)
      : coeffs(symbols + 1) {
    coeffs[0] = std::move(rational_value);
  }
  explicit FormalReal(RatVec c) : coeffs(std::move(c)) {
    if (coeffs.empty()) coeffs.assign(1, Rat(0));
  }

  static FormalReal symbol(std::size_t i, std::size_t symbols) {
    FormalReal f{Rat(0), symbols};
    if (i == 0 || i > symbols)
      throw Error(ErrorKind::BadParameters, "symbol index out of range");
    f.coeffs[i] = 1;
    return f;
  }

  std::size_t symbol_count() const { return coeffs.size() - 1; }

  bool is_zero() const {
    for (const Rat& c : coeffs)
      if (c != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < coeffs.size(); ++i)
      if (coeffs[i] != 0) return false;
    return true;
  }
  const Rat& rational_part() const {
    if (!is_rational())
      throw Error(ErrorKind::IrrationalDirection,
                  "number has an irrational part");
    return coeffs[0];
  }

  bool operator==(const FormalReal& o) const { return coeffs == o.coeffs; }
};

inline void check_same_basis(const std::vector<FormalReal>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i].coeffs.size() != xs[0].coeffs.size())
      throw Error(ErrorKind::LengthMismatch,
                  "formal reals use different symbol bases");
}

inline std::vector<FormalReal> rational_direction(const RatVec& v) {
  std::vector<FormalReal> alpha;
  alpha.reserve(v.size());
  for (const Rat& x : v) alpha.emplace_back(x);
  return alpha;
}

}  // namespace zr
