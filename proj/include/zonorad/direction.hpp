#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "zonorad/formal_real.hpp"
#include "zonorad/matrix.hpp"
#include "zonorad/normal_form.hpp"
#include "zonorad/rational.hpp"
#include "zonorad/zonotope.hpp"

namespace zr {

// m x (d+1) matrix of the coordinates of alpha over {1, xi_1, ..., xi_d}.
inline RatMatrix coefficient_matrix(const std::vector<FormalReal>& alpha) {
  check_same_basis(alpha);
  const std::size_t m = alpha.size();
  const std::size_t w = alpha.empty() ? 1 : alpha[0].coeffs.size();
  RatMatrix c(m, w);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < w; ++j) c(i, j) = alpha[i].coeffs[j];
  return c;
}

// Dimension of the Q-vector space generated by the coordinates of alpha.
inline std::size_t dim_q(const std::vector<FormalReal>& alpha) {
  return rank(coefficient_matrix(alpha));
}

// A direction vector together with its derived lattice data: the kernel
// lattice basis A (rows span Lambda_alpha = {l in Z^m : l.alpha = 0}),
// the integral basis Aperp of the complement lattice, and the dual basis
// a_i* of Lambda*_alpha inside V_alpha. The coordinate map T with respect
// to {a_i*} is simply xi |-> A.xi, so it is never stored.
struct DirectionSystem {
  std::vector<FormalReal> alpha;
  std::size_t m = 0;  // ambient dimension
  std::size_t n = 0;  // dim V_alpha = rank of A
  IntMatrix A;        // n x m, HNF-canonical primitive kernel basis
  IntMatrix completion;  // m x m unimodular with first n rows = A
  IntMatrix Aperp;       // (m-n) x m basis of V_alpha^perp intersect Z^m
  RatMatrix dual_star;   // n x m rows a_i* within V_alpha

  // Coordinates of the projection of u onto V_alpha with respect to
  // {a_1*,...,a_n*}; equals A.u.
  RatVec project_coordinates(const RatVec& u) const {
    if (u.size() != m)
      throw Error(ErrorKind::LengthMismatch, "point dimension mismatch");
    RatVec out(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) out[i] += Rat(A(i, j)) * u[j];
    return out;
  }
};

inline DirectionSystem build_direction_system(std::vector<FormalReal> alpha) {
  check_same_basis(alpha);
  bool all_zero = true;
  for (const auto& a : alpha)
    if (!a.is_zero()) all_zero = false;
  if (alpha.empty() || all_zero)
    throw Error(ErrorKind::ZeroDirection, "direction vector is zero");

  DirectionSystem ds;
  ds.m = alpha.size();
  RatMatrix coeff = coefficient_matrix(alpha);
  ds.alpha = std::move(alpha);
  ds.A = integer_kernel_basis(coeff.transposed());
  ds.n = ds.A.rows();
  ds.completion = extend_to_unimodular(ds.A);
  RatMatrix wstar = inverse(to_rat(ds.completion)).transposed();
  ds.Aperp = IntMatrix(ds.m - ds.n, ds.m);
  for (std::size_t i = ds.n; i < ds.m; ++i)
    for (std::size_t j = 0; j < ds.m; ++j) {
      // dual of a unimodular basis is integral
      ds.Aperp(i - ds.n, j) = num(wstar(i, j));
    }
  ds.dual_star = dual_basis_subspace(to_rat(ds.A));
  return ds;
}

struct UniformityResult {
  bool uniform;
  std::vector<std::size_t> witness;  // one dependent coordinate subset
};

// alpha is rationally uniform iff every dim_Q(alpha) coordinates are
// linearly independent over Q. The direct rank route and the kernel-minor
// route are both evaluated and must agree.
inline UniformityResult is_rationally_uniform(
    const std::vector<FormalReal>& alpha) {
  if (alpha.empty())
    throw Error(ErrorKind::ZeroDirection, "direction vector is zero");
  DirectionSystem ds = build_direction_system(alpha);
  RatMatrix coeff = coefficient_matrix(alpha);
  const std::size_t m = alpha.size();
  const std::size_t r = m - ds.n;  // dim_Q(alpha)

  UniformityResult result{true, {}};
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  for (;;) {
    RatMatrix sub(r, coeff.cols());
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < coeff.cols(); ++j)
        sub(i, j) = coeff(idx[i], j);
    bool independent = rank(sub) == r;

    // Minors criterion on the complementary column set of A.
    std::vector<std::size_t> comp;
    for (std::size_t j = 0, k = 0; j < m; ++j) {
      if (k < r && idx[k] == j)
        ++k;
      else
        comp.push_back(j);
    }
    std::vector<std::size_t> all_rows(ds.n);
    for (std::size_t i = 0; i < ds.n; ++i) all_rows[i] = i;
    bool minor_nonzero =
        ds.n == 0 || minor_det(ds.A, all_rows, comp) != 0;
    if (independent != minor_nonzero)
      throw Error(ErrorKind::BadParameters,
                  "internal: uniformity routes disagree");

    if (!independent && result.uniform) {
      result.uniform = false;
      result.witness = idx;
    }
    std::size_t k = r;
    while (k > 0 && idx[k - 1] == m - r + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t i = k; i < r; ++i) idx[i] = idx[i - 1] + 1;
  }
  return result;
}

struct ZonotopePair {
  std::optional<LatticeZonotope> z_alpha;  // in R^n, columns of A
  std::optional<LatticeZonotope> z_perp;   // in R^{m-n}, columns of Aperp
};

inline ZonotopePair zonotope_pair(const DirectionSystem& ds) {
  ZonotopePair pair;
  if (ds.n > 0) {
    std::vector<IntVec> gens(ds.m);
    for (std::size_t j = 0; j < ds.m; ++j) gens[j] = ds.A.col(j);
    pair.z_alpha.emplace(std::move(gens));
  }
  if (ds.n < ds.m) {
    std::vector<IntVec> gens(ds.m);
    for (std::size_t j = 0; j < ds.m; ++j) gens[j] = ds.Aperp.col(j);
    pair.z_perp.emplace(std::move(gens));
  }
  return pair;
}

// xi in E_alpha iff a.xi in Z for every basis row a of Lambda_alpha.
inline bool e_alpha_contains(const DirectionSystem& ds, const RatVec& xi) {
  if (xi.size() != ds.m)
    throw Error(ErrorKind::LengthMismatch, "point dimension mismatch");
  for (std::size_t i = 0; i < ds.n; ++i) {
    Rat s;
    for (std::size_t j = 0; j < ds.m; ++j) s += Rat(ds.A(i, j)) * xi[j];
    if (den(s) != 1) return false;
  }
  return true;
}

// A vector beta in (Z \ {0})^m with Lambda_alpha contained in Lambda_beta,
// built from the basis of V_alpha^perp by the weighted-sum combination
// beta + (2 sum |beta_i|) * b.
inline IntVec integer_direction_reduction(const DirectionSystem& ds) {
  for (std::size_t i = 0; i < ds.m; ++i)
    if (ds.alpha[i].is_zero())
      throw Error(ErrorKind::ZeroCoordinate,
                  "direction has a zero coordinate");
  if (ds.n == ds.m)
    throw Error(ErrorKind::ZeroDirection, "direction vector is zero");
  IntVec beta = ds.Aperp.row(0);
  for (std::size_t k = 1; k < ds.Aperp.rows(); ++k) {
    bool all_nonzero = true;
    for (const Int& x : beta)
      if (x == 0) all_nonzero = false;
    if (all_nonzero) break;
    Int weight = 0;
    for (const Int& x : beta) weight += abs_int(x);
    weight *= 2;
    for (std::size_t j = 0; j < ds.m; ++j)
      beta[j] += weight * ds.Aperp(k, j);
  }
  for (const Int& x : beta)
    if (x == 0)
      throw Error(ErrorKind::ZeroCoordinate,
                  "internal: reduction left a zero coordinate");
  return primitive_part(sign_canonical(std::move(beta)));
}

}  // namespace zr
