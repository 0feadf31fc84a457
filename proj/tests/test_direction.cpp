#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "zonorad/direction.hpp"

using namespace zr;
using testutil::Rng;

namespace {

// A direction with prescribed irrational structure: entry i is the linear
// combination coeff(i, .) of (1, xi_1, ..., xi_d).
std::vector<FormalReal> direction_from_matrix(const RatMatrix& coeff) {
  std::vector<FormalReal> alpha;
  for (std::size_t i = 0; i < coeff.rows(); ++i)
    alpha.emplace_back(coeff.row(i));
  return alpha;
}

std::vector<FormalReal> random_direction(Rng& rng, std::size_t m,
                                         std::size_t d) {
  RatMatrix c(m, d + 1);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= d; ++j)
      c(i, j) = Rat(rng.range(-4, 4), 1 + rng.next() % 3);
  return direction_from_matrix(c);
}

}  // namespace

TEST_CASE("formal reals") {
  FormalReal a(Rat(2), 2);
  FormalReal xi = FormalReal::symbol(1, 2);
  CHECK(a.is_rational());
  CHECK(!xi.is_rational());
  CHECK(!xi.is_zero());
  CHECK(a.rational_part() == Rat(2));
  CHECK_THROWS_AS((void)xi.rational_part(), Error);
  CHECK(FormalReal(Rat(0), 3).is_zero());
}

TEST_CASE("direction system of a rational direction") {
  // alpha = (1, 2): kernel lattice is spanned by (2, -1) = (-2, 1) in HNF.
  auto ds = build_direction_system(rational_direction({Rat(1), Rat(2)}));
  CHECK(ds.m == 2);
  CHECK(ds.n == 1);
  REQUIRE(ds.A.rows() == 1);
  IntVec k = ds.A.row(0);
  CHECK(dot(k, RatVec{Rat(1), Rat(2)}) == Rat(0));
  CHECK(abs_int(k[0] * 1 + k[1] * 2) == 0);
  REQUIRE(ds.Aperp.rows() == 1);
  // complement lattice is Z(1, 2)
  CHECK(sign_canonical(primitive_part(ds.Aperp.row(0))) ==
        IntVec{Int(1), Int(2)});
  CHECK(abs_int(det(ds.completion)) == 1);
}

TEST_CASE("direction system invariants on random directions") {
  Rng rng(3001);
  for (int it = 0; it < 120; ++it) {
    std::size_t m = 1 + rng.next() % 5;
    std::size_t d = rng.next() % 3;
    auto alpha = random_direction(rng, m, d);
    bool all_zero = true;
    for (const auto& a : alpha)
      if (!a.is_zero()) all_zero = false;
    if (all_zero) {
      CHECK_THROWS_AS((void)build_direction_system(alpha), Error);
      continue;
    }
    auto ds = build_direction_system(alpha);
    CHECK(ds.m == m);
    CHECK(ds.n + dim_q(alpha) == m);
    // rows of A annihilate alpha symbol by symbol
    for (std::size_t i = 0; i < ds.n; ++i)
      for (std::size_t s = 0; s <= d; ++s) {
        Rat acc(0);
        for (std::size_t j = 0; j < m; ++j)
          acc += Rat(ds.A(i, j)) * alpha[j].coeffs[s];
        CHECK(acc == 0);
      }
    // completion is unimodular and extends A
    CHECK(abs_int(det(ds.completion)) == 1);
    for (std::size_t i = 0; i < ds.n; ++i)
      for (std::size_t j = 0; j < m; ++j)
        CHECK(ds.completion(i, j) == ds.A(i, j));
    // Aperp rows are integral, orthogonal to the dual rows of A, and
    // together with A give a full unimodular lattice decomposition
    if (ds.n > 0 && ds.n < m) {
      IntMatrix full(m, m);
      for (std::size_t i = 0; i < ds.n; ++i)
        for (std::size_t j = 0; j < m; ++j) full(i, j) = ds.A(i, j);
      for (std::size_t i = 0; i < m - ds.n; ++i)
        for (std::size_t j = 0; j < m; ++j)
          full(ds.n + i, j) = ds.Aperp(i, j);
      CHECK(rank(full) == m);
    }
    // biorthogonality of the dual rows
    for (std::size_t i = 0; i < ds.n; ++i)
      for (std::size_t j = 0; j < ds.n; ++j)
        CHECK(dot(ds.A.row(i), ds.dual_star.row(j)) ==
              (i == j ? Rat(1) : Rat(0)));
    // Aperp spans the orthogonal complement of the row span of A
    for (std::size_t i = 0; i < m - ds.n; ++i)
      for (std::size_t j = 0; j < ds.n; ++j) {
        Rat acc(0);
        for (std::size_t k2 = 0; k2 < m; ++k2)
          acc += Rat(ds.Aperp(i, k2)) * ds.dual_star(j, k2);
        CHECK(acc == 0);
      }
  }
}

TEST_CASE("membership in the obstruction set") {
  // alpha = (xi, xi): Lambda = Z(1, -1), E = {x : x1 - x2 in Z}
  std::vector<FormalReal> alpha{FormalReal::symbol(1, 1),
                                FormalReal::symbol(1, 1)};
  auto ds = build_direction_system(alpha);
  CHECK(ds.n == 1);
  CHECK(e_alpha_contains(ds, {Rat(1, 3), Rat(1, 3)}));
  CHECK(e_alpha_contains(ds, {Rat(5, 7), Rat(-2, 7)}));
  CHECK(!e_alpha_contains(ds, {Rat(1, 2), Rat(0)}));
}

TEST_CASE("membership agrees with the lattice-plus-complement split") {
  Rng rng(3002);
  int done = 0;
  while (done < 60) {
    std::size_t m = 2 + rng.next() % 4;
    auto alpha = random_direction(rng, m, rng.next() % 3);
    bool all_zero = true;
    for (const auto& a : alpha)
      if (!a.is_zero()) all_zero = false;
    if (all_zero) continue;
    auto ds = build_direction_system(alpha);
    if (ds.n == 0) continue;
    ++done;
    // xi = integer combination of dual rows + rational element of V-perp
    RatVec xi(m, Rat(0));
    for (std::size_t i = 0; i < ds.n; ++i) {
      Int c = Int(rng.range(-3, 3));
      for (std::size_t j = 0; j < m; ++j) xi[j] += Rat(c) * ds.dual_star(i, j);
    }
    for (std::size_t i = 0; i < m - ds.n; ++i) {
      Rat c(rng.range(-3, 3), 1 + rng.next() % 4);
      for (std::size_t j = 0; j < m; ++j) xi[j] += c * Rat(ds.Aperp(i, j));
    }
    CHECK(e_alpha_contains(ds, xi));
    // shifting one dual coordinate by a non-integer breaks membership
    RatVec bad = xi;
    for (std::size_t j = 0; j < m; ++j)
      bad[j] += Rat(1, 2) * ds.dual_star(0, j);
    CHECK(!e_alpha_contains(ds, bad));
  }
}

TEST_CASE("rational uniformity") {
  // (1, xi) has Q-independent coordinates
  std::vector<FormalReal> a1{FormalReal(Rat(1), 1), FormalReal::symbol(1, 1)};
  CHECK(is_rationally_uniform(a1).uniform);
  // (xi, xi, 1): the pair {xi, xi} is dependent
  std::vector<FormalReal> a2{FormalReal::symbol(1, 1),
                             FormalReal::symbol(1, 1), FormalReal(Rat(1), 1)};
  auto r2 = is_rationally_uniform(a2);
  CHECK(!r2.uniform);
  CHECK(r2.witness == std::vector<std::size_t>{0, 1});
  // fully rational nonzero direction in one coordinate
  CHECK(is_rationally_uniform(rational_direction({Rat(5)})).uniform);
  // (1, xi, 1 + xi): any two independent, all three dependent
  std::vector<FormalReal> a3{FormalReal(Rat(1), 1), FormalReal::symbol(1, 1),
                             FormalReal(RatVec{Rat(1), Rat(1)})};
  CHECK(is_rationally_uniform(a3).uniform);
}

TEST_CASE("uniformity matches general position of the kernel zonotope") {
  Rng rng(3003);
  int done = 0;
  while (done < 100) {
    std::size_t m = 2 + rng.next() % 3;
    auto alpha = random_direction(rng, m, rng.next() % 3);
    bool all_zero = true;
    for (const auto& a : alpha)
      if (!a.is_zero()) all_zero = false;
    if (all_zero) continue;
    auto ds = build_direction_system(alpha);
    if (ds.n == 0 || ds.n == m) continue;
    ++done;
    auto pair = zonotope_pair(ds);
    REQUIRE(pair.z_alpha.has_value());
    CHECK(is_rationally_uniform(alpha).uniform ==
          is_lgp(pair.z_alpha->generators()).in_lgp);
  }
}

TEST_CASE("integer direction reduction") {
  // rational direction reduces to itself up to scaling
  auto ds = build_direction_system(rational_direction({Rat(1), Rat(2)}));
  CHECK(integer_direction_reduction(ds) == IntVec{Int(1), Int(2)});

  auto ds36 = build_direction_system(
      rational_direction({Rat(3, 2), Rat(3), Rat(9, 2)}));
  CHECK(integer_direction_reduction(ds36) == IntVec{Int(1), Int(2), Int(3)});

  // zero coordinate is rejected
  auto dsz = build_direction_system(rational_direction({Rat(0), Rat(1)}));
  CHECK_THROWS_AS((void)integer_direction_reduction(dsz), Error);
}

TEST_CASE("reduction output is nonzero and coarsens the kernel lattice") {
  Rng rng(3004);
  int done = 0;
  while (done < 80) {
    std::size_t m = 2 + rng.next() % 4;
    auto alpha = random_direction(rng, m, rng.next() % 3);
    bool ok = true;
    for (const auto& a : alpha)
      if (a.is_zero()) ok = false;
    if (!ok) continue;
    auto ds = build_direction_system(alpha);
    if (ds.n == m) continue;
    ++done;
    IntVec beta = integer_direction_reduction(ds);
    for (const Int& x : beta) CHECK(x != 0);
    // every kernel vector of alpha is a kernel vector of beta
    for (std::size_t i = 0; i < ds.n; ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < m; ++j) s += ds.A(i, j) * beta[j];
      CHECK(s == 0);
    }
  }
}

TEST_CASE("zonotope pair shapes and degenerate flags") {
  auto ds = build_direction_system(rational_direction({Rat(1), Rat(2), Rat(3)}));
  auto pair = zonotope_pair(ds);
  REQUIRE(pair.z_alpha.has_value());
  REQUIRE(pair.z_perp.has_value());
  CHECK(pair.z_alpha->dim() == 2);
  CHECK(pair.z_perp->dim() == 1);
  CHECK(pair.z_alpha->generator_count() == 3);

  // fully irrational: kernel lattice is trivial, no kernel zonotope
  std::vector<FormalReal> gen{FormalReal(Rat(1), 2), FormalReal::symbol(1, 2),
                              FormalReal::symbol(2, 2)};
  auto dsg = build_direction_system(gen);
  CHECK(dsg.n == 0);
  auto pg = zonotope_pair(dsg);
  CHECK(!pg.z_alpha.has_value());
  REQUIRE(pg.z_perp.has_value());
  CHECK(pg.z_perp->dim() == 3);
}
