#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "test_util.hpp"
#include "zonorad/covering.hpp"

using namespace zr;
using testutil::Rng;

namespace {

LatticeZonotope zono(std::vector<std::vector<long long>> gens) {
  std::vector<IntVec> g;
  for (const auto& row : gens) {
    IntVec v;
    for (long long x : row) v.push_back(Int(x));
    g.push_back(std::move(v));
  }
  return LatticeZonotope(g);
}

RatVec rv(std::vector<std::string> parts) {
  RatVec out;
  for (const auto& s : parts) out.push_back(rat_from_string(s));
  return out;
}

}  // namespace

TEST_CASE("nearest lattice gauge basics") {
  LatticeZonotope sq = zono({{1, 0}, {0, 1}});
  // center of the fundamental cell is the deep hole of the unit square
  GaugeMin g = nearest_lattice_gauge(sq, rv({"1/2", "1/2"}));
  CHECK(g.value == Rat(1));
  // lattice points themselves are at gauge 0
  CHECK(nearest_lattice_gauge(sq, rv({"3", "-2"})).value == Rat(0));
  // periodicity: shifting the point by a lattice vector changes nothing
  GaugeMin h = nearest_lattice_gauge(sq, rv({"5/2", "-3/2"}));
  CHECK(h.value == g.value);
  CHECK_THROWS_AS(nearest_lattice_gauge(sq, rv({"1/2"})), Error);
}

TEST_CASE("covering radius in dimension 1") {
  for (long long m = 1; m <= 6; ++m) {
    CoveringResult r = covering_radius_1d(zono({{m}}));
    CHECK(r.exact());
    CHECK(r.lower == Rat(1, Int(m)));
    CHECK(r.witness == rv({"1/2"}));
  }
  // lengths add over generators regardless of sign
  CHECK(covering_radius_1d(zono({{3}, {-2}})).lower == Rat(1, 5));
  CHECK_THROWS_AS(covering_radius_1d(zono({{1, 0}, {0, 1}})), Error);
}

TEST_CASE("covering radius in dimension 2, exact values") {
  CoveringResult tri = covering_radius_2d_exact(zono({{1, 0}, {0, 1}, {1, 1}}));
  CHECK(tri.exact());
  CHECK(tri.lower == Rat(2, 3));

  CoveringResult sq = covering_radius_2d_exact(zono({{1, 0}, {0, 1}}));
  CHECK(sq.exact());
  CHECK(sq.lower == Rat(1));

  CoveringResult v = covering_radius_2d_exact(
      LatticeZonotope(vandermonde_generators(2, 4)));
  CHECK(v.exact());
  CHECK(v.lower == Rat(1, 2));
  CHECK(Rat(1, 3) <= v.lower);

  CHECK_THROWS_WITH_AS(covering_radius_2d_exact(zono({{4}})),
                       doctest::Contains("2-dimensional"), Error);
}

TEST_CASE("deep hole witnesses achieve the exact value") {
  std::vector<LatticeZonotope> cases = {
      zono({{1, 0}, {0, 1}, {1, 1}}),
      zono({{1, 0}, {0, 1}, {1, 1}, {1, 2}}),
      zono({{2, 1}, {1, 3}}),
      zono({{1, 0}, {0, 2}, {3, 1}}),
  };
  for (const auto& z : cases) {
    CoveringResult r = covering_radius_2d_exact(z);
    REQUIRE(r.exact());
    CHECK(nearest_lattice_gauge(z, r.witness).value == r.lower);
  }
}

TEST_CASE("certified interval bounds") {
  CoveringResult a =
      certified_covering_bounds(zono({{1, 0}, {0, 1}, {1, 1}}), Rat(1, 100));
  CHECK(!a.budget_hit);
  CHECK(a.upper - a.lower <= Rat(1, 100));
  CHECK(a.lower <= Rat(2, 3));
  CHECK(Rat(2, 3) <= a.upper);

  CoveringResult b = certified_covering_bounds(zono({{4}}), Rat(1, 1000));
  CHECK(b.lower <= Rat(1, 4));
  CHECK(Rat(1, 4) <= b.upper);

  // n = 3 instance with known value 3/4
  CoveringResult c = certified_covering_bounds(
      zono({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}), Rat(1, 50));
  CHECK(!c.budget_hit);
  CHECK(c.upper - c.lower <= Rat(1, 50));
  CHECK(c.lower <= Rat(3, 4));
  CHECK(Rat(3, 4) <= c.upper);

  // tiny node budget: flagged, still a valid (wide) interval
  CoveringResult d = certified_covering_bounds(
      zono({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}), Rat(1, 1000), 5);
  CHECK(d.budget_hit);
  CHECK(d.lower <= d.upper);
  CHECK(d.lower <= Rat(3, 4));
  CHECK(Rat(3, 4) <= d.upper);
}

TEST_CASE("certified intervals contain the exact 2-D value") {
  Rng rng(0x5eedULL);
  int done = 0;
  while (done < 25) {
    std::vector<IntVec> gens;
    std::size_t m = 2 + rng.range(0, 2);
    for (std::size_t i = 0; i < m; ++i) {
      IntVec g{Int(rng.range(-3, 3)), Int(rng.range(-3, 3))};
      gens.push_back(std::move(g));
    }
    IntMatrix mat(m, 2);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < 2; ++j) mat(i, j) = gens[i][j];
    if (rank(mat) != 2) continue;
    LatticeZonotope z(gens);
    CoveringResult exact = covering_radius_2d_exact(z);
    CoveringResult box = certified_covering_bounds(z, Rat(1, 16));
    CHECK(box.lower <= exact.lower);
    CHECK(exact.lower <= box.upper);
    ++done;
  }
}

TEST_CASE("covering radius is invariant under reflection and reorder") {
  std::vector<std::vector<IntVec>> cases = {
      {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(1), Int(1)}},
      {{Int(2), Int(1)}, {Int(1), Int(3)}, {Int(1), Int(-1)}},
  };
  for (const auto& gens : cases) {
    Rat base = covering_radius_2d_exact(LatticeZonotope(gens)).lower;
    // reflected copy: Z maps to a lattice translate of itself
    std::vector<IntVec> flipped = gens;
    for (auto& g : flipped)
      for (auto& x : g) x = -x;
    CHECK(covering_radius_2d_exact(LatticeZonotope(flipped)).lower == base);
    std::vector<IntVec> shuffled = gens;
    std::reverse(shuffled.begin(), shuffled.end());
    CHECK(covering_radius_2d_exact(LatticeZonotope(shuffled)).lower == base);
  }
}

TEST_CASE("adding a generator never increases the covering radius") {
  Rng rng(0xbeefULL);
  int done = 0;
  while (done < 20) {
    std::vector<IntVec> gens;
    for (int i = 0; i < 3; ++i)
      gens.push_back({Int(rng.range(-2, 2)), Int(rng.range(-2, 2))});
    IntMatrix mat(3, 2);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 2; ++j) mat(i, j) = gens[i][j];
    if (rank(mat) != 2) continue;
    IntVec extra{Int(rng.range(-2, 2)), Int(rng.range(-2, 2))};
    if (extra[0] == 0 && extra[1] == 0) continue;
    Rat before = covering_radius_2d_exact(LatticeZonotope(gens)).lower;
    gens.push_back(extra);
    Rat after = covering_radius_2d_exact(LatticeZonotope(gens)).lower;
    CHECK(after <= before);
    ++done;
  }
}

TEST_CASE("covering radius dispatcher picks the right engine") {
  CHECK(covering_radius(zono({{5}})).exact());
  CHECK(covering_radius(zono({{1, 0}, {0, 1}, {1, 1}})).lower == Rat(2, 3));
  CoveringResult r =
      covering_radius(zono({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), Rat(1, 8));
  CHECK(r.upper - r.lower <= Rat(1, 8));
  CHECK(r.lower <= Rat(1));
  CHECK(Rat(1) <= r.upper);
}

TEST_CASE("flatness bound chain") {
  FlatnessChain v = flatness_bound_chain(
      LatticeZonotope(vandermonde_generators(2, 5)));
  CHECK(v.width == 4);
  CHECK(v.mu_lower == Rat(1, 4));

  for (long long k = 1; k <= 5; ++k) {
    FlatnessChain c = flatness_bound_chain(zono({{k}}));
    CHECK(c.width == Int(k));
    CHECK(c.mu_lower == covering_radius_1d(zono({{k}})).lower);
  }

  // sandwich 1/w <= mu <= Flt(2)/w on 2-D instances, any c >= 1
  FlatnessConfig cfg;
  std::vector<LatticeZonotope> cases = {
      zono({{1, 0}, {0, 1}, {1, 1}}),
      zono({{1, 0}, {0, 1}, {1, 1}, {1, 2}}),
      zono({{2, 1}, {1, 3}}),
  };
  for (const auto& z : cases) {
    FlatnessChain c = flatness_bound_chain(z, cfg);
    Rat mu = covering_radius_2d_exact(z).lower;
    CHECK(c.mu_lower <= mu);
    CHECK(mu <= c.mu_upper_flatness);
  }

  FlatnessConfig bad;
  bad.c = Rat(0);
  CHECK_THROWS_AS(bad.flt(2), Error);
  CHECK(cfg.flt(1) == Rat(3));
  CHECK(cfg.flt(2) == Rat(12));
  CHECK(cfg.flt(3) == Rat(18));
}

TEST_CASE("restricted successive minimum") {
  // coset of (1/2,1/2) in the hexagon {e1, e2, (1,1)}: the point is half
  // of the vertex (1,1) of the centered body, so the minimum gauge is 1/2
  LatticeZonotope tri = zono({{1, 0}, {0, 1}, {1, 1}});
  RestrictedMinimumResult r =
      restricted_successive_minimum(tri, rv({"3/2", "3/2"}));
  CHECK(r.value == Rat(1, 2));
  CHECK(!r.shift_in_lattice);
  CHECK(tri.gauge(r.witness) == r.value);
  // brute force over a coset box as an independent check
  Rat brute(100);
  for (long long a = -4; a <= 4; ++a)
    for (long long b = -4; b <= 4; ++b) {
      Rat v = tri.gauge({Rat(1, 2) + Rat(a), Rat(1, 2) + Rat(b)});
      if (v < brute) brute = v;
    }
  CHECK(brute == r.value);

  // symmetric box [-1,1]^2 via generators of [0,2]^2
  LatticeZonotope box = zono({{2, 0}, {0, 2}});
  RestrictedMinimumResult b =
      restricted_successive_minimum(box, rv({"1/2", "1/2"}));
  CHECK(b.value == Rat(1, 2));

  // 1-D interval of length 3 (velocities 1 and 2), half-sum coset
  LatticeZonotope seg = zono({{1}, {2}});
  RestrictedMinimumResult s = restricted_successive_minimum(seg, rv({"3/2"}));
  CHECK(s.value == Rat(1, 3));

  // integral shift: the coset hits the lattice, flagged zero
  RestrictedMinimumResult z0 =
      restricted_successive_minimum(tri, rv({"4", "-1"}));
  CHECK(z0.value == Rat(0));
  CHECK(z0.shift_in_lattice);

  CHECK_THROWS_AS(restricted_successive_minimum(tri, rv({"1/2"})), Error);
}

TEST_CASE("lgp catalog enumeration") {
  CHECK_THROWS_AS(enumerate_lgp_catalog(0, 2, Int(1)), Error);
  CHECK_THROWS_AS(enumerate_lgp_catalog(2, 1, Int(1)), Error);
  CHECK_THROWS_AS(enumerate_lgp_catalog(2, 2, Int(0)), Error);

  // n = 1: nondecreasing positive tuples, parallel repeats allowed
  auto c1 = enumerate_lgp_catalog(1, 2, Int(2));
  REQUIRE(c1.size() == 3);
  CHECK(c1[0] == std::vector<IntVec>{{Int(1)}, {Int(1)}});
  CHECK(c1[1] == std::vector<IntVec>{{Int(1)}, {Int(2)}});
  CHECK(c1[2] == std::vector<IntVec>{{Int(2)}, {Int(2)}});

  // n = 2, entries in {-1,0,1}: every pair of distinct canonical
  // directions is independent, so all 6 pairs appear
  auto c2 = enumerate_lgp_catalog(2, 2, Int(1));
  CHECK(c2.size() == 6);
  for (const auto& gens : c2) {
    CHECK(is_lgp(gens).in_lgp);
    for (const auto& g : gens) CHECK(sign_canonical(g) == g);
  }

  // determinism: two enumerations are identical
  CHECK(enumerate_lgp_catalog(2, 3, Int(1)) ==
        enumerate_lgp_catalog(2, 3, Int(1)));
}

TEST_CASE("conjecture scan reports and never throws on violations") {
  auto cat = enumerate_lgp_catalog(2, 3, Int(1));
  auto rep = scan_conjecture_mu(cat);
  REQUIRE(rep.size() == cat.size());
  for (const auto& r : rep) {
    CHECK(r.n == 2);
    CHECK(r.m == 3);
    CHECK(r.bound == Rat(2, 3));
    CHECK(r.mu.exact());
    CHECK(!r.violation);
    CHECK(r.mu.lower <= r.bound);
  }

  // the equality instance is tight but not a violation
  std::vector<std::vector<IntVec>> one = {
      {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(1), Int(1)}}};
  auto tight = scan_conjecture_mu(one);
  CHECK(tight[0].mu.lower == tight[0].bound);
  CHECK(!tight[0].violation);

  // 1-D intervals are tight as well
  std::vector<std::vector<IntVec>> ones = {{{Int(1)}, {Int(1)}, {Int(1)}}};
  auto r1 = scan_conjecture_mu(ones);
  CHECK(r1[0].mu.lower == Rat(1, 3));
  CHECK(r1[0].bound == Rat(1, 3));

  std::vector<std::vector<IntVec>> big = {{{Int(1), Int(0), Int(0), Int(0)},
                                           {Int(0), Int(1), Int(0), Int(0)},
                                           {Int(0), Int(0), Int(1), Int(0)},
                                           {Int(0), Int(0), Int(0), Int(1)}}};
  CHECK_THROWS_AS(scan_conjecture_mu(big), Error);
}
