#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "test_util.hpp"
#include "zonorad/zonotope.hpp"

using namespace zr;
using testutil::Rng;

namespace {

// Vertices of the centered 2D zonotope by angle-sorting the generators and
// walking the boundary. Independent of the facet description.
std::vector<RatVec> centered_vertices_2d(const LatticeZonotope& z) {
  std::vector<IntVec> dirs;
  for (auto g : z.generators()) {
    if (g[0] == 0 && g[1] == 0) continue;
    // flip into the upper half plane (y > 0, or y == 0 and x > 0)
    if (g[1] < 0 || (g[1] == 0 && g[0] < 0))
      for (auto& x : g) x = -x;
    dirs.push_back(g);
  }
  std::sort(dirs.begin(), dirs.end(), [](const IntVec& a, const IntVec& b) {
    Int cr = a[0] * b[1] - a[1] * b[0];
    if (cr != 0) return cr > 0;  // increasing angle in [0, pi)
    return lex_less(a, b);
  });
  // start at the vertex minimizing the sorted-direction supports: take
  // v = -(sum of dirs)/2 and add generators one by one, then mirror.
  RatVec v(2);
  for (const auto& d : dirs) {
    v[0] -= Rat(d[0], 2);
    v[1] -= Rat(d[1], 2);
  }
  std::vector<RatVec> verts;
  verts.push_back(v);
  for (const auto& d : dirs) {
    v[0] += Rat(d[0]);
    v[1] += Rat(d[1]);
    verts.push_back(v);
  }
  std::size_t half = verts.size() - 1;
  for (std::size_t i = 1; i < half; ++i)
    verts.push_back({-verts[i][0], -verts[i][1]});
  return verts;  // closed walk except last == -first
}

LatticeZonotope random_spanning_zonotope(Rng& rng, std::size_t n,
                                         std::size_t m, long long bound) {
  for (;;) {
    std::vector<IntVec> gens;
    for (std::size_t i = 0; i < m; ++i) {
      IntVec g(n);
      for (auto& x : g) x = Int(rng.range(-bound, bound));
      gens.push_back(std::move(g));
    }
    IntMatrix mat(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) mat(i, j) = gens[i][j];
    if (rank(mat) == n) return LatticeZonotope(std::move(gens));
  }
}

}  // namespace

TEST_CASE("zonotope constructor validation") {
  CHECK_THROWS_AS(LatticeZonotope({}), Error);
  CHECK_THROWS_AS(LatticeZonotope({{Int(1), Int(0)}, {Int(2), Int(0)}}),
                  Error);
  CHECK_THROWS_AS(
      LatticeZonotope({{Int(1), Int(0)}, {Int(1)}}), Error);
  LatticeZonotope z({{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(1), Int(1)}});
  CHECK(z.center() == RatVec{Rat(1), Rat(1)});
}

TEST_CASE("gauge is a norm on random zonotopes") {
  Rng rng(2001);
  for (int it = 0; it < 60; ++it) {
    std::size_t n = 1 + rng.next() % 3;
    std::size_t m = n + rng.next() % 3;
    auto z = random_spanning_zonotope(rng, n, m, 4);
    for (int p = 0; p < 6; ++p) {
      RatVec y(n), y2(n);
      for (auto& c : y) c = Rat(rng.range(-8, 8), 1 + rng.next() % 5);
      for (auto& c : y2) c = Rat(rng.range(-8, 8), 1 + rng.next() % 5);
      Rat g = z.gauge(y);
      CHECK(g >= 0);
      RatVec neg(n), scaled(n), sum(n);
      for (std::size_t j = 0; j < n; ++j) {
        neg[j] = -y[j];
        scaled[j] = Rat(3, 2) * y[j];
        sum[j] = y[j] + y2[j];
      }
      CHECK(z.gauge(neg) == g);
      CHECK(z.gauge(scaled) == Rat(3, 2) * g);
      CHECK(z.gauge(sum) <= g + z.gauge(y2));
      CHECK(z.gauge_lp(y) == g);
    }
    RatVec zero(n, Rat(0));
    CHECK(z.gauge(zero) == 0);
  }
}

TEST_CASE("2d vertices have gauge exactly one") {
  Rng rng(2002);
  for (int it = 0; it < 40; ++it) {
    auto z = random_spanning_zonotope(rng, 2, 2 + rng.next() % 4, 4);
    auto verts = centered_vertices_2d(z);
    CHECK(verts.size() >= 4);
    for (const auto& v : verts) CHECK(z.gauge(v) == Rat(1));
    // midpoints of consecutive vertices are on the boundary too
    for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
      RatVec mid{(verts[i][0] + verts[i + 1][0]) / 2,
                 (verts[i][1] + verts[i + 1][1]) / 2};
      CHECK(z.gauge(mid) == Rat(1));
    }
  }
}

TEST_CASE("2d zonotope area matches the shoelace of its vertex cycle") {
  Rng rng(2003);
  for (int it = 0; it < 40; ++it) {
    auto z = random_spanning_zonotope(rng, 2, 2 + rng.next() % 4, 4);
    // area of a zonotope is the sum of the parallelogram areas
    Rat area(0);
    const auto& g = z.generators();
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = i + 1; j < g.size(); ++j)
        area += abs_rat(Rat(g[i][0] * g[j][1] - g[i][1] * g[j][0]));
    auto verts = centered_vertices_2d(z);
    verts.push_back(verts.front());
    Rat shoelace(0);
    for (std::size_t i = 0; i + 1 < verts.size(); ++i)
      shoelace += verts[i][0] * verts[i + 1][1] - verts[i][1] * verts[i + 1][0];
    CHECK(abs_rat(shoelace) / 2 == area);
  }
}

TEST_CASE("lgp detection") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t m = n; m <= 8; ++m) {
      auto r = is_lgp(vandermonde_generators(n, m));
      CHECK(r.in_lgp);
    }
  auto r = is_lgp({{Int(1), Int(0)}, {Int(2), Int(0)}, {Int(0), Int(1)}});
  CHECK(!r.in_lgp);
  REQUIRE(r.witness.size() == 2);
  CHECK(r.witness == std::vector<std::size_t>{0, 1});
}

TEST_CASE("lattice width against brute enumeration") {
  Rng rng(2004);
  for (int it = 0; it < 30; ++it) {
    std::size_t n = 1 + rng.next() % 2;
    auto z = random_spanning_zonotope(rng, n, n + rng.next() % 3, 3);
    auto w = lattice_width(z);
    CHECK(width_in_direction(z, w.direction) == w.value);
    Int brute = -1;
    long long b = 6;
    if (n == 1) {
      brute = width_in_direction(z, {Int(1)});
    } else {
      for (long long x = -b; x <= b; ++x)
        for (long long y = -b; y <= b; ++y) {
          if (x == 0 && y == 0) continue;
          Int v = width_in_direction(z, {Int(x), Int(y)});
          if (brute < 0 || v < brute) brute = v;
        }
    }
    CHECK(w.value <= brute);
    CHECK(w.value >= 1);
  }
}

TEST_CASE("widths of the extremal families") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t m = n; m <= 7; ++m) {
      LatticeZonotope z(vandermonde_generators(n, m));
      CHECK(lattice_width(z).value == Int(m - n + 1));
    }
}

TEST_CASE("width is invariant under unimodular change of basis") {
  Rng rng(2005);
  for (int it = 0; it < 20; ++it) {
    std::size_t n = 2 + rng.next() % 2;
    auto z = random_spanning_zonotope(rng, n, n + 1 + rng.next() % 2, 3);
    IntMatrix u = testutil::random_unimodular(rng, n);
    std::vector<IntVec> mapped;
    for (const auto& g : z.generators()) {
      IntVec h(n, Int(0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h[i] += u(i, j) * g[j];
      mapped.push_back(std::move(h));
    }
    LatticeZonotope zu(std::move(mapped));
    CHECK(lattice_width(zu).value == lattice_width(z).value);
  }
}

TEST_CASE("parallelepiped volume") {
  LatticeZonotope z(vandermonde_generators(2, 4));
  CHECK(parallelepiped_volume(z, {0, 1}) == Rat(1));
  CHECK(parallelepiped_volume(z, {2, 3}) == Rat(1));
  CHECK_THROWS_AS((void)parallelepiped_volume(z, {0}), Error);
  CHECK_THROWS_AS((void)parallelepiped_volume(z, {0, 9}), Error);
}
