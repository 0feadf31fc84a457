#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "zonorad/matrix.hpp"
#include "zonorad/rational.hpp"
#include "zonorad/zonotope.hpp"

namespace zr {

struct CoveringResult {
  Rat lower;
  Rat upper;
  RatVec witness;  // deep hole candidate achieving the lower bound
  bool budget_hit = false;

  bool exact() const { return lower == upper && !budget_hit; }
};

// Dimensional factor Flt(n) = c * n * ceil(log2(n+1)) used in the width
// sandwich mu * w <= Flt(n). The constant is heuristic and configurable.
struct FlatnessConfig {
  Rat c = Rat(3);

  Rat flt(std::size_t n) const {
    if (c <= 0) throw Error(ErrorKind::BadParameters, "flt constant must be positive");
    std::size_t l = 0;
    while ((std::size_t{1} << l) < n + 1) ++l;
    return c * Rat(Int(n)) * Rat(Int(l));
  }
};

struct GaugeMin {
  Rat value;
  RatVec lattice_point;  // minimizing lambda
};

// f(t) = min over lambda in Z^n of gauge(t - lambda), with the minimizing
// lattice point. Complete: gauge(y) <= R confines y to the coordinate box
// given by the generator half-sums, so the search window is finite.
inline GaugeMin nearest_lattice_gauge(const LatticeZonotope& z,
                                      const RatVec& t) {
  const std::size_t n = z.dim();
  if (t.size() != n)
    throw Error(ErrorKind::LengthMismatch, "point dimension mismatch");
  const RatVec& cb = z.coordinate_bounds();

  Int q = 1;
  for (std::size_t j = 0; j < n; ++j) q = lcm_int(q, den(t[j]));
  IntVec tn(n);
  for (std::size_t j = 0; j < n; ++j) tn[j] = num(t[j]) * (q / den(t[j]));

  IntVec seed(n), yn(n);
  for (std::size_t j = 0; j < n; ++j) {
    seed[j] = round_rat(t[j]);
    yn[j] = tn[j] - seed[j] * q;
  }
  Rat best = z.gauge_scaled(yn, q);
  RatVec arg(n);
  for (std::size_t j = 0; j < n; ++j) arg[j] = Rat(seed[j]);
  if (best == 0) return {best, arg};

  std::vector<Int> lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rat lim = cb[j] * best;
    lo[j] = ceil_rat(t[j] - lim);
    hi[j] = floor_rat(t[j] + lim);
  }
  // floating-point prune with a wide safety margin; exact arithmetic
  // confirms every surviving candidate, so results are unaffected
  const double qd = q.convert_to<double>();
  double best_d =
      num(best).convert_to<double>() / den(best).convert_to<double>();
  std::vector<double> yd(n);
  IntVec lam(lo);
  for (;;) {
    for (std::size_t j = 0; j < n; ++j) {
      yn[j] = tn[j] - lam[j] * q;
      yd[j] = yn[j].convert_to<double>() / qd;
    }
    if (z.gauge_approx(yd) <= best_d * (1 + 1e-9) &&
        !z.gauge_exceeds(yn, q, best)) {
      Rat v = z.gauge_scaled(yn, q);
      bool better = v < best;
      if (!better && v == best) {
        RatVec lr(n);
        for (std::size_t j = 0; j < n; ++j) lr[j] = Rat(lam[j]);
        if (std::lexicographical_compare(lr.begin(), lr.end(), arg.begin(),
                                         arg.end()))
          arg = lr;
      } else if (better) {
        best = v;
        best_d =
            num(best).convert_to<double>() / den(best).convert_to<double>();
        for (std::size_t j = 0; j < n; ++j) arg[j] = Rat(lam[j]);
      }
    }
    std::size_t k = 0;
    while (k < n && lam[k] == hi[k]) lam[k] = lo[k], ++k;
    if (k == n) break;
    ++lam[k];
  }
  return {best, arg};
}

namespace detail {

// max gauge over the corners of the cube of half-width 1 around 0; the
// gauge radius of a cell of half-width h is h times this factor.
inline Rat cell_radius_factor(const LatticeZonotope& z) {
  const std::size_t n = z.dim();
  Rat best(0);
  std::vector<int> s(n, -1);
  for (;;) {
    RatVec y(n);
    for (std::size_t j = 0; j < n; ++j) y[j] = Rat(s[j]);
    Rat v = z.gauge(y);
    if (v > best) best = v;
    std::size_t k = 0;
    while (k < n && s[k] == 1) s[k] = -1, ++k;
    if (k == n) break;
    s[k] = 1;
  }
  return best;
}

struct Cell {
  Rat ub;
  RatVec c;
  Rat h;
  bool operator<(const Cell& o) const {
    if (ub != o.ub) return ub > o.ub;  // widest upper bound first
    if (c != o.c)
      return std::lexicographical_compare(c.begin(), c.end(), o.c.begin(),
                                          o.c.end());
    return h < o.h;
  }
};

// Affine slab value s(t) = a.t + b; on the region where (lambda, facet,
// sign) is active, f equals this function.
struct Slab {
  RatVec a;
  Rat b;
  Rat at(const RatVec& t) const { return dot_rr(a, t) + b; }
  static Rat dot_rr(const RatVec& x, const RatVec& y) {
    Rat s(0);
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
  }
  bool operator==(const Slab& o) const { return a == o.a && b == o.b; }
  bool operator<(const Slab& o) const {
    if (a != o.a)
      return std::lexicographical_compare(a.begin(), a.end(), o.a.begin(),
                                          o.a.end());
    return b < o.b;
  }
};

// Exact maximum of f over a closed square cell (2-D): f is the pointwise
// minimum of convex piecewise-linear translate gauges, so a maximizer is a
// cell corner, a point where two active pieces agree on a cell edge, or a
// point where three active pieces agree. All pieces that can be active at
// a value in [lower, ub] are enumerated and the finite candidate set is
// evaluated exactly; lower and the witness are updated in place.
inline void finish_cell_2d(const LatticeZonotope& z, const RatVec& c,
                           const Rat& h, const Rat& ub, Rat& lower,
                           RatVec& witness) {
  const RatVec& cb = z.coordinate_bounds();
  const Rat r = cell_radius_factor(z) * h;

  RatVec corner[4];
  for (int q = 0; q < 4; ++q)
    corner[q] = {c[0] + (q & 1 ? h : -h), c[1] + (q & 2 ? h : -h)};

  // Double arithmetic is used strictly as a prefilter; whenever a quantity
  // is too close to a decision boundary the exact path runs instead, so the
  // end result never depends on rounding.
  double lower_d = lower.convert_to<double>();
  const double ub_d = ub.convert_to<double>();
  const double c_d[2] = {c[0].convert_to<double>(), c[1].convert_to<double>()};
  const double h_d = h.convert_to<double>();
  constexpr double mrg = 1e-6;

  // lattice window: complete for every translate that can realize a value
  // of f anywhere on the cell (values above ub cannot occur on the cell)
  const Rat cutoff = ub + r;
  const double cutoff_d = cutoff.convert_to<double>() * (1 + 1e-9) + 1e-12;
  Int lo0 = ceil_rat(c[0] - cb[0] * ub - h), hi0 = floor_rat(c[0] + cb[0] * ub + h);
  Int lo1 = ceil_rat(c[1] - cb[1] * ub - h), hi1 = floor_rat(c[1] + cb[1] * ub + h);
  std::vector<std::array<double, 2>> window_d;
  std::vector<std::array<Int, 2>> window;
  for (Int l0 = lo0; l0 <= hi0; ++l0)
    for (Int l1 = lo1; l1 <= hi1; ++l1) {
      double ld0 = l0.convert_to<double>(), ld1 = l1.convert_to<double>();
      if (z.gauge_approx({c_d[0] - ld0, c_d[1] - ld1}) > cutoff_d) continue;
      window_d.push_back({ld0, ld1});
      window.push_back({l0, l1});
    }

  auto consider = [&](const RatVec& t) {
    if (abs_rat(t[0] - c[0]) > h || abs_rat(t[1] - c[1]) > h) return;
    double tx = t[0].convert_to<double>(), ty = t[1].convert_to<double>();
    double fd = std::numeric_limits<double>::infinity();
    for (const auto& l : window_d) {
      double v = z.gauge_approx({tx - l[0], ty - l[1]});
      if (v < fd) fd = v;
    }
    if (fd < lower_d - mrg) return;
    Rat v = nearest_lattice_gauge(z, t).value;
    if (v > lower) {
      lower = v;
      witness = t;
      lower_d = v.convert_to<double>();
    }
  };
  for (int q = 0; q < 4; ++q) consider(corner[q]);

  std::vector<Slab> slabs;
  struct DSlab {
    double a0, a1, b;
    double at(double x, double y) const { return a0 * x + a1 * y + b; }
  };
  const double corner_d[4][2] = {{c_d[0] - h_d, c_d[1] - h_d},
                                 {c_d[0] + h_d, c_d[1] - h_d},
                                 {c_d[0] - h_d, c_d[1] + h_d},
                                 {c_d[0] + h_d, c_d[1] + h_d}};
  for (std::size_t w = 0; w < window.size(); ++w) {
    const Int& l0 = window[w][0];
    const Int& l1 = window[w][1];
    const double ld0 = window_d[w][0], ld1 = window_d[w][1];
    for (const Facet& f : z.facets())
      for (int sg = -1; sg <= 1; sg += 2) {
        double n0 = sg * f.normal[0].convert_to<double>();
        double n1 = sg * f.normal[1].convert_to<double>();
        double sup = f.support.convert_to<double>();
        DSlab sd{n0 / sup, n1 / sup, -(n0 * ld0 + n1 * ld1) / sup};
        double mn = sd.at(corner_d[0][0], corner_d[0][1]), mx = mn;
        for (int q = 1; q < 4; ++q) {
          double v = sd.at(corner_d[q][0], corner_d[q][1]);
          if (v < mn) mn = v;
          if (v > mx) mx = v;
        }
        if (mn > ub_d + mrg || mx < lower_d - mrg) continue;
        Slab s;
        s.a = {Rat(sg * f.normal[0]) / f.support,
               Rat(sg * f.normal[1]) / f.support};
        s.b = -(Rat(sg * f.normal[0]) * Rat(l0) +
                Rat(sg * f.normal[1]) * Rat(l1)) /
              f.support;
        slabs.push_back(std::move(s));
      }
  }
  std::sort(slabs.begin(), slabs.end());
  slabs.erase(std::unique(slabs.begin(), slabs.end()), slabs.end());

  const std::size_t s = slabs.size();
  std::vector<DSlab> ds(s);
  for (std::size_t i = 0; i < s; ++i)
    ds[i] = {slabs[i].a[0].convert_to<double>(),
             slabs[i].a[1].convert_to<double>(),
             slabs[i].b.convert_to<double>()};
  // only points whose candidate value can still land in (lower, ub] matter
  auto plausible = [&](double x, double y, double v) {
    return std::abs(x - c_d[0]) <= h_d + mrg &&
           std::abs(y - c_d[1]) <= h_d + mrg && v >= lower_d - mrg &&
           v <= ub_d + mrg;
  };
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i + 1; j < s; ++j) {
      // equality line of pieces i and j: A.t = B
      const double Ad[2] = {ds[i].a0 - ds[j].a0, ds[i].a1 - ds[j].a1};
      const double Bd = ds[j].b - ds[i].b;
      // intersections with the four edge lines
      for (int axis = 0; axis < 2; ++axis)
        for (int sg = -1; sg <= 1; sg += 2) {
          double fixed_d = c_d[axis] + sg * h_d;
          double coef_d = Ad[1 - axis];
          if (std::abs(coef_d) > 1e-6) {
            double other_d = (Bd - Ad[axis] * fixed_d) / coef_d;
            double td[2];
            td[axis] = fixed_d;
            td[1 - axis] = other_d;
            if (!plausible(td[0], td[1],
                           ds[i].a0 * td[0] + ds[i].a1 * td[1] + ds[i].b))
              continue;
          }
          Rat coef = slabs[i].a[1 - axis] - slabs[j].a[1 - axis];
          if (coef == 0) continue;
          Rat fixed = c[axis] + Rat(sg) * h;
          Rat B = slabs[j].b - slabs[i].b;
          Rat other =
              (B - (slabs[i].a[axis] - slabs[j].a[axis]) * fixed) / coef;
          RatVec t(2);
          t[axis] = fixed;
          t[1 - axis] = other;
          consider(t);
        }
      // intersections with a third piece
      for (std::size_t k = j + 1; k < s; ++k) {
        const double A2d[2] = {ds[i].a0 - ds[k].a0, ds[i].a1 - ds[k].a1};
        const double B2d = ds[k].b - ds[i].b;
        double det_d = Ad[0] * A2d[1] - Ad[1] * A2d[0];
        if (std::abs(det_d) > 1e-6) {
          double tx = (Bd * A2d[1] - Ad[1] * B2d) / det_d;
          double ty = (Ad[0] * B2d - Bd * A2d[0]) / det_d;
          if (!plausible(tx, ty, ds[i].a0 * tx + ds[i].a1 * ty + ds[i].b))
            continue;
        }
        RatVec A{slabs[i].a[0] - slabs[j].a[0], slabs[i].a[1] - slabs[j].a[1]};
        Rat B = slabs[j].b - slabs[i].b;
        RatVec A2{slabs[i].a[0] - slabs[k].a[0],
                  slabs[i].a[1] - slabs[k].a[1]};
        Rat B2 = slabs[k].b - slabs[i].b;
        Rat det = A[0] * A2[1] - A[1] * A2[0];
        if (det == 0) continue;
        RatVec t{(B * A2[1] - A[1] * B2) / det, (A[0] * B2 - B * A2[0]) / det};
        consider(t);
      }
    }
}

}  // namespace detail

// One-dimensional zonotope: an interval of length sum |z_i|, covering
// radius 1/length with the deep hole halfway between translates.
inline CoveringResult covering_radius_1d(const LatticeZonotope& z) {
  if (z.dim() != 1)
    throw Error(ErrorKind::DimensionMismatch, "needs a 1-dimensional zonotope");
  Int len = 0;
  for (const auto& g : z.generators()) len += abs_int(g[0]);
  Rat mu(1, len);
  return {mu, mu, {Rat(1, 2)}, false};
}

// Certified interval for mu(Z) in any dimension: branch and bound over the
// fundamental cell. A cell with center c and half-width h has local bounds
// f(c) +- r with r the gauge radius of the cell, since f is 1-Lipschitz in
// the gauge metric. max_nodes = 0 means unlimited.
inline CoveringResult certified_covering_bounds(
    const LatticeZonotope& z, const Rat& tol,
    std::uint64_t max_nodes = 0) {
  if (tol <= 0) throw Error(ErrorKind::BadParameters, "tolerance must be positive");
  const std::size_t n = z.dim();
  const Rat rf = detail::cell_radius_factor(z);

  Rat lower(-1);
  RatVec witness;
  std::set<detail::Cell> queue;
  std::uint64_t nodes = 0;

  auto add_cell = [&](RatVec c, const Rat& h) {
    ++nodes;
    Rat fc = nearest_lattice_gauge(z, c).value;
    if (fc > lower) {
      lower = fc;
      witness = c;
    }
    Rat ub = fc + rf * h;
    if (ub > lower) queue.insert({std::move(ub), std::move(c), h});
  };
  add_cell(RatVec(n, Rat(1, 2)), Rat(1, 2));

  for (;;) {
    Rat upper = lower;
    if (!queue.empty() && queue.begin()->ub > upper) upper = queue.begin()->ub;
    if (upper - lower <= tol || queue.empty())
      return {lower, upper, witness, false};
    if (max_nodes != 0 && nodes >= max_nodes)
      return {lower, upper, witness, true};
    detail::Cell cell = *queue.begin();
    queue.erase(queue.begin());
    if (cell.ub <= lower) continue;
    Rat h2 = cell.h / 2;
    std::vector<int> s(n, -1);
    for (;;) {
      RatVec c(n);
      for (std::size_t j = 0; j < n; ++j) c[j] = cell.c[j] + Rat(s[j]) * h2;
      add_cell(std::move(c), h2);
      std::size_t k = 0;
      while (k < n && s[k] == 1) s[k] = -1, ++k;
      if (k == n) break;
      s[k] = 1;
    }
  }
}

// Exact covering radius in the plane. Branch and bound as above, but a
// sufficiently small surviving cell is resolved exactly by enumerating the
// arrangement vertices of the active piecewise-linear constraints inside
// it (three-piece meets, two-piece meets on cell edges, corners).
inline CoveringResult covering_radius_2d_exact(const LatticeZonotope& z) {
  if (z.dim() != 2)
    throw Error(ErrorKind::DimensionMismatch, "needs a 2-dimensional zonotope");
  const Rat rf = detail::cell_radius_factor(z);
  const Rat finish_h(1, 32);

  Rat lower(-1);
  RatVec witness;
  std::set<detail::Cell> queue;

  auto add_cell = [&](RatVec c, const Rat& h) {
    Rat fc = nearest_lattice_gauge(z, c).value;
    if (fc > lower) {
      lower = fc;
      witness = c;
    }
    Rat ub = fc + rf * h;
    if (ub > lower) queue.insert({std::move(ub), std::move(c), h});
  };
  add_cell(RatVec(2, Rat(1, 2)), Rat(1, 2));

  while (!queue.empty()) {
    detail::Cell cell = *queue.begin();
    queue.erase(queue.begin());
    if (cell.ub <= lower) break;  // ordered queue: nothing can improve
    if (cell.h <= finish_h) {
      detail::finish_cell_2d(z, cell.c, cell.h, cell.ub, lower, witness);
      continue;
    }
    Rat h2 = cell.h / 2;
    for (int q = 0; q < 4; ++q)
      add_cell({cell.c[0] + (q & 1 ? h2 : -h2), cell.c[1] + (q & 2 ? h2 : -h2)},
               h2);
  }
  return {lower, lower, witness, false};
}

// Exact covering radius where available, certified interval otherwise.
inline CoveringResult covering_radius(const LatticeZonotope& z,
                                      const Rat& tol = Rat(1, 50),
                                      std::uint64_t max_nodes = 0) {
  if (z.dim() == 1) return covering_radius_1d(z);
  if (z.dim() == 2) return covering_radius_2d_exact(z);
  return certified_covering_bounds(z, tol, max_nodes);
}

struct FlatnessChain {
  Int width;
  Rat mu_lower;           // 1 / width
  Rat mu_upper_flatness;  // Flt(n) / width, heuristic constant
};

inline FlatnessChain flatness_bound_chain(const LatticeZonotope& z,
                                          const FlatnessConfig& cfg = {}) {
  Int w = lattice_width(z).value;
  return {w, Rat(1, w), cfg.flt(z.dim()) / Rat(w)};
}

struct RestrictedMinimumResult {
  Rat value;
  RatVec witness;  // coset point of minimal gauge
  bool shift_in_lattice = false;
};

// First restricted successive minimum: min of the centered gauge over the
// coset x + Z^n. Complete enumeration of the coset inside the gauge ball
// of the seed value (x rounded into the centered fundamental cell).
inline RestrictedMinimumResult restricted_successive_minimum(
    const LatticeZonotope& z, const RatVec& x) {
  const std::size_t n = z.dim();
  if (x.size() != n)
    throw Error(ErrorKind::LengthMismatch, "shift dimension mismatch");
  bool integral = true;
  for (const Rat& c : x)
    if (den(c) != 1) integral = false;
  if (integral) return {Rat(0), x, true};

  const RatVec& cb = z.coordinate_bounds();
  RatVec p0(n);
  for (std::size_t j = 0; j < n; ++j) p0[j] = x[j] - Rat(round_rat(x[j]));
  Rat best = z.gauge(p0);
  RatVec arg = p0;
  std::vector<Int> lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = ceil_rat(-cb[j] * best - p0[j]);
    hi[j] = floor_rat(cb[j] * best - p0[j]);
  }
  IntVec lam(lo);
  for (;;) {
    RatVec p(n);
    for (std::size_t j = 0; j < n; ++j) p[j] = p0[j] + Rat(lam[j]);
    Rat v = z.gauge(p);
    if (v < best ||
        (v == best && std::lexicographical_compare(p.begin(), p.end(),
                                                   arg.begin(), arg.end()))) {
      best = v;
      arg = p;
    }
    std::size_t k = 0;
    while (k < n && lam[k] == hi[k]) lam[k] = lo[k], ++k;
    if (k == n) break;
    ++lam[k];
  }
  return {best, arg, false};
}

// Deterministic catalog of LGP generator sets in Z^n: m generators with
// entries in [-bound, bound], each generator with positive leading sign,
// tuples nondecreasing lexicographically (duplicates only possible for
// n = 1, where parallel generators do not break general position).
inline std::vector<std::vector<IntVec>> enumerate_lgp_catalog(
    std::size_t n, std::size_t m, Int bound) {
  if (n < 1 || m < n || bound < 1)
    throw Error(ErrorKind::BadParameters, "need m >= n >= 1 and bound >= 1");
  std::vector<IntVec> pool;
  IntVec v(n, -bound);
  for (;;) {
    IntVec sc = sign_canonical(v);
    bool zero = true;
    for (const Int& x : sc)
      if (x != 0) zero = false;
    if (!zero && sc == v) pool.push_back(v);
    std::size_t k = n;
    while (k > 0 && v[k - 1] == bound) v[--k] = -bound;
    if (k == 0) break;
    ++v[k - 1];
  }
  std::sort(pool.begin(), pool.end(), lex_less);

  std::vector<std::vector<IntVec>> out;
  std::vector<std::size_t> idx;
  auto spans = [&](const std::vector<std::size_t>& sel) {
    IntMatrix mat(sel.size(), n);
    for (std::size_t i = 0; i < sel.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) mat(i, j) = pool[sel[i]][j];
    return rank(mat) == n;
  };
  // depth-first over nondecreasing index tuples with incremental LGP check
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (idx.size() == m) {
      if (!spans(idx)) return;
      std::vector<IntVec> gens;
      for (std::size_t i : idx) gens.push_back(pool[i]);
      if (is_lgp(gens).in_lgp) out.push_back(std::move(gens));
      return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      if (n >= 2 && !idx.empty() && idx.back() == i) continue;  // parallel
      idx.push_back(i);
      self(self, n == 1 ? i : i + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

struct ScanRecord {
  std::vector<IntVec> generators;
  std::size_t n;
  std::size_t m;
  CoveringResult mu;
  Rat bound;      // conjectured n/m
  bool violation;  // certified violation: mu.lower > bound
};

// Report-only scan of the covering-radius conjecture mu(Z) <= n/m over a
// catalog of LGP generator sets. Never throws on a violation.
inline std::vector<ScanRecord> scan_conjecture_mu(
    const std::vector<std::vector<IntVec>>& catalog,
    const Rat& tol3 = Rat(1, 50)) {
  std::vector<ScanRecord> report;
  report.reserve(catalog.size());
  for (const auto& gens : catalog) {
    LatticeZonotope z(gens);
    if (z.dim() > 3)
      throw Error(ErrorKind::BadParameters, "scan supports n <= 3 only");
    CoveringResult mu = covering_radius(z, tol3);
    Rat bound(Int(z.dim()), Int(gens.size()));
    report.push_back({gens, z.dim(), gens.size(), mu, bound,
                      mu.lower > bound});
  }
  return report;
}

}  // namespace zr
