#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "zonorad/covering.hpp"
#include "zonorad/direction.hpp"

namespace zr {

// Distance from a rational to the nearest integer.
inline Rat integer_distance(const Rat& r) {
  Rat f = r - Rat(floor_rat(r));
  return f <= Rat(1, 2) ? f : Rat(1) - f;
}

// Billiard ball motion data: start u0 (reduced into [0,1)^m coordinate-wise,
// the torus formulation justifies this) and direction alpha with all
// coordinates nonzero; period is the smallest P > 0 with P*alpha integral.
struct MotionInstance {
  RatVec u0;
  RatVec alpha;
  Rat period;

  MotionInstance(RatVec start, RatVec direction)
      : u0(std::move(start)), alpha(std::move(direction)) {
    if (u0.size() != alpha.size() || alpha.empty())
      throw Error(ErrorKind::LengthMismatch, "start/direction size mismatch");
    for (const Rat& a : alpha)
      if (a == 0)
        throw Error(ErrorKind::ZeroCoordinate,
                    "direction coordinates must be nonzero");
    for (Rat& c : u0) c -= Rat(floor_rat(c));
    Int l = 1;
    for (const Rat& a : alpha) l = lcm_int(l, den(a));
    Int g = 0;
    for (const Rat& a : alpha) g = gcd_int(g, num(a) * (l / den(a)));
    period = Rat(l, abs_int(g));
  }

  std::size_t size() const { return alpha.size(); }
};

// Folded position at time t: each coordinate bounces between 0 and 1, so it
// equals the triangle wave tri(y) = 1 - |1 - (y mod 2)| of the free motion.
inline RatVec fold_position(const MotionInstance& inst, const Rat& t) {
  RatVec out(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) {
    Rat y = inst.u0[i] + t * inst.alpha[i];
    Rat m2 = y - Rat(2) * Rat(floor_rat(y / 2));
    out[i] = Rat(1) - abs_rat(Rat(1) - m2);
  }
  return out;
}

struct GapResult {
  Rat epsilon_star;
  Rat witness_t;
  std::vector<std::size_t> active;  // coordinates tight at the witness
};

namespace detail {

// min_i dist(u0_i + t*alpha_i, Z)
inline Rat envelope_value(const MotionInstance& inst, const Rat& t) {
  Rat best(1);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    Rat d = integer_distance(inst.u0[i] + t * inst.alpha[i]);
    if (d < best) best = d;
  }
  return best;
}

// all t in [0, limit) with c + t*a in (1/step)Z, for a != 0
inline void affine_hits(const Rat& c, const Rat& a, const Rat& limit, int step,
                        std::vector<Rat>& out) {
  Rat lo = c, hi = c + limit * a;
  if (hi < lo) std::swap(lo, hi);
  Int k = ceil_rat(lo * step), kend = floor_rat(hi * step);
  for (; k <= kend; ++k) {
    Rat t = (Rat(k, Int(step)) - c) / a;
    if (Rat(0) <= t && t < limit) out.push_back(t);
  }
}

}  // namespace detail

// Sorted candidate times in [0, period) at which the envelope
// min_i dist(u0_i + t*alpha_i, Z) can attain its maximum: kinks of a
// single wave and crossings of two waves.
inline std::vector<Rat> envelope_candidate_times(const MotionInstance& inst) {
  const std::size_t m = inst.size();
  std::vector<Rat> cands;
  cands.push_back(Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    detail::affine_hits(inst.u0[i], inst.alpha[i], inst.period, 2, cands);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (int sg = -1; sg <= 1; sg += 2) {
        Rat a = inst.alpha[i] + Rat(sg) * inst.alpha[j];
        if (a == 0) continue;
        detail::affine_hits(inst.u0[i] + Rat(sg) * inst.u0[j], a, inst.period,
                            1, cands);
      }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  return cands;
}

// Exact maximum of min_i dist(u0_i + t*alpha_i, Z) over one period. The
// objective is the lower envelope of triangle waves in t. On any interval
// free of the candidate points below, every wave is affine and the active
// (minimal) wave cannot change, so the envelope is affine there and its
// maximum over the period is attained at a candidate: a kink of a single
// wave (u0_i + t*alpha_i half-integral) or a crossing of two waves
// (dist equality forces (u0_i - u0_j) + t(alpha_i - alpha_j) in Z or
// (u0_i + u0_j) + t(alpha_i + alpha_j) in Z).
inline GapResult obstruction_threshold_time_domain(const MotionInstance& inst) {
  const std::size_t m = inst.size();
  std::vector<Rat> cands = envelope_candidate_times(inst);
  Rat best(-1), best_t(0);
  for (const Rat& t : cands) {
    Rat v = detail::envelope_value(inst, t);
    if (v > best) {
      best = v;
      best_t = t;
    }
  }
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < m; ++i)
    if (integer_distance(inst.u0[i] + best_t * inst.alpha[i]) == best)
      active.push_back(i);
  return {best, best_t, active};
}

// Entry point for formal directions: only fully rational ones admit the
// time-domain route.
inline GapResult obstruction_threshold_time_domain(
    const RatVec& u0, const std::vector<FormalReal>& alpha) {
  RatVec a;
  for (const FormalReal& f : alpha) a.push_back(f.rational_part());
  return obstruction_threshold_time_domain(MotionInstance(u0, a));
}

struct ZonotopeThreshold {
  Rat epsilon_star;
  RatVec coset_witness;    // minimizing point of the coset in R^n
  Rat lambda_min;          // min gauge over the coset
  bool degenerate = false;  // n = 0: dense motion, threshold 1/2
};

// Lattice-side threshold: the motion meets [eps, 1-eps]^m exactly when
// (1-2*eps)(Z_alpha - x) + x meets the coset T(u0|V) + Z^n, which gives
// eps* = (1 - min over the coset of the centered gauge) / 2.
inline ZonotopeThreshold obstruction_threshold_zonotope(
    const DirectionSystem& ds, const RatVec& u0) {
  if (u0.size() != ds.m)
    throw Error(ErrorKind::LengthMismatch, "start dimension mismatch");
  if (ds.n == 0) return {Rat(1, 2), {}, Rat(0), true};
  ZonotopePair pair = zonotope_pair(ds);
  const LatticeZonotope& z = *pair.z_alpha;
  RatVec ubar = ds.project_coordinates(u0);
  RatVec p(ds.n);
  for (std::size_t i = 0; i < ds.n; ++i) p[i] = ubar[i] - z.center()[i];
  RestrictedMinimumResult r = restricted_successive_minimum(z, p);
  return {(Rat(1) - r.value) / 2, r.witness, r.value, false};
}

struct EquivalenceRecord {
  std::size_t index;
  Rat time_value;
  Rat zono_value;
  Rat witness_t;
  bool agree;
};

struct EquivalenceReport {
  std::vector<EquivalenceRecord> records;
  std::size_t discrepancies = 0;
};

// Both threshold routes on each rational instance; exact equality is the
// executable content of the view-obstruction equivalence. A discrepancy is
// a bug in one of the routes, never a finding about the mathematics.
inline EquivalenceReport equivalence_harness(
    const std::vector<MotionInstance>& instances) {
  EquivalenceReport rep;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const MotionInstance& inst = instances[i];
    GapResult td = obstruction_threshold_time_domain(inst);
    std::vector<FormalReal> alpha;
    for (const Rat& a : inst.alpha) alpha.emplace_back(a);
    DirectionSystem ds = build_direction_system(alpha);
    ZonotopeThreshold zt = obstruction_threshold_zonotope(ds, inst.u0);
    bool agree = td.epsilon_star == zt.epsilon_star;
    if (!agree) ++rep.discrepancies;
    rep.records.push_back(
        {i, td.epsilon_star, zt.epsilon_star, td.witness_t, agree});
  }
  return rep;
}

// Lonely runner gap: gap(v) = max_t min_i dist(t*v_i, Z) for integer
// velocities. Candidate times over the period [0,1): the envelope maximum
// sits at a kink (2*v_i*t integral) or a crossing ((v_i -+ v_j)*t integral),
// so denominators {2 v_i} u {v_i + v_j} u {|v_i - v_j|} are complete.
inline GapResult lonely_runner_gap(IntVec v) {
  if (v.empty())
    throw Error(ErrorKind::ZeroDirection, "velocity vector is empty");
  for (Int& x : v) {
    if (x == 0)
      throw Error(ErrorKind::NonPositiveVelocity,
                  "velocities must be nonzero");
    x = abs_int(x);
  }
  std::vector<Int> dens;
  for (std::size_t i = 0; i < v.size(); ++i) {
    dens.push_back(2 * v[i]);
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      dens.push_back(v[i] + v[j]);
      if (v[i] != v[j]) dens.push_back(abs_int(v[i] - v[j]));
    }
  }
  std::vector<Rat> cands;
  cands.push_back(Rat(0));
  for (const Int& q : dens)
    for (Int p = 1; p < q; ++p) cands.push_back(Rat(p, q));
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

  Rat best(-1), best_t(0);
  for (const Rat& t : cands) {
    Rat val(1);
    for (const Int& x : v) {
      Rat d = integer_distance(t * Rat(x));
      if (d < val) val = d;
    }
    if (val > best) {
      best = val;
      best_t = t;
    }
  }
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (integer_distance(best_t * Rat(v[i])) == best) active.push_back(i);
  return {best, best_t, active};
}

struct LrcZonotopeCheck {
  IntVec v;  // normalized: positive, gcd 1
  std::size_t n = 0;
  Rat lambda1;
  Rat bound_schoenberg;   // n/(n+1), proven
  Rat bound_conjectured;  // n/(n+2), report-only
  bool schoenberg_ok = false;
  bool conjecture_ok = false;
  Rat gap;  // (1 - lambda1)/2, cross-checked against lonely_runner_gap
};

// Zonotopal reformulation of the lonely runner gap: lambda1 is the first
// restricted successive minimum of the kernel zonotope Z_v at its center
// coset, and gap(v) = (1 - lambda1)/2. The proven part lambda1 <= n/(n+1)
// and the gap identity are hard cross-checks; n/(n+2) is reported only.
inline LrcZonotopeCheck zonotopal_lrc_check(IntVec v) {
  if (v.empty())
    throw Error(ErrorKind::ZeroDirection, "velocity vector is empty");
  for (Int& x : v) {
    if (x == 0)
      throw Error(ErrorKind::DegenerateVelocities,
                  "velocities must be nonzero");
    x = abs_int(x);
  }
  Int g = 0;
  for (const Int& x : v) g = gcd_int(g, x);
  for (Int& x : v) x /= g;

  LrcZonotopeCheck out;
  out.v = v;
  const std::size_t m = v.size();
  out.n = m - 1;
  if (out.n == 0) {
    out.lambda1 = Rat(0);
  } else {
    IntMatrix row(1, m);
    for (std::size_t j = 0; j < m; ++j) row(0, j) = v[j];
    IntMatrix A = integer_kernel_basis(row);
    std::vector<IntVec> gens(m, IntVec(out.n));
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < out.n; ++i) gens[j][i] = A(i, j);
    LatticeZonotope z(gens);
    out.lambda1 = restricted_successive_minimum(z, z.center()).value;
  }
  out.bound_schoenberg = Rat(Int(out.n), Int(out.n + 1));
  out.bound_conjectured = Rat(Int(out.n), Int(out.n + 2));
  out.schoenberg_ok = out.lambda1 <= out.bound_schoenberg;
  out.conjecture_ok = out.lambda1 <= out.bound_conjectured;
  if (!out.schoenberg_ok)
    throw Error(ErrorKind::BadParameters,
                "internal: restricted minimum exceeds the proven n/(n+1)");
  out.gap = (Rat(1) - out.lambda1) / 2;
  if (out.gap != lonely_runner_gap(v).epsilon_star)
    throw Error(ErrorKind::BadParameters,
                "internal: gap identity cross-check failed");
  return out;
}

struct EpsilonCell {
  std::size_t k;      // zonotope dimension within the exploration
  std::size_t index;  // position in the deterministic catalog order
  std::vector<IntVec> generators;
  CoveringResult mu;
};

struct EpsilonEntry {
  std::size_t n = 0;
  std::size_t m = 0;
  Int bound;
  Rat sup_mu;  // running max of certified lower bounds of mu
  std::vector<IntVec> best_generators;
  Rat eps;               // (1 - sup_mu)/2, certified upper estimate
  Rat eps_conjectured;   // (m-n)/(2m), report-only
  Rat eps_upper;         // (m-n)/(2(m-n+1)), proven
  Rat eps_lower;         // (m - Flt(n))/(2(m-n+1)), flatness chain
  std::size_t instances = 0;
  bool partial = false;
};

// Running supremum of mu over the LGP catalogs in dimensions k <= n with
// the given coordinate bound, reported as an epsilon table entry. Seeded
// with the extremal family lower bound mu >= 1/(m-n+1), so the proven
// bound eps <= (m-n)/(2(m-n+1)) holds by construction and any violation of
// the proven sandwich aborts as an internal error. budget limits evaluated
// instances (0 = unlimited); on exhaustion the entry is flagged partial.
// skip/resume_sup allow continuing from a checkpoint of the same catalog.
inline EpsilonEntry epsilon_explorer(
    std::size_t n, std::size_t m, Int bound, std::size_t budget = 0,
    const std::function<void(const EpsilonCell&)>& on_cell = nullptr,
    std::size_t skip = 0, const Rat& resume_sup = Rat(0),
    const FlatnessConfig& cfg = {}) {
  if (m < 1 || n >= m || bound < 1)
    throw Error(ErrorKind::BadParameters, "need 0 <= n < m and bound >= 1");
  EpsilonEntry entry;
  entry.n = n;
  entry.m = m;
  entry.bound = bound;
  entry.eps_conjectured = Rat(Int(m - n), Int(2 * m));
  entry.eps_upper = Rat(Int(m - n), Int(2 * (m - n + 1)));
  entry.eps_lower = (Rat(Int(m)) - cfg.flt(n)) / Rat(Int(2 * (m - n + 1)));
  if (n == 0) {
    // a full-dimensional Q-span leaves no lattice directions: dense motion
    entry.sup_mu = Rat(0);
    entry.eps = Rat(1, 2);
    return entry;
  }
  if (n > 3)
    throw Error(ErrorKind::BadParameters, "exploration supports n <= 3 only");

  entry.sup_mu = resume_sup;
  // extremal family seed: mu >= 1/width certified via the bound chain
  for (std::size_t k = 1; k <= n; ++k) {
    LatticeZonotope seed(vandermonde_generators(k, m));
    Rat lower = flatness_bound_chain(seed).mu_lower;
    if (lower > entry.sup_mu) {
      entry.sup_mu = lower;
      entry.best_generators = seed.generators();
    }
  }

  std::size_t evaluated = 0, index = 0;
  for (std::size_t k = 1; k <= n && !entry.partial; ++k) {
    auto catalog = enumerate_lgp_catalog(k, m, bound);
    for (const auto& gens : catalog) {
      std::size_t idx = index++;
      if (idx < skip) continue;
      if (budget != 0 && evaluated >= budget) {
        entry.partial = true;
        break;
      }
      LatticeZonotope z(gens);
      CoveringResult mu = covering_radius(z, Rat(1, 50));
      ++evaluated;
      if (mu.lower > entry.sup_mu) {
        entry.sup_mu = mu.lower;
        entry.best_generators = gens;
      }
      if (on_cell) on_cell({k, idx, gens, mu});
    }
  }
  entry.instances = evaluated;
  entry.eps = (Rat(1) - entry.sup_mu) / 2;
  if (entry.eps > entry.eps_upper || entry.eps < entry.eps_lower)
    throw Error(ErrorKind::BadParameters,
                "internal: epsilon entry violates the proven sandwich");
  return entry;
}

}  // namespace zr
