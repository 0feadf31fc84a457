#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "zonorad/matrix.hpp"
#include "zonorad/normal_form.hpp"
#include "zonorad/rational.hpp"
#include "zonorad/simplex.hpp"

namespace zr {

struct WidthResult {
  Int value;
  IntVec direction;
};

struct LgpResult {
  bool in_lgp;
  std::vector<std::size_t> witness;  // one singular n-subset on failure
};

// Canonical sign: first nonzero entry positive. Zero vectors unchanged.
inline IntVec sign_canonical(IntVec v) {
  for (const Int& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (Int& y : v) y = -y;
    break;
  }
  return v;
}

inline IntVec primitive_part(IntVec v) {
  Int g = 0;
  for (const Int& x : v) g = gcd_int(g, x);
  if (g > 1)
    for (Int& x : v) x /= g;
  return v;
}

inline bool lex_less(const IntVec& a, const IntVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// A facet slab of the centered zonotope: u.w <= h for w in Z - x.
struct Facet {
  IntVec normal;      // primitive, sign-canonical
  Rat support;        // (1/2) sum_i |normal . z_i|, > 0
  Int twice_support;  // sum_i |normal . z_i|
};

class LatticeZonotope {
 public:
  explicit LatticeZonotope(std::vector<IntVec> generators)
      : gens_(std::move(generators)) {
    if (gens_.empty())
      throw Error(ErrorKind::RankDeficient, "zonotope needs generators");
    n_ = gens_[0].size();
    if (n_ == 0) throw Error(ErrorKind::RankDeficient, "dimension zero");
    for (const auto& g : gens_)
      if (g.size() != n_)
        throw Error(ErrorKind::LengthMismatch, "generator length mismatch");
    IntMatrix m(gens_.size(), n_);
    for (std::size_t i = 0; i < gens_.size(); ++i)
      for (std::size_t j = 0; j < n_; ++j) m(i, j) = gens_[i][j];
    if (rank(m) != n_)
      throw Error(ErrorKind::RankDeficient, "generators do not span");
    center_.assign(n_, Rat(0));
    for (const auto& g : gens_)
      for (std::size_t j = 0; j < n_; ++j) center_[j] += Rat(g[j], 2);
  }

  std::size_t dim() const { return n_; }
  std::size_t generator_count() const { return gens_.size(); }
  const std::vector<IntVec>& generators() const { return gens_; }
  const RatVec& center() const { return center_; }

  // Facet description of the centered body Z - x, one slab per facet
  // direction (normals sign-canonical; |u.w| <= h covers both sides).
  const std::vector<Facet>& facets() const {
    if (facets_.empty()) build_facets();
    return facets_;
  }

  // Gauge of the centered zonotope: min { rho >= 0 : y in rho*(Z - x) }.
  // Evaluated from the facet description; gauge_lp is the independent
  // linear-programming route of the same quantity.
  Rat gauge(const RatVec& y) const {
    if (y.size() != n_)
      throw Error(ErrorKind::LengthMismatch, "gauge point dimension");
    Rat best(0);
    for (const Facet& f : facets()) {
      Rat v = abs_rat(dot(f.normal, y)) / f.support;
      if (v > best) best = v;
    }
    return best;
  }

  // gauge() for y given as integer numerators over a positive common
  // denominator; pure integer arithmetic with cross-multiplied compares.
  Rat gauge_scaled(const IntVec& ynum, const Int& yden) const {
    Int bn = 0, bd = 1;
    for (const Facet& f : facets()) {
      Int a = 2 * abs_int(dot(f.normal, ynum));
      if (a * bd > bn * yden * f.twice_support) {
        bn = std::move(a);
        bd = yden * f.twice_support;
      }
    }
    return Rat(bn, bd);
  }

  // Floating-point overestimate-tolerant approximation of gauge_scaled,
  // for pruning only: exact arithmetic must confirm any accepted value.
  double gauge_approx(const std::vector<double>& y) const {
    if (facet_approx_.empty()) {
      for (const Facet& f : facets()) {
        std::vector<double> u(n_);
        for (std::size_t j = 0; j < n_; ++j)
          u[j] = f.normal[j].convert_to<double>();
        facet_approx_.push_back(
            {std::move(u), 2.0 / f.twice_support.convert_to<double>()});
      }
    }
    double best = 0;
    for (const auto& [u, inv] : facet_approx_) {
      double s = 0;
      for (std::size_t j = 0; j < n_; ++j) s += u[j] * y[j];
      double v = (s < 0 ? -s : s) * inv;
      if (v > best) best = v;
    }
    return best;
  }

  // True as soon as some facet certifies gauge(ynum / yden) > cutoff.
  bool gauge_exceeds(const IntVec& ynum, const Int& yden,
                     const Rat& cutoff) const {
    const Int& cn = num(cutoff);
    const Int& cd = den(cutoff);
    for (const Facet& f : facets())
      if (2 * abs_int(dot(f.normal, ynum)) * cd >
          cn * yden * f.twice_support)
        return true;
    return false;
  }

  // Same value as gauge(), as the exact LP
  //   min rho  s.t.  y = sum c_i z_i,  |c_i| <= rho/2.
  Rat gauge_lp(const RatVec& y) const {
    if (y.size() != n_)
      throw Error(ErrorKind::LengthMismatch, "gauge point dimension");
    const std::size_t m = gens_.size();
    // Variables: p_i, q_i (c_i = p_i - q_i), slack s_i, rho. All >= 0.
    const std::size_t nv = 3 * m + 1;
    RatMatrix a(n_ + m, nv);
    RatVec b(n_ + m), c(nv);
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        a(j, i) = Rat(gens_[i][j]);
        a(j, m + i) = -Rat(gens_[i][j]);
      }
      b[j] = y[j];
    }
    for (std::size_t i = 0; i < m; ++i) {
      a(n_ + i, i) = 1;
      a(n_ + i, m + i) = 1;
      a(n_ + i, 2 * m + i) = 1;
      a(n_ + i, 3 * m) = Rat(-1, 2);
    }
    c[3 * m] = 1;
    auto sol = Simplex::solve(a, b, c);
    if (!sol)
      throw Error(ErrorKind::RankDeficient, "gauge LP infeasible");
    return sol->value;
  }

  // Coordinate half-width of the centered body: max |w_j| over w in Z - x.
  const RatVec& coordinate_bounds() const {
    if (coord_bounds_.empty()) {
      coord_bounds_.assign(n_, Rat(0));
      for (std::size_t j = 0; j < n_; ++j)
        for (const auto& g : gens_) coord_bounds_[j] += Rat(abs_int(g[j]), 2);
    }
    return coord_bounds_;
  }

 private:
  void build_facets() const {
    std::vector<IntVec> normals;
    if (n_ == 1) {
      normals.push_back({Int(1)});
    } else {
      std::vector<std::size_t> idx(n_ - 1);
      collect_normals(idx, 0, 0, normals);
    }
    std::sort(normals.begin(), normals.end(), lex_less);
    normals.erase(std::unique(normals.begin(), normals.end()), normals.end());
    for (auto& u : normals) {
      Int s = 0;
      for (const auto& g : gens_) s += abs_int(dot(u, g));
      if (s == 0) continue;  // cannot happen for spanning generators
      facets_.push_back({std::move(u), Rat(s, Int(2)), std::move(s)});
    }
  }

  void collect_normals(std::vector<std::size_t>& idx, std::size_t pos,
                       std::size_t start, std::vector<IntVec>& out) const {
    if (pos == idx.size()) {
      IntMatrix m(idx.size(), n_);
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < n_; ++j) m(i, j) = gens_[idx[i]][j];
      IntMatrix ker = integer_kernel_basis(m);
      if (ker.rows() != 1) return;  // subset not of rank n-1
      out.push_back(sign_canonical(primitive_part(ker.row(0))));
      return;
    }
    for (std::size_t i = start; i + (idx.size() - pos) <= gens_.size(); ++i) {
      idx[pos] = i;
      collect_normals(idx, pos + 1, i + 1, out);
    }
  }

  std::size_t n_;
  std::vector<IntVec> gens_;
  RatVec center_;
  mutable std::vector<Facet> facets_;
  mutable std::vector<std::pair<std::vector<double>, double>> facet_approx_;
  mutable RatVec coord_bounds_;
};

// LGP test: every n-subset of the generators is linearly independent.
inline LgpResult is_lgp(const std::vector<IntVec>& gens) {
  if (gens.empty()) throw Error(ErrorKind::RankDeficient, "no generators");
  const std::size_t n = gens[0].size();
  IntMatrix all(gens.size(), n);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) all(i, j) = gens[i][j];
  if (rank(all) != n)
    throw Error(ErrorKind::RankDeficient, "generators do not span");
  std::vector<std::size_t> idx(n);
  // lexicographic n-subset enumeration
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (;;) {
    RatMatrix sub(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sub(i, j) = Rat(gens[idx[i]][j]);
    if (det(sub) == 0) return {false, idx};
    std::size_t k = n;
    while (k > 0 && idx[k - 1] == gens.size() - n + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t i = k; i < n; ++i) idx[i] = idx[i - 1] + 1;
  }
  return {true, {}};
}

// Width of Z along integer direction v: sum_i |v . z_i|.
inline Int width_in_direction(const LatticeZonotope& z, const IntVec& v) {
  bool zero = true;
  for (const Int& x : v)
    if (x != 0) zero = false;
  if (zero) throw Error(ErrorKind::ZeroDirection, "zero width direction");
  Int w = 0;
  for (const auto& g : z.generators()) w += abs_int(dot(v, g));
  return w;
}

// Exact lattice width by complete enumeration: any minimizer v satisfies
// |v . z_i| <= W0 for the generators of a spanning subset, so v ranges over
// the integer preimage of a bounded box under that subset's matrix.
inline WidthResult lattice_width(const LatticeZonotope& z) {
  const std::size_t n = z.dim();
  const auto& gens = z.generators();
  // Upper bound from the coordinate directions.
  Int w0;
  IntVec best_v;
  for (std::size_t j = 0; j < n; ++j) {
    IntVec e(n, Int(0));
    e[j] = 1;
    Int w = width_in_direction(z, e);
    if (best_v.empty() || w < w0 || (w == w0 && lex_less(e, best_v))) {
      w0 = w;
      best_v = e;
    }
  }
  // Greedy spanning subset.
  std::vector<std::size_t> sel;
  {
    std::vector<IntVec> rows;
    for (std::size_t i = 0; i < gens.size() && sel.size() < n; ++i) {
      rows.push_back(gens[i]);
      RatMatrix m(rows.size(), n);
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t j = 0; j < n; ++j) m(r, j) = Rat(rows[r][j]);
      if (rank(m) == rows.size())
        sel.push_back(i);
      else
        rows.pop_back();
    }
  }
  RatMatrix bmat(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) bmat(i, j) = Rat(gens[sel[i]][j]);
  RatMatrix binv = inverse(bmat);

  Int best = w0;
  IntVec witness = best_v;
  // Enumerate w in [-W0, W0]^n with v = B^{-1} w integral.
  IntVec w(n, -w0);
  for (;;) {
    RatVec vr(n, Rat(0));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) vr[j] += binv(j, i) * Rat(w[i]);
    bool integral = true, zerov = true;
    IntVec v(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (den(vr[j]) != 1) {
        integral = false;
        break;
      }
      v[j] = num(vr[j]);
      if (v[j] != 0) zerov = false;
    }
    if (integral && !zerov) {
      v = sign_canonical(std::move(v));
      Int width = 0;
      bool aborted = false;
      for (const auto& g : gens) {
        width += abs_int(dot(v, g));
        if (width > best) {
          aborted = true;
          break;
        }
      }
      if (!aborted && (width < best || (width == best && lex_less(v, witness)))) {
        best = width;
        witness = std::move(v);
      }
    }
    std::size_t k = 0;
    while (k < n && w[k] == w0) w[k++] = -w0;
    if (k == n) break;
    ++w[k];
  }
  return {best, witness};
}

// |det(z_i : i in I)| for an index set of size n.
inline Rat parallelepiped_volume(const LatticeZonotope& z,
                                 const std::vector<std::size_t>& index_set) {
  if (index_set.size() != z.dim())
    throw Error(ErrorKind::BadIndexSet, "index set size must equal dimension");
  RatMatrix m(z.dim(), z.dim());
  for (std::size_t i = 0; i < index_set.size(); ++i) {
    if (index_set[i] >= z.generator_count())
      throw Error(ErrorKind::BadIndexSet, "generator index out of range");
    for (std::size_t j = 0; j < z.dim(); ++j)
      m(i, j) = Rat(z.generators()[index_set[i]][j]);
  }
  return abs_rat(det(m));
}

}  // namespace zr
