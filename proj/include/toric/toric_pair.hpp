#pragma once

// Log pairs (X, B) on a fan: boundary coefficients per ray, the piecewise
// linear log-discrepancy function, and exact minimal log discrepancy search
// over prescribed centers.

#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "toric/divisor.hpp"
#include "toric/enumerate.hpp"
#include "toric/refinement.hpp"

namespace toric {

// (X, B): fan plus boundary with coefficients in [0,1]; K+B must be
// R-Cartier, i.e. the log-discrepancy values 1 - b_i interpolate.
struct ToricPair {
  std::shared_ptr<const Fan> fan;
  RDivisor boundary;
  PLFunction psi;  // log-discrepancy function, psi(v_i) = 1 - b_i

  const Fan& x() const { return *fan; }
};

inline ToricPair make_toric_pair(std::shared_ptr<const Fan> fan, RDivisor boundary) {
  if (static_cast<int>(boundary.size()) != fan->ray_count())
    fail(ErrorCode::BadArgument, "make_toric_pair: one coefficient per ray required");
  for (const Rational& b : boundary)
    if (b < 0 || b > 1)
      fail(ErrorCode::BadArgument, "make_toric_pair: boundary coefficient outside [0,1]");
  std::vector<Rational> values(boundary.size());
  for (std::size_t i = 0; i < boundary.size(); ++i) values[i] = Rational(1) - boundary[i];
  PLFunction psi = pl_function(fan, values);
  return ToricPair{std::move(fan), std::move(boundary), std::move(psi)};
}

inline ToricPair make_toric_pair(const Fan& fan, RDivisor boundary) {
  return make_toric_pair(std::make_shared<Fan>(fan), std::move(boundary));
}

inline ToricPair make_toric_pair(const Fan& fan) {
  return make_toric_pair(fan, constant_divisor(fan, Rational(0)));
}

// codimension of the orbit-closure stratum of a cone
inline int codim(const Fan& fan, const Cone& c) { return fan.cone_dim(c); }

// Log discrepancy of the toric valuation of a primitive vector of the support.
inline Rational log_discrepancy(const ToricPair& pair, const LatticeVector& v) {
  if (is_zero(v)) fail(ErrorCode::ZeroVector, "log_discrepancy: zero vector");
  if (!is_primitive(v))
    fail(ErrorCode::BadArgument, "log_discrepancy: vector is not primitive");
  return pair.psi.eval(v);
}

struct MldResult {
  Rational value;
  LatticeVector witness;
};

namespace detail {

// Admissibility of a minimal cone for a set of centers: with subset
// semantics the center must be a face of it ("center inside the locus");
// with exact semantics it must equal the single center.
inline bool admissible(const Cone& min_cone, const std::vector<Cone>& centers, bool exact) {
  for (const Cone& c : centers) {
    if (exact ? (min_cone == c) : min_cone.contains_all(c)) return true;
  }
  return false;
}

// Linear functionals computing the barycentric coordinates with respect to
// the rays of a simplicial cone (on its span).
inline std::vector<QVector> barycentric_functionals(const Fan& fan, const Cone& c) {
  std::vector<QVector> out;
  std::vector<LatticeVector> gens = fan.cone_generators(c);
  int k = static_cast<int>(gens.size());
  for (int i = 0; i < k; ++i) {
    // w_i with <w_i, r_j> = delta_ij: solved from the transposed system
    std::vector<LatticeVector> rows;
    std::vector<Rational> rhs;
    for (int j = 0; j < k; ++j) {
      rows.push_back(gens[j]);
      rhs.push_back(Rational(i == j ? 1 : 0));
    }
    QVector w;
    if (!solve_rational(rows, rhs, fan.dim(), w))
      fail(ErrorCode::BadArgument, "barycentric_functionals: dependent rays");
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace detail

// Minimal log discrepancy over valuations with center in the union of the
// orbit closures of `centers` (subset semantics), or with center exactly the
// stratum of the single center cone (`exact` = true). The witness is the
// lexicographically smallest primitive minimizer.
inline MldResult mld(const ToricPair& pair, const std::vector<Cone>& centers, bool exact = false) {
  const Fan& fan = pair.x();
  if (centers.empty()) fail(ErrorCode::BadArgument, "mld: empty center set");
  if (exact && centers.size() != 1)
    fail(ErrorCode::BadArgument, "mld: exact semantics take a single center");
  for (const Cone& c : centers) {
    if (!fan.has_cone(c)) fail(ErrorCode::UnknownCone, "mld: center cone not in fan");
    if (exact && c.is_zero())
      fail(ErrorCode::BadArgument, "mld: exact center must be a nonzero cone");
  }
  for (int i = 0; i < fan.ray_count(); ++i)
    if (pair.psi.ray_values()[i] < 0)
      fail(ErrorCode::NotLogCanonical, "mld: negative log discrepancy at a ray");

  // search cones: maximal cones of the star of the center set
  std::vector<Cone> search;
  for (const Cone& m : fan.max_cones())
    for (const Cone& c : centers)
      if (m.contains_all(c)) { search.push_back(m); break; }
  if (exact) search = {centers.front()};
  if (search.empty()) fail(ErrorCode::BadArgument, "mld: empty search star");

  // a fully degenerate admissible cone carries valuations with psi = 0
  for (const Cone& omega : fan.all_cones()) {
    if (omega.is_zero() || !detail::admissible(omega, centers, exact)) continue;
    bool all_zero = true;
    for (int i : omega.rays)
      if (pair.psi.ray_values()[i] != 0) { all_zero = false; break; }
    if (all_zero) {
      LatticeVector w = primitive(fan.interior_point(omega));
      return MldResult{Rational(0), std::move(w)};
    }
  }

  // initial admissible upper bound from the interior points of the search cones
  std::optional<MldResult> best;
  auto offer = [&](const Rational& val, const LatticeVector& v) {
    if (!best || val < best->value || (val == best->value && lex_less(v, best->witness)))
      best = MldResult{val, v};
  };
  for (const Cone& sigma : search) {
    LatticeVector w = primitive(fan.interior_point(sigma));
    if (detail::admissible(minimal_containing_cone(fan, w), centers, exact))
      offer(pair.psi.eval(w), w);
  }
  if (!best) fail(ErrorCode::BadArgument, "mld: no admissible candidate found");
  Rational bound = best->value;

  for (const Cone& sigma : search) {
    // linear functional of psi on this cone
    QVector m;
    {
      std::vector<LatticeVector> rows;
      std::vector<Rational> rhs;
      for (int i : sigma.rays) {
        rows.push_back(fan.ray(i));
        rhs.push_back(pair.psi.ray_values()[i]);
      }
      if (!solve_rational(rows, rhs, fan.dim(), m))
        fail(ErrorCode::NotRCartier, "mld: psi not linear on a search cone");
    }

    std::vector<LinearInequality> ineqs;
    const Fan::ConeGeometry& g = fan.geometry(sigma);
    for (std::size_t k = 0; k < g.normals.size(); ++k) {
      ineqs.push_back(LinearInequality{g.normals[k], Rational(0)});
      if (g.is_equation[k]) ineqs.push_back(LinearInequality{toric::negate(g.normals[k]), Rational(0)});
    }
    // psi <= bound
    QVector neg_m(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) neg_m[i] = -m[i];
    ineqs.push_back(scaled_inequality(neg_m, -bound));

    // cap the coordinates along zero rays; they do not change psi and the
    // reduction to the capped region preserves admissibility
    bool simplicial = multiplicity(fan, sigma) != 0;
    std::vector<int> zero_rays;
    for (int i : sigma.rays)
      if (pair.psi.ray_values()[i] == 0) zero_rays.push_back(i);
    std::vector<QVector> bary;
    if (!zero_rays.empty()) {
      if (!simplicial)
        fail(ErrorCode::Unsupported,
             "mld: boundary coefficient 1 on a non-simplicial search cone");
      bary = detail::barycentric_functionals(fan, sigma);
    }

    // certified coordinate box: lambda_i <= bound / psi(r_i) on positive rays,
    // lambda_i <= 1 on zero rays
    Rational box(0);
    for (std::size_t pos = 0; pos < sigma.rays.size(); ++pos) {
      int i = sigma.rays[pos];
      Rational cap = pair.psi.ray_values()[i] == 0 ? Rational(1)
                                                   : bound / pair.psi.ray_values()[i];
      if (!zero_rays.empty() && pair.psi.ray_values()[i] == 0) {
        QVector neg_w(bary[pos].size());
        for (std::size_t t = 0; t < bary[pos].size(); ++t) neg_w[t] = -bary[pos][t];
        ineqs.push_back(scaled_inequality(neg_w, -cap));
      }
      Rational reach(0);
      for (const Integer& x : fan.ray(i)) reach += Rational(abs(x));
      box += cap * reach;
    }
    Integer box_bound = rational_ceil(box) + 1;

    for (const LatticeVector& v : enumerate_points(ineqs, fan.dim(), box_bound)) {
      if (is_zero(v) || !is_primitive(v)) continue;
      Cone min_cone = minimal_containing_cone(fan, v);
      if (!detail::admissible(min_cone, centers, exact)) continue;
      offer(dot(m, v), v);
    }
  }
  return *best;
}

// m.l.d. at the (generic point of the) stratum of one cone.
inline MldResult mld_at(const ToricPair& pair, const Cone& center) {
  return mld(pair, {center}, true);
}

// minimum over all strata of codimension >= 2 (detects canonical/terminal)
inline std::optional<MldResult> mld_codim_at_least_2(const ToricPair& pair) {
  std::vector<Cone> centers;
  for (const Cone& c : pair.x().all_cones())
    if (pair.x().cone_dim(c) == 2) centers.push_back(c);
  if (centers.empty()) return std::nullopt;
  return mld(pair, centers, false);
}

inline bool is_canonical_in_codim2(const ToricPair& pair) {
  auto m = mld_codim_at_least_2(pair);
  return !m || m->value >= 1;
}

inline bool is_terminal_in_codim2(const ToricPair& pair) {
  auto m = mld_codim_at_least_2(pair);
  return !m || m->value > 1;
}

}  // namespace toric
