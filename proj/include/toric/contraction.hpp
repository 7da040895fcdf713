#pragma once

// Toric birational contractions f: X -> Z presented as fan refinements:
// exceptional locus, dimension invariants, relative positivity, wall-curve
// intersection numbers and the log length.

#include <optional>
#include <string>
#include <vector>

#include "toric/toric_pair.hpp"

namespace toric {

struct Contraction {
  Refinement ref;   // fine = Sigma_X, coarse = Sigma_Z
  ToricPair pair;   // the log pair on Sigma_X

  const Fan& x() const { return ref.fine; }
  const Fan& z() const { return ref.coarse; }
  int dim() const { return ref.fine.dim(); }
};

inline Contraction make_contraction(Refinement ref, RDivisor boundary) {
  auto fan = std::make_shared<Fan>(ref.fine);
  ToricPair pair = make_toric_pair(std::move(fan), std::move(boundary));
  return Contraction{std::move(ref), std::move(pair)};
}

inline Contraction make_contraction(Refinement ref) {
  RDivisor b(static_cast<std::size_t>(ref.fine.ray_count()), Rational(0));
  return make_contraction(std::move(ref), std::move(b));
}

// small = no divisor is contracted = the two fans share their ray sets
inline bool is_small(const Contraction& c) {
  std::set<LatticeVector> a(c.x().rays().begin(), c.x().rays().end());
  std::set<LatticeVector> b(c.z().rays().begin(), c.z().rays().end());
  return a == b;
}

// K + B as ray values: value b_i - 1 on every ray
inline RDivisor canonical_plus_boundary(const Contraction& c) {
  RDivisor out(c.pair.boundary.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = c.pair.boundary[i] - Rational(1);
  return out;
}

struct ExceptionalLocus {
  std::vector<Cone> components;  // minimal contracted cones of Sigma_X
  std::vector<int> dims;         // n - dim(cone), aligned with components
  bool empty() const { return components.empty(); }
};

// V(tau) is contracted iff the minimal coarse cone containing tau has bigger
// dimension; components are the minimal such cones.
inline ExceptionalLocus exceptional_locus(const Contraction& c) {
  std::vector<Cone> contracted;
  for (const Cone& tau : c.x().all_cones()) {
    if (tau.is_zero()) continue;
    Cone home = coarse_cone_of(c.ref, tau);
    if (c.z().cone_dim(home) > c.x().cone_dim(tau)) contracted.push_back(tau);
  }
  ExceptionalLocus out;
  for (const Cone& tau : contracted) {
    bool minimal = true;
    for (const Cone& other : contracted)
      if (other != tau && tau.contains_all(other)) { minimal = false; break; }
    if (minimal) {
      out.components.push_back(tau);
      out.dims.push_back(c.dim() - c.x().cone_dim(tau));
    }
  }
  return out;
}

struct DInvariant {
  bool empty = true;  // empty exceptional locus, d = -infinity
  int min_dim = 0;
  int max_dim = 0;
  bool pure = false;
};

inline DInvariant d_invariant(const ExceptionalLocus& locus) {
  DInvariant d;
  if (locus.empty()) return d;
  d.empty = false;
  d.min_dim = *std::min_element(locus.dims.begin(), locus.dims.end());
  d.max_dim = *std::max_element(locus.dims.begin(), locus.dims.end());
  d.pure = d.min_dim == d.max_dim;
  return d;
}

inline DInvariant d_invariant(const Contraction& c) { return d_invariant(exceptional_locus(c)); }

enum class Positivity { Ample, Nef, Trivial, None };

inline bool is_nef(Positivity p) { return p != Positivity::None; }

inline const char* positivity_name(Positivity p) {
  switch (p) {
    case Positivity::Ample: return "ample";
    case Positivity::Nef: return "nef";
    case Positivity::Trivial: return "trivial";
    case Positivity::None: return "none";
  }
  return "?";
}

namespace detail {

// The bend of a PL function across a wall: with m_left, m_right the linear
// pieces and u the primitive functional vanishing on the wall and positive
// towards the left cone, the bend is c where m_left - m_right = c * u. This
// is the intersection number of the divisor with the wall curve.
inline Rational wall_bend(const Fan& fine, const PLFunction& pl, const Wall& w) {
  const Cone& left = fine.max_cones()[w.left];
  std::vector<LatticeVector> wall_rays = fine.cone_generators(w.wall);
  std::vector<LatticeVector> u_basis =
      kernel_basis(IntegerMatrix::from_rows(wall_rays, fine.dim()));
  if (u_basis.size() != 1) fail(ErrorCode::BadWall, "wall is not of codimension one");
  LatticeVector u = primitive(u_basis.front());
  LatticeVector probe = fine.interior_point(left);
  Integer h = dot(u, probe);
  if (h == 0) fail(ErrorCode::BadWall, "degenerate wall probe");
  if (h < 0) { u = toric::negate(u); h = -h; }
  const QVector& ml = pl.functional(w.left);
  const QVector& mr = pl.functional(w.right);
  Rational diff = dot(ml, probe) - dot(mr, probe);
  return diff / Rational(h);
}

}  // namespace detail

// Intersection number of an invariant divisor with the curve of an interior
// wall, from the wall relation: with the relation alpha_a v_a + alpha_b v_b
// + sum alpha_i v_i = 0 (outer coefficients positive) the number is
// (sum_r alpha_r val_r) / (alpha_a <u, v_a>).
inline Rational wall_intersection(const Contraction& c, const Wall& w, const RDivisor& divisor) {
  const Fan& fine = c.x();
  const Cone& left = fine.max_cones()[w.left];
  const Cone& right = fine.max_cones()[w.right];
  int va = -1, vb = -1;
  for (int i : left.rays)
    if (!std::binary_search(w.wall.rays.begin(), w.wall.rays.end(), i)) {
      if (va >= 0) fail(ErrorCode::BadWall, "wall_intersection: non-simplicial side");
      va = i;
    }
  for (int i : right.rays)
    if (!std::binary_search(w.wall.rays.begin(), w.wall.rays.end(), i)) {
      if (vb >= 0) fail(ErrorCode::BadWall, "wall_intersection: non-simplicial side");
      vb = i;
    }
  if (va < 0 || vb < 0) fail(ErrorCode::BadWall, "wall_intersection: degenerate wall");

  std::vector<int> participants{va, vb};
  participants.insert(participants.end(), w.wall.rays.begin(), w.wall.rays.end());
  std::vector<LatticeVector> cols;
  for (int i : participants) cols.push_back(fine.ray(i));
  std::vector<LatticeVector> rel =
      kernel_basis(IntegerMatrix::from_cols(cols, fine.dim()));
  if (rel.size() != 1) fail(ErrorCode::BadWall, "wall_intersection: relation space not a line");
  LatticeVector alpha = primitive(rel.front());
  if (alpha[0] < 0) alpha = toric::negate(alpha);
  if (alpha[0] == 0 || alpha[1] <= 0)
    fail(ErrorCode::BadWall, "wall_intersection: outer coefficients not positive");

  // primitive functional vanishing on the wall, positive on the left side
  std::vector<LatticeVector> wall_rays = fine.cone_generators(w.wall);
  std::vector<LatticeVector> u_basis =
      kernel_basis(IntegerMatrix::from_rows(wall_rays, fine.dim()));
  if (u_basis.size() != 1) fail(ErrorCode::BadWall, "wall_intersection: wall not codimension one");
  LatticeVector u = primitive(u_basis.front());
  Integer ha = dot(u, fine.ray(va));
  if (ha == 0) fail(ErrorCode::BadWall, "wall_intersection: outer ray on the wall hyperplane");
  if (ha < 0) { u = toric::negate(u); ha = -ha; }

  Rational total(0);
  for (std::size_t t = 0; t < participants.size(); ++t)
    total += Rational(alpha[t]) * divisor[participants[t]];
  return total / Rational(alpha[0] * ha);
}

// Positivity of a divisor relative to Z: classified by the signs of its
// bends across the interior walls. The sign convention is pinned by the
// catalog: -K on the Francia contraction is ample with length 1/2, and
// K on a flop bends to zero.
inline Positivity relative_positivity(const Contraction& c, const RDivisor& divisor) {
  PLFunction pl = pl_function(std::make_shared<Fan>(c.x()), divisor);
  std::vector<Wall> ws = walls(c.ref);
  bool all_zero = true, all_nonneg = true, all_pos = !ws.empty();
  for (const Wall& w : ws) {
    Rational bend = detail::wall_bend(c.x(), pl, w);
    if (bend != 0) all_zero = false;
    if (bend <= 0) all_pos = false;
    if (bend < 0) all_nonneg = false;
  }
  if (all_zero) return Positivity::Trivial;
  if (all_pos) return Positivity::Ample;
  if (all_nonneg) return Positivity::Nef;
  return Positivity::None;
}

// The (log) length: minimal -(K+B) . C over the interior wall curves.
inline Rational length(const Contraction& c) {
  ExceptionalLocus locus = exceptional_locus(c);
  if (locus.empty()) fail(ErrorCode::NotApplicable, "length: empty exceptional locus");
  RDivisor mkb = negate(canonical_plus_boundary(c));
  if (!is_nef(relative_positivity(c, mkb)))
    fail(ErrorCode::NotApplicable, "length: -(K+B) is not nef over Z");
  std::vector<Wall> ws = walls(c.ref);
  if (ws.empty()) fail(ErrorCode::NotApplicable, "length: no contracted curves");
  std::optional<Rational> best;
  for (const Wall& w : ws) {
    Rational v = wall_intersection(c, w, mkb);
    if (!best || v < *best) best = v;
  }
  return *best;
}

// m.l.d. of the pair in the exceptional locus (centers inside E)
inline MldResult mld_in_exceptional_locus(const Contraction& c) {
  ExceptionalLocus locus = exceptional_locus(c);
  if (locus.empty()) fail(ErrorCode::NotApplicable, "mld over an empty exceptional locus");
  return mld(c.pair, locus.components, false);
}

struct LengthBoundReport {
  bool applicable = false;
  bool strict_regime = false;  // terminal in codimension 2
  Rational length_value;
  bool pass = false;
  std::string detail;
};

// Along curve components with at least canonical transverse singularities the
// length cannot exceed 1, strictly under terminal; reports the witness wall
// value otherwise.
inline LengthBoundReport check_length_bound(const Contraction& c) {
  LengthBoundReport rep;
  ExceptionalLocus locus = exceptional_locus(c);
  DInvariant d = d_invariant(locus);
  if (d.empty || d.min_dim != 1) {
    rep.detail = "no curve component";
    return rep;
  }
  if (!is_canonical_in_codim2(c.pair)) {
    rep.detail = "not canonical in codimension 2";
    return rep;
  }
  RDivisor mkb = negate(canonical_plus_boundary(c));
  if (!is_nef(relative_positivity(c, mkb))) {
    rep.detail = "-(K+B) not nef over Z";
    return rep;
  }
  rep.applicable = true;
  rep.strict_regime = is_terminal_in_codim2(c.pair);
  rep.length_value = length(c);
  rep.pass = rep.strict_regime ? rep.length_value < 1 : rep.length_value <= 1;
  rep.detail = "l = " + rational_to_string(rep.length_value);
  return rep;
}

// rank of the span of the interior wall relations; 1 for circuit fans
inline int relative_picard_rank(const Contraction& c) {
  std::vector<Wall> ws = walls(c.ref);
  if (ws.empty()) return 0;
  std::vector<LatticeVector> rel_rows;
  for (const Wall& w : ws) {
    const Fan& fine = c.x();
    std::vector<int> participants = w.wall.rays;
    for (int side : {w.left, w.right})
      for (int i : fine.max_cones()[side].rays)
        if (!std::binary_search(w.wall.rays.begin(), w.wall.rays.end(), i))
          participants.push_back(i);
    std::sort(participants.begin(), participants.end());
    participants.erase(std::unique(participants.begin(), participants.end()), participants.end());
    std::vector<LatticeVector> cols;
    for (int i : participants) cols.push_back(fine.ray(i));
    std::vector<LatticeVector> rel = kernel_basis(IntegerMatrix::from_cols(cols, fine.dim()));
    if (rel.size() != 1) continue;
    LatticeVector row(static_cast<std::size_t>(fine.ray_count()), Integer(0));
    for (std::size_t t = 0; t < participants.size(); ++t) row[participants[t]] = rel.front()[t];
    rel_rows.push_back(std::move(row));
  }
  if (rel_rows.empty()) return 0;
  return rank_of(IntegerMatrix::from_rows(rel_rows, c.x().ray_count()));
}

}  // namespace toric
