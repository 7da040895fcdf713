#pragma once

// Cone duality by the double description method, exact membership tests,
// relative interiors, intersections and face predicates. All cones are
// rational polyhedral cones given by generating rays.

#include <algorithm>
#include <set>
#include <vector>

#include "toric/linalg.hpp"

namespace toric {

// V-representation of a (possibly non-pointed) cone: span(lineality) + cone(rays).
struct VRep {
  std::vector<LatticeVector> lineality;
  std::vector<LatticeVector> rays;
};

namespace detail {

struct TrackedRay {
  LatticeVector v;
  std::set<int> zero;  // indices of processed constraints tight at v
};

inline LatticeVector reduced(LatticeVector v) {
  Integer g = content(v);
  if (g > 1)
    for (Integer& x : v) x /= g;
  return v;
}

}  // namespace detail

// Generators of the dual cone {u : <u,g> >= 0 for all g in gens}.
// Incremental double description with an explicit lineality part; ray
// irredundancy is maintained by the combinatorial adjacency test.
inline VRep dual_cone(const std::vector<LatticeVector>& gens, int dim) {
  std::vector<LatticeVector> lineality;
  for (int i = 0; i < dim; ++i) {
    LatticeVector e(dim, Integer(0));
    e[i] = 1;
    lineality.push_back(e);
  }
  std::vector<detail::TrackedRay> rays;

  int constraint_index = 0;
  for (const LatticeVector& a : gens) {
    if (is_zero(a)) continue;
    int j0 = -1;
    for (std::size_t j = 0; j < lineality.size(); ++j)
      if (dot(a, lineality[j]) != 0) { j0 = static_cast<int>(j); break; }
    if (j0 >= 0) {
      LatticeVector b0 = lineality[j0];
      Integer d0 = dot(a, b0);
      if (d0 < 0) { b0 = negate(b0); d0 = -d0; }
      std::vector<LatticeVector> new_lin;
      for (std::size_t j = 0; j < lineality.size(); ++j) {
        if (static_cast<int>(j) == j0) continue;
        Integer dj = dot(a, lineality[j]);
        new_lin.push_back(detail::reduced(sub(scale(d0, lineality[j]), scale(dj, b0))));
      }
      for (detail::TrackedRay& r : rays) {
        Integer dr = dot(a, r.v);
        r.v = detail::reduced(sub(scale(d0, r.v), scale(dr, b0)));
        r.zero.insert(constraint_index);
      }
      detail::TrackedRay nr;
      nr.v = detail::reduced(b0);
      for (int t = 0; t < constraint_index; ++t) nr.zero.insert(t);
      rays.push_back(std::move(nr));
      lineality = std::move(new_lin);
    } else {
      std::vector<detail::TrackedRay> plus, zero, minus;
      for (detail::TrackedRay& r : rays) {
        Integer s = dot(a, r.v);
        if (s > 0) plus.push_back(std::move(r));
        else if (s == 0) { r.zero.insert(constraint_index); zero.push_back(std::move(r)); }
        else minus.push_back(std::move(r));
      }
      std::vector<detail::TrackedRay> next = plus;
      for (auto& z : zero) next.push_back(z);
      auto adjacent = [&](const detail::TrackedRay& p, const detail::TrackedRay& m) {
        std::set<int> common;
        std::set_intersection(p.zero.begin(), p.zero.end(), m.zero.begin(), m.zero.end(),
                              std::inserter(common, common.begin()));
        for (const auto& bucket : {&plus, &zero, &minus})
          for (const detail::TrackedRay& o : *bucket) {
            if (&o == &p || &o == &m) continue;
            if (std::includes(o.zero.begin(), o.zero.end(), common.begin(), common.end()))
              return false;
          }
        return true;
      };
      for (const detail::TrackedRay& p : plus)
        for (const detail::TrackedRay& m : minus) {
          if (!adjacent(p, m)) continue;
          detail::TrackedRay w;
          w.v = detail::reduced(sub(scale(dot(a, p.v), m.v), scale(dot(a, m.v), p.v)));
          std::set_intersection(p.zero.begin(), p.zero.end(), m.zero.begin(), m.zero.end(),
                                std::inserter(w.zero, w.zero.begin()));
          w.zero.insert(constraint_index);
          next.push_back(std::move(w));
        }
      rays = std::move(next);
    }
    ++constraint_index;
  }

  VRep out;
  out.lineality = std::move(lineality);
  for (detail::TrackedRay& r : rays) out.rays.push_back(std::move(r.v));
  std::sort(out.rays.begin(), out.rays.end(), lex_less);
  std::sort(out.lineality.begin(), out.lineality.end(), lex_less);
  return out;
}

// Inner normals u_j with cone(gens) = {x : <u_j, x> >= 0 for all j}, a
// minimal such set. A cone of lower dimension is cut out by +/- pairs for
// its span together with facet normals inside the span.
inline std::vector<LatticeVector> facet_normals(const std::vector<LatticeVector>& gens, int dim) {
  VRep dual = dual_cone(gens, dim);
  std::vector<LatticeVector> out;
  for (const LatticeVector& b : dual.lineality) {
    out.push_back(b);
    out.push_back(negate(b));
  }
  for (const LatticeVector& r : dual.rays) out.push_back(r);
  if (rank_of(out, dim) < dim)
    fail(ErrorCode::NotPointed, "facet_normals: generators span a non-pointed cone");
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

// Membership in cone(gens) through the dual description.
inline bool cone_contains(const std::vector<LatticeVector>& normals, const LatticeVector& x) {
  for (const LatticeVector& u : normals)
    if (dot(u, x) < 0) return false;
  return true;
}

// Normals identically zero on the cone cut out its span.
inline bool normal_is_equation(const LatticeVector& u, const std::vector<LatticeVector>& gens) {
  for (const LatticeVector& g : gens)
    if (dot(u, g) != 0) return false;
  return true;
}

inline bool in_relative_interior(const std::vector<LatticeVector>& normals,
                                 const std::vector<LatticeVector>& gens, const LatticeVector& x) {
  for (const LatticeVector& u : normals) {
    Integer s = dot(u, x);
    if (normal_is_equation(u, gens)) {
      if (s != 0) return false;
    } else {
      if (s <= 0) return false;
    }
  }
  return true;
}

// Extreme rays of cone(gens), primitive and sorted: a generator is extreme
// iff it is not a nonnegative combination of the others.
inline std::vector<LatticeVector> extreme_rays(const std::vector<LatticeVector>& gens, int dim) {
  std::vector<LatticeVector> prim;
  for (const LatticeVector& g : gens) {
    if (is_zero(g)) continue;
    LatticeVector p = primitive(g);
    if (std::find(prim.begin(), prim.end(), p) == prim.end()) prim.push_back(p);
  }
  std::vector<LatticeVector> out;
  for (std::size_t i = 0; i < prim.size(); ++i) {
    std::vector<LatticeVector> others;
    for (std::size_t j = 0; j < prim.size(); ++j)
      if (j != i) others.push_back(prim[j]);
    if (others.empty()) { out.push_back(prim[i]); continue; }
    // membership needs the lineality equations too
    VRep d = dual_cone(others, dim);
    bool inside = true;
    for (const LatticeVector& u : d.rays)
      if (dot(u, prim[i]) < 0) { inside = false; break; }
    if (inside)
      for (const LatticeVector& b : d.lineality)
        if (dot(b, prim[i]) != 0) { inside = false; break; }
    if (!inside) out.push_back(prim[i]);
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

// V-representation (extreme rays) of cone(gens_a) intersected with
// cone(gens_b); both inputs must be pointed.
inline std::vector<LatticeVector> intersect_cones(const std::vector<LatticeVector>& gens_a,
                                                  const std::vector<LatticeVector>& gens_b,
                                                  int dim) {
  std::vector<LatticeVector> halfspaces = facet_normals(gens_a, dim);
  std::vector<LatticeVector> nb = facet_normals(gens_b, dim);
  halfspaces.insert(halfspaces.end(), nb.begin(), nb.end());
  VRep v = dual_cone(halfspaces, dim);
  // intersection of pointed cones is pointed
  if (!v.lineality.empty())
    fail(ErrorCode::NotPointed, "intersect_cones: unexpected lineality");
  return v.rays;  // sorted, primitive
}

// Is cone(face_gens) a face of cone(gens)? face_gens must be a subset of the
// cone. The test compares against gens ∩ u*-perp where u* is the sum of all
// facet normals vanishing on the candidate.
inline bool is_face_of(const std::vector<LatticeVector>& face_gens,
                       const std::vector<LatticeVector>& gens, int dim) {
  std::vector<LatticeVector> cone_rays = extreme_rays(gens, dim);
  std::vector<LatticeVector> face_rays = extreme_rays(face_gens.empty()
                                                          ? std::vector<LatticeVector>{}
                                                          : face_gens,
                                                      dim);
  std::vector<LatticeVector> normals = facet_normals(gens, dim);
  LatticeVector ustar(dim, Integer(0));
  for (const LatticeVector& u : normals) {
    bool vanishes = true;
    for (const LatticeVector& f : face_rays)
      if (dot(u, f) != 0) { vanishes = false; break; }
    if (vanishes) ustar = add(ustar, u);
  }
  std::vector<LatticeVector> cut;
  for (const LatticeVector& r : cone_rays)
    if (dot(ustar, r) == 0) cut.push_back(r);
  std::sort(cut.begin(), cut.end(), lex_less);
  return cut == face_rays;
}

}  // namespace toric
