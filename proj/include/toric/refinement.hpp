#pragma once

// Refinements of fans (same support, fine cones inside coarse cones), the
// walls of a refinement, common refinements, and stellar subdivision.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "toric/fan.hpp"

namespace toric {

struct Refinement {
  Fan fine;
  Fan coarse;
  std::vector<int> assignment;  // fine max cone index -> coarse max cone index
};

struct Wall {
  Cone wall;  // codimension-1 cone of the fine fan
  int left;   // adjacent fine max cone indices
  int right;
};

namespace detail {

// facets (codim-1 faces) of a maximal cone
inline std::vector<Cone> facets_of(const Fan& fan, const Cone& c) {
  int d = fan.cone_dim(c);
  std::vector<Cone> out;
  for (const Cone& f : fan.faces_of(c))
    if (fan.cone_dim(f) == d - 1) out.push_back(f);
  return out;
}

}  // namespace detail

// All codimension-1 cones of the fine fan interior to a coarse cone, each
// with its two adjacent maximal cones. A facet owned by a single cone must
// lie on the boundary of the assigned coarse cone.
inline std::vector<Wall> walls(const Refinement& r) {
  std::vector<Wall> out;
  const Fan& fine = r.fine;
  for (std::size_t zi = 0; zi < r.coarse.max_cones().size(); ++zi) {
    const Cone& zc = r.coarse.max_cones()[zi];
    std::vector<int> members;
    for (std::size_t i = 0; i < fine.max_cones().size(); ++i)
      if (r.assignment[i] == static_cast<int>(zi)) members.push_back(static_cast<int>(i));
    std::map<Cone, std::vector<int>> owners;
    for (int i : members)
      for (const Cone& f : detail::facets_of(fine, fine.max_cones()[i])) owners[f].push_back(i);
    const Fan::ConeGeometry& zg = r.coarse.geometry(zc);
    for (const auto& [facet, who] : owners) {
      if (who.size() == 2) {
        out.push_back(Wall{facet, who[0], who[1]});
      } else if (who.size() == 1) {
        // must sit on a facet hyperplane of the coarse cone
        bool on_boundary = false;
        for (std::size_t k = 0; k < zg.normals.size() && !on_boundary; ++k) {
          if (zg.is_equation[k]) continue;
          bool tight = true;
          for (int ri : facet.rays)
            if (dot(zg.normals[k], fine.ray(ri)) != 0) { tight = false; break; }
          on_boundary = tight;
        }
        if (!on_boundary)
          fail(ErrorCode::SupportMismatch,
               "walls: interior facet with a single adjacent cone (fine fan does not cover "
               "the coarse cone)");
      } else {
        fail(ErrorCode::BadArgument, "walls: facet shared by more than two maximal cones");
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Wall& a, const Wall& b) {
    if (a.wall != b.wall) return a.wall < b.wall;
    return std::pair(a.left, a.right) < std::pair(b.left, b.right);
  });
  return out;
}

// Build a refinement: every fine maximal cone must lie inside a coarse
// maximal cone, every coarse maximal cone must be covered. The wall audit
// certifies support equality.
inline Refinement make_refinement(Fan fine, Fan coarse) {
  if (fine.dim() != coarse.dim())
    fail(ErrorCode::BadArgument, "make_refinement: dimension mismatch");
  Refinement r{std::move(fine), std::move(coarse), {}};
  r.assignment.resize(r.fine.max_cones().size(), -1);
  for (std::size_t i = 0; i < r.fine.max_cones().size(); ++i) {
    const Cone& c = r.fine.max_cones()[i];
    LatticeVector w = r.fine.interior_point(c);
    Cone home;
    try {
      home = minimal_containing_cone(r.coarse, w);
    } catch (const Error&) {
      fail(ErrorCode::SupportMismatch, "make_refinement: fine cone outside the coarse support");
    }
    int target = -1;
    for (std::size_t z = 0; z < r.coarse.max_cones().size(); ++z)
      if (r.coarse.max_cones()[z].contains_all(home)) { target = static_cast<int>(z); break; }
    // the fine cone must lie inside the assigned coarse cone entirely
    const Cone& zc = r.coarse.max_cones()[target];
    for (int ri : c.rays)
      if (!r.coarse.cone_contains(zc, r.fine.ray(ri)))
        fail(ErrorCode::SupportMismatch, "make_refinement: fine cone crosses a coarse wall");
    if (r.coarse.cone_dim(zc) != r.fine.cone_dim(c))
      fail(ErrorCode::SupportMismatch, "make_refinement: dimension drop inside a coarse cone");
    r.assignment[i] = target;
  }
  std::vector<bool> covered(r.coarse.max_cones().size(), false);
  for (int a : r.assignment) covered[a] = true;
  for (std::size_t z = 0; z < covered.size(); ++z)
    if (!covered[z])
      fail(ErrorCode::SupportMismatch, "make_refinement: coarse cone not covered");
  walls(r);  // runs the one-owner boundary audit
  return r;
}

inline Refinement trivial_refinement(const Fan& fan) { return make_refinement(fan, fan); }

// Minimal coarse cone containing a fine cone (faces included).
inline Cone coarse_cone_of(const Refinement& r, const Cone& fine_cone) {
  if (fine_cone.is_zero()) return Cone{};
  return minimal_containing_cone(r.coarse, r.fine.interior_point(fine_cone));
}

// Fan whose cones are the pairwise intersections; requires equal supports.
inline Fan common_refinement(const Fan& a, const Fan& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::BadArgument, "common_refinement: dimension mismatch");
  int dim = a.dim();
  std::vector<std::vector<LatticeVector>> cells;
  for (const Cone& ca : a.max_cones())
    for (const Cone& cb : b.max_cones()) {
      std::vector<LatticeVector> meet =
          intersect_cones(a.cone_generators(ca), b.cone_generators(cb), dim);
      if (meet.empty()) continue;
      cells.push_back(std::move(meet));
    }
  // drop cells contained in another cell
  std::vector<bool> keep(cells.size(), true);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!keep[i]) continue;
    std::vector<LatticeVector> normals_i = facet_normals(cells[i], dim);
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (i == j || !keep[j]) continue;
      bool inside = true;
      for (const LatticeVector& g : cells[j])
        if (!cone_contains(normals_i, g)) { inside = false; break; }
      if (inside && cells[j] != cells[i]) keep[j] = false;
      if (inside && cells[j] == cells[i] && j > i) keep[j] = false;
    }
  }
  std::vector<LatticeVector> rays;
  std::vector<Cone> max_cones;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!keep[i]) continue;
    std::vector<int> idx;
    for (const LatticeVector& g : cells[i]) {
      auto it = std::find(rays.begin(), rays.end(), g);
      if (it == rays.end()) {
        rays.push_back(g);
        idx.push_back(static_cast<int>(rays.size()) - 1);
      } else {
        idx.push_back(static_cast<int>(it - rays.begin()));
      }
    }
    max_cones.push_back(Cone(std::move(idx)));
  }
  std::set<Cone> dedup(max_cones.begin(), max_cones.end());
  Fan w(dim, std::move(rays), std::vector<Cone>(dedup.begin(), dedup.end()));
  FanDiagnostics diag = validate_fan(w);
  if (!diag.ok)
    fail(ErrorCode::BadArgument, "common_refinement: invalid result: " + diag.issues.front());
  // support equality of a and b, certified by mutual refinement containment
  make_refinement(w, a);
  make_refinement(w, b);
  return w;
}

// Stellar subdivision of a simplicial fan at a primitive vector v lying in
// the relative interior of one of its cones.
inline Fan stellar_subdivision(const Fan& fan, const LatticeVector& v) {
  if (!is_primitive(v)) fail(ErrorCode::BadArgument, "stellar_subdivision: non-primitive center");
  Cone home = minimal_containing_cone(fan, v);
  if (home.is_zero()) fail(ErrorCode::BadArgument, "stellar_subdivision: center is zero");
  std::vector<LatticeVector> rays = fan.rays();
  int vi;
  auto it = std::find(rays.begin(), rays.end(), v);
  if (it == rays.end()) {
    rays.push_back(v);
    vi = static_cast<int>(rays.size()) - 1;
  } else {
    vi = static_cast<int>(it - rays.begin());
    if (home.rays == std::vector<int>{vi}) return fan;  // already a ray of the fan
  }
  std::vector<Cone> out;
  for (const Cone& m : fan.max_cones()) {
    if (!m.contains_all(home)) {
      out.push_back(m);
      continue;
    }
    for (int drop : home.rays) {
      std::vector<int> c;
      for (int i : m.rays)
        if (i != drop) c.push_back(i);
      c.push_back(vi);
      out.push_back(Cone(std::move(c)));
    }
  }
  return make_fan(fan.dim(), std::move(rays), std::move(out));
}

}  // namespace toric
