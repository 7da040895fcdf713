#pragma once

// Fans of rational pointed cones indexed by their rays. Cones are stored as
// sorted ray-index sets of the maximal cones; faces, facet normals and the
// face lattice are computed on demand and memoized. Fans are immutable after
// construction, so the memo is safe to share.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "toric/cones.hpp"

namespace toric {

struct Cone {
  std::vector<int> rays;  // sorted, unique indices into the fan's ray list

  Cone() = default;
  explicit Cone(std::vector<int> r) : rays(std::move(r)) {
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  }

  bool is_zero() const { return rays.empty(); }
  int ray_count() const { return static_cast<int>(rays.size()); }

  bool contains_all(const Cone& other) const {
    return std::includes(rays.begin(), rays.end(), other.rays.begin(), other.rays.end());
  }

  auto operator<=>(const Cone& o) const = default;
};

struct FanDiagnostics {
  bool ok = true;
  std::vector<std::string> issues;
  void report(const std::string& msg) {
    ok = false;
    issues.push_back(msg);
  }
};

class Fan {
 public:
  Fan() = default;
  Fan(int dim, std::vector<LatticeVector> rays, std::vector<Cone> max_cones)
      : dim_(dim), rays_(std::move(rays)), max_cones_(std::move(max_cones)),
        cache_(std::make_shared<Cache>()) {
    std::sort(max_cones_.begin(), max_cones_.end());
  }

  int dim() const { return dim_; }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const LatticeVector& ray(int i) const { return rays_[i]; }
  int ray_count() const { return static_cast<int>(rays_.size()); }
  const std::vector<Cone>& max_cones() const { return max_cones_; }

  std::vector<LatticeVector> cone_generators(const Cone& c) const {
    std::vector<LatticeVector> out;
    out.reserve(c.rays.size());
    for (int i : c.rays) out.push_back(rays_[i]);
    return out;
  }

  int cone_dim(const Cone& c) const {
    if (c.is_zero()) return 0;
    return rank_of(cone_generators(c), dim_);
  }

  // facet normals of the cone, memoized; parallel vector of equation flags
  struct ConeGeometry {
    std::vector<LatticeVector> normals;
    std::vector<bool> is_equation;
    int dim = 0;
  };

  const ConeGeometry& geometry(const Cone& c) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->geometry.find(c);
    if (it != cache_->geometry.end()) return it->second;
    ConeGeometry g;
    std::vector<LatticeVector> gens = cone_generators(c);
    g.normals = facet_normals(gens, dim_);
    g.is_equation.reserve(g.normals.size());
    for (const LatticeVector& u : g.normals) g.is_equation.push_back(normal_is_equation(u, gens));
    g.dim = c.is_zero() ? 0 : rank_of(gens, dim_);
    return cache_->geometry.emplace(c, std::move(g)).first->second;
  }

  bool cone_contains(const Cone& c, const LatticeVector& v) const {
    const ConeGeometry& g = geometry(c);
    return toric::cone_contains(g.normals, v);
  }

  bool cone_relint_contains(const Cone& c, const LatticeVector& v) const {
    const ConeGeometry& g = geometry(c);
    for (std::size_t i = 0; i < g.normals.size(); ++i) {
      Integer s = dot(g.normals[i], v);
      if (g.is_equation[i] ? s != 0 : s <= 0) return false;
    }
    return true;
  }

  // all faces of one maximal cone, as ray-index sets
  std::vector<Cone> faces_of(const Cone& c) const {
    {
      std::lock_guard<std::mutex> lock(cache_->mutex);
      auto it = cache_->faces.find(c);
      if (it != cache_->faces.end()) return it->second;
    }
    const ConeGeometry& g = geometry(c);
    std::set<Cone> seen;
    std::vector<Cone> work{c};
    seen.insert(c);
    while (!work.empty()) {
      Cone f = work.back();
      work.pop_back();
      for (const LatticeVector& u : g.normals) {
        std::vector<int> cut;
        for (int i : f.rays)
          if (dot(u, rays_[i]) == 0) cut.push_back(i);
        Cone sub(std::move(cut));
        if (seen.insert(sub).second) work.push_back(sub);
      }
    }
    std::vector<Cone> out(seen.begin(), seen.end());
    std::lock_guard<std::mutex> lock(cache_->mutex);
    return cache_->faces.emplace(c, std::move(out)).first->second;
  }

  // every cone of the fan (all faces of all maximal cones)
  const std::vector<Cone>& all_cones() const {
    {
      std::lock_guard<std::mutex> lock(cache_->mutex);
      if (cache_->all_cones) return *cache_->all_cones;
    }
    std::set<Cone> seen;
    for (const Cone& c : max_cones_)
      for (const Cone& f : faces_of(c)) seen.insert(f);
    std::vector<Cone> out(seen.begin(), seen.end());
    std::lock_guard<std::mutex> lock(cache_->mutex);
    if (!cache_->all_cones) cache_->all_cones = std::move(out);
    return *cache_->all_cones;
  }

  bool has_cone(const Cone& c) const {
    const std::vector<Cone>& all = all_cones();
    return std::binary_search(all.begin(), all.end(), c);
  }

  // cones of the fan containing c as a face
  std::vector<Cone> star(const Cone& c) const {
    std::vector<Cone> out;
    for (const Cone& f : all_cones())
      if (f.contains_all(c)) out.push_back(f);
    return out;
  }

  std::vector<Cone> max_cones_containing(const Cone& c) const {
    std::vector<Cone> out;
    for (const Cone& m : max_cones_)
      if (m.contains_all(c)) out.push_back(m);
    return out;
  }

  bool support_contains(const LatticeVector& v) const {
    for (const Cone& m : max_cones_)
      if (cone_contains(m, v)) return true;
    return false;
  }

  // interior point of a cone: the sum of its extreme rays (0 for the zero cone)
  LatticeVector interior_point(const Cone& c) const {
    LatticeVector v(dim_, Integer(0));
    for (int i : c.rays) v = add(v, rays_[i]);
    return v;
  }

 private:
  int dim_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<Cone> max_cones_;

  struct Cache {
    std::mutex mutex;
    std::map<Cone, ConeGeometry> geometry;
    std::map<Cone, std::vector<Cone>> faces;
    std::optional<std::vector<Cone>> all_cones;
  };
  std::shared_ptr<Cache> cache_;
};

// The unique cone whose relative interior contains v; v must be a nonzero
// vector of the support.
inline Cone minimal_containing_cone(const Fan& fan, const LatticeVector& v) {
  if (is_zero(v)) fail(ErrorCode::BadArgument, "minimal_containing_cone: zero vector");
  for (const Cone& m : fan.max_cones()) {
    if (!fan.cone_contains(m, v)) continue;
    const Fan::ConeGeometry& g = fan.geometry(m);
    std::vector<int> cut;
    for (int i : m.rays) {
      bool keep = true;
      for (std::size_t k = 0; k < g.normals.size(); ++k) {
        if (g.is_equation[k]) continue;
        if (dot(g.normals[k], v) == 0 && dot(g.normals[k], fan.ray(i)) != 0) {
          keep = false;
          break;
        }
      }
      if (keep) cut.push_back(i);
    }
    return Cone(std::move(cut));
  }
  fail(ErrorCode::OutsideSupport, "minimal_containing_cone: vector outside the support");
}

// multiplicity of a simplicial cone (1 for smooth, 0 marks non-simplicial)
inline Integer multiplicity(const Fan& fan, const Cone& c) {
  if (c.is_zero()) return 1;
  std::vector<LatticeVector> gens = fan.cone_generators(c);
  if (rank_of(gens, fan.dim()) != static_cast<int>(gens.size())) return 0;
  return simplex_index(gens, fan.dim());
}

// smooth iff the generators extend to a basis of the lattice
inline bool is_smooth(const Fan& fan, const Cone& c) {
  if (!fan.has_cone(c)) fail(ErrorCode::UnknownCone, "is_smooth: cone not in fan");
  return multiplicity(fan, c) == 1;
}

inline bool is_simplicial_fan(const Fan& fan) {
  for (const Cone& m : fan.max_cones())
    if (multiplicity(fan, m) == 0) return false;
  return true;
}

// Fan invariants: primitive distinct rays, every ray used, pairwise cone
// intersections are faces of both. Names the first offending pair.
inline FanDiagnostics validate_fan(const Fan& fan) {
  FanDiagnostics diag;
  const auto& rays = fan.rays();
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (is_zero(rays[i]) || !is_primitive(rays[i]))
      diag.report("NonPrimitiveRay(" + std::to_string(i) + ")");
    for (std::size_t j = i + 1; j < rays.size(); ++j)
      if (rays[i] == rays[j])
        diag.report("DuplicateRay(" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  if (!diag.ok) return diag;

  std::vector<bool> used(rays.size(), false);
  for (const Cone& m : fan.max_cones())
    for (int i : m.rays) used[i] = true;
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (!used[i]) diag.report("UnusedRay(" + std::to_string(i) + ")");

  const auto& maxc = fan.max_cones();
  for (std::size_t a = 0; a < maxc.size(); ++a) {
    std::vector<LatticeVector> gens = fan.cone_generators(maxc[a]);
    std::vector<LatticeVector> ext;
    try {
      ext = extreme_rays(gens, fan.dim());
    } catch (const Error&) {
      diag.report("NotPointed(" + std::to_string(a) + ")");
      continue;
    }
    if (ext.size() != gens.size())
      diag.report("RedundantRay(" + std::to_string(a) + ")");
    try {
      fan.geometry(maxc[a]);
    } catch (const Error&) {
      diag.report("NotPointed(" + std::to_string(a) + ")");
    }
  }
  if (!diag.ok) return diag;

  for (std::size_t a = 0; a < maxc.size(); ++a) {
    for (std::size_t b = a + 1; b < maxc.size(); ++b) {
      std::vector<LatticeVector> meet =
          intersect_cones(fan.cone_generators(maxc[a]), fan.cone_generators(maxc[b]), fan.dim());
      bool face_a = is_face_of(meet, fan.cone_generators(maxc[a]), fan.dim());
      bool face_b = is_face_of(meet, fan.cone_generators(maxc[b]), fan.dim());
      if (!face_a || !face_b) {
        diag.report("NotAFace(" + std::to_string(a) + "," + std::to_string(b) + ")");
        return diag;
      }
      // the intersection must be spanned by common rays
      Cone common;
      for (int i : maxc[a].rays)
        if (std::binary_search(maxc[b].rays.begin(), maxc[b].rays.end(), i))
          common.rays.push_back(i);
      std::vector<LatticeVector> common_ext = extreme_rays(
          common.rays.empty() ? std::vector<LatticeVector>{} : fan.cone_generators(common),
          fan.dim());
      if (common_ext != meet) {
        diag.report("NotAFace(" + std::to_string(a) + "," + std::to_string(b) + ")");
        return diag;
      }
    }
  }
  return diag;
}

// Construct and validate in one step.
inline Fan make_fan(int dim, std::vector<LatticeVector> rays, std::vector<Cone> max_cones) {
  Fan fan(dim, std::move(rays), std::move(max_cones));
  FanDiagnostics diag = validate_fan(fan);
  if (!diag.ok) fail(ErrorCode::BadArgument, "invalid fan: " + diag.issues.front());
  return fan;
}

// Equality of fans as geometric objects: same rays (any order) and the same
// maximal cones under the induced relabeling.
inline bool fans_equal(const Fan& a, const Fan& b) {
  if (a.dim() != b.dim() || a.ray_count() != b.ray_count()) return false;
  std::vector<int> map_ab(a.ray_count(), -1);
  for (int i = 0; i < a.ray_count(); ++i) {
    for (int j = 0; j < b.ray_count(); ++j)
      if (a.ray(i) == b.ray(j)) { map_ab[i] = j; break; }
    if (map_ab[i] < 0) return false;
  }
  std::set<Cone> bc(b.max_cones().begin(), b.max_cones().end());
  std::set<Cone> mapped;
  for (const Cone& c : a.max_cones()) {
    std::vector<int> idx;
    for (int i : c.rays) idx.push_back(map_ab[i]);
    mapped.insert(Cone(std::move(idx)));
  }
  return mapped == bc;
}

}  // namespace toric
