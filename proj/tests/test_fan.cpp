#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "toric/refinement.hpp"

using namespace toric;

namespace {

LatticeVector vec(std::initializer_list<long> xs) {
  LatticeVector v;
  for (long x : xs) v.push_back(Integer(x));
  return v;
}

Fan p2_fan() {
  return make_fan(2, {vec({1, 0}), vec({0, 1}), vec({-1, -1})},
                  {Cone({0, 1}), Cone({1, 2}), Cone({0, 2})});
}

Fan conifold_cone_fan() {
  return make_fan(3, {vec({0, 0, 1}), vec({1, 0, 1}), vec({0, 1, 1}), vec({1, 1, 1})},
                  {Cone({0, 1, 2, 3})});
}

// the small resolution with the diagonal through (0,0,1), (1,1,1)
Fan atiyah_resolution_fan() {
  return make_fan(3, {vec({0, 0, 1}), vec({1, 0, 1}), vec({0, 1, 1}), vec({1, 1, 1})},
                  {Cone({0, 1, 3}), Cone({0, 2, 3})});
}

// the opposite diagonal
Fan atiyah_other_side_fan() {
  return make_fan(3, {vec({0, 0, 1}), vec({1, 0, 1}), vec({0, 1, 1}), vec({1, 1, 1})},
                  {Cone({1, 2, 0}), Cone({1, 2, 3})});
}

}  // namespace

TEST_CASE("validate accepts the projective plane fan") {
  Fan fan = p2_fan();
  CHECK(validate_fan(fan).ok);
}

TEST_CASE("validate rejects overlapping cones") {
  Fan fan(2, {vec({1, 0}), vec({0, 1}), vec({1, 1}), vec({1, -1})},
          {Cone({0, 1}), Cone({2, 3})});
  FanDiagnostics diag = validate_fan(fan);
  REQUIRE_FALSE(diag.ok);
  CHECK(diag.issues.front().find("NotAFace") != std::string::npos);
}

TEST_CASE("validate rejects non-primitive and duplicate rays") {
  Fan fan(2, {vec({2, 0}), vec({0, 1})}, {Cone({0, 1})});
  FanDiagnostics diag = validate_fan(fan);
  REQUIRE_FALSE(diag.ok);
  CHECK(diag.issues.front().find("NonPrimitiveRay(0)") != std::string::npos);

  Fan dup(2, {vec({1, 0}), vec({1, 0}), vec({0, 1})}, {Cone({0, 2}), Cone({1, 2})});
  diag = validate_fan(dup);
  REQUIRE_FALSE(diag.ok);
  CHECK(diag.issues.front().find("DuplicateRay(0,1)") != std::string::npos);
}

TEST_CASE("smoothness of cones") {
  Fan orthant = make_fan(3, {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})},
                         {Cone({0, 1, 2})});
  CHECK(is_smooth(orthant, Cone({0, 1, 2})));
  CHECK(is_smooth(orthant, Cone{}));  // generic point
  CHECK(multiplicity(orthant, Cone({0, 1})) == 1);

  Fan half = make_fan(3, {vec({1, 0, 0}), vec({0, 1, 0}), vec({1, 1, 2})},
                      {Cone({0, 1, 2})});
  CHECK_FALSE(is_smooth(half, Cone({0, 1, 2})));
  CHECK(multiplicity(half, Cone({0, 1, 2})) == 2);
  CHECK_THROWS_AS(is_smooth(half, Cone({0, 1, 5})), Error);

  Fan conifold = conifold_cone_fan();
  CHECK(multiplicity(conifold, Cone({0, 1, 2, 3})) == 0);  // not simplicial
  CHECK_FALSE(is_smooth(conifold, Cone({0, 1, 2, 3})));
}

TEST_CASE("minimal containing cone") {
  Fan orthant = make_fan(3, {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})},
                         {Cone({0, 1, 2})});
  CHECK(minimal_containing_cone(orthant, vec({1, 0, 0})) == Cone({0}));
  CHECK(minimal_containing_cone(orthant, vec({2, 3, 0})) == Cone({0, 1}));
  CHECK_THROWS_AS(minimal_containing_cone(orthant, vec({-1, 0, 0})), Error);

  Fan atiyah = atiyah_resolution_fan();
  CHECK(minimal_containing_cone(atiyah, vec({1, 1, 2})) == Cone({0, 3}));

  Fan p2 = p2_fan();
  CHECK(minimal_containing_cone(p2, vec({1, 1})) == Cone({0, 1}));
}

TEST_CASE("minimal containing cone is consistent on random support points") {
  Fan atiyah = atiyah_resolution_fan();
  for (long x = 0; x <= 3; ++x)
    for (long y = 0; y <= 3; ++y)
      for (long z = 1; z <= 4; ++z) {
        LatticeVector v = vec({x, y, z});
        if (!atiyah.support_contains(v)) continue;
        Cone mc = minimal_containing_cone(atiyah, v);
        CHECK(atiyah.cone_relint_contains(mc, v));
        for (const Cone& c : atiyah.all_cones())
          if (atiyah.cone_contains(c, v)) CHECK(c.contains_all(mc));
      }
}

TEST_CASE("walls of the Atiyah resolution") {
  Refinement r = make_refinement(atiyah_resolution_fan(), conifold_cone_fan());
  std::vector<Wall> ws = walls(r);
  REQUIRE(ws.size() == 1);
  CHECK(ws.front().wall == Cone({0, 3}));
}

TEST_CASE("trivial refinement has no walls") {
  Fan fan = atiyah_resolution_fan();
  Refinement r = trivial_refinement(fan);
  CHECK(walls(r).empty());
}

TEST_CASE("refinement audit catches missing cover") {
  // only one of the two diagonal cones: the conifold cone is not covered
  Fan partial = make_fan(3, {vec({0, 0, 1}), vec({1, 0, 1}), vec({1, 1, 1})},
                         {Cone({0, 1, 2})});
  CHECK_THROWS_AS(make_refinement(partial, conifold_cone_fan()), Error);
}

TEST_CASE("common refinement of the two small resolutions") {
  Fan a = atiyah_resolution_fan();
  Fan b = atiyah_other_side_fan();
  Fan w = common_refinement(a, b);
  CHECK(validate_fan(w).ok);
  CHECK(w.max_cones().size() == 4);
  bool has_center = false;
  for (const LatticeVector& r : w.rays())
    if (r == vec({1, 1, 2})) has_center = true;
  CHECK(has_center);
}

TEST_CASE("common refinement of a fan with itself") {
  Fan a = atiyah_resolution_fan();
  Fan w = common_refinement(a, a);
  CHECK(fans_equal(w, a));
}

TEST_CASE("common refinement of a refinement pair is the fine fan") {
  Fan fine = atiyah_resolution_fan();
  Fan coarse = conifold_cone_fan();
  Fan w = common_refinement(fine, coarse);
  CHECK(fans_equal(w, fine));
}

TEST_CASE("stellar subdivision produces valid fans") {
  Fan orthant = make_fan(3, {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})},
                         {Cone({0, 1, 2})});
  Fan bl = stellar_subdivision(orthant, vec({1, 1, 1}));
  CHECK(validate_fan(bl).ok);
  CHECK(bl.max_cones().size() == 3);
  Fan bl2 = stellar_subdivision(bl, vec({1, 1, 0}));
  CHECK(validate_fan(bl2).ok);
  Refinement r = make_refinement(bl2, orthant);
  CHECK(walls(r).size() >= 3);
}

TEST_CASE("faces of the conifold cone") {
  Fan conifold = conifold_cone_fan();
  std::vector<Cone> faces = conifold.all_cones();
  // 1 zero cone + 4 rays + 4 facets + the cone itself; the diagonals are not faces
  CHECK(faces.size() == 10);
  CHECK_FALSE(conifold.has_cone(Cone({0, 3})));
  CHECK(conifold.has_cone(Cone({0, 1})));
  CHECK(conifold.has_cone(Cone{}));
}
