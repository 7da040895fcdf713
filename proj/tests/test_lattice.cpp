#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "toric/cones.hpp"
#include "toric/enumerate.hpp"
#include "toric/linalg.hpp"

using namespace toric;

namespace {

LatticeVector vec(std::initializer_list<long> xs) {
  LatticeVector v;
  for (long x : xs) v.push_back(Integer(x));
  return v;
}

IntegerMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<LatticeVector> r;
  std::size_t cols = 0;
  for (const auto& row : rows) {
    r.push_back(vec(row));
    cols = row.size();
  }
  return IntegerMatrix::from_rows(r, static_cast<int>(cols));
}

std::uint64_t mix(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

long rnd_int(std::uint64_t& s, long lo, long hi) {
  return lo + static_cast<long>(mix(s) % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

TEST_CASE("primitive vectors") {
  CHECK(primitive(vec({2, 4, 6})) == vec({1, 2, 3}));
  CHECK(primitive(vec({1, 0, 0})) == vec({1, 0, 0}));
  CHECK(primitive(vec({0, 0, -4})) == vec({0, 0, -1}));
  CHECK_THROWS_AS(primitive(vec({0, 0, 0})), Error);
}

TEST_CASE("hermite normal form basics") {
  IntegerMatrix id = IntegerMatrix::identity(3);
  HermiteResult r = hermite_normal_form(id);
  CHECK(r.h == id);
  CHECK(r.u == id);

  IntegerMatrix d2 = mat({{2, 0}, {0, 2}});
  r = hermite_normal_form(d2);
  CHECK(r.h == d2);

  // fully reduced row-style form: entries above a pivot lie in [0, pivot)
  IntegerMatrix m = mat({{1, 2}, {3, 4}});
  r = hermite_normal_form(m);
  CHECK(r.h == mat({{1, 0}, {0, 2}}));
  CHECK(multiply(r.u, m) == r.h);
  Integer det_u = determinant(r.u);
  CHECK((det_u == 1 || det_u == -1));
}

TEST_CASE("hermite normal form on random matrices") {
  std::uint64_t s = 12345;
  for (int trial = 0; trial < 60; ++trial) {
    int rows = rnd_int(s, 1, 4), cols = rnd_int(s, 1, 4);
    IntegerMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.at(i, j) = Integer(rnd_int(s, -9, 9));
    HermiteResult r = hermite_normal_form(m);
    CHECK(multiply(r.u, m) == r.h);
    Integer det_u = determinant(r.u);
    CHECK((det_u == 1 || det_u == -1));
    // echelon shape: pivots positive, entries above reduced
    for (std::size_t p = 0; p < r.pivot_cols.size(); ++p) {
      const Integer& piv = r.h.at(static_cast<int>(p), r.pivot_cols[p]);
      CHECK(piv > 0);
      for (int i = 0; i < static_cast<int>(p); ++i) {
        CHECK(r.h.at(i, r.pivot_cols[p]) >= 0);
        CHECK(r.h.at(i, r.pivot_cols[p]) < piv);
      }
    }
  }
}

TEST_CASE("kernel basis") {
  // full rank square matrix: trivial kernel
  CHECK(kernel_basis(mat({{1, 2}, {3, 4}})).empty());

  // 1x3: saturated rank-2 kernel
  IntegerMatrix m = mat({{1, 1, -2}});
  std::vector<LatticeVector> k = kernel_basis(m);
  REQUIRE(k.size() == 2);
  for (const LatticeVector& v : k) CHECK(dot(m.row(0), v) == 0);
  // saturation: the stacked basis has unit elementary divisors
  CHECK(simplex_index(k, 3) == 1);

  // conifold circuit relation
  std::vector<LatticeVector> rays = {vec({0, 0, 1}), vec({1, 0, 1}), vec({0, 1, 1}),
                                     vec({1, 1, 1})};
  std::vector<LatticeVector> rel = kernel_basis(IntegerMatrix::from_cols(rays, 3));
  REQUIRE(rel.size() == 1);
  LatticeVector alpha = primitive(rel.front());
  if (alpha[0] < 0) alpha = negate(alpha);
  CHECK(alpha == vec({1, -1, -1, 1}));
}

TEST_CASE("kernel saturation on random matrices") {
  std::uint64_t s = 777;
  for (int trial = 0; trial < 40; ++trial) {
    int rows = rnd_int(s, 1, 3), cols = rnd_int(s, 2, 5);
    IntegerMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.at(i, j) = Integer(rnd_int(s, -6, 6));
    std::vector<LatticeVector> k = kernel_basis(m);
    for (const LatticeVector& v : k)
      for (int i = 0; i < rows; ++i) CHECK(dot(m.row(i), v) == 0);
    CHECK(static_cast<int>(k.size()) == cols - rank_of(m));
    if (!k.empty()) CHECK(simplex_index(k, cols) == 1);
  }
}

TEST_CASE("facet normals of the orthant are the dual basis") {
  std::vector<LatticeVector> gens = {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})};
  std::vector<LatticeVector> ns = facet_normals(gens, 3);
  REQUIRE(ns.size() == 3);
  CHECK(std::find(ns.begin(), ns.end(), vec({1, 0, 0})) != ns.end());
  CHECK(std::find(ns.begin(), ns.end(), vec({0, 1, 0})) != ns.end());
  CHECK(std::find(ns.begin(), ns.end(), vec({0, 0, 1})) != ns.end());
}

TEST_CASE("facet normals of the conifold cone") {
  std::vector<LatticeVector> gens = {vec({0, 0, 1}), vec({1, 0, 1}), vec({0, 1, 1}),
                                     vec({1, 1, 1})};
  std::vector<LatticeVector> ns = facet_normals(gens, 3);
  REQUIRE(ns.size() == 4);
  // each generator saturates exactly two of the four facets
  for (const LatticeVector& g : gens) {
    int tight = 0;
    for (const LatticeVector& u : ns) {
      CHECK(dot(u, g) >= 0);
      if (dot(u, g) == 0) ++tight;
    }
    CHECK(tight == 2);
  }
}

TEST_CASE("facet normals of a single ray include the equality pair") {
  std::vector<LatticeVector> gens = {vec({1, 1})};
  std::vector<LatticeVector> ns = facet_normals(gens, 2);
  REQUIRE(ns.size() == 3);
  int equations = 0;
  for (const LatticeVector& u : ns)
    if (normal_is_equation(u, gens)) ++equations;
  CHECK(equations == 2);
  // membership agrees with brute force cone membership on a box
  for (long x = -3; x <= 3; ++x)
    for (long y = -3; y <= 3; ++y) {
      LatticeVector p = vec({x, y});
      CHECK(cone_contains(ns, p) == oracles::member_bruteforce(gens, p, 2));
    }
}

TEST_CASE("facet normals reject non-pointed input") {
  std::vector<LatticeVector> gens = {vec({1, 0}), vec({-1, 0}), vec({0, 1})};
  CHECK_THROWS_AS(facet_normals(gens, 2), Error);
}

TEST_CASE("membership through duality equals brute force on random cones") {
  std::uint64_t s = 424242;
  for (int trial = 0; trial < 30; ++trial) {
    int dim = rnd_int(s, 2, 4);
    int count = rnd_int(s, 1, dim + 2);
    std::vector<LatticeVector> gens;
    for (int i = 0; i < count; ++i) {
      LatticeVector g(dim);
      // keep one coordinate positive so the cone stays pointed
      for (int j = 0; j + 1 < dim; ++j) g[j] = Integer(rnd_int(s, -3, 3));
      g[dim - 1] = Integer(rnd_int(s, 1, 3));
      gens.push_back(g);
    }
    std::vector<LatticeVector> ns = facet_normals(gens, dim);
    for (int probe = 0; probe < 25; ++probe) {
      LatticeVector p(dim);
      for (int j = 0; j < dim; ++j) p[j] = Integer(rnd_int(s, -4, 4));
      CHECK(cone_contains(ns, p) == oracles::member_bruteforce(gens, p, dim));
    }
  }
}

TEST_CASE("enumerate_points basics") {
  // empty region
  std::vector<LinearInequality> empty_region = {
      LinearInequality{vec({1, 0}), Rational(1)},
      LinearInequality{vec({-1, 0}), Rational(1)},
  };
  CHECK(enumerate_points(empty_region, 2, Integer(5)).empty());

  // simplex x >= 0, y >= 0, x + y <= 1
  std::vector<LinearInequality> simplex = {
      LinearInequality{vec({1, 0}), Rational(0)},
      LinearInequality{vec({0, 1}), Rational(0)},
      LinearInequality{vec({-1, -1}), Rational(-1)},
  };
  std::vector<LatticeVector> pts = enumerate_points(simplex, 2, Integer(4));
  REQUIRE(pts.size() == 3);
  CHECK(std::find(pts.begin(), pts.end(), vec({0, 0})) != pts.end());
  CHECK(std::find(pts.begin(), pts.end(), vec({1, 0})) != pts.end());
  CHECK(std::find(pts.begin(), pts.end(), vec({0, 1})) != pts.end());
}

TEST_CASE("enumerate_points in the conifold cone below height two") {
  std::vector<LatticeVector> gens = {vec({0, 0, 1}), vec({1, 0, 1}), vec({0, 1, 1}),
                                     vec({1, 1, 1})};
  std::vector<LinearInequality> ineqs;
  for (const LatticeVector& u : facet_normals(gens, 3))
    ineqs.push_back(LinearInequality{u, Rational(0)});
  ineqs.push_back(LinearInequality{vec({0, 0, -1}), Rational(-2)});
  std::vector<LatticeVector> pts = enumerate_points(ineqs, 3, Integer(4));
  std::vector<LatticeVector> naive = oracles::naive_box_points(ineqs, 3, Integer(4));
  CHECK(pts == naive);
  // z=0 gives the origin, z=1 the four square corners, z=2 the 3x3 grid
  CHECK(pts.size() == 14);
}

TEST_CASE("enumerate_points agrees with the naive scan on random systems") {
  std::uint64_t s = 99;
  for (int trial = 0; trial < 30; ++trial) {
    int dim = rnd_int(s, 2, 3);
    std::vector<LinearInequality> ineqs;
    int m = rnd_int(s, 1, 4);
    for (int i = 0; i < m; ++i) {
      LatticeVector u(dim);
      for (int j = 0; j < dim; ++j) u[j] = Integer(rnd_int(s, -3, 3));
      ineqs.push_back(LinearInequality{u, make_rational(Integer(rnd_int(s, -4, 4)), Integer(2))});
    }
    Integer bound(rnd_int(s, 1, 8));
    CHECK(enumerate_points(ineqs, dim, bound) == oracles::naive_box_points(ineqs, dim, bound));
  }
}

TEST_CASE("simplex index detects smooth and singular cones") {
  CHECK(simplex_index({vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})}, 3) == 1);
  CHECK(simplex_index({vec({1, 0, 0}), vec({0, 1, 0}), vec({1, 1, 2})}, 3) == 2);
  CHECK(simplex_index({vec({2, 1})}, 2) == 1);  // primitive single ray
  CHECK(simplex_index({vec({1, 2}), vec({3, 4})}, 2) == 2);
}
