#pragma once

// Test-only oracles, kept independent of the library implementation paths
// they check: naive box scans, conic Caratheodory membership, and the brute
// force m.l.d. search.

#include <optional>
#include <set>
#include <vector>

#include "toric/toric_pair.hpp"

namespace oracles {

using namespace toric;

// Every integer point of the box satisfying all inequalities, by direct scan.
inline std::vector<LatticeVector> naive_box_points(const std::vector<LinearInequality>& ineqs,
                                                   int dim, const Integer& bound) {
  std::vector<LatticeVector> out;
  LatticeVector x(dim, -bound);
  while (true) {
    bool ok = true;
    for (const LinearInequality& q : ineqs)
      if (Rational(dot(q.coeffs, x)) < q.rhs) { ok = false; break; }
    if (ok) out.push_back(x);
    int i = dim - 1;
    while (i >= 0 && x[i] == bound) { x[i] = -bound; --i; }
    if (i < 0) break;
    ++x[i];
  }
  return out;
}

// x in cone(gens) iff some independent subset gives a nonnegative solution
// (conic Caratheodory), checked by exact rational solving.
inline bool member_bruteforce(const std::vector<LatticeVector>& gens, const LatticeVector& x,
                              int dim) {
  if (is_zero(x)) return true;
  int k = static_cast<int>(gens.size());
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<LatticeVector> cols;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) cols.push_back(gens[i]);
    if (rank_of(cols, dim) != static_cast<int>(cols.size())) continue;
    // solve cols * lambda = x exactly: treat coordinates as equations
    std::vector<LatticeVector> rows;
    std::vector<Rational> rhs;
    IntegerMatrix m = IntegerMatrix::from_cols(cols, dim);
    for (int r = 0; r < dim; ++r) {
      rows.push_back(m.row(r));
      rhs.push_back(Rational(x[r]));
    }
    QVector lambda;
    if (!solve_rational(rows, rhs, static_cast<int>(cols.size()), lambda)) continue;
    bool nonneg = true;
    for (const Rational& l : lambda)
      if (l < 0) { nonneg = false; break; }
    if (nonneg) return true;
  }
  return false;
}

// m.l.d. by scanning all primitive points of the box: subset semantics
// admits minimal cones containing a center, exact semantics equality.
inline std::optional<MldResult> naive_mld(const ToricPair& pair, const std::vector<Cone>& centers,
                                          bool exact, const Integer& bound) {
  const Fan& fan = pair.x();
  std::optional<MldResult> best;
  LatticeVector x(fan.dim(), -bound);
  while (true) {
    if (!is_zero(x) && is_primitive(x) && fan.support_contains(x)) {
      Cone mc = minimal_containing_cone(fan, x);
      bool ok = false;
      for (const Cone& c : centers)
        if (exact ? (mc == c) : mc.contains_all(c)) { ok = true; break; }
      if (ok) {
        Rational v = pair.psi.eval(x);
        if (!best || v < best->value || (v == best->value && lex_less(x, best->witness)))
          best = MldResult{v, x};
      }
    }
    int i = fan.dim() - 1;
    while (i >= 0 && x[i] == bound) { x[i] = -bound; --i; }
    if (i < 0) break;
    ++x[i];
  }
  return best;
}

}  // namespace oracles
