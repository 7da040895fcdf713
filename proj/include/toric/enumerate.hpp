#pragma once

// Lattice-point enumeration for rational halfspace systems intersected with
// a coordinate box. Recursive coordinate fixing with interval propagation;
// the box keeps everything finite, callers supply a justified bound.

#include <vector>

#include "toric/linalg.hpp"

namespace toric {

struct LinearInequality {
  LatticeVector coeffs;  // integer row u
  Rational rhs;          // constraint <u, x> >= rhs
};

namespace detail {

struct Interval {
  Integer lo, hi;  // inclusive
};

// One round of bound tightening; returns false when some interval empties.
inline bool propagate(const std::vector<LinearInequality>& ineqs, std::vector<Interval>& box) {
  const int n = static_cast<int>(box.size());
  bool changed = true;
  int guard = 0;
  while (changed && guard++ < 256) {
    changed = false;
    for (const LinearInequality& q : ineqs) {
      // maximum achievable value of <u, x> per coordinate
      for (int j = 0; j < n; ++j) {
        const Integer& uj = q.coeffs[j];
        if (uj == 0) continue;
        Rational rest = 0;
        for (int k = 0; k < n; ++k) {
          if (k == j) continue;
          const Integer& uk = q.coeffs[k];
          if (uk == 0) continue;
          rest += Rational(uk) * Rational(uk > 0 ? box[k].hi : box[k].lo);
        }
        Rational bound = (q.rhs - rest) / Rational(uj);
        if (uj > 0) {
          Integer lo = rational_ceil(bound);
          if (lo > box[j].lo) { box[j].lo = lo; changed = true; }
        } else {
          Integer hi = rational_floor(bound);
          if (hi < box[j].hi) { box[j].hi = hi; changed = true; }
        }
        if (box[j].lo > box[j].hi) return false;
      }
    }
  }
  return true;
}

inline void enumerate_rec(const std::vector<LinearInequality>& ineqs, std::vector<Interval> box,
                          int coord, LatticeVector& point, std::vector<LatticeVector>& out) {
  const int n = static_cast<int>(box.size());
  if (!propagate(ineqs, box)) return;
  if (coord == n) {
    for (const LinearInequality& q : ineqs)
      if (Rational(dot(q.coeffs, point)) < q.rhs) return;
    out.push_back(point);
    return;
  }
  for (Integer v = box[coord].lo; v <= box[coord].hi; ++v) {
    point[coord] = v;
    std::vector<Interval> sub = box;
    sub[coord].lo = v;
    sub[coord].hi = v;
    enumerate_rec(ineqs, std::move(sub), coord + 1, point, out);
  }
  point[coord] = 0;
}

}  // namespace detail

// All integer points of {x : <u,x> >= c for each inequality} within the box
// [-box_bound, box_bound]^n, in lexicographic order, no duplicates.
inline std::vector<LatticeVector> enumerate_points(const std::vector<LinearInequality>& ineqs,
                                                   int dim, const Integer& box_bound) {
  std::vector<detail::Interval> box(dim);
  for (auto& iv : box) { iv.lo = -box_bound; iv.hi = box_bound; }
  LatticeVector point(dim, Integer(0));
  std::vector<LatticeVector> out;
  detail::enumerate_rec(ineqs, std::move(box), 0, point, out);
  return out;
}

// Scale a rational linear form <m, x> >= rhs into an integer inequality.
inline LinearInequality scaled_inequality(const QVector& m, const Rational& rhs) {
  Integer lcm = 1;
  for (const Rational& c : m) {
    Integer d = denominator(c);
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  Integer drhs = denominator(rhs);
  lcm = lcm / boost::multiprecision::gcd(lcm, drhs) * drhs;
  LinearInequality q;
  q.coeffs.resize(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    q.coeffs[i] = numerator(m[i]) * (lcm / denominator(m[i]));
  q.rhs = rhs * Rational(lcm);
  return q;
}

}  // namespace toric
