#pragma once

// Minkowski length, exceptional triangles and the closed-form distance
// bounds for toric surface codes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toriclass/errors.hpp"
#include "toriclass/lattice.hpp"

namespace toriclass {

inline LatticePolytope minkowski_sum(const LatticePolytope& P, const LatticePolytope& Q) {
  if (P.empty() || Q.empty()) return {};
  std::vector<LatticePoint> pts;
  for (const auto& a : P.hull_vertices())
    for (const auto& b : Q.hull_vertices()) pts.push_back(a + b);
  return polytope_from_points(std::move(pts));
}

// Hull of the integer translations t with S + t contained in P.
inline LatticePolytope minkowski_difference(const LatticePolytope& P, const LatticePolytope& S) {
  std::vector<LatticePoint> ts;
  const LatticePoint s0 = S.points().front();
  for (const auto& p : P.points()) {
    const LatticePoint t = p - s0;
    bool inside = true;
    for (const auto& v : S.hull_vertices())
      if (!P.contains(v + t)) {
        inside = false;
        break;
      }
    if (inside) ts.push_back(t);
  }
  return polytope_from_points(std::move(ts));
}

struct MinkowskiDecomposition {
  std::vector<LatticePolytope> summands;
  LatticePolytope target;
};

namespace detail {

inline std::vector<LatticePoint> normalized_key(const LatticePolytope& P) {
  const LatticePoint m = P.points().front();
  std::vector<LatticePoint> k;
  for (const auto& p : P.points()) k.push_back(p - m);
  return k;
}

class MinkowskiSolver {
 public:
  // A longest decomposition of P into positive-dimensional summands.
  const std::vector<LatticePolytope>& decomposition(const LatticePolytope& P) {
    auto key = normalized_key(P);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<LatticePolytope> best{P};
    for (const auto& S : sub_polytopes(P)) {
      if (S.dim() < 1 || S.size() == P.size()) continue;
      const LatticePolytope R = minkowski_difference(P, S);
      if (R.dim() < 1) continue;
      if (!(minkowski_sum(S, R) == P)) continue;
      const auto& ds = decomposition(S);
      const auto& dr = decomposition(R);
      if (ds.size() + dr.size() > best.size()) {
        best = ds;
        best.insert(best.end(), dr.begin(), dr.end());
      }
    }
    return memo_.emplace(std::move(key), std::move(best)).first->second;
  }

 private:
  std::map<std::vector<LatticePoint>, std::vector<LatticePolytope>> memo_;
};

}  // namespace detail

inline MinkowskiDecomposition maximal_decomposition(const LatticePolytope& P) {
  if (P.dim() < 1) throw NotPositiveDimensional("Minkowski length needs dimension >= 1");
  detail::MinkowskiSolver solver;
  return {solver.decomposition(P), P};
}

inline int minkowski_length(const LatticePolytope& P) {
  return static_cast<int>(maximal_decomposition(P).summands.size());
}

inline int full_minkowski_length(const LatticePolytope& P) {
  if (P.dim() < 1) throw NotPositiveDimensional("full Minkowski length needs dimension >= 1");
  detail::MinkowskiSolver solver;
  std::size_t best = 1;
  for (const auto& Q : sub_polytopes(P))
    if (Q.dim() >= 1) best = std::max(best, solver.decomposition(Q).size());
  return static_cast<int>(best);
}

inline const LatticePolytope& exceptional_triangle() {
  static const LatticePolytope T = lattice_points({{-1, 0}, {0, 1}, {1, -1}});
  return T;
}

inline bool is_exceptional_triangle(const LatticePolytope& P) {
  static const LatticePolytope C = canonical(exceptional_triangle());
  return P.size() == 4 && P.dim() == 2 && canonical(P) == C;
}

// Some sub-polytope Q of P splits as T + R with T an exceptional triangle and
// 1 + l(R) = L(P) (l of a point counts as 0).
inline bool has_exceptional_obstruction(const LatticePolytope& P) {
  if (P.dim() < 1) return false;
  const int L = full_minkowski_length(P);
  detail::MinkowskiSolver solver;
  const auto subs = sub_polytopes(P);
  std::vector<LatticePolytope> triangles;
  for (const auto& Q : subs)
    if (is_exceptional_triangle(Q)) triangles.push_back(Q);
  for (const auto& Q : subs) {
    for (const auto& T : triangles) {
      const LatticePolytope R = minkowski_difference(Q, T);
      if (R.empty() || !(minkowski_sum(T, R) == Q)) continue;
      const int lr = R.dim() < 1 ? 0 : static_cast<int>(solver.decomposition(R).size());
      if (1 + lr == L) return true;
    }
  }
  return false;
}

inline int primitive_edge_count(const LatticePolytope& P) {
  if (P.dim() < 2) throw NotPolygon("primitive edges need a 2-dimensional polygon");
  const auto& h = P.hull_vertices();
  int count = 0;
  for (std::size_t i = 0; i < h.size(); ++i) count += lattice_gcd(h[(i + 1) % h.size()] - h[i]) == 1;
  return count;
}

// floor(sqrt(v)) for v >= 0.
inline std::int64_t isqrt(std::int64_t v) {
  if (v < 0) throw InvalidParams("isqrt of a negative number");
  std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// floor(s * sqrt(q)) for s, q >= 0.
inline std::int64_t floor_scaled_sqrt(std::int64_t s, std::int64_t q) { return isqrt(s * s * q); }

// Exact minimum distance of the code of the box [0,k] x [0,l].
inline std::int64_t ls_rectangle_distance(std::int64_t k, std::int64_t l, std::int64_t q) {
  if (k < 0 || l < 0) throw InvalidParams("negative box side");
  if (k > q - 2 || l > q - 2)
    throw DoesNotFit("box does not fit for q = " + std::to_string(q), std::max(k, l) + 2);
  return (q - 1 - k) * (q - 1 - l);
}

// Exact minimum distance of the code of Conv((0,0),(k,0),(0,l)).
inline std::int64_t ls_triangle_distance(std::int64_t k, std::int64_t l, std::int64_t q) {
  if (k < 0 || l < 0) throw InvalidParams("negative triangle side");
  if (k > q - 2 || l > q - 2)
    throw DoesNotFit("triangle does not fit for q = " + std::to_string(q), std::max(k, l) + 2);
  const std::int64_t M = std::max(k, l);
  return (q - 1) * (q - 1) - M * (q - 1);
}

enum class BoundVariant { Exceptional, NoExceptional };

inline std::string to_string(BoundVariant v) {
  return v == BoundVariant::Exceptional ? "Exceptional" : "NoExceptional";
}

namespace detail {

// Exact square root of a nonnegative rational, if it is rational.
inline std::optional<Rational> rational_sqrt(const Rational& r) {
  const std::int64_t a = isqrt(r.numerator()), b = isqrt(r.denominator());
  if (a * a != r.numerator() || b * b != r.denominator()) return std::nullopt;
  return Rational(a, b);
}

// n >= (c + sqrt(c^2 + d))^2 for integer n >= 0, d > 0, exactly.
inline bool meets_threshold(std::int64_t n, const Rational& c, const Rational& d) {
  const Rational nd = Rational(n) - d;
  const Rational rhs = 4 * c * c * Rational(n);
  if (c >= 0) return nd >= 0 && nd * nd >= rhs;
  return nd >= 0 || nd * nd <= rhs;
}

}  // namespace detail

inline Rational ss_constant(const Rational& A, int L, BoundVariant v) {
  const Rational shift = v == BoundVariant::Exceptional ? Rational(9, 4) : Rational(11, 4);
  return A / 2 - Rational(L) + shift;
}

// max(23 | 37, (c + sqrt(c^2 + 5/2))^2); exact when the root is rational,
// otherwise the least integer not below the real value.
inline Rational ss_threshold(const Rational& A, int L, BoundVariant v) {
  const Rational base = v == BoundVariant::Exceptional ? Rational(23) : Rational(37);
  const Rational c = ss_constant(A, L, v);
  const Rational d(5, 2);
  Rational t;
  if (auto s = detail::rational_sqrt(c * c + d)) {
    t = (c + *s) * (c + *s);
  } else {
    std::int64_t n = 0;
    while (!detail::meets_threshold(n, c, d)) ++n;
    t = Rational(n);
  }
  return std::max(base, t);
}

struct BoundReport {
  int L = 0;
  Rational A;
  BoundVariant variant = BoundVariant::NoExceptional;
  Rational q_threshold;
  std::int64_t bound_value = 0;
  std::int64_t q = 0;
};

// Lower bound on d(C_P); the exceptional variant is used when P carries the
// exceptional-triangle obstruction.
inline BoundReport ss_lower_bound(const LatticePolytope& P, std::int64_t q) {
  BoundReport r;
  r.q = q;
  r.A = area(P);
  r.L = full_minkowski_length(P);
  r.variant = has_exceptional_obstruction(P) ? BoundVariant::Exceptional : BoundVariant::NoExceptional;
  r.q_threshold = ss_threshold(r.A, r.L, r.variant);
  if (Rational(q) < r.q_threshold)
    throw ThresholdNotMet("q = " + std::to_string(q) + " below threshold " + to_string(r.q_threshold),
                          r.q_threshold.numerator(), r.q_threshold.denominator());
  const std::int64_t n = (q - 1) * (q - 1) - r.L * (q - 1);
  // d is an integer, so the real bound may be rounded up.
  r.bound_value = r.variant == BoundVariant::NoExceptional ? n : n + 1 - floor_scaled_sqrt(2, q);
  return r;
}

// Upper bound on torus zeros of an absolutely irreducible f with I interior
// points and B' primitive edges.
inline std::int64_t torus_zero_bound(std::int64_t I, std::int64_t Bprime, std::int64_t q) {
  if (I < 0 || Bprime < 0) throw InvalidParams("negative interior or edge count");
  return q + 1 + floor_scaled_sqrt(2 * I, q) - Bprime;
}

}  // namespace toriclass
