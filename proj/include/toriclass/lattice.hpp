#pragma once

// Lattice polygons in the plane: hulls, lattice-point sets, unimodular
// affine maps, canonical forms and the census of equivalence classes.
//
// All arithmetic is exact (64-bit integers and boost::rational).

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "toriclass/errors.hpp"

namespace toriclass {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
  friend LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.x + b.x, a.y + b.y}; }
  friend LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.x - b.x, a.y - b.y}; }
  friend LatticePoint operator*(std::int64_t s, LatticePoint a) { return {s * a.x, s * a.y}; }
};

inline std::int64_t cross(LatticePoint a, LatticePoint b) { return a.x * b.y - a.y * b.x; }

inline std::int64_t cross(LatticePoint o, LatticePoint a, LatticePoint b) { return cross(a - o, b - o); }

inline std::int64_t lattice_gcd(LatticePoint v) { return std::gcd(std::llabs(v.x), std::llabs(v.y)); }

// Primitive vector in the direction of a nonzero v.
inline LatticePoint primitive(LatticePoint v) {
  const std::int64_t g = lattice_gcd(v);
  return {v.x / g, v.y / g};
}

inline std::string to_string(LatticePoint p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

namespace detail {

// Strict convex hull (Andrew's monotone chain), counter-clockwise, starting
// at the lexicographically smallest point. Collinear points are dropped.
inline std::vector<LatticePoint> convex_hull(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 1) return pts;
  std::vector<LatticePoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    const auto& p = pts[i];
    while (k >= t && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Extended Euclid: returns (g, s, t) with s*a + t*b = g >= 0.
inline std::array<std::int64_t, 3> ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

}  // namespace detail

// A lattice polytope of dimension <= 2, stored as its full set of lattice
// points (sorted) together with its strict hull vertices (ccw).
class LatticePolytope {
 public:
  LatticePolytope() = default;

  // Convex hull of arbitrary integer points, with every lattice point filled in.
  static LatticePolytope hull_of(std::vector<LatticePoint> pts) {
    LatticePolytope P;
    if (pts.empty()) return P;
    P.hull_ = detail::convex_hull(std::move(pts));
    if (P.hull_.size() == 1) {
      P.dim_ = 0;
      P.points_ = P.hull_;
    } else if (P.hull_.size() == 2) {
      P.dim_ = 1;
      const LatticePoint a = P.hull_[0], b = P.hull_[1];
      const std::int64_t g = lattice_gcd(b - a);
      const LatticePoint e = primitive(b - a);
      for (std::int64_t i = 0; i <= g; ++i) P.points_.push_back(a + i * e);
    } else {
      P.dim_ = 2;
      std::int64_t x0 = P.hull_[0].x, x1 = x0, y0 = P.hull_[0].y, y1 = y0;
      for (const auto& v : P.hull_) {
        x0 = std::min(x0, v.x);
        x1 = std::max(x1, v.x);
        y0 = std::min(y0, v.y);
        y1 = std::max(y1, v.y);
      }
      for (std::int64_t x = x0; x <= x1; ++x)
        for (std::int64_t y = y0; y <= y1; ++y)
          if (P.hull_contains({x, y})) P.points_.push_back({x, y});
    }
    std::sort(P.points_.begin(), P.points_.end());
    return P;
  }

  bool empty() const { return points_.empty(); }
  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<LatticePoint>& points() const { return points_; }
  const std::vector<LatticePoint>& hull_vertices() const { return hull_; }

  bool contains(LatticePoint p) const { return std::binary_search(points_.begin(), points_.end(), p); }

  // Lattice points on the boundary.
  std::int64_t boundary_count() const {
    if (dim_ < 2) return static_cast<std::int64_t>(points_.size());
    std::int64_t b = 0;
    for (std::size_t i = 0; i < hull_.size(); ++i) b += lattice_gcd(hull_[(i + 1) % hull_.size()] - hull_[i]);
    return b;
  }

  std::int64_t interior_count() const {
    if (dim_ < 2) return 0;
    return static_cast<std::int64_t>(points_.size()) - boundary_count();
  }

  // Twice the Euclidean area (shoelace), exact.
  std::int64_t twice_area() const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < hull_.size(); ++i) s += cross(hull_[i], hull_[(i + 1) % hull_.size()]);
    return std::llabs(s);
  }

  LatticePoint min_corner() const {
    LatticePoint m = points_.front();
    for (const auto& p : points_) {
      m.x = std::min(m.x, p.x);
      m.y = std::min(m.y, p.y);
    }
    return m;
  }

  LatticePoint max_corner() const {
    LatticePoint m = points_.front();
    for (const auto& p : points_) {
      m.x = std::max(m.x, p.x);
      m.y = std::max(m.y, p.y);
    }
    return m;
  }

  LatticePolytope translated(LatticePoint t) const {
    std::vector<LatticePoint> pts;
    pts.reserve(points_.size());
    for (const auto& p : points_) pts.push_back(p + t);
    return hull_of(std::move(pts));
  }

  // Union with extra points, re-hulled.
  LatticePolytope with_point(LatticePoint v) const {
    auto pts = hull_;
    pts.push_back(v);
    return hull_of(std::move(pts));
  }

  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) { return a.points_ == b.points_; }
  friend bool operator<(const LatticePolytope& a, const LatticePolytope& b) { return a.points_ < b.points_; }

 private:
  bool hull_contains(LatticePoint p) const {
    for (std::size_t i = 0; i < hull_.size(); ++i)
      if (cross(hull_[i], hull_[(i + 1) % hull_.size()], p) < 0) return false;
    return true;
  }

  std::vector<LatticePoint> points_;
  std::vector<LatticePoint> hull_;
  int dim_ = -1;
};

inline LatticePolytope lattice_points(const std::vector<LatticePoint>& hull_vertices) {
  return LatticePolytope::hull_of(hull_vertices);
}

inline LatticePolytope polytope_from_points(std::vector<LatticePoint> pts) {
  return LatticePolytope::hull_of(std::move(pts));
}

inline Rational area(const LatticePolytope& P) {
  if (P.dim() < 2) throw ZeroAreaDegenerate("area of a polytope of dimension " + std::to_string(P.dim()));
  return Rational(P.twice_area(), 2);
}

inline Rational pick_area(std::int64_t boundary, std::int64_t interior) {
  return Rational(interior) + Rational(boundary, 2) - Rational(1);
}

// x -> M x + t with det(M) = +-1. M is row-major {a, b, c, d}.
class UnimodularAffineMap {
 public:
  UnimodularAffineMap() = default;
  UnimodularAffineMap(std::array<std::int64_t, 4> m, LatticePoint t) : m_(m), t_(t) {
    const std::int64_t d = det();
    if (d != 1 && d != -1) throw NotUnimodular("determinant " + std::to_string(d));
  }

  static UnimodularAffineMap identity() { return {}; }
  static UnimodularAffineMap translation(LatticePoint t) { return {{1, 0, 0, 1}, t}; }

  const std::array<std::int64_t, 4>& matrix() const { return m_; }
  LatticePoint translation_part() const { return t_; }
  std::int64_t det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

  LatticePoint linear(LatticePoint p) const { return {m_[0] * p.x + m_[1] * p.y, m_[2] * p.x + m_[3] * p.y}; }
  LatticePoint operator()(LatticePoint p) const { return linear(p) + t_; }

  // (this o other)(p) = this(other(p))
  UnimodularAffineMap compose(const UnimodularAffineMap& other) const {
    const auto& a = m_;
    const auto& b = other.m_;
    std::array<std::int64_t, 4> m{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
                                  a[2] * b[1] + a[3] * b[3]};
    return {m, linear(other.t_) + t_};
  }

  UnimodularAffineMap inverse() const {
    const std::int64_t d = det();
    std::array<std::int64_t, 4> inv{d * m_[3], -d * m_[1], -d * m_[2], d * m_[0]};
    UnimodularAffineMap r(inv, {0, 0});
    const LatticePoint it = r.linear(t_);
    r.t_ = {-it.x, -it.y};
    return r;
  }

  friend bool operator==(const UnimodularAffineMap&, const UnimodularAffineMap&) = default;

 private:
  std::array<std::int64_t, 4> m_{1, 0, 0, 1};
  LatticePoint t_{0, 0};
};

inline LatticePolytope apply_map(const UnimodularAffineMap& T, const LatticePolytope& P) {
  std::vector<LatticePoint> pts;
  pts.reserve(P.size());
  for (const auto& p : P.points()) pts.push_back(T(p));
  return LatticePolytope::hull_of(std::move(pts));
}

// P_k^(index) in the catalog numbering.
struct ClassId {
  int k = 0;
  int index = 0;
  friend auto operator<=>(const ClassId&, const ClassId&) = default;
};

inline std::string to_string(ClassId id) {
  std::string idx = std::to_string(id.index);
  return "P" + std::to_string(id.k) + "_" + idx;
}

namespace detail {

// Unimodular linear map sending the primitive vector e to (1, 0).
inline UnimodularAffineMap align_to_x_axis(LatticePoint e) {
  auto [g, s, t] = ext_gcd(e.x, e.y);  // s*ex + t*ey = 1
  (void)g;
  // Basis (e, w) with det(e, w) = 1 where w = (-t, s); inverse maps e -> (1,0).
  const LatticePoint w{-t, s};
  return UnimodularAffineMap({w.y, -w.x, -e.y, e.x}, {0, 0});
}

inline std::vector<LatticePoint> map_points(const UnimodularAffineMap& T, const std::vector<LatticePoint>& pts) {
  std::vector<LatticePoint> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(T(p));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Canonical representative of the lattice-equivalence class of P (det +-1
// allowed) together with a map T such that T(P) is that representative.
//
// Candidates: every hull vertex v and each of its two incident edges. The
// edge direction goes to (1,0), v to the origin, P to the half plane y >= 0
// (reflecting if needed). The remaining freedom is the shear x -> x + t*y,
// fixed by putting the leftmost point of row y = 1 at x = 0; then the
// min-corner is translated to the origin. The lexicographically smallest
// sorted point list over all candidates is the canonical form.
inline std::pair<LatticePolytope, UnimodularAffineMap> canonical_form(const LatticePolytope& P) {
  if (P.empty()) return {P, UnimodularAffineMap::identity()};
  if (P.dim() == 0) {
    const auto T = UnimodularAffineMap::translation(LatticePoint{} - P.points()[0]);
    return {apply_map(T, P), T};
  }
  const auto& hull = P.hull_vertices();
  if (P.dim() == 1) {
    const LatticePoint a = hull[0], b = hull[1];
    const auto R = detail::align_to_x_axis(primitive(b - a));
    const auto T = R.compose(UnimodularAffineMap::translation(LatticePoint{} - a));
    return {apply_map(T, P), T};
  }

  std::optional<std::vector<LatticePoint>> best;
  UnimodularAffineMap best_map;
  const std::size_t h = hull.size();
  for (std::size_t i = 0; i < h; ++i) {
    const LatticePoint v = hull[i];
    for (const LatticePoint w : {hull[(i + 1) % h], hull[(i + h - 1) % h]}) {
      auto T = detail::align_to_x_axis(primitive(w - v)).compose(UnimodularAffineMap::translation(LatticePoint{} - v));
      bool below = false;
      for (const auto& p : hull) below = below || T(p).y < 0;
      if (below) T = UnimodularAffineMap({1, 0, 0, -1}, {0, 0}).compose(T);

      std::optional<std::int64_t> row1;
      for (const auto& p : P.points()) {
        const LatticePoint u = T(p);
        if (u.y == 1) row1 = row1 ? std::min(*row1, u.x) : u.x;
      }
      // A lattice polygon with an edge on y = 0 always has a lattice point on y = 1.
      T = UnimodularAffineMap({1, -*row1, 0, 1}, {0, 0}).compose(T);

      std::int64_t min_x = T(P.points()[0]).x;
      for (const auto& p : P.points()) min_x = std::min(min_x, T(p).x);
      T = UnimodularAffineMap::translation({-min_x, 0}).compose(T);

      auto image = detail::map_points(T, P.points());
      if (!best || image < *best) {
        best = std::move(image);
        best_map = T;
      }
    }
  }
  return {apply_map(best_map, P), best_map};
}

inline LatticePolytope canonical(const LatticePolytope& P) { return canonical_form(P).first; }

// Some T with T(P1) = P2, if the two are lattice equivalent.
inline std::optional<UnimodularAffineMap> are_lattice_equivalent(const LatticePolytope& P1, const LatticePolytope& P2) {
  if (P1.size() != P2.size() || P1.dim() != P2.dim()) return std::nullopt;
  auto [c1, t1] = canonical_form(P1);
  auto [c2, t2] = canonical_form(P2);
  if (!(c1 == c2)) return std::nullopt;
  return t2.inverse().compose(t1);
}

// Finite set of points v outside P such that conv(P + v) may have exactly
// #P + 1 lattice points.
//
// For 2-dimensional P the new polygon Q has area at most #Q - 5/2 (Pick with
// B >= 3), so for every edge of P with primitive direction e through a the
// triangle (a, a + e, v) forces |det(e, v - a)| <= 2#Q - 5. Two consecutive
// edges bound a parallelogram; every strip is then checked exactly.
//
// A segment has infinitely many valid additions (any point at lattice height
// one), all equivalent under shears fixing the segment; the returned set
// covers a window of width 2#Q - 5 around the segment. A single point returns
// its 8 neighbours.
inline std::vector<LatticePoint> candidate_points(const LatticePolytope& P) {
  std::vector<LatticePoint> out;
  if (P.empty()) return out;
  const std::int64_t new_count = static_cast<std::int64_t>(P.size()) + 1;
  const std::int64_t bound = std::max<std::int64_t>(1, 2 * new_count - 5);

  if (P.dim() == 0) {
    const LatticePoint c = P.points()[0];
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy)
        if (dx != 0 || dy != 0) out.push_back(c + LatticePoint{dx, dy});
    return out;
  }

  if (P.dim() == 1) {
    auto [C, T] = canonical_form(P);
    const auto inv = T.inverse();
    const std::int64_t len = static_cast<std::int64_t>(P.size()) - 1;
    out.push_back(inv({-1, 0}));
    out.push_back(inv({len + 1, 0}));
    for (std::int64_t x = -bound; x <= len + bound; ++x) {
      out.push_back(inv({x, 1}));
      out.push_back(inv({x, -1}));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  const auto& hull = P.hull_vertices();
  const std::size_t h = hull.size();
  std::vector<std::pair<LatticePoint, LatticePoint>> strips;  // (anchor, primitive direction)
  for (std::size_t i = 0; i < h; ++i) strips.push_back({hull[i], primitive(hull[(i + 1) % h] - hull[i])});

  // det(e, v) = c with v unknown: v = (c1*e2 - c2*e1) / det(e1, e2) after shifting anchors.
  const auto [a1, e1] = strips[0];
  const auto [a2, e2] = strips[1];
  const std::int64_t delta = cross(e1, e2);
  const std::int64_t k1 = cross(e1, a1), k2 = cross(e2, a2);
  std::int64_t x0 = INT64_MAX, x1 = INT64_MIN, y0 = INT64_MAX, y1 = INT64_MIN;
  for (std::int64_t s1 : {-bound, bound}) {
    for (std::int64_t s2 : {-bound, bound}) {
      const std::int64_t c1 = s1 + k1, c2 = s2 + k2;  // det(e_i, v) = c_i
      const std::int64_t nx = c1 * e2.x - c2 * e1.x;
      const std::int64_t ny = c1 * e2.y - c2 * e1.y;
      // v = (nx, ny) / delta
      x0 = std::min(x0, delta > 0 ? detail::floor_div(nx, delta) : detail::floor_div(-nx, -delta));
      x1 = std::max(x1, delta > 0 ? detail::ceil_div(nx, delta) : detail::ceil_div(-nx, -delta));
      y0 = std::min(y0, delta > 0 ? detail::floor_div(ny, delta) : detail::floor_div(-ny, -delta));
      y1 = std::max(y1, delta > 0 ? detail::ceil_div(ny, delta) : detail::ceil_div(-ny, -delta));
    }
  }
  for (std::int64_t x = x0; x <= x1; ++x) {
    for (std::int64_t y = y0; y <= y1; ++y) {
      const LatticePoint v{x, y};
      if (P.contains(v)) continue;
      bool ok = true;
      for (const auto& [a, e] : strips) {
        if (std::llabs(cross(e, v - a)) > bound) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(v);
    }
  }
  return out;
}

// Points v for which conv(P + v) has exactly #P + 1 lattice points.
inline std::vector<LatticePoint> valid_additions(const LatticePolytope& P) {
  std::vector<LatticePoint> out;
  for (const auto& v : candidate_points(P))
    if (P.with_point(v).size() == P.size() + 1) out.push_back(v);
  return out;
}

// Canonical representatives of every lattice-equivalence class of polytopes
// with exactly k lattice points, built by one-point augmentation from k - 1
// (removing a hull vertex of a k-point polytope leaves k - 1 lattice points).
// Result is sorted lexicographically by point list.
inline std::vector<LatticePolytope> enumerate_classes(int k) {
  if (k < 1) return {};
  std::set<std::vector<LatticePoint>> level{{{0, 0}}};
  if (k >= 2) level = {{{0, 0}, {1, 0}}};
  for (int size = 3; size <= k; ++size) {
    std::set<std::vector<LatticePoint>> next;
    for (const auto& pts : level) {
      const auto base = polytope_from_points(pts);
      for (const auto& v : valid_additions(base)) next.insert(canonical(base.with_point(v)).points());
    }
    level = std::move(next);
  }
  std::vector<LatticePolytope> out;
  for (const auto& pts : level) out.push_back(polytope_from_points(pts));
  return out;
}

// All convex lattice sub-polytopes of P (hulls whose lattice points are a
// subset of P's), each listed once; includes points, segments and P itself.
inline std::vector<LatticePolytope> sub_polytopes(const LatticePolytope& P) {
  const auto& pts = P.points();
  const std::size_t n = pts.size();
  std::vector<LatticePolytope> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<LatticePoint> subset;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) subset.push_back(pts[i]);
    auto Q = polytope_from_points(subset);
    if (Q.size() == subset.size()) out.push_back(std::move(Q));
  }
  return out;
}

// --- text format ------------------------------------------------------------
//   k=7 id=15 pts=(-1,0)(-1,1)(0,0)(1,0)(2,-1)(2,0)(3,0)

struct PolytopeRecord {
  int k = 0;
  int id = 0;
  LatticePolytope polytope;
};

inline std::string format_points(const LatticePolytope& P) {
  std::string s;
  for (const auto& p : P.points()) s += to_string(p);
  return s;
}

inline std::string format_record(const PolytopeRecord& r) {
  return "k=" + std::to_string(r.k) + " id=" + std::to_string(r.id) + " pts=" + format_points(r.polytope);
}

inline std::vector<LatticePoint> parse_point_list(const std::string& s) {
  std::vector<LatticePoint> pts;
  std::size_t i = 0;
  auto fail = [&] { throw ParseError("bad point list: " + s); };
  while (i < s.size()) {
    if (s[i] == ' ') {
      ++i;
      continue;
    }
    if (s[i] != '(') fail();
    const std::size_t close = s.find(')', i);
    if (close == std::string::npos) fail();
    const std::string body = s.substr(i + 1, close - i - 1);
    const std::size_t comma = body.find(',');
    if (comma == std::string::npos) fail();
    try {
      pts.push_back({std::stoll(body.substr(0, comma)), std::stoll(body.substr(comma + 1))});
    } catch (const std::logic_error&) {
      fail();
    }
    i = close + 1;
  }
  return pts;
}

inline PolytopeRecord parse_record(const std::string& line) {
  PolytopeRecord r;
  std::istringstream in(line);
  std::string tok;
  bool have_pts = false;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value in: " + line);
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    try {
      if (key == "k") {
        r.k = std::stoi(val);
      } else if (key == "id") {
        r.id = std::stoi(val);
      } else if (key == "pts") {
        r.polytope = polytope_from_points(parse_point_list(val));
        have_pts = true;
      } else {
        throw ParseError("unknown key '" + key + "' in: " + line);
      }
    } catch (const std::logic_error&) {
      throw ParseError("bad value in: " + line);
    }
  }
  if (!have_pts) throw ParseError("missing pts= in: " + line);
  if (r.k == 0) r.k = static_cast<int>(r.polytope.size());
  return r;
}

inline std::vector<PolytopeRecord> parse_records(std::istream& in) {
  std::vector<PolytopeRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse_record(line));
  }
  return out;
}

}  // namespace toriclass
