#pragma once

// Named representatives for k = 6 and k = 7, the point-addition table that
// builds the k = 7 classes, minimum-distance metadata and the exceptional
// equivalent pairs.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "toriclass/errors.hpp"
#include "toriclass/lattice.hpp"

namespace toriclass {

// Accepts "P7_5", "P7_05", "p7_5" and "7:5".
inline ClassId parse_class_id(const std::string& s) {
  auto fail = [&]() -> ClassId { throw ParseError("bad class id '" + s + "'"); };
  std::string t = s;
  if (!t.empty() && (t[0] == 'P' || t[0] == 'p')) t = t.substr(1);
  auto sep = t.find_first_of("_:");
  if (sep == std::string::npos || sep == 0 || sep + 1 >= t.size()) return fail();
  try {
    std::size_t used = 0;
    const int k = std::stoi(t.substr(0, sep), &used);
    if (used != sep) return fail();
    const std::string rest = t.substr(sep + 1);
    const int idx = std::stoi(rest, &used);
    if (used != rest.size()) return fail();
    return {k, idx};
  } catch (const std::logic_error&) {
    return fail();
  }
}

// Two-digit index, as used in enumerator labels: P7_05.
inline std::string padded_label(ClassId id) {
  std::string idx = std::to_string(id.index);
  if (idx.size() < 2) idx = "0" + idx;
  return "P" + std::to_string(id.k) + "_" + idx;
}

struct Table1Row {
  ClassId base;
  LatticePoint added;
  ClassId result;                // as printed; see stated_other_k
  bool stated_other_k = false;   // printed result carries k = 6, presumed misprint for k = 7
  bool parametric = false;       // expanded from the (x0, +-1), x0 in Z row
};

enum class DistanceKind { Exact, Interval, NotAsserted };

struct ExpectedDistance {
  DistanceKind kind = DistanceKind::NotAsserted;
  std::int64_t value = 0;   // Exact
  std::int64_t lo_excl = 0; // Interval: lo_excl < d <= hi
  std::int64_t hi = 0;
};

struct DistanceFormula {
  std::string text;          // e.g. "(q-1)(q-5)"
  std::int64_t q_min = 0;    // validity: q >= q_min (0 = all q)
  bool interval = false;
  std::function<std::int64_t(std::int64_t)> exact;  // or upper end for intervals
  std::function<std::int64_t(std::int64_t)> lower_exclusive;
};

struct CatalogEntry {
  ClassId id;
  LatticePolytope polytope;
  std::optional<Table1Row> construction;  // k = 7 only
  std::optional<DistanceFormula> distance;
  std::optional<int> minkowski_L;         // annotated full Minkowski length
  std::optional<bool> obstruction;        // annotated exceptional obstruction
  std::optional<bool> exceptional_subpolygon;
};

struct ExceptionalPair {
  ClassId a, b;
  std::int64_t q;
};

namespace detail {

inline std::vector<std::vector<LatticePoint>> k6_points() {
  return {
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}},
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {0, 1}},
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 1}, {1, 1}},
      {{0, -1}, {0, 0}, {0, 1}, {1, 0}, {2, 0}, {3, 0}},
      {{-1, -1}, {0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 1}},
      {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 2}, {3, 3}},
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {3, -1}, {0, 1}},
      {{-1, 0}, {0, 0}, {1, 0}, {2, 0}, {0, -1}, {0, 1}},
      {{0, -1}, {0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}},
      {{-1, 2}, {0, -1}, {0, 0}, {0, 1}, {1, 0}, {2, 0}},
      {{-1, -1}, {0, 0}, {1, 0}, {1, 1}, {0, 2}, {0, 1}},
      {{-1, 0}, {0, -1}, {0, 0}, {0, 1}, {1, 0}, {1, 1}},
      {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {0, 2}},
      {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}},
  };
}

struct RawRow {
  int base;
  std::vector<LatticePoint> pts;
  int result;
  bool other_k = false;
};

inline std::vector<RawRow> raw_table1() {
  return {
      {1, {{6, 0}, {-1, 0}}, 1},
      {2, {{5, 0}, {-1, 0}}, 2},
      {2, {{-1, 1}, {1, 1}}, 3},
      {2, {{4, -1}}, 14},
      {2, {{3, -1}, {5, -1}}, 15},
      {2, {{2, -1}, {6, -1}}, 16},
      {2, {{1, -1}, {7, -1}}, 17},
      {2, {{0, -1}, {8, -1}}, 18},
      {2, {{-1, -1}, {9, -1}}, 22},
      {3, {{4, 0}, {-1, 0}}, 3},
      {3, {{2, 1}, {-1, 1}}, 4},
      {3, {{0, 2}, {-1, 2}}, 8},
      {3, {{0, -1}, {5, -1}}, 9},
      {3, {{1, -1}, {4, -1}}, 10},
      {3, {{2, -1}, {3, -1}}, 11, true},
      {3, {{6, -1}, {-1, -1}}, 9},
      {4, {{1, -1}, {1, 1}}, 9},
      {4, {{-1, 0}}, 17},
      {4, {{5, 0}}, 18},
      {4, {{-1, -1}, {-1, 1}}, 19},
      {5, {{-1, 0}}, 17},
      {5, {{0, -1}, {1, 1}}, 19},
      {5, {{4, 0}}, 22},
      {6, {{-1, 0}, {0, -1}}, 9},
      {6, {{2, 1}, {1, 2}}, 10},
      {6, {{-1, -1}}, 15},
      {6, {{4, 4}}, 17},
      {7, {{-1, 1}, {4, -1}, {1, 1}, {2, -1}}, 11},
      {7, {{-1, 0}, {4, 0}}, 15},
      {8, {{-1, -1}, {-1, 1}}, 10},
      {8, {{1, -1}, {1, 1}}, 11},
      {8, {{-2, 0}}, 14},
      {8, {{3, 0}}, 16},
      {9, {{2, 1}}, 5},
      {9, {{1, -1}}, 6},
      {9, {{0, 2}}, 8},
      {9, {{3, 0}}, 9},
      {9, {{-1, 0}}, 11},
      {9, {{-1, 1}, {1, 2}}, 12},
      {9, {{-1, -1}}, 13},
      {9, {{-1, 2}, {-1, -2}}, 21},
      {10, {{-1, 1}, {1, 1}, {1, -1}}, 21},
      {11, {{0, -1}}, 10},
      {11, {{1, 2}}, 12},
      {11, {{-1, 0}}, 13},
      {11, {{0, 3}}, 19},
      {11, {{2, 0}}, 20},
      {11, {{2, 1}}, 21},
      {12, {{2, 1}, {1, 2}}, 5},
      {12, {{1, -1}, {-1, 1}}, 6},
      {12, {{-1, -1}}, 7},
      {12, {{0, -2}, {-2, 0}}, 10},
      {12, {{2, 0}, {0, 2}}, 11},
      {12, {{2, 2}}, 13},
      {13, {{1, 2}, {2, 1}, {-1, 1}, {1, -1}, {-1, 2}, {2, -1}}, 5},
      {13, {{-1, 0}, {0, -1}, {3, 0}, {0, 3}, {3, -1}, {-1, 3}}, 8},
      {13, {{4, -1}, {-1, 4}, {-1, -1}}, 20},
      {14, {{0, -1}, {2, -1}, {0, 2}, {2, 2}}, 5},
      {14, {{1, -1}, {1, 2}}, 6},
      {14, {{3, -1}, {-1, 2}, {-1, -1}, {3, 2}}, 12},
      {14, {{-1, 0}, {-1, 1}, {3, 0}, {3, 1}}, 14},
  };
}

// Index into table1_rows() of the row that defines each k = 7 representative.
struct Designation {
  int index;
  int base;
  LatticePoint added;
};

inline std::vector<Designation> designations() {
  return {
      {1, 1, {6, 0}},    {2, 1, {0, 1}},    {3, 2, {-1, 1}},  {4, 3, {2, 1}},   {5, 9, {2, 1}},
      {6, 9, {1, -1}},   {7, 12, {-1, -1}}, {8, 3, {0, 2}},   {9, 3, {0, -1}},  {10, 3, {1, -1}},
      {11, 7, {-1, 1}},  {12, 9, {-1, 1}},  {13, 9, {-1, -1}}, {14, 2, {4, -1}}, {15, 2, {3, -1}},
      {16, 2, {2, -1}},  {17, 2, {1, -1}},  {18, 2, {0, -1}}, {19, 4, {-1, -1}}, {20, 11, {2, 0}},
      {21, 9, {-1, 2}},  {22, 2, {-1, -1}},
  };
}

inline std::function<std::int64_t(std::int64_t)> product(std::int64_t a, std::int64_t b) {
  return [a, b](std::int64_t q) { return (q - a) * (q - b); };
}

inline std::optional<DistanceFormula> distance_formula(int index) {
  auto exact = [](std::string text, std::int64_t qmin, std::int64_t a, std::int64_t b) {
    return DistanceFormula{std::move(text), qmin, false, product(a, b), {}};
  };
  switch (index) {
    case 1: return exact("(q-1)(q-7)", 0, 1, 7);
    case 2: return exact("(q-1)(q-6)", 0, 1, 6);
    case 3: return exact("(q-1)(q-5)", 0, 1, 5);
    case 14: case 15: case 16: case 17: case 18: case 22: return exact("(q-1)(q-5)", 37, 1, 5);
    case 4: case 8: return exact("(q-1)(q-4)", 0, 1, 4);
    case 9: case 10: case 11: case 19: return exact("(q-1)(q-4)", 37, 1, 4);
    case 5: case 6: case 7: return exact("(q-2)(q-3)", 11, 2, 3);
    case 12: return exact("(q-2)(q-3)", 25, 2, 3);
    case 13: return DistanceFormula{"(q-2)(q-3) < d <= (q-1)(q-3)", 23, true, product(1, 3), product(2, 3)};
    case 20: case 21: return exact("(q-1)(q-3)", 37, 1, 3);
    default: return std::nullopt;
  }
}

}  // namespace detail

// Every printed row, one entry per added point. The parametric row
// (x0, +-1) -> P7_2 is sampled for x0 in [-x0_range, x0_range].
inline std::vector<Table1Row> table1_rows(int x0_range = 10) {
  std::vector<Table1Row> out;
  bool emitted_parametric = false;
  for (const auto& r : detail::raw_table1()) {
    for (const auto& p : r.pts) out.push_back({{6, r.base}, p, {r.other_k ? 6 : 7, r.result}, r.other_k, false});
    if (r.base == 1 && !emitted_parametric) {
      for (std::int64_t x0 = -x0_range; x0 <= x0_range; ++x0)
        for (std::int64_t s : {1, -1}) out.push_back({{6, 1}, {x0, s}, {7, 2}, false, true});
      emitted_parametric = true;
    }
  }
  return out;
}

inline std::vector<ExceptionalPair> exceptional_pairs() {
  return {{{7, 22}, {7, 15}, 7}, {{7, 18}, {7, 16}, 7}, {{7, 19}, {7, 9}, 7}, {{7, 22}, {7, 16}, 8}, {{7, 17}, {7, 18}, 8}};
}

class Catalog {
 public:
  static const Catalog& instance() { return mutable_instance(); }

  // For loading overrides at startup, before any concurrent reads.
  static Catalog& mutable_instance() {
    static Catalog c;
    return c;
  }

  Catalog() {
    const auto k6 = detail::k6_points();
    for (std::size_t i = 0; i < k6.size(); ++i) {
      CatalogEntry e;
      e.id = {6, static_cast<int>(i + 1)};
      e.polytope = polytope_from_points(k6[i]);
      entries_.push_back(std::move(e));
    }
    for (const auto& d : detail::designations()) {
      CatalogEntry e;
      e.id = {7, d.index};
      auto pts = k6[static_cast<std::size_t>(d.base - 1)];
      pts.push_back(d.added);
      e.polytope = polytope_from_points(pts);
      e.construction = Table1Row{{6, d.base}, d.added, {7, d.index}, false, d.index == 2};
      e.distance = detail::distance_formula(d.index);
      switch (d.index) {
        case 7: e.minkowski_L = 3; break;
        case 9: e.minkowski_L = 3; e.obstruction = false; e.exceptional_subpolygon = true; break;
        case 13: e.minkowski_L = 2; e.obstruction = true; break;
        case 14: e.minkowski_L = 4; e.obstruction = false; e.exceptional_subpolygon = false; break;
        case 16: case 18: e.obstruction = false; e.exceptional_subpolygon = false; break;
        // These do contain an exceptional triangle; only the obstruction flag is kept.
        case 15: case 17: case 22: e.obstruction = false; break;
        default: break;
      }
      entries_.push_back(std::move(e));
    }
  }

  const std::vector<CatalogEntry>& entries() const { return entries_; }

  std::vector<ClassId> ids(int k) const {
    std::vector<ClassId> out;
    for (const auto& e : entries_)
      if (e.id.k == k) out.push_back(e.id);
    return out;
  }

  const CatalogEntry& entry(ClassId id) const {
    for (const auto& e : entries_)
      if (e.id == id) return e;
    throw NotInCatalog("no catalog entry " + to_string(id));
  }

  const LatticePolytope& polygon(ClassId id) const { return entry(id).polytope; }

  // Catalog id whose polygon is lattice equivalent to P, if any.
  std::optional<ClassId> identify(const LatticePolytope& P) const {
    const auto c = canonical(P);
    for (const auto& e : entries_)
      if (e.id.k == static_cast<int>(P.size()) && canonical(e.polytope) == c) return e.id;
    return std::nullopt;
  }

  // Replace representatives (e.g. from a data file); each must keep its lattice-point count.
  void override_polygon(ClassId id, const LatticePolytope& P) {
    for (auto& e : entries_)
      if (e.id == id) {
        if (static_cast<int>(P.size()) != id.k)
          throw InvalidParams(to_string(id) + " needs " + std::to_string(id.k) + " lattice points");
        e.polytope = P;
        return;
      }
    throw NotInCatalog("no catalog entry " + to_string(id));
  }

 private:
  std::vector<CatalogEntry> entries_;
};

// Applies every k = 6 / k = 7 record of a polytope text file as a
// representative override; returns the number applied. A directory path
// means <dir>/catalog.txt.
inline std::size_t load_catalog_overrides(const std::string& path) {
  std::string file = path;
  if (std::filesystem::is_directory(file)) file = (std::filesystem::path(file) / "catalog.txt").string();
  std::ifstream in(file);
  if (!in) throw ParseError("cannot open catalog file " + file);
  std::size_t applied = 0;
  for (const auto& r : parse_records(in)) {
    if (r.id <= 0) throw ParseError("catalog record without id in " + file);
    Catalog::mutable_instance().override_polygon({r.k, r.id}, r.polytope);
    ++applied;
  }
  return applied;
}

inline const LatticePolytope& get_polygon(ClassId id) { return Catalog::instance().polygon(id); }

inline ExpectedDistance expected_min_distance(ClassId id, std::int64_t q) {
  const auto& e = Catalog::instance().entry(id);
  ExpectedDistance r;
  if (!e.distance || q < e.distance->q_min) return r;
  if (e.distance->interval) {
    r.kind = DistanceKind::Interval;
    r.hi = e.distance->exact(q);
    r.lo_excl = e.distance->lower_exclusive(q);
  } else {
    r.kind = DistanceKind::Exact;
    r.value = e.distance->exact(q);
  }
  return r;
}

inline std::string to_string(const ExpectedDistance& d) {
  switch (d.kind) {
    case DistanceKind::Exact: return "Exact(" + std::to_string(d.value) + ")";
    case DistanceKind::Interval: return "Interval(" + std::to_string(d.lo_excl) + ", " + std::to_string(d.hi) + "]";
    default: return "NotAsserted";
  }
}

}  // namespace toriclass
