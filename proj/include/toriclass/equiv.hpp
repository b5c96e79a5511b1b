#pragma once

// Monomial equivalence of linear codes.
//
// Two full-support codes are monomially equivalent exactly when some
// invertible k x k matrix A maps the projective column multiset of one onto
// the other. The search fixes the images of a basis of columns, pins the
// remaining diagonal freedom with further columns and then checks the whole
// multiset. Column and column-pair colors, derived from the codewords that
// vanish there, prune the candidates.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "toriclass/code.hpp"
#include "toriclass/errors.hpp"
#include "toriclass/gf.hpp"

namespace toriclass {

using ProjectivePoint = std::vector<FieldElement>;

struct MonomialWitness {
  std::vector<FieldElement> scale;  // column j of G1 is multiplied by scale[j]
  std::vector<std::size_t> perm;    // ... and moved to position perm[j]
};

struct EquivalenceVerdict {
  enum class Kind { Equivalent, Inequivalent, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<MonomialWitness> witness;
  std::string certificate;  // e.g. "weight_distribution@36", "search_complete"
  std::string value1, value2;
  std::uint64_t evaluations = 0;
};

inline std::string to_string(EquivalenceVerdict::Kind k) {
  switch (k) {
    case EquivalenceVerdict::Kind::Equivalent: return "Equivalent";
    case EquivalenceVerdict::Kind::Inequivalent: return "Inequivalent";
    default: return "Unknown";
  }
}

// First nonzero coordinate scaled to 1.
inline ProjectivePoint normalize_projective(ProjectivePoint v, const FieldSpec& F) {
  for (auto c : v)
    if (c != 0) {
      const FieldElement inv = F.inv(c);
      for (auto& x : v) x = F.mul(x, inv);
      return v;
    }
  return v;
}

inline ProjectivePoint column_of(const LinearCode& C, std::size_t j) {
  ProjectivePoint v(C.k());
  for (std::size_t r = 0; r < C.k(); ++r) v[r] = C.G[r][j];
  return v;
}

inline std::map<ProjectivePoint, std::size_t> column_multiset(const LinearCode& C) {
  std::map<ProjectivePoint, std::size_t> out;
  for (std::size_t j = 0; j < C.n(); ++j) ++out[normalize_projective(column_of(C, j), *C.field)];
  return out;
}

// Column j of G1 scaled by scale[j] lands at perm[j]; same row space as G2.
inline bool verify_witness(const LinearCode& C1, const LinearCode& C2, const MonomialWitness& w) {
  const std::size_t n = C1.n();
  if (C2.n() != n || C1.k() != C2.k() || C1.field->q() != C2.field->q()) return false;
  if (w.scale.size() != n || w.perm.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    if (w.perm[j] >= n || seen[w.perm[j]] || w.scale[j] == 0 || w.scale[j] >= C1.field->q()) return false;
    seen[w.perm[j]] = true;
  }
  const FieldSpec& F = *C1.field;
  Matrix M(C1.k(), std::vector<FieldElement>(n, 0));
  for (std::size_t r = 0; r < C1.k(); ++r)
    for (std::size_t j = 0; j < n; ++j) M[r][w.perm[j]] = F.mul(C1.G[r][j], w.scale[j]);
  return rref(M, F) == rref(C2.G, F);
}

// G1 * Delta * Pi
inline LinearCode apply_witness(const LinearCode& C, const MonomialWitness& w) {
  LinearCode out{C.field, Matrix(C.k(), std::vector<FieldElement>(C.n(), 0))};
  for (std::size_t r = 0; r < C.k(); ++r)
    for (std::size_t j = 0; j < C.n(); ++j) out.G[r][w.perm[j]] = C.field->mul(C.G[r][j], w.scale[j]);
  return out;
}

template <class Rng>
MonomialWitness random_witness(std::size_t n, const FieldSpec& F, Rng& rng) {
  MonomialWitness w;
  std::uniform_int_distribution<FieldElement> nz(1, F.q() - 1);
  for (std::size_t j = 0; j < n; ++j) w.scale.push_back(nz(rng));
  w.perm.resize(n);
  for (std::size_t j = 0; j < n; ++j) w.perm[j] = j;
  std::shuffle(w.perm.begin(), w.perm.end(), rng);
  return w;
}

namespace detail {

inline std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t combine(std::uint64_t h, std::uint64_t v) { return mix(h ^ mix(v)); }

inline std::uint64_t hash_counts(const std::int64_t* a, std::size_t len, std::uint64_t seed) {
  std::uint64_t h = mix(seed);
  for (std::size_t i = 0; i < len; ++i)
    if (a[i] != 0) h = combine(combine(h, i), static_cast<std::uint64_t>(a[i]));
  return h;
}

}  // namespace detail

// Distinct projective columns of a code with their colors.
struct CodeProfile {
  LinearCode code;
  WeightDistribution weights;
  std::vector<ProjectivePoint> points;
  std::map<ProjectivePoint, std::size_t> index;
  std::vector<std::vector<std::size_t>> columns;  // columns of each point
  std::vector<std::uint64_t> color;               // refined point colors
  std::vector<std::uint64_t> pair;                // m x m pair colors

  std::size_t m() const { return points.size(); }
  std::uint64_t pair_color(std::size_t a, std::size_t b) const { return pair[a * points.size() + b]; }
};

inline CodeProfile build_profile(const LinearCode& C, double budget = kDefaultBudget, unsigned threads = 1) {
  CodeProfile P;
  P.code = C;
  const FieldSpec& F = *C.field;
  const std::size_t n = C.n();
  std::vector<std::size_t> point_of(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto v = normalize_projective(column_of(C, j), F);
    auto [it, fresh] = P.index.emplace(v, P.points.size());
    if (fresh) {
      P.points.push_back(v);
      P.columns.emplace_back();
    }
    P.columns[it->second].push_back(j);
    point_of[j] = it->second;
  }
  const std::size_t m = P.points.size();
  std::vector<std::size_t> rep(m);
  for (std::size_t a = 0; a < m; ++a) rep[a] = P.columns[a].front();

  // Weight histograms of the projective codewords vanishing at each point and
  // at each pair of points.
  struct Acc {
    std::size_t m, w;
    const std::vector<std::size_t>* rep;
    std::vector<std::int64_t> all, single, pairs;
    std::vector<std::size_t> zeros;
    void operator()(const FieldElement* cw, std::int64_t wt, const FieldElement*) {
      const auto u = static_cast<std::size_t>(wt);
      ++all[u];
      zeros.clear();
      for (std::size_t a = 0; a < m; ++a)
        if (cw[(*rep)[a]] == 0) zeros.push_back(a);
      for (std::size_t s = 0; s < zeros.size(); ++s) {
        ++single[zeros[s] * w + u];
        for (std::size_t t = s + 1; t < zeros.size(); ++t) ++pairs[(zeros[s] * m + zeros[t]) * w + u];
      }
    }
  };
  const std::size_t w = n + 1;
  auto parts = for_each_projective_codeword(
      C,
      [&] {
        return Acc{m, w, &rep, std::vector<std::int64_t>(w, 0), std::vector<std::int64_t>(m * w, 0),
                   std::vector<std::int64_t>(m * m * w, 0), {}};
      },
      threads, budget);
  Acc& acc = parts.front();
  for (std::size_t t = 1; t < parts.size(); ++t) {
    for (std::size_t i = 0; i < acc.all.size(); ++i) acc.all[i] += parts[t].all[i];
    for (std::size_t i = 0; i < acc.single.size(); ++i) acc.single[i] += parts[t].single[i];
    for (std::size_t i = 0; i < acc.pairs.size(); ++i) acc.pairs[i] += parts[t].pairs[i];
  }
  P.weights.A.assign(w, 0);
  for (std::size_t i = 0; i < w; ++i) P.weights.A[i] = acc.all[i] * static_cast<std::int64_t>(F.q() - 1);
  P.weights.A[0] += 1;

  P.color.resize(m);
  for (std::size_t a = 0; a < m; ++a)
    P.color[a] = detail::hash_counts(&acc.single[a * w], w, P.columns[a].size());
  P.pair.assign(m * m, 0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      P.pair[a * m + b] = P.pair[b * m + a] = detail::hash_counts(&acc.pairs[(a * m + b) * w], w, 1);

  // Refine point colors by the multiset of (pair color, neighbour color).
  auto classes = [](std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
  };
  std::size_t count = classes(P.color);
  for (;;) {
    std::vector<std::uint64_t> next(m);
    std::vector<std::uint64_t> nb;
    for (std::size_t a = 0; a < m; ++a) {
      nb.clear();
      for (std::size_t b = 0; b < m; ++b)
        if (b != a) nb.push_back(detail::combine(P.pair[a * m + b], P.color[b]));
      std::sort(nb.begin(), nb.end());
      std::uint64_t h = detail::mix(P.color[a]);
      for (auto x : nb) h = detail::combine(h, x);
      next[a] = h;
    }
    const std::size_t c = classes(next);
    P.color = std::move(next);
    if (c == count) break;
    count = c;
  }
  return P;
}

struct InvariantSignature {
  std::size_t n = 0, k = 0;
  WeightDistribution weights;
  std::vector<std::size_t> multiplicities;  // sorted
  std::vector<std::uint64_t> colors;        // sorted refined point colors
  std::vector<std::uint64_t> pair_colors;   // sorted
};

inline InvariantSignature invariant_signature(const CodeProfile& P) {
  InvariantSignature s;
  s.n = P.code.n();
  s.k = P.code.k();
  s.weights = P.weights;
  for (const auto& c : P.columns) s.multiplicities.push_back(c.size());
  std::sort(s.multiplicities.begin(), s.multiplicities.end());
  s.colors = P.color;
  std::sort(s.colors.begin(), s.colors.end());
  for (std::size_t a = 0; a < P.m(); ++a)
    for (std::size_t b = a + 1; b < P.m(); ++b) s.pair_colors.push_back(P.pair_color(a, b));
  std::sort(s.pair_colors.begin(), s.pair_colors.end());
  return s;
}

inline InvariantSignature invariant_signature(const LinearCode& C, double budget = kDefaultBudget,
                                              unsigned threads = 1) {
  return invariant_signature(build_profile(C, budget, threads));
}

struct SignatureDifference {
  std::string name;
  std::string value1, value2;
};

inline std::optional<SignatureDifference> compare_signatures(const InvariantSignature& a,
                                                             const InvariantSignature& b) {
  if (a.n != b.n) return SignatureDifference{"length", std::to_string(a.n), std::to_string(b.n)};
  if (a.k != b.k) return SignatureDifference{"dimension", std::to_string(a.k), std::to_string(b.k)};
  for (std::size_t i = a.n + 1; i-- > 0;)
    if (a.weights.at(static_cast<std::int64_t>(i)) != b.weights.at(static_cast<std::int64_t>(i)))
      return SignatureDifference{"weight_distribution@" + std::to_string(i),
                                 std::to_string(a.weights.at(static_cast<std::int64_t>(i))),
                                 std::to_string(b.weights.at(static_cast<std::int64_t>(i)))};
  auto classes = [](const auto& v) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < v.size(); ++i) c += i == 0 || v[i] != v[i - 1];
    return std::to_string(c);
  };
  if (a.multiplicities != b.multiplicities)
    return SignatureDifference{"column_multiplicities", std::to_string(a.multiplicities.size()) + " points",
                               std::to_string(b.multiplicities.size()) + " points"};
  if (a.colors != b.colors)
    return SignatureDifference{"column_colors", classes(a.colors) + " classes", classes(b.colors) + " classes"};
  if (a.pair_colors != b.pair_colors)
    return SignatureDifference{"pair_colors", classes(a.pair_colors) + " classes",
                               classes(b.pair_colors) + " classes"};
  return std::nullopt;
}

struct EquivalenceOptions {
  double budget = 1e8;                     // candidate evaluations
  double enumeration_budget = kDefaultBudget;
  unsigned threads = 1;
  // Aut of one code acts transitively on its columns (true for toric codes),
  // so the first basis column may be sent to a single representative.
  bool column_transitive = false;
};

namespace detail {

inline std::optional<Matrix> invert(const Matrix& M, const FieldSpec& F) {
  const std::size_t k = M.size();
  Matrix A(k, std::vector<FieldElement>(2 * k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) A[i][j] = M[i][j];
    A[i][k + i] = 1;
  }
  const Matrix R = rref(A, F);
  if (R.size() < k) return std::nullopt;
  Matrix out(k, std::vector<FieldElement>(k));
  for (std::size_t i = 0; i < k; ++i) {
    if (R[i][i] != 1) return std::nullopt;
    for (std::size_t j = 0; j < k; ++j) out[i][j] = R[i][k + j];
  }
  return out;
}

inline ProjectivePoint mat_vec(const Matrix& M, const ProjectivePoint& v, const FieldSpec& F) {
  ProjectivePoint r(M.size(), 0);
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (M[i][j] != 0 && v[j] != 0) r[i] = F.add(r[i], F.mul(M[i][j], v[j]));
  return r;
}

// Incremental independence test against an echelon set of vectors.
class Echelon {
 public:
  explicit Echelon(const FieldSpec& F) : F_(F) {}
  bool contains(ProjectivePoint v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](FieldElement c) { return c == 0; });
  }
  // False if v is dependent on the rows so far.
  bool try_add(ProjectivePoint v) {
    reduce(v);
    std::size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) return false;
    const FieldElement inv = F_.inv(v[p]);
    for (auto& x : v) x = F_.mul(x, inv);
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }
  void pop() {
    rows_.pop_back();
    pivots_.pop_back();
  }
  std::size_t size() const { return rows_.size(); }

 private:
  void reduce(ProjectivePoint& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const FieldElement c = v[pivots_[r]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = F_.sub(v[j], F_.mul(c, rows_[r][j]));
    }
  }

  const FieldSpec& F_;
  Matrix rows_;
  std::vector<std::size_t> pivots_;
};

class MonomialSearch {
 public:
  MonomialSearch(const CodeProfile& P1, const CodeProfile& P2, const EquivalenceOptions& opt)
      : P1_(P1), P2_(P2), F_(*P1.code.field), opt_(opt), k_(P1.code.k()) {}

  std::uint64_t evaluations() const { return evals_; }
  bool exhausted_budget() const { return out_of_budget_; }

  // A with P2 = A P1 as projective multisets, if one exists.
  std::optional<Matrix> run() {
    choose_basis();
    if (basis_.size() < k_) return std::nullopt;
    prepare();
    used_.assign(P2_.m(), false);
    images_.clear();
    Echelon ech(F_);
    if (basis_level(0, ech)) return result_;
    return std::nullopt;
  }

 private:
  struct Ratios {
    std::vector<std::size_t> parent;
    std::vector<FieldElement> ratio;  // lambda_i / lambda_parent
    std::size_t components = 0;
  };

  // Search state for a partial frame of t basis images.
  struct Level {
    std::size_t t = 0;
    Matrix E;                                  // E * Y = [I_t; 0]
    std::vector<std::optional<ProjectivePoint>> nu;  // coordinates of P2 points in span(Y)
  };

  bool spend() {
    if (static_cast<double>(++evals_) > opt_.budget) out_of_budget_ = true;
    return !out_of_budget_;
  }

  // Basis of P1 points, greedy by smallest compatible class.
  void choose_basis() {
    Echelon ech(F_);
    std::vector<bool> taken(P1_.m(), false);
    while (basis_.size() < k_) {
      std::size_t best = P1_.m(), best_size = SIZE_MAX;
      for (std::size_t a = 0; a < P1_.m(); ++a) {
        if (taken[a]) continue;
        Echelon probe = ech;
        if (!probe.try_add(P1_.points[a])) continue;
        std::size_t size = 0;
        for (std::size_t b = 0; b < P1_.m(); ++b) {
          if (P1_.color[b] != P1_.color[a]) continue;
          bool same = true;
          for (auto s : basis_) same = same && P1_.pair_color(b, s) == P1_.pair_color(a, s);
          size += same;
        }
        if (size < best_size) {
          best_size = size;
          best = a;
        }
      }
      if (best == P1_.m()) return;
      ech.try_add(P1_.points[best]);
      taken[best] = true;
      basis_.push_back(best);
    }
  }

  // Coordinates of every P1 point in the basis, and per prefix length t the
  // non-basis points spanned by the first t basis points, ordered so that
  // their supports join the diagonal unknowns early.
  void prepare() {
    Matrix B(k_, std::vector<FieldElement>(k_));
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t r = 0; r < k_; ++r) B[r][i] = P1_.points[basis_[i]][r];
    Binv_ = *invert(B, F_);
    for (const auto& p : P1_.points) mu_.push_back(mat_vec(Binv_, p, F_));
    std::vector<bool> in_basis(P1_.m(), false);
    for (auto b : basis_) in_basis[b] = true;
    span_.assign(k_ + 1, {});
    span_keys_.assign(k_ + 1, {});
    order_.assign(k_ + 1, {});
    for (std::size_t t = 1; t <= k_; ++t) {
      for (std::size_t a = 0; a < P1_.m(); ++a) {
        if (in_basis[a]) continue;
        bool inside = true;
        for (std::size_t i = t; i < k_ && inside; ++i) inside = mu_[a][i] == 0;
        if (inside) span_[t].push_back(a);
      }
      std::vector<std::size_t> comp(t);
      for (std::size_t i = 0; i < t; ++i) comp[i] = i;
      std::vector<bool> taken(P1_.m(), false);
      for (;;) {
        std::size_t best = P1_.m(), gain = 1;
        for (auto a : span_[t]) {
          if (taken[a]) continue;
          std::vector<std::size_t> cs;
          for (std::size_t i = 0; i < t; ++i)
            if (mu_[a][i] != 0) cs.push_back(comp[i]);
          std::sort(cs.begin(), cs.end());
          const auto g = static_cast<std::size_t>(std::unique(cs.begin(), cs.end()) - cs.begin());
          if (g > gain) {
            gain = g;
            best = a;
          }
        }
        if (best == P1_.m()) break;
        taken[best] = true;
        order_[t].push_back(best);
        std::vector<std::size_t> merged;
        for (std::size_t i = 0; i < t; ++i)
          if (mu_[best][i] != 0) merged.push_back(comp[i]);
        const std::size_t target = *std::min_element(merged.begin(), merged.end());
        for (auto& c : comp)
          if (std::find(merged.begin(), merged.end(), c) != merged.end()) c = target;
      }
      for (std::size_t s = 0; s < t; ++s) span_keys_[t].push_back(span_key(P1_, basis_[s], basis_, t));
      for (auto a : span_[t]) span_keys_[t].push_back(span_key(P1_, a, basis_, t));
      std::sort(span_keys_[t].begin(), span_keys_[t].end());
    }
  }

  // Color of a point together with its pair colors to the first t frame points.
  static std::uint64_t span_key(const CodeProfile& P, std::size_t a, const std::vector<std::size_t>& frame,
                                std::size_t t) {
    std::uint64_t h = mix(P.color[a]);
    for (std::size_t s = 0; s < t; ++s) h = combine(h, frame[s] == a ? 0 : P.pair_color(a, frame[s]));
    return h;
  }

  bool compatible(std::size_t a, std::size_t y, std::size_t t) const {
    if (P2_.color[y] != P1_.color[a] || P2_.columns[y].size() != P1_.columns[a].size()) return false;
    for (std::size_t s = 0; s < t; ++s)
      if (P2_.pair_color(y, images_[s]) != P1_.pair_color(a, basis_[s])) return false;
    return true;
  }

  Level make_level() const {
    Level L;
    L.t = images_.size();
    const std::size_t t = L.t;
    Matrix M(k_, std::vector<FieldElement>(t + k_, 0));
    for (std::size_t r = 0; r < k_; ++r) {
      for (std::size_t s = 0; s < t; ++s) M[r][s] = P2_.points[images_[s]][r];
      M[r][t + r] = 1;
    }
    // Row-reduce on the first t columns only; the rest records E.
    std::size_t row = 0;
    for (std::size_t c = 0; c < t; ++c) {
      std::size_t piv = row;
      while (M[piv][c] == 0) ++piv;
      std::swap(M[row], M[piv]);
      const FieldElement inv = F_.inv(M[row][c]);
      for (auto& v : M[row]) v = F_.mul(v, inv);
      for (std::size_t r = 0; r < k_; ++r) {
        if (r == row || M[r][c] == 0) continue;
        const FieldElement f = M[r][c];
        for (std::size_t j = 0; j < t + k_; ++j) M[r][j] = F_.sub(M[r][j], F_.mul(f, M[row][j]));
      }
      ++row;
    }
    L.E.assign(k_, std::vector<FieldElement>(k_));
    for (std::size_t r = 0; r < k_; ++r)
      for (std::size_t j = 0; j < k_; ++j) L.E[r][j] = M[r][t + j];
    L.nu.resize(P2_.m());
    for (std::size_t y = 0; y < P2_.m(); ++y) {
      auto z = mat_vec(L.E, P2_.points[y], F_);
      bool inside = true;
      for (std::size_t r = t; r < k_ && inside; ++r) inside = z[r] == 0;
      if (inside) {
        z.resize(t);
        L.nu[y] = std::move(z);
      }
    }
    return L;
  }

  // Points spanned by the partial frame must correspond.
  bool span_matches(const Level& L) const {
    std::vector<std::uint64_t> keys;
    for (std::size_t y = 0; y < P2_.m(); ++y)
      if (L.nu[y]) {
        keys.push_back(span_key(P2_, y, images_, L.t));
        if (keys.size() > span_keys_[L.t].size()) return false;
      }
    std::sort(keys.begin(), keys.end());
    return keys == span_keys_[L.t];
  }

  bool basis_level(std::size_t t, Echelon& ech) {
    if (t == k_) return true;
    const std::size_t a = basis_[t];
    for (std::size_t y = 0; y < P2_.m(); ++y) {
      if (!spend()) return false;
      if (used_[y] || !compatible(a, y, t)) continue;
      if (!ech.try_add(P2_.points[y])) continue;
      used_[y] = true;
      images_.push_back(y);
      bool found = false;
      {
        const Level L = make_level();
        if (span_matches(L)) {
          Ratios r;
          r.parent.resize(t + 1);
          r.ratio.assign(t + 1, 1);
          for (std::size_t i = 0; i <= t; ++i) r.parent[i] = i;
          r.components = t + 1;
          found = diagonal_level(L, 0, r) && (t + 1 == k_ || basis_level(t + 1, ech));
        }
      }
      if (found) return true;
      images_.pop_back();
      used_[y] = false;
      ech.pop();
      if (out_of_budget_) return false;
      if (t == 0 && opt_.column_transitive) return false;
    }
    return false;
  }

  std::pair<std::size_t, FieldElement> find(const Ratios& r, std::size_t i) const {
    FieldElement acc = 1;
    while (r.parent[i] != i) {
      acc = F_.mul(acc, r.ratio[i]);
      i = r.parent[i];
    }
    return {i, acc};
  }

  // Is there a diagonal pinning consistent with every spanned point? At full
  // length this also fixes the map and runs the final multiset check.
  bool diagonal_level(const Level& L, std::size_t j, const Ratios& r) {
    const std::size_t t = L.t;
    const auto& order = order_[t];
    if (r.components == 1 || j == order.size()) return t == k_ ? final_check(L, r) : true;
    const std::size_t a = order[j];
    const auto& mu = mu_[a];
    for (std::size_t y = 0; y < P2_.m(); ++y) {
      if (!spend()) return false;
      if (used_[y] || !L.nu[y] || !compatible(a, y, t)) continue;
      const auto& v = *L.nu[y];
      bool ok = true;
      for (std::size_t i = 0; i < t && ok; ++i) ok = (mu[i] == 0) == (v[i] == 0);
      if (!ok) continue;
      // lambda_i proportional to v_i / mu_i on the support
      Ratios next = r;
      std::size_t first = t;
      FieldElement rho0 = 0;
      for (std::size_t i = 0; i < t && ok; ++i) {
        if (mu[i] == 0) continue;
        const FieldElement rho = F_.div(v[i], mu[i]);
        if (first == t) {
          first = i;
          rho0 = rho;
          continue;
        }
        const FieldElement want = F_.div(rho, rho0);
        auto [ri, xi] = find(next, i);
        auto [rf, xf] = find(next, first);
        if (ri == rf) {
          ok = F_.div(xi, xf) == want;
        } else {
          next.parent[ri] = rf;
          next.ratio[ri] = F_.div(F_.mul(want, xf), xi);
          --next.components;
        }
      }
      if (!ok || !propagate(L, next)) continue;
      used_[y] = true;
      const bool found = diagonal_level(L, j + 1, next);
      used_[y] = false;
      if (found) return true;
      if (out_of_budget_) return false;
    }
    return false;
  }

  // Spanned points whose support lies in one component have a forced image.
  bool propagate(const Level& L, const Ratios& r) const {
    const std::size_t t = L.t;
    std::vector<std::size_t> root(t);
    std::vector<FieldElement> lam(t);
    for (std::size_t i = 0; i < t; ++i) std::tie(root[i], lam[i]) = find(r, i);
    for (auto a : span_[t]) {
      const auto& mu = mu_[a];
      std::size_t rt = t;
      bool single = true;
      for (std::size_t i = 0; i < t && single; ++i) {
        if (mu[i] == 0) continue;
        if (rt == t) rt = root[i];
        single = root[i] == rt;
      }
      if (!single) continue;
      ProjectivePoint v(k_, 0);
      for (std::size_t i = 0; i < t; ++i) v[i] = F_.mul(mu[i], lam[i]);
      auto it = P2_.index.find(normalize_projective(frame_image(v, t), F_));
      if (it == P2_.index.end() || !compatible(a, it->second, t)) return false;
    }
    return true;
  }

  // sum_i v_i y_i
  ProjectivePoint frame_image(const ProjectivePoint& v, std::size_t t) const {
    ProjectivePoint out(k_, 0);
    for (std::size_t s = 0; s < t; ++s) {
      if (v[s] == 0) continue;
      const auto& y = P2_.points[images_[s]];
      for (std::size_t r = 0; r < k_; ++r) out[r] = F_.add(out[r], F_.mul(v[s], y[r]));
    }
    return out;
  }

  bool final_check(const Level&, const Ratios& r) {
    if (!spend()) return false;
    // A = Y D B^-1
    Matrix YD(k_, std::vector<FieldElement>(k_, 0));
    for (std::size_t s = 0; s < k_; ++s) {
      const FieldElement d = find(r, s).second;
      for (std::size_t i = 0; i < k_; ++i) YD[i][s] = F_.mul(P2_.points[images_[s]][i], d);
    }
    Matrix A(k_, std::vector<FieldElement>(k_, 0));
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < k_; ++j) {
        FieldElement s = 0;
        for (std::size_t l = 0; l < k_; ++l) s = F_.add(s, F_.mul(YD[i][l], Binv_[l][j]));
        A[i][j] = s;
      }
    std::vector<bool> hit(P2_.m(), false);
    for (std::size_t a = 0; a < P1_.m(); ++a) {
      const auto img = normalize_projective(mat_vec(A, P1_.points[a], F_), F_);
      auto it = P2_.index.find(img);
      if (it == P2_.index.end() || hit[it->second] ||
          P2_.columns[it->second].size() != P1_.columns[a].size())
        return false;
      hit[it->second] = true;
    }
    result_ = std::move(A);
    return true;
  }

  const CodeProfile& P1_;
  const CodeProfile& P2_;
  const FieldSpec& F_;
  EquivalenceOptions opt_;
  std::size_t k_;
  std::uint64_t evals_ = 0;
  bool out_of_budget_ = false;
  std::vector<std::size_t> basis_, images_;
  std::vector<bool> used_;
  Matrix Binv_;
  std::vector<ProjectivePoint> mu_;
  std::vector<std::vector<std::size_t>> span_, order_;
  std::vector<std::vector<std::uint64_t>> span_keys_;
  Matrix result_;
};

// Column-level witness from the linear map A.
inline MonomialWitness witness_from_map(const CodeProfile& P1, const CodeProfile& P2, const Matrix& A) {
  const FieldSpec& F = *P1.code.field;
  const std::size_t n = P1.code.n();
  MonomialWitness w;
  w.scale.assign(n, 0);
  w.perm.assign(n, 0);
  std::vector<std::size_t> next(P2.m(), 0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto img = mat_vec(A, column_of(P1.code, j), F);
    const std::size_t y = P2.index.at(normalize_projective(img, F));
    const std::size_t col = P2.columns[y][next[y]++];
    std::size_t r = 0;
    while (img[r] == 0) ++r;
    w.perm[j] = col;
    w.scale[j] = F.div(P2.code.G[r][col], img[r]);
  }
  return w;
}

}  // namespace detail

inline EquivalenceVerdict find_monomial_equivalence(const CodeProfile& P1, const CodeProfile& P2,
                                                    const EquivalenceOptions& opt = {}) {
  const LinearCode &C1 = P1.code, &C2 = P2.code;
  if (C1.field->q() != C2.field->q() || C1.n() != C2.n() || C1.k() != C2.k())
    throw Incomparable("codes differ in field, length or dimension");
  EquivalenceVerdict v;
  if (auto d = compare_signatures(invariant_signature(P1), invariant_signature(P2))) {
    v.kind = EquivalenceVerdict::Kind::Inequivalent;
    v.certificate = d->name;
    v.value1 = d->value1;
    v.value2 = d->value2;
    return v;
  }
  detail::MonomialSearch search(P1, P2, opt);
  auto A = search.run();
  v.evaluations = search.evaluations();
  if (A) {
    v.kind = EquivalenceVerdict::Kind::Equivalent;
    v.witness = detail::witness_from_map(P1, P2, *A);
    v.certificate = "witness";
  } else if (search.exhausted_budget()) {
    v.kind = EquivalenceVerdict::Kind::Unknown;
    v.certificate = "budget";
  } else {
    v.kind = EquivalenceVerdict::Kind::Inequivalent;
    v.certificate = "search_complete";
  }
  return v;
}

inline EquivalenceVerdict find_monomial_equivalence(const LinearCode& C1, const LinearCode& C2,
                                                    EquivalenceOptions opt = {}) {
  if (C1.field->q() != C2.field->q() || C1.n() != C2.n() || C1.k() != C2.k())
    throw Incomparable("codes differ in field, length or dimension");
  return find_monomial_equivalence(build_profile(C1, opt.enumeration_budget, opt.threads),
                                   build_profile(C2, opt.enumeration_budget, opt.threads), opt);
}

// Toric codes have a column-transitive automorphism group (the torus acts).
inline EquivalenceVerdict find_monomial_equivalence(const ToricCode& C1, const LinearCode& C2,
                                                    EquivalenceOptions opt = {}) {
  opt.column_transitive = true;
  return find_monomial_equivalence(static_cast<const LinearCode&>(C1), C2, opt);
}

inline EquivalenceVerdict find_monomial_equivalence(const LinearCode& C1, const ToricCode& C2,
                                                    EquivalenceOptions opt = {}) {
  opt.column_transitive = true;
  return find_monomial_equivalence(C1, static_cast<const LinearCode&>(C2), opt);
}

inline EquivalenceVerdict find_monomial_equivalence(const ToricCode& C1, const ToricCode& C2,
                                                    EquivalenceOptions opt = {}) {
  opt.column_transitive = true;
  return find_monomial_equivalence(static_cast<const LinearCode&>(C1), static_cast<const LinearCode&>(C2), opt);
}

}  // namespace toriclass
