#pragma once

// Toric codes and exhaustive weight enumeration.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "toriclass/errors.hpp"
#include "toriclass/gf.hpp"
#include "toriclass/laurent.hpp"
#include "toriclass/lattice.hpp"

namespace toriclass {

using Matrix = std::vector<std::vector<FieldElement>>;

// Generic linear code given by a k x n generator matrix.
struct LinearCode {
  Field field;
  Matrix G;

  std::size_t k() const { return G.size(); }
  std::size_t n() const { return G.empty() ? 0 : G[0].size(); }
};

struct ToricCode : LinearCode {
  LatticePolytope source;   // polygon as given
  LatticePolytope polygon;  // translated copy inside [0, q-2]^2
  LatticePoint offset;      // polygon = source + offset
  std::vector<LatticePoint> basis;
  std::vector<TorusPoint> columns;
};

inline std::int64_t fit_q_min(const LatticePolytope& P) {
  const LatticePoint lo = P.min_corner(), hi = P.max_corner();
  return std::max(hi.x - lo.x, hi.y - lo.y) + 2;
}

inline ToricCode build_code(const LatticePolytope& P, const Field& F) {
  if (P.empty()) throw InvalidParams("empty polygon");
  const std::int64_t q = F->q();
  const std::int64_t q_min = fit_q_min(P);
  if (q_min > q)
    throw DoesNotFit("polygon needs q >= " + std::to_string(q_min) + ", got q = " + std::to_string(q), q_min);
  ToricCode C;
  C.field = F;
  C.source = P;
  C.offset = LatticePoint{} - P.min_corner();
  C.polygon = P.translated(C.offset);
  C.basis = monomial_basis(C.polygon);
  C.columns = torus_points(*F);
  const std::uint32_t ord = F->q() - 1;
  C.G.assign(C.basis.size(), std::vector<FieldElement>(C.columns.size()));
  for (std::size_t r = 0; r < C.basis.size(); ++r) {
    const LatticePoint e = C.basis[r];
    for (std::uint32_t i = 0; i < ord; ++i)
      for (std::uint32_t j = 0; j < ord; ++j) C.G[r][i * ord + j] = F->exp(e.x * i + e.y * j);
  }
  return C;
}

inline std::vector<FieldElement> encode(const LinearCode& C, const std::vector<FieldElement>& msg) {
  if (msg.size() != C.k()) throw InvalidParams("message length " + std::to_string(msg.size()));
  const FieldSpec& F = *C.field;
  std::vector<FieldElement> w(C.n(), 0);
  for (std::size_t r = 0; r < C.k(); ++r) {
    if (msg[r] == 0) continue;
    for (std::size_t j = 0; j < C.n(); ++j) w[j] = F.add(w[j], F.mul(msg[r], C.G[r][j]));
  }
  return w;
}

inline std::int64_t weight(const std::vector<FieldElement>& w) {
  return static_cast<std::int64_t>(std::count_if(w.begin(), w.end(), [](FieldElement v) { return v != 0; }));
}

// Laurent polynomial whose evaluation is encode(C, msg).
inline LaurentPolynomial message_polynomial(const ToricCode& C, const std::vector<FieldElement>& msg) {
  return polynomial_from_coefficients(C.field, C.basis, msg);
}

struct WeightDistribution {
  std::vector<std::int64_t> A;  // A[i] = number of codewords of weight i

  std::int64_t total() const {
    std::int64_t s = 0;
    for (auto a : A) s += a;
    return s;
  }
  std::int64_t min_distance() const {
    for (std::size_t i = 1; i < A.size(); ++i)
      if (A[i] != 0) return static_cast<std::int64_t>(i);
    return 0;
  }
  std::int64_t at(std::int64_t i) const {
    return i >= 0 && i < static_cast<std::int64_t>(A.size()) ? A[static_cast<std::size_t>(i)] : 0;
  }
  friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;
};

// `W[label][q=7] = 7206*x^36 + ... + 1*x^0`, nonzero terms, descending.
inline std::string format_enumerator(const WeightDistribution& W, const std::string& label, std::int64_t q) {
  std::string s = "W[" + label + "][q=" + std::to_string(q) + "] =";
  bool first = true;
  for (std::size_t i = W.A.size(); i-- > 0;) {
    if (W.A[i] == 0) continue;
    s += first ? " " : " + ";
    s += std::to_string(W.A[i]) + "*x^" + std::to_string(i);
    first = false;
  }
  return s;
}

struct ParsedEnumerator {
  std::string label;
  std::int64_t q = 0;
  std::map<std::int64_t, std::int64_t> coefficients;  // weight -> count
};

// Inverse of format_enumerator; terms may appear in any order.
inline ParsedEnumerator parse_enumerator(const std::string& text) {
  static const std::regex head(R"(^\s*W\[([^\]]+)\]\[q=(\d+)\]\s*=(.*)$)");
  static const std::regex term(R"(^\s*(\d+)\s*\*\s*x\^(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, head)) throw ParseError("bad enumerator line: " + text);
  ParsedEnumerator e{m[1], std::stoll(m[2]), {}};
  std::stringstream rest(m[3].str());
  for (std::string t; std::getline(rest, t, '+');) {
    std::smatch tm;
    if (!std::regex_match(t, tm, term)) throw ParseError("bad enumerator term '" + t + "'");
    const std::int64_t w = std::stoll(tm[2]);
    if (e.coefficients.count(w)) throw ParseError("repeated weight " + tm[2].str());
    e.coefficients[w] = std::stoll(tm[1]);
  }
  return e;
}

constexpr double kDefaultBudget = 1e9;

// Projective messages: first nonzero coordinate 1.
inline double projective_count(std::int64_t q, std::size_t k) {
  double qk = 1;
  for (std::size_t i = 0; i < k; ++i) qk *= static_cast<double>(q);
  return (qk - 1) / static_cast<double>(q - 1);
}

inline double enumeration_cost(const LinearCode& C) {
  return projective_count(C.field->q(), C.k()) * static_cast<double>(C.n());
}

namespace detail {

// Walks every projective message of a code once. A task fixes the leading
// coordinate and the values of the top `fixed` free digits; the remaining
// digits run through a q-ary modular Gray code, so consecutive codewords
// differ by one scaled generator row.
class ProjectiveWalker {
 public:
  explicit ProjectiveWalker(const LinearCode& C) : C_(C), F_(*C.field), q_(F_.q()), n_(C.n()), k_(C.k()) {
    if (q_ <= 256) {
      add_.resize(static_cast<std::size_t>(q_) * q_);
      for (FieldElement a = 0; a < q_; ++a)
        for (FieldElement b = 0; b < q_; ++b) add_[a * q_ + b] = F_.add(a, b);
    }
    // delta[r][v] = (elem(v + 1) - elem(v)) * G[r], digit v encoded by its rep.
    delta_.resize(k_ * q_ * n_);
    for (std::size_t r = 0; r < k_; ++r)
      for (FieldElement v = 0; v < q_; ++v) {
        const FieldElement step = F_.sub((v + 1) % q_, v);
        for (std::size_t j = 0; j < n_; ++j) delta_[(r * q_ + v) * n_ + j] = F_.mul(step, C.G[r][j]);
      }
    for (std::size_t lead = 0; lead < k_; ++lead) {
      const std::size_t free = k_ - 1 - lead;
      const std::size_t fixed = std::min<std::size_t>(free, free > 3 ? 2 : 0);
      std::size_t combos = 1;
      for (std::size_t i = 0; i < fixed; ++i) combos *= q_;
      for (std::size_t c = 0; c < combos; ++c) tasks_.push_back({lead, fixed, c});
    }
  }

  std::size_t task_count() const { return tasks_.size(); }

  // visit(const FieldElement* codeword, std::int64_t weight, const FieldElement* msg)
  template <class Visit>
  void run_task(std::size_t t, Visit&& visit) const {
    const Task task = tasks_[t];
    std::vector<FieldElement> msg(k_, 0);
    msg[task.lead] = 1;
    const std::size_t free = k_ - 1 - task.lead;
    // Free coordinates are task.lead+1 .. k-1; the top `fixed` ones come from the task.
    std::size_t c = task.combo;
    for (std::size_t i = 0; i < task.fixed; ++i) {
      msg[k_ - 1 - i] = static_cast<FieldElement>(c % q_);
      c /= q_;
    }
    std::vector<FieldElement> w(n_, 0);
    for (std::size_t r = 0; r < k_; ++r) {
      if (msg[r] == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) w[j] = F_.add(w[j], F_.mul(msg[r], C_.G[r][j]));
    }
    std::int64_t wt = 0;
    for (auto v : w) wt += v != 0;
    visit(w.data(), wt, msg.data());

    const std::size_t gray = free - task.fixed;  // digits at rows lead+1 .. lead+gray
    if (gray == 0) return;
    std::vector<std::uint32_t> counter(gray, 0);
    const bool table = !add_.empty();
    for (;;) {
      std::size_t d = 0;
      while (d < gray && counter[d] == q_ - 1) counter[d++] = 0;
      if (d == gray) break;
      ++counter[d];
      const std::size_t row = task.lead + 1 + d;
      const FieldElement v = msg[row];
      const FieldElement* dl = &delta_[(row * q_ + v) * n_];
      msg[row] = (v + 1) % q_;
      if (table) {
        const FieldElement* at = add_.data();
        for (std::size_t j = 0; j < n_; ++j) {
          const FieldElement old = w[j];
          const FieldElement nw = at[old * q_ + dl[j]];
          wt += static_cast<std::int64_t>(nw != 0) - static_cast<std::int64_t>(old != 0);
          w[j] = nw;
        }
      } else {
        for (std::size_t j = 0; j < n_; ++j) {
          const FieldElement old = w[j];
          const FieldElement nw = F_.add(old, dl[j]);
          wt += static_cast<std::int64_t>(nw != 0) - static_cast<std::int64_t>(old != 0);
          w[j] = nw;
        }
      }
      visit(w.data(), wt, msg.data());
    }
  }

 private:
  struct Task {
    std::size_t lead, fixed, combo;
  };
  const LinearCode& C_;
  const FieldSpec& F_;
  std::uint32_t q_;
  std::size_t n_, k_;
  std::vector<FieldElement> add_;
  std::vector<FieldElement> delta_;
  std::vector<Task> tasks_;
};

inline void check_budget(const LinearCode& C, double budget) {
  const double cost = enumeration_cost(C);
  if (cost > budget)
    throw TooLarge("exhaustive enumeration needs " + std::to_string(cost) + " column operations", cost, budget);
}

inline unsigned resolve_threads(unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return threads;
}

}  // namespace detail

// Runs `make_visitor()`-produced visitors over disjoint task ranges on up to
// `threads` threads and returns them for merging, in task order of creation.
template <class MakeVisitor>
auto for_each_projective_codeword(const LinearCode& C, MakeVisitor&& make_visitor, unsigned threads = 1,
                                  double budget = kDefaultBudget) {
  detail::check_budget(C, budget);
  const detail::ProjectiveWalker walker(C);
  threads = std::min<unsigned>(detail::resolve_threads(threads), static_cast<unsigned>(walker.task_count()));
  using V = decltype(make_visitor());
  std::vector<V> visitors;
  for (unsigned t = 0; t < threads; ++t) visitors.push_back(make_visitor());
  std::atomic<std::size_t> next{0};
  auto work = [&](unsigned tid) {
    for (std::size_t t; (t = next.fetch_add(1)) < walker.task_count();) walker.run_task(t, visitors[tid]);
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  return visitors;
}

inline WeightDistribution weight_distribution(const LinearCode& C, double budget = kDefaultBudget,
                                              unsigned threads = 1) {
  struct Hist {
    std::vector<std::int64_t> A;
    void operator()(const FieldElement*, std::int64_t w, const FieldElement*) { ++A[static_cast<std::size_t>(w)]; }
  };
  const std::size_t n = C.n();
  auto parts = for_each_projective_codeword(C, [n] { return Hist{std::vector<std::int64_t>(n + 1, 0)}; }, threads,
                                            budget);
  WeightDistribution W{std::vector<std::int64_t>(n + 1, 0)};
  for (const auto& h : parts)
    for (std::size_t i = 0; i <= n; ++i) W.A[i] += h.A[i];
  const std::int64_t scalars = C.field->q() - 1;
  for (std::size_t i = 0; i <= n; ++i) W.A[i] *= scalars;
  W.A[0] += 1;
  return W;
}

inline std::int64_t min_distance(const LinearCode& C, double budget = kDefaultBudget, unsigned threads = 1) {
  return weight_distribution(C, budget, threads).min_distance();
}

struct SpecialCounts {
  std::int64_t n1 = 0, n2 = 0, n3 = 0;
  std::int64_t w1 = 0, w2 = 0, w3 = 0;  // the weights they count
};

inline SpecialCounts special_weight_counts(const WeightDistribution& W, std::int64_t q) {
  SpecialCounts s;
  const std::int64_t n = (q - 1) * (q - 1);
  s.w1 = n - (2 * q - 2);
  s.w2 = n - (2 * q - 3);
  s.w3 = n - (3 * q - 5);
  s.n1 = W.at(s.w1);
  s.n2 = W.at(s.w2);
  s.n3 = W.at(s.w3);
  return s;
}

inline SpecialCounts special_weight_counts(const ToricCode& C, double budget = kDefaultBudget, unsigned threads = 1) {
  return special_weight_counts(weight_distribution(C, budget, threads), C.field->q());
}

// Gauss-Jordan reduced row echelon form; zero rows dropped.
inline Matrix rref(Matrix M, const FieldSpec& F) {
  std::size_t row = 0;
  const std::size_t cols = M.empty() ? 0 : M[0].size();
  for (std::size_t c = 0; c < cols && row < M.size(); ++c) {
    std::size_t piv = row;
    while (piv < M.size() && M[piv][c] == 0) ++piv;
    if (piv == M.size()) continue;
    std::swap(M[row], M[piv]);
    const FieldElement inv = F.inv(M[row][c]);
    for (auto& v : M[row]) v = F.mul(v, inv);
    for (std::size_t r = 0; r < M.size(); ++r) {
      if (r == row || M[r][c] == 0) continue;
      const FieldElement f = M[r][c];
      for (std::size_t j = 0; j < cols; ++j) M[r][j] = F.sub(M[r][j], F.mul(f, M[row][j]));
    }
    ++row;
  }
  M.resize(row);
  return M;
}

inline std::size_t rank(const Matrix& M, const FieldSpec& F) { return rref(M, F).size(); }

}  // namespace toriclass
