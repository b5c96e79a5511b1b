#pragma once

// Parametrised polynomial families: a factored form in x, y and one-letter
// parameters, a parameter constraint, a side condition on q and a claimed
// member count and zero count.
//
// Form grammar (explicit '*'):
//   expr  := term (('+' | '-') term)*
//   term  := unary ('*' unary)*
//   unary := '-' unary | power
//   power := atom ('^' ['-'] int)?
//   atom  := int | 'x' | 'y' | letter | '(' expr ')'
// Negative powers are allowed on parameters (field inverse) and on single
// monomials.

#include <algorithm>
#include <array>
#include <map>
#include <cctype>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "toriclass/catalog.hpp"
#include "toriclass/code.hpp"
#include "toriclass/errors.hpp"
#include "toriclass/gf.hpp"
#include "toriclass/laurent.hpp"

namespace toriclass {

using Bindings = std::array<FieldElement, 26>;

inline FieldElement param(const Bindings& b, char name) { return b[static_cast<std::size_t>(name - 'a')]; }

// --- expression trees -------------------------------------------------------

class Expr {
 public:
  enum class Kind { Int, VarX, VarY, Param, Sum, Product, Power, Negate };

  static std::shared_ptr<const Expr> parse(const std::string& text) {
    Parser p{text, 0};
    auto e = p.expr();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return e;
  }

  // Parameter letters used, sorted.
  std::set<char> params() const {
    std::set<char> out;
    collect(out);
    return out;
  }

  LaurentPolynomial eval(const Field& F, const Bindings& b) const {
    const FieldSpec& f = *F;
    switch (kind_) {
      case Kind::Int: return LaurentPolynomial::constant(F, f.from_int(value_));
      case Kind::VarX: return LaurentPolynomial::monomial(F, 1, {1, 0});
      case Kind::VarY: return LaurentPolynomial::monomial(F, 1, {0, 1});
      case Kind::Param: return LaurentPolynomial::constant(F, param(b, name_));
      case Kind::Negate: return -kids_[0]->eval(F, b);
      case Kind::Sum: {
        LaurentPolynomial acc(F);
        for (std::size_t i = 0; i < kids_.size(); ++i) {
          auto v = kids_[i]->eval(F, b);
          acc = signs_[i] ? acc - v : acc + v;
        }
        return acc;
      }
      case Kind::Product: {
        auto acc = LaurentPolynomial::constant(F, 1);
        for (const auto& k : kids_) acc = acc * k->eval(F, b);
        return acc;
      }
      case Kind::Power: {
        auto base = kids_[0]->eval(F, b);
        if (value_ >= 0) return base.pow(static_cast<int>(value_));
        if (base.term_count() != 1)
          throw InvalidParams("negative power of a non-monomial");
        const auto& [e, c] = *base.terms().begin();
        const std::int64_t k = -value_;
        return LaurentPolynomial::monomial(F, f.pow(f.inv(c), k), LatticePoint{-e.x * k, -e.y * k});
      }
    }
    return LaurentPolynomial(F);
  }

 private:
  struct Parser {
    const std::string& s;
    std::size_t pos;

    [[noreturn]] void fail(const std::string& why) const {
      throw ParseError("form '" + s + "': " + why + " at " + std::to_string(pos));
    }
    void skip() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
      skip();
      if (pos < s.size() && s[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }
    std::shared_ptr<const Expr> expr() {
      auto sum = std::make_shared<Expr>(Kind::Sum);
      sum->kids_.push_back(term());
      sum->signs_.push_back(false);
      for (;;) {
        if (eat('+')) {
          sum->signs_.push_back(false);
        } else if (eat('-')) {
          sum->signs_.push_back(true);
        } else {
          break;
        }
        sum->kids_.push_back(term());
      }
      if (sum->kids_.size() == 1) return sum->kids_[0];
      return sum;
    }
    std::shared_ptr<const Expr> term() {
      auto prod = std::make_shared<Expr>(Kind::Product);
      prod->kids_.push_back(unary());
      while (eat('*')) prod->kids_.push_back(unary());
      if (prod->kids_.size() == 1) return prod->kids_[0];
      return prod;
    }
    std::shared_ptr<const Expr> unary() {
      if (eat('-')) {
        auto n = std::make_shared<Expr>(Kind::Negate);
        n->kids_.push_back(unary());
        return n;
      }
      return power();
    }
    std::shared_ptr<const Expr> power() {
      auto base = atom();
      if (!eat('^')) return base;
      skip();
      bool neg = false;
      if (pos < s.size() && s[pos] == '-') {
        neg = true;
        ++pos;
      }
      const std::int64_t v = integer();
      auto p = std::make_shared<Expr>(Kind::Power);
      p->kids_.push_back(base);
      p->value_ = neg ? -v : v;
      return p;
    }
    std::int64_t integer() {
      skip();
      if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) fail("expected integer");
      std::int64_t v = 0;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) v = v * 10 + (s[pos++] - '0');
      return v;
    }
    std::shared_ptr<const Expr> atom() {
      skip();
      if (pos >= s.size()) fail("unexpected end");
      const char c = s[pos];
      if (c == '(') {
        ++pos;
        auto e = expr();
        if (!eat(')')) fail("expected ')'");
        return e;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        auto n = std::make_shared<Expr>(Kind::Int);
        n->value_ = integer();
        return n;
      }
      if (c >= 'a' && c <= 'z') {
        ++pos;
        if (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) fail("identifiers are single letters");
        if (c == 'x') return std::make_shared<Expr>(Kind::VarX);
        if (c == 'y') return std::make_shared<Expr>(Kind::VarY);
        auto n = std::make_shared<Expr>(Kind::Param);
        n->name_ = c;
        return n;
      }
      fail(std::string("unexpected '") + c + "'");
    }
  };

 public:
  explicit Expr(Kind k) : kind_(k) {}

 private:
  void collect(std::set<char>& out) const {
    if (kind_ == Kind::Param) out.insert(name_);
    for (const auto& k : kids_) k->collect(out);
  }

  Kind kind_;
  std::int64_t value_ = 0;
  char name_ = 0;
  std::vector<std::shared_ptr<const Expr>> kids_;
  std::vector<bool> signs_;
};

// --- field predicates used by constraints ----------------------------------

inline int kth_root_count(const FieldSpec& F, FieldElement v, int k) {
  int n = 0;
  for (FieldElement i = 1; i < F.q(); ++i) n += F.pow(i, k) == v;
  return n;
}

inline bool is_square(const FieldSpec& F, FieldElement v) { return v == 0 || kth_root_count(F, v, 2) > 0; }

// c2 x^2 + c1 x + c0 has no root in F_q (c2 != 0).
inline bool quadratic_irreducible(const FieldSpec& F, FieldElement c2, FieldElement c1, FieldElement c0) {
  if (c2 == 0) return false;
  for (FieldElement x = 0; x < F.q(); ++x)
    if (F.add(F.add(F.mul(c2, F.mul(x, x)), F.mul(c1, x)), c0) == 0) return false;
  return true;
}

inline bool is_power_of_two(std::int64_t q) { return q > 0 && (q & (q - 1)) == 0; }

// --- family specifications --------------------------------------------------

enum class ParamDomain { Nonzero, Any };

enum class ZeroTarget { TwoQMinus2, TwoQMinus3, ThreeQMinus5 };

inline std::int64_t zero_target_value(ZeroTarget t, std::int64_t q) {
  switch (t) {
    case ZeroTarget::TwoQMinus2: return 2 * q - 2;
    case ZeroTarget::TwoQMinus3: return 2 * q - 3;
    default: return 3 * q - 5;
  }
}

inline std::string to_string(ZeroTarget t) {
  switch (t) {
    case ZeroTarget::TwoQMinus2: return "2q-2";
    case ZeroTarget::TwoQMinus3: return "2q-3";
    default: return "3q-5";
  }
}

using Constraint = std::function<bool(const FieldSpec&, const Bindings&)>;

struct FamilyBranch {
  std::string form;
  std::string constraint_text;
  Constraint constraint;                // null = no constraint
  std::vector<char> any_params;         // parameters ranging over all of F_q
  std::shared_ptr<const Expr> expr;     // parsed form
};

enum class FamilyKind {
  Explicit,        // members generated from the branches
  Subpolygon,      // all f in L(subpolygon) with the target zero count
  TotalLowerBound  // the code's own count is at least the claimed value
};

struct FamilySpec {
  std::string id;        // e.g. "t6.P7_10.5"
  std::string table;     // table label, e.g. "6"
  ClassId polygon;       // code the row belongs to
  FamilyKind kind = FamilyKind::Explicit;
  std::vector<FamilyBranch> branches;
  ZeroTarget target = ZeroTarget::TwoQMinus2;
  std::string side_text;                         // "" = every q
  std::function<bool(std::int64_t)> side;        // null = every q
  std::string count_text;
  std::function<std::int64_t(std::int64_t)> count;
  ClassId subpolygon{};                          // Subpolygon rows
  std::string notes;                             // interpretation applied to the printed row
  bool implied = false;                          // constraint or factor added to the printed row

  bool applies(std::int64_t q) const { return !side || side(q); }
  std::string name() const {
    if (kind == FamilyKind::Subpolygon) return "all of L(" + to_string(subpolygon) + ")";
    if (kind == FamilyKind::TotalLowerBound) return "total";
    std::string s;
    for (const auto& b : branches) s += (s.empty() ? "" : " | ") + b.form;
    return s;
  }
};

// Every parameter assignment of a branch satisfying its domains and constraint.
template <class Visit>
void for_each_binding(const FieldSpec& F, const FamilyBranch& br, Visit&& visit) {
  const auto ps = br.expr->params();
  std::vector<char> names(ps.begin(), ps.end());
  std::vector<FieldElement> lo(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    const bool any = std::find(br.any_params.begin(), br.any_params.end(), names[i]) != br.any_params.end();
    lo[i] = any ? 0 : 1;
  }
  Bindings b{};
  for (std::size_t i = 0; i < names.size(); ++i) b[static_cast<std::size_t>(names[i] - 'a')] = lo[i];
  for (;;) {
    if (!br.constraint || br.constraint(F, b)) visit(static_cast<const Bindings&>(b));
    std::size_t i = 0;
    for (; i < names.size(); ++i) {
      auto& v = b[static_cast<std::size_t>(names[i] - 'a')];
      if (++v < F.q()) break;
      v = lo[i];
    }
    if (i == names.size()) break;
  }
}

inline LaurentPolynomial instantiate_family(const FamilySpec& spec, std::size_t branch, const Field& F,
                                            const Bindings& b) {
  if (spec.kind != FamilyKind::Explicit) throw InvalidParams(spec.id + " has no explicit form");
  if (branch >= spec.branches.size()) throw InvalidParams("branch index out of range");
  if (!spec.applies(F->q())) throw InvalidParams(spec.id + " does not apply at q = " + std::to_string(F->q()));
  const auto& br = spec.branches[branch];
  for (char c : br.expr->params()) {
    const bool any = std::find(br.any_params.begin(), br.any_params.end(), c) != br.any_params.end();
    const FieldElement v = param(b, c);
    if (v >= F->q() || (!any && v == 0))
      throw InvalidParams(std::string("parameter ") + c + " outside its domain");
  }
  if (br.constraint && !br.constraint(*F, b)) throw InvalidParams(spec.id + ": " + br.constraint_text);
  return br.expr->eval(F, b);
}

// Distinct expanded members (sorted). Empty when the side condition fails.
inline std::vector<LaurentPolynomial> enumerate_family(const FamilySpec& spec, const Field& F) {
  std::set<LaurentPolynomial> out;
  if (spec.kind != FamilyKind::Explicit || !spec.applies(F->q())) return {};
  for (const auto& br : spec.branches)
    for_each_binding(*F, br, [&](const Bindings& b) {
      auto f = br.expr->eval(F, b);
      if (!f.is_zero()) out.insert(std::move(f));
    });
  return {out.begin(), out.end()};
}

namespace detail {

inline std::int64_t binom2(std::int64_t n) { return n * (n - 1) / 2; }
// C(q-1, 2) (q-1)
inline std::int64_t pair_count(std::int64_t q) { return binom2(q - 1) * (q - 1); }
inline std::int64_t cube(std::int64_t q) { return (q - 1) * (q - 1) * (q - 1); }

inline Constraint distinct(char u, char v) {
  return [u, v](const FieldSpec&, const Bindings& b) { return param(b, u) != param(b, v); };
}

inline Constraint all_of(std::vector<Constraint> cs) {
  return [cs = std::move(cs)](const FieldSpec& F, const Bindings& b) {
    for (const auto& c : cs)
      if (!c(F, b)) return false;
    return true;
  };
}

// u * v has exactly / no k-th roots
inline Constraint product_roots(char u, char v, int k, bool exactly_one) {
  return [=](const FieldSpec& F, const Bindings& b) {
    const int n = kth_root_count(F, F.mul(param(b, u), param(b, v)), k);
    return exactly_one ? n == 1 : n == 0;
  };
}

// u / v is not a square
inline Constraint ratio_nonsquare(char u, char v) {
  return [=](const FieldSpec& F, const Bindings& b) { return !is_square(F, F.div(param(b, u), param(b, v))); };
}

inline Constraint product_nonsquare(char u, char v) {
  return [=](const FieldSpec& F, const Bindings& b) { return !is_square(F, F.mul(param(b, u), param(b, v))); };
}

// u != v^-1
inline Constraint not_inverse(char u, char v) {
  return [=](const FieldSpec& F, const Bindings& b) { return F.mul(param(b, u), param(b, v)) != 1; };
}

class Builder {
 public:
  Builder& row(std::string id, std::string table, int poly, ZeroTarget t) {
    specs_.emplace_back();
    auto& s = specs_.back();
    s.id = std::move(id);
    s.table = std::move(table);
    s.polygon = {poly == 62 ? 6 : 7, poly == 62 ? 2 : poly};
    s.target = t;
    return *this;
  }
  Builder& branch(std::string form, std::string ctext = "", Constraint c = nullptr, std::vector<char> any = {}) {
    FamilyBranch b;
    b.expr = Expr::parse(form);
    b.form = std::move(form);
    b.constraint_text = std::move(ctext);
    b.constraint = std::move(c);
    b.any_params = std::move(any);
    specs_.back().branches.push_back(std::move(b));
    return *this;
  }
  Builder& count(std::string text, std::function<std::int64_t(std::int64_t)> f) {
    specs_.back().count_text = std::move(text);
    specs_.back().count = std::move(f);
    return *this;
  }
  Builder& side(std::string text, std::function<bool(std::int64_t)> f) {
    specs_.back().side_text = std::move(text);
    specs_.back().side = std::move(f);
    return *this;
  }
  Builder& implied(std::string note) {
    specs_.back().implied = true;
    specs_.back().notes = std::move(note);
    return *this;
  }
  Builder& note(std::string n) {
    specs_.back().notes = std::move(n);
    return *this;
  }
  Builder& subpolygon(ClassId id) {
    specs_.back().kind = FamilyKind::Subpolygon;
    specs_.back().subpolygon = id;
    return *this;
  }
  Builder& total_lower_bound() {
    specs_.back().kind = FamilyKind::TotalLowerBound;
    specs_.back().subpolygon = specs_.back().polygon;
    return *this;
  }
  std::vector<FamilySpec> take() { return std::move(specs_); }
  FamilySpec& last() { return specs_.back(); }

 private:
  std::vector<FamilySpec> specs_;
};

struct BaseForm {
  const char* form;
  bool distinct_ab;
};

// Two-distinct-root univariate families of degree span <= 4.
inline void add_p62_branches(Builder& B, const std::string& prefix) {
  const std::vector<std::string> forms = {"c*(x-a)*(x-b)",   "c*x*(x-a)*(x-b)",       "c*x^2*(x-a)*(x-b)",
                                          "c*(x-a)^2*(x-b)", "c*(x-a)^3*(x-b)",       "c*(x-a)^2*(x-b)^2",
                                          "c*x*(x-a)^2*(x-b)"};
  for (const auto& f : forms) B.branch(prefix + f, "a != b", distinct('a', 'b'));
  B.branch(prefix + "l*(x-c)*(x-d)*(x^2+a*x+b)", "c != d, x^2+ax+b irreducible, a in F_q",
           all_of({distinct('c', 'd'),
                   [](const FieldSpec& F, const Bindings& b) {
                     return quadratic_irreducible(F, 1, param(b, 'a'), param(b, 'b'));
                   }}),
           {'a'});
}

}  // namespace detail

// Every printed family row, with the interpretations noted in `notes`.
inline std::vector<FamilySpec> family_catalog() {
  using detail::Builder;
  using detail::cube;
  using detail::distinct;
  using detail::pair_count;
  using detail::binom2;
  const auto Z2 = ZeroTarget::TwoQMinus2, Z3 = ZeroTarget::TwoQMinus3, Z5 = ZeroTarget::ThreeQMinus5;
  auto C2 = [](std::int64_t q) { return pair_count(q); };
  auto C2x2 = [](std::int64_t q) { return 2 * pair_count(q); };
  auto Q3 = [](std::int64_t q) { return cube(q); };
  auto half_Q3 = [](std::int64_t q) { return cube(q) / 2; };
  auto odd_q = [](std::int64_t q) { return (q - 1) % 2 == 0; };
  auto even_q = [](std::int64_t q) { return (q - 1) % 2 != 0; };
  auto not_pow2 = [](std::int64_t q) { return !is_power_of_two(q); };
  auto pow2 = [](std::int64_t q) { return is_power_of_two(q); };
  auto p62_total = [](std::int64_t q) { return (10 + binom2(q)) * pair_count(q); };
  auto p63_count = [](std::int64_t q) { return 6 * cube(q) + binom2(q) * cube(q); };
  const auto ab = distinct('a', 'b');

  Builder B;
  // n1 of the P6_2 code
  {
    const char* forms[] = {"c*(x-a)*(x-b)",   "c*x*(x-a)*(x-b)",   "c*x^2*(x-a)*(x-b)", "c*(x-a)^2*(x-b)",
                           "c*(x-a)^3*(x-b)", "c*(x-a)^2*(x-b)^2", "c*x*(x-a)^2*(x-b)"};
    const int mult[] = {1, 1, 1, 2, 2, 1, 2};
    for (int i = 0; i < 7; ++i) {
      B.row("t35.P6_2." + std::to_string(i + 1), "3.5", 62, Z2).branch(forms[i], "a != b", ab);
      const int m = mult[i];
      B.count(m == 1 ? "C(q-1,2)(q-1)" : "2C(q-1,2)(q-1)", [m](std::int64_t q) { return m * pair_count(q); });
    }
    B.row("t35.P6_2.8", "3.5", 62, Z2)
        .branch("l*(x-c)*(x-d)*(x^2+a*x+b)", "c != d, x^2+ax+b irreducible, a in F_q",
                detail::all_of({distinct('c', 'd'),
                                [](const FieldSpec& F, const Bindings& b) {
                                  return quadratic_irreducible(F, 1, param(b, 'a'), param(b, 'b'));
                                }}),
                {'a'})
        .count("C(q,2)C(q-1,2)(q-1)", [](std::int64_t q) { return binom2(q) * pair_count(q); });
  }

  // n1 for P7_14..18, 22
  for (int p : {14, 15, 16, 17, 18, 22}) {
    const std::string prefix = p == 22 ? "" : "x^-1*";
    B.row("t3.P7_" + std::to_string(p) + ".1", "3", p, Z2);
    detail::add_p62_branches(B, prefix);
    B.count("(10+C(q,2))C(q-1,2)(q-1)", p62_total);
    if (p == 14) {
      B.row("t3.P7_14.2", "3", 14, Z2)
          .branch("c*x^-1*(y-a)*(x^4*y^-1-b)", "ab not a 4th power", detail::product_roots('a', 'b', 4, false))
          .side("4 | q-1", [](std::int64_t q) { return (q - 1) % 4 == 0; })
          .count("(3/4)(q-1)^3", [](std::int64_t q) { return 3 * cube(q) / 4; });
      B.row("t3.P7_14.3", "3", 14, Z2)
          .branch("c*(x^-1*y-a)*(x^3*y^-1-b)", "ab not a square", detail::product_nonsquare('a', 'b'))
          .side("2 | q-1", odd_q)
          .count("(1/2)(q-1)^3", half_Q3);
      B.row("t3.P7_14.4", "3", 14, Z2)
          .branch("c*x*(x^2*y^-1-a)*(x^-2*y-b)", "a != b^-1", detail::not_inverse('a', 'b'))
          .count("C(q-1,2)(q-1)", C2);
    }
    if (p == 15)
      B.row("t3.P7_15.2", "3", 15, Z2)
          .branch("c*x^-1*(y-a)*(x^3*y^-1-b)", "ab not a cube", detail::product_roots('a', 'b', 3, false))
          .side("3 | q-1", [](std::int64_t q) { return (q - 1) % 3 == 0; })
          .count("(2/3)(q-1)^3", [](std::int64_t q) { return 2 * cube(q) / 3; });
    if (p == 16) {
      B.row("t3.P7_16.2", "3", 16, Z2)
          .branch("c*x^-1*(y-a)*(x^2*y^-1-b)", "ab not a square", detail::product_nonsquare('a', 'b'))
          .side("2 | q-1", odd_q)
          .count("(1/2)(q-1)^3", half_Q3);
      B.row("t3.P7_16.3", "3", 16, Z2)
          .branch("c*(x*y^-1-a)*(x^-1*y-b)", "a != b^-1", detail::not_inverse('a', 'b'))
          .count("C(q-1,2)(q-1)", C2);
    }
    if (p == 18)
      B.row("t3.P7_18.2", "3", 18, Z2).branch("c*x^-1*y^-1*(y-a)*(y-b)", "a != b", ab).count("C(q-1,2)(q-1)", C2);
  }

  // n2 for P7_3, 14..18, 22
  B.row("t4.P7_3.1", "4", 3, Z3).subpolygon({6, 3}).count("6(q-1)^3 + C(q,2)(q-1)^3", p63_count);
  B.row("t4.P7_14.1", "4", 14, Z3)
      .branch("c*x^-1*(y-a)*(x^4*y^-1-b)", "ab = i^4 for exactly one i", detail::product_roots('a', 'b', 4, true))
      .side("4 does not divide q-1", [](std::int64_t q) { return (q - 1) % 4 != 0; })
      .count("(q-1)^3", Q3);
  B.row("t4.P7_14.2", "4", 14, Z3)
      .branch("c*(x^-1*y-a)*(x^3*y^-1-b)", "ab = i^2 for exactly one i", detail::product_roots('a', 'b', 2, true))
      .side("2 does not divide q-1", even_q)
      .count("(q-1)^3", Q3);
  B.row("t4.P7_15.1", "4", 15, Z3)
      .branch("c*x^-1*(y-a)*(x^3*y^-1-b)", "ab = i^3 for exactly one i", detail::product_roots('a', 'b', 3, true))
      .side("3 does not divide q-1", [](std::int64_t q) { return (q - 1) % 3 != 0; })
      .count("(q-1)^3", Q3);
  B.row("t4.P7_15.2", "4", 15, Z3)
      .branch("c*(x^2*y^-1-a)*(x^-1*y-b)")
      .count("(q-1)^3", Q3)
      .note("exponent printed as y^{y-1}, read as y^-1");
  B.row("t4.P7_16.1", "4", 16, Z3)
      .branch("c*x^-1*(y-a)*(x^2*y^-1-b)", "ab = i^2 for exactly one i", detail::product_roots('a', 'b', 2, true))
      .side("2 does not divide q-1", even_q)
      .count("(q-1)^3", Q3);
  B.row("t4.P7_17.1", "4", 17, Z3).branch("c*x^-1*(y-a)*(x*y^-1-b)").count("(q-1)^3", Q3);
  for (int p : {18, 22})
    B.row("t4.P7_" + std::to_string(p) + ".1", "4", p, Z3)
        .subpolygon({7, p})
        .side("q >= 66", [](std::int64_t q) { return q >= 66; })
        .count("0", [](std::int64_t) { return 0; });

  // n3 for P7_4, 8..11, 19
  auto pair_sq = [](std::int64_t q) { return binom2(q - 1) * (q - 1) * (q - 1); };
  B.row("t5.P7_4.1", "5", 4, Z5).branch("e*(y-d)*(x-a)*(x-c)", "a != c", distinct('a', 'c')).count(
      "C(q-1,2)(q-1)^2", pair_sq);
  B.row("t5.P7_4.2", "5", 4, Z5).branch("e*(y-b*x)*(x-a)*(x-c)", "a != c", distinct('a', 'c')).count(
      "C(q-1,2)(q-1)^2", pair_sq);
  B.row("t5.P7_4.3", "5", 4, Z5)
      .branch("e*(y-b*x-d)*(x-a)*(x-c)", "a != c, -d/b in {a, c}",
              detail::all_of({distinct('a', 'c'),
                              [](const FieldSpec& F, const Bindings& b) {
                                const FieldElement r = F.neg(F.div(param(b, 'd'), param(b, 'b')));
                                return r == param(b, 'a') || r == param(b, 'c');
                              }}))
      .count("2C(q-1,2)(q-1)^2", [pair_sq](std::int64_t q) { return 2 * pair_sq(q); })
      .implied("line through one of the two vertical-line zeros on the x-axis trace: -d/b in {a, c}");
  for (int p : {8, 9, 10, 11, 19})
    B.row("t5.P7_" + std::to_string(p) + ".1", "5", p, Z5)
        .subpolygon({7, p})
        .side("q >= 11", [](std::int64_t q) { return q >= 11; })
        .count("0", [](std::int64_t) { return 0; });

  // n1 for P7_8..11, 19
  auto simple = [&](const std::string& id, const std::string& table, int poly, ZeroTarget t, const std::string& form,
                    int mult) {
    B.row(id, table, poly, t).branch(form, "a != b", distinct('a', 'b'));
    if (mult == 1) {
      B.count("C(q-1,2)(q-1)", C2);
    } else {
      B.count("2C(q-1,2)(q-1)", C2x2);
    }
  };
  simple("t6.P7_8.1", "6", 8, Z2, "c*(x-a)*(x-b)", 1);
  B.implied("a != b");
  simple("t6.P7_8.2", "6", 8, Z2, "c*x*(x-a)*(x-b)", 1);
  simple("t6.P7_8.3", "6", 8, Z2, "c*(x-a)^2*(x-b)", 2);
  simple("t6.P7_8.4", "6", 8, Z2, "c*x*(y-a)*(y-b)", 1);
  simple("t6.P7_8.5", "6", 8, Z2, "c*x*y^2*(x*y^-1-b)*(x*y^-1-a)", 1);
  simple("t6.P7_9.1", "6", 9, Z2, "c*x^-1*(x-a)*(x-b)", 1);
  simple("t6.P7_9.2", "6", 9, Z2, "c*(x-a)*(x-b)", 1);
  simple("t6.P7_9.3", "6", 9, Z2, "c*x^-1*(y-a)*(y-b)", 1);
  simple("t6.P7_9.4", "6", 9, Z2, "c*x^-1*(x-a)^2*(x-b)", 2);
  simple("t6.P7_10.1", "6", 10, Z2, "c*x^-1*(x-a)^2*(x-b)", 2);
  simple("t6.P7_10.2", "6", 10, Z2, "c*x^-1*(x-a)*(x-b)", 1);
  simple("t6.P7_10.3", "6", 10, Z2, "c*(x-a)*(x-b)", 1);
  simple("t6.P7_10.4", "6", 10, Z2, "c*x^-1*y^-1*(x-a*y)*(x-b*y)", 1);
  B.row("t6.P7_10.5", "6", 10, Z2)
      .branch("c*(x^-1*y-a*x)*(y^-1-b)", "b/a not a square", detail::ratio_nonsquare('b', 'a'))
      .side("q != 2^m", not_pow2)
      .count("(1/2)(q-1)^3", half_Q3)
      .note("b a^-1 != alpha^(2m) read as: b/a is not a square");
  simple("t6.P7_11.1", "6", 11, Z2, "c*x*(x-a)^2*(x-b)", 2);
  simple("t6.P7_11.2", "6", 11, Z2, "c*x^-1*(x-a)*(x-b)", 1);
  simple("t6.P7_11.3", "6", 11, Z2, "c*(x-a)*(x-b)", 1);
  simple("t6.P7_11.4", "6", 11, Z2, "c*x^-1*y^-1*(x-a*y)*(x-b*y)", 1);
  B.row("t6.P7_11.5", "6", 11, Z2)
      .branch("c*(x^-1*y-a*x)*(y^-1-b)", "b/a not a square", detail::ratio_nonsquare('b', 'a'))
      .side("q != 2^m", not_pow2)
      .count("(1/2)(q-1)^3", half_Q3)
      .implied("b/a not a square, as in the same form for P7_10");
  B.row("t6.P7_11.6", "6", 11, Z2)
      .branch("c*y^-1*(y-a)*(x^3-b*y)", "ab not a cube", detail::product_roots('a', 'b', 3, false))
      .side("3 | q-1", [](std::int64_t q) { return (q - 1) % 3 == 0; })
      .count("(1/2)(q-1)^3", half_Q3);
  simple("t6.P7_19.1", "6", 19, Z2, "c*x*(x-a)^2*(x-b)", 2);
  simple("t6.P7_19.2", "6", 19, Z2, "c*(x-a)*(x-b)", 1);
  simple("t6.P7_19.3", "6", 19, Z2, "c*x*(x-a)*(x-b)", 1);
  simple("t6.P7_19.4", "6", 19, Z2, "c*x*(y-a)*(y-b)", 1);

  // n2 for P7_8..11, 19
  for (int p : {8, 9, 10, 11, 19})
    B.row("t7.P7_" + std::to_string(p) + ".1", "7", p, Z3).subpolygon({6, 3}).count("6(q-1)^3 + C(q,2)(q-1)^3",
                                                                                    p63_count);
  auto plain3 = [&](const std::string& id, int poly, const std::string& form) {
    B.row(id, "7", poly, Z3).branch(form).count("(q-1)^3", Q3);
  };
  plain3("t7.P7_8.2", 8, "d*x*(y+c*b^-1)*(x-b*y-c)");
  plain3("t7.P7_8.3", 8, "c*x*(y-a)*(x-b*y)");
  plain3("t7.P7_8.4", 8, "d*x*(x+c*b^-1*y)*(x-b*y-c)");
  plain3("t7.P7_9.2", 9, "c*(y^-1-a)*(y-b*x)");
  plain3("t7.P7_9.3", 9, "d*(y^-1+c*b^-1)*(y-b*x-c)");
  plain3("t7.P7_10.2", 10, "d*(x*y^-1+c*b^-1)*(x-b*y-c)");
  plain3("t7.P7_10.3", 10, "c*(x*y^-1-a)*(y-b)");
  plain3("t7.P7_10.4", 10, "c*(x^2*y^-1-a)*(y-b)");
  B.side("q = 2^m", pow2);
  plain3("t7.P7_11.2", 11, "d*(x*y^-1+c*b^-1)*(y-b*x-c*x^2)");
  plain3("t7.P7_11.3", 11, "c*(x*y^-1-a)*(y-b*x^2)");
  plain3("t7.P7_11.4", 11, "d*(x^2*y^-1+c*b^-1)*(x-b*y-c)");
  plain3("t7.P7_11.5", 11, "c*(x^2*y^-1-a)*(y-b)");
  B.side("q = 2^m", pow2);
  plain3("t7.P7_11.6", 11, "c*(x^3*y^-1-a)*(y-b)");
  B.side("3 does not divide q-1", [](std::int64_t q) { return (q - 1) % 3 != 0; });

  // n1 for P7_5, 6
  simple("t8.P7_5.1", "8", 5, Z2, "c*(x-a)*(x-b)", 1);
  B.implied("a != b");
  simple("t8.P7_5.2", "8", 5, Z2, "c*(y-a)*(y-b)", 1);
  B.implied("a != b");
  simple("t8.P7_5.3", "8", 5, Z2, "c*y*(x-a)*(x-b)", 1);
  B.implied("a != b");
  simple("t8.P7_5.4", "8", 5, Z2, "c*(x-a*y)*(x-y*b)", 1);
  B.implied("a != b");
  B.row("t8.P7_5.5", "8", 5, Z2)
      .branch("c*(x^-1*y-a*x)*(b-y)", "b/a not a square", detail::ratio_nonsquare('b', 'a'))
      .side("q != 2^m", not_pow2)
      .count("(1/2)(q-1)^3", half_Q3)
      .implied("b/a not a square");
  auto irr_pair = [](bool shift_linear) {
    return [shift_linear](const FieldSpec& F, const Bindings& b) {
      const FieldElement a = param(b, 'a'), bb = param(b, 'b'), c = param(b, 'c'), e = param(b, 'e');
      if (!quadratic_irreducible(F, c, bb, a)) return false;
      return shift_linear ? quadratic_irreducible(F, c, F.add(bb, e), a) : quadratic_irreducible(F, c, bb, F.add(a, e));
    };
  };
  B.row("t8.P7_5.6", "8", 5, Z2)
      .branch("l*(a+b*x+c*x^2+y)*(y-e)", "a+bx+cx^2 and a+e+bx+cx^2 irreducible, b in F_q", irr_pair(false), {'b'})
      .side("q != 2^m", not_pow2)
      .count("(1/4)q(q-1)^4", [](std::int64_t q) { return q * (q - 1) * cube(q) / 4; });
  B.row("t8.P7_5.7", "8", 5, Z2)
      .branch("l*(a+b*x+c*x^2+y)*(y-e)", "a+bx+cx^2 and a+e+bx+cx^2 irreducible", irr_pair(false))
      .side("q = 2^m", pow2)
      .count("(q/2)(q/2-1)(q-1)^3", [](std::int64_t q) { return (q / 2) * (q / 2 - 1) * cube(q); });
  simple("t8.P7_6.1", "8", 6, Z2, "c*(x-a)*(x-b)", 1);
  B.implied("a != b");
  simple("t8.P7_6.2", "8", 6, Z2, "c*x*(y-a)*(y-b)", 1);
  B.implied("a != b");
  simple("t8.P7_6.3", "8", 6, Z2, "c*y*(y-a)*(y-b)", 1);
  B.implied("a != b");
  B.row("t8.P7_6.4", "8", 6, Z2)
      .branch("c*(y-a*x)*(b-x*y)", "b/a not a square", detail::ratio_nonsquare('b', 'a'))
      .side("q != 2^m", not_pow2)
      .count("(1/2)(q-1)^3", half_Q3)
      .implied("scalar c added; b/a not a square");
  B.row("t8.P7_6.5", "8", 6, Z2)
      .branch("l*(a+b*x+c*x^2+x*y)*(y-e)", "a+bx+cx^2 and a+(b+e)x+cx^2 irreducible, b in F_q", irr_pair(true),
              {'b'})
      .side("q != 2^m", not_pow2)
      .count("(1/4)(q-1)^5", [](std::int64_t q) { return cube(q) * (q - 1) * (q - 1) / 4; });
  B.row("t8.P7_6.6", "8", 6, Z2)
      .branch("l*(a+b*x+c*x^2+x*y)*(y-e)", "a+bx+cx^2 and a+(b+e)x+cx^2 irreducible", irr_pair(true))
      .side("q = 2^m", pow2)
      .count("(1/4)q^2(q-1)^3", [](std::int64_t q) { return q * q * cube(q) / 4; });

  // n1 for P7_13, 20, 21
  simple("t9.P7_20.1", "9", 20, Z2, "c*(y-a)*(y-b)", 1);
  simple("t9.P7_20.2", "9", 20, Z2, "c*(x-a)*(x-b)", 1);
  simple("t9.P7_20.3", "9", 20, Z2, "c*(x-a*y)*(x-b*y)", 1);
  simple("t9.P7_20.4", "9", 20, Z2, "c*x^-1*y^-1*(x*y-a)*(x*y-b)", 1);
  simple("t9.P7_21.1", "9", 21, Z2, "c*x^-1*(x*y-a*y^2)*(x*y-b*y^2)", 1);
  simple("t9.P7_21.2", "9", 21, Z2, "c*(x-a)*(x-b)", 1);
  simple("t9.P7_21.3", "9", 21, Z2, "c*y^-1*(y-a)*(y-b)", 1);
  simple("t9.P7_13.1", "9", 13, Z2, "c*y*(x*y^-1-a)*(x*y^-1-b)", 1);
  simple("t9.P7_13.2", "9", 13, Z2, "c*x*y^-1*(y-a)*(y-b)", 1);
  simple("t9.P7_13.3", "9", 13, Z2, "c*x^-1*(x-a)*(x-b)", 1);
  B.row("t9.P7_13.4", "9", 13, Z2).branch("c^-1*(x+a)*(x^2*y^-1+b)").count("(q-1)^3", Q3);
  B.row("t9.P7_13.5", "9", 13, Z2)
      .branch("c*(x-a)*(y-b*x*y^-1)", "ab not a square", detail::product_nonsquare('a', 'b'))
      .side("q != 2^m", not_pow2)
      .count("(1/2)(q-1)^3", half_Q3)
      .implied("ab not a square");
  B.row("t9.P7_13.total", "9", 13, Z2)
      .total_lower_bound()
      .count("q != 2^m: 3C(q-1,2)(q-1) + (3/2)(q-1)^3; q = 2^m: 3C(q-1,2)(q-1) + (q-1)^3", [](std::int64_t q) {
        return 3 * pair_count(q) + (is_power_of_two(q) ? cube(q) : 3 * cube(q) / 2);
      });
  return B.take();
}

// --- audits -----------------------------------------------------------------

struct FamilyAudit {
  std::string family_id;
  std::string family_name;
  ClassId polygon;
  std::int64_t q = 0;
  bool applies = false;          // side condition holds and the polygon fits
  std::string skip_reason;
  std::int64_t expected_count = 0;
  std::int64_t actual_count = 0;
  std::int64_t expected_zeros = 0;
  std::int64_t zero_violations = 0;
  bool contained = true;         // union of supports embeds in the polygon
  bool lower_bound = false;

  bool passed() const {
    if (!applies) return true;
    const bool count_ok = lower_bound ? actual_count >= expected_count : actual_count == expected_count;
    return count_ok && zero_violations == 0 && contained;
  }
};

namespace detail {

// Does some unimodular image of Q lie inside P?
inline bool embeds_in(const LatticePolytope& Q, const LatticePolytope& P) {
  if (Q.empty()) return true;
  const auto target = canonical(Q);
  for (const auto& S : sub_polytopes(P))
    if (S.size() == target.size() && canonical(S) == target) return true;
  return false;
}

inline std::int64_t count_with_zeros(const WeightDistribution& W, std::int64_t n, std::int64_t zeros) {
  return W.at(n - zeros);
}

}  // namespace detail

class FamilyAuditor {
 public:
  explicit FamilyAuditor(double budget = kDefaultBudget, unsigned threads = 1) : budget_(budget), threads_(threads) {}

  FamilyAudit audit(const FamilySpec& spec, const Field& F) {
    FamilyAudit a;
    a.family_id = spec.id;
    a.family_name = spec.name();
    a.polygon = spec.polygon;
    a.q = F->q();
    a.expected_zeros = zero_target_value(spec.target, a.q);
    a.lower_bound = spec.kind == FamilyKind::TotalLowerBound;
    const LatticePolytope& P = get_polygon(spec.polygon);
    if (!spec.applies(a.q)) {
      a.skip_reason = "side condition " + spec.side_text;
      return a;
    }
    if (fit_q_min(P) > a.q) {
      a.skip_reason = "polygon needs q >= " + std::to_string(fit_q_min(P));
      return a;
    }
    a.applies = true;
    a.expected_count = spec.count(a.q);
    const std::int64_t n = (a.q - 1) * (a.q - 1);
    if (spec.kind != FamilyKind::Explicit) {
      const LatticePolytope& S = get_polygon(spec.subpolygon);
      a.contained = detail::embeds_in(S, P);
      a.actual_count = detail::count_with_zeros(distribution(spec.subpolygon, F), n, a.expected_zeros);
      return a;
    }
    std::vector<LatticePoint> support;
    for (const auto& f : enumerate_family(spec, F)) {
      ++a.actual_count;
      if (count_torus_zeros(f) != a.expected_zeros) ++a.zero_violations;
      for (const auto& [e, c] : f.terms()) support.push_back(e);
    }
    if (!support.empty()) a.contained = detail::embeds_in(polytope_from_points(std::move(support)), P);
    return a;
  }

  std::vector<FamilyAudit> audit_all(const std::vector<FamilySpec>& specs, const Field& F) {
    std::vector<FamilyAudit> out;
    for (const auto& s : specs) out.push_back(audit(s, F));
    return out;
  }

 private:
  const WeightDistribution& distribution(ClassId id, const Field& F) {
    const auto key = std::make_pair(to_string(id), F->q());
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      const auto C = build_code(get_polygon(id), F);
      it = cache_.emplace(key, weight_distribution(C, budget_, threads_)).first;
    }
    return it->second;
  }

  double budget_;
  unsigned threads_;
  std::map<std::pair<std::string, std::int64_t>, WeightDistribution> cache_;
};

inline std::string family_audit_csv_header() {
  return "polygon_id,q,family_name,expected_count,actual_count,expected_zeros,zero_violations";
}

inline std::string family_audit_csv_row(const FamilyAudit& a) {
  return to_string(a.polygon) + "," + std::to_string(a.q) + "," + a.family_id + " " + a.family_name + "," +
         (a.lower_bound ? ">=" : "") + std::to_string(a.expected_count) + "," + std::to_string(a.actual_count) + "," +
         std::to_string(a.expected_zeros) + "," + std::to_string(a.zero_violations);
}

}  // namespace toriclass
