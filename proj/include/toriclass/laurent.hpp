#pragma once

// Laurent polynomials in x, y over GF(q), evaluated on the torus (F_q^*)^2.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "toriclass/errors.hpp"
#include "toriclass/gf.hpp"
#include "toriclass/lattice.hpp"

namespace toriclass {

class LaurentPolynomial {
 public:
  using Terms = std::map<LatticePoint, FieldElement>;

  LaurentPolynomial() = default;
  explicit LaurentPolynomial(Field F) : field_(std::move(F)) {}
  LaurentPolynomial(Field F, Terms terms) : field_(std::move(F)) {
    for (const auto& [e, c] : terms)
      if (c != 0) terms_[e] = c;
  }

  static LaurentPolynomial constant(Field F, FieldElement c) { return monomial(std::move(F), c, {0, 0}); }
  static LaurentPolynomial monomial(Field F, FieldElement c, LatticePoint e) {
    LaurentPolynomial f(std::move(F));
    if (c != 0) f.terms_[e] = c;
    return f;
  }

  const Field& field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  FieldElement coefficient(LatticePoint e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
  }

  LaurentPolynomial operator+(const LaurentPolynomial& o) const {
    LaurentPolynomial r = *this;
    if (!r.field_) r.field_ = o.field_;
    for (const auto& [e, c] : o.terms_) r.accumulate(e, c);
    return r;
  }

  LaurentPolynomial operator-() const {
    LaurentPolynomial r(field_);
    for (const auto& [e, c] : terms_) r.terms_[e] = field_->neg(c);
    return r;
  }

  LaurentPolynomial operator-(const LaurentPolynomial& o) const { return *this + (-o); }

  LaurentPolynomial operator*(const LaurentPolynomial& o) const {
    LaurentPolynomial r(field_ ? field_ : o.field_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) r.accumulate(e1 + e2, r.field_->mul(c1, c2));
    return r;
  }

  LaurentPolynomial scaled(FieldElement s) const {
    LaurentPolynomial r(field_);
    if (s == 0) return r;
    for (const auto& [e, c] : terms_) r.terms_[e] = field_->mul(c, s);
    return r;
  }

  LaurentPolynomial pow(int e) const {
    LaurentPolynomial r = constant(field_, 1);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const LaurentPolynomial& a, const LaurentPolynomial& b) { return a.terms_ < b.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += field_->format(c);
      if (e.x != 0) s += "*x^" + std::to_string(e.x);
      if (e.y != 0) s += "*y^" + std::to_string(e.y);
    }
    return s;
  }

 private:
  void accumulate(LatticePoint e, FieldElement c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second = field_->add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }

  Field field_;
  Terms terms_;
};

inline FieldElement evaluate(const LaurentPolynomial& f, TorusPoint a) {
  if (a.first == 0 || a.second == 0) throw NotOnTorus("evaluation point has a zero coordinate");
  const FieldSpec& F = *f.field();
  FieldElement acc = 0;
  for (const auto& [e, c] : f.terms()) acc = F.add(acc, F.mul(c, F.mul(F.pow(a.first, e.x), F.pow(a.second, e.y))));
  return acc;
}

// Number of torus points where f vanishes; works in discrete-log coordinates.
inline std::int64_t count_torus_zeros(const LaurentPolynomial& f) {
  if (f.is_zero()) throw ZeroPolynomial("zero count of the zero polynomial");
  const FieldSpec& F = *f.field();
  const std::int64_t ord = F.q() - 1;
  struct Term {
    std::int64_t c, ex, ey;
  };
  std::vector<Term> ts;
  for (const auto& [e, c] : f.terms()) {
    auto md = [&](std::int64_t v) { return ((v % ord) + ord) % ord; };
    ts.push_back({F.log(c), md(e.x), md(e.y)});
  }
  std::int64_t zeros = 0;
  for (std::int64_t i = 0; i < ord; ++i) {
    for (std::int64_t j = 0; j < ord; ++j) {
      FieldElement acc = 0;
      for (const auto& t : ts) acc = F.add(acc, F.exp(t.c + t.ex * i + t.ey * j));
      zeros += acc == 0;
    }
  }
  return zeros;
}

inline LatticePolytope newton_polygon(const LaurentPolynomial& f) {
  if (f.is_zero()) throw ZeroPolynomial("Newton polygon of the zero polynomial");
  std::vector<LatticePoint> pts;
  for (const auto& [e, c] : f.terms()) pts.push_back(e);
  return polytope_from_points(std::move(pts));
}

// Exponents of L(P) in generator-matrix row order.
inline std::vector<LatticePoint> monomial_basis(const LatticePolytope& P) { return P.points(); }

// sum_i coeffs[i] * x^basis[i]
inline LaurentPolynomial polynomial_from_coefficients(const Field& F, const std::vector<LatticePoint>& basis,
                                                      const std::vector<FieldElement>& coeffs) {
  LaurentPolynomial::Terms t;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coeffs[i] != 0) t[basis[i]] = coeffs[i];
  return LaurentPolynomial(F, std::move(t));
}

}  // namespace toriclass
