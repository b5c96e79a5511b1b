#pragma once

// GF(p^m) arithmetic via log/antilog tables.
//
// An element is its polynomial-basis coordinate vector packed base p:
// rep = c_0 + c_1 p + ... + c_{m-1} p^{m-1}, with x^m reduced by the modulus.

#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "toriclass/errors.hpp"

namespace toriclass {

using FieldElement = std::uint32_t;

class FieldSpec {
 public:
  static constexpr std::int64_t kMaxOrder = std::int64_t{1} << 16;

  explicit FieldSpec(std::int64_t q) {
    if (q < 2 || q > kMaxOrder) throw NotPrimePower("field order " + std::to_string(q) + " outside [2, 65536]");
    auto [p, m] = prime_power(q);
    if (p == 0) throw NotPrimePower(std::to_string(q) + " is not a prime power");
    p_ = static_cast<std::uint32_t>(p);
    m_ = m;
    q_ = static_cast<std::uint32_t>(q);
    modulus_ = find_modulus();
    build_tables();
  }

  std::uint32_t p() const { return p_; }
  int m() const { return m_; }
  std::uint32_t q() const { return q_; }
  // Monic irreducible, coefficients low degree first (length m + 1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  FieldElement generator() const { return generator_; }
  bool is_prime_field() const { return m_ == 1; }

  FieldElement zero() const { return 0; }
  FieldElement one() const { return 1; }

  // Image of an integer under Z -> GF(p).
  FieldElement from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<FieldElement>(r);
  }

  FieldElement add(FieldElement a, FieldElement b) const {
    if (m_ == 1) {
      const std::uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (!add_table_.empty()) return add_table_[a * q_ + b];
    return digitwise(a, b, +1);
  }

  FieldElement sub(FieldElement a, FieldElement b) const {
    if (m_ == 1) return a >= b ? a - b : a + p_ - b;
    return add(a, neg(b));
  }

  FieldElement neg(FieldElement a) const {
    if (m_ == 1) return a == 0 ? 0 : p_ - a;
    if (p_ == 2) return a;
    return digitwise(0, a, -1);
  }

  FieldElement mul(FieldElement a, FieldElement b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }

  FieldElement inv(FieldElement a) const {
    if (a == 0) throw DivisionByZero("inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

  // a^e for any integer e (negative needs a != 0).
  FieldElement pow(FieldElement a, std::int64_t e) const {
    if (a == 0) {
      if (e < 0) throw DivisionByZero("negative power of zero");
      return e == 0 ? 1 : 0;
    }
    const std::int64_t ord = q_ - 1;
    std::int64_t r = (static_cast<std::int64_t>(log_[a]) * (e % ord)) % ord;
    if (r < 0) r += ord;
    return exp_[r];
  }

  // Discrete log to base generator(); a != 0.
  std::uint32_t log(FieldElement a) const {
    if (a == 0) throw DivisionByZero("log of zero");
    return log_[a];
  }

  FieldElement exp(std::int64_t i) const {
    const std::int64_t ord = q_ - 1;
    std::int64_t r = i % ord;
    if (r < 0) r += ord;
    return exp_[r];
  }

  // Multiplicative order of a != 0.
  std::uint32_t order(FieldElement a) const {
    const std::uint32_t l = log(a);
    return (q_ - 1) / std::gcd(q_ - 1, l == 0 ? q_ - 1 : l);
  }

  std::vector<FieldElement> nonzero_elements() const {
    std::vector<FieldElement> out;
    for (FieldElement a = 1; a < q_; ++a) out.push_back(a);
    return out;
  }

  // Human-readable element: integer for prime fields, "g^i" otherwise.
  std::string format(FieldElement a) const {
    if (m_ == 1) return std::to_string(a);
    if (a == 0) return "0";
    return "g^" + std::to_string(log_[a]);
  }

  // (p, m) if q = p^m, else (0, 0).
  static std::pair<std::int64_t, int> prime_power(std::int64_t q) {
    if (q < 2) return {0, 0};
    std::int64_t p = 0;
    for (std::int64_t d = 2; d * d <= q; ++d) {
      if (q % d == 0) {
        p = d;
        break;
      }
    }
    if (p == 0) return {q, 1};
    int m = 0;
    while (q % p == 0) {
      q /= p;
      ++m;
    }
    if (q != 1) return {0, 0};
    return {p, m};
  }

 private:
  FieldElement digitwise(FieldElement a, FieldElement b, int sign) const {
    FieldElement r = 0, place = 1;
    for (int i = 0; i < m_; ++i) {
      const std::int64_t da = a % p_, db = b % p_;
      a /= p_;
      b /= p_;
      std::int64_t d = (da + sign * db) % static_cast<std::int64_t>(p_);
      if (d < 0) d += p_;
      r += static_cast<FieldElement>(d) * place;
      place *= p_;
    }
    return r;
  }

  // Polynomials over GF(p) as coefficient vectors, low degree first.
  using Poly = std::vector<std::uint32_t>;

  Poly poly_mod(Poly a, const Poly& b) const {
    // b monic
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
      const std::uint32_t lead = a.back();
      if (lead != 0) {
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
          const std::uint64_t sub = static_cast<std::uint64_t>(lead) * b[i] % p_;
          a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p_ - sub) % p_);
        }
      }
      a.pop_back();
    }
    return a;
  }

  Poly decode_poly(std::uint64_t code, int degree) const {
    Poly f(degree + 1);
    for (int i = 0; i <= degree; ++i) {
      f[i] = static_cast<std::uint32_t>(code % p_);
      code /= p_;
    }
    return f;
  }

  // Monic degree-m polynomial with the smallest base-p integer encoding of
  // its lower coefficients that has no monic factor of degree 1..m/2.
  Poly find_modulus() const {
    if (m_ == 1) return {0, 1};
    std::uint64_t lower_count = 1;
    for (int i = 0; i < m_; ++i) lower_count *= p_;
    for (std::uint64_t code = 0; code < lower_count; ++code) {
      Poly f = decode_poly(code, m_ - 1);
      f.push_back(1);
      if (f[0] == 0) continue;
      bool irreducible = true;
      for (int d = 1; d <= m_ / 2 && irreducible; ++d) {
        std::uint64_t cnt = 1;
        for (int i = 0; i < d; ++i) cnt *= p_;
        for (std::uint64_t c = 0; c < cnt; ++c) {
          Poly g = decode_poly(c, d - 1);
          g.push_back(1);
          const Poly r = poly_mod(f, g);
          bool zero = true;
          for (auto v : r) zero = zero && v == 0;
          if (zero) {
            irreducible = false;
            break;
          }
        }
      }
      if (irreducible) return f;
    }
    throw NotPrimePower("no irreducible polynomial found");
  }

  // rep * x reduced by the modulus.
  FieldElement times_x(FieldElement a) const {
    std::vector<std::uint32_t> c(m_ + 1, 0);
    for (int i = 0; i < m_; ++i) {
      c[i + 1] = a % p_;
      a /= p_;
    }
    const std::uint32_t top = c[m_];
    FieldElement r = 0, place = 1;
    for (int i = 0; i < m_; ++i) {
      const std::uint64_t sub = static_cast<std::uint64_t>(top) * modulus_[i] % p_;
      r += static_cast<FieldElement>((c[i] + p_ - sub) % p_) * place;
      place *= p_;
    }
    return r;
  }

  // Slow multiply used only while the tables are built.
  FieldElement slow_mul(FieldElement a, FieldElement b) const {
    if (m_ == 1) return static_cast<FieldElement>(static_cast<std::uint64_t>(a) * b % p_);
    FieldElement acc = 0;
    FieldElement shifted = a;
    for (int i = 0; i < m_; ++i) {
      const std::uint32_t digit = b % p_;
      b /= p_;
      for (std::uint32_t t = 0; t < digit; ++t) acc = digitwise(acc, shifted, +1);
      shifted = times_x(shifted);
    }
    return acc;
  }

  void build_tables() {
    if (m_ > 1 && q_ <= 256) {
      add_table_.resize(static_cast<std::size_t>(q_) * q_);
      for (FieldElement a = 0; a < q_; ++a)
        for (FieldElement b = 0; b < q_; ++b) add_table_[a * q_ + b] = digitwise(a, b, +1);
    }
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    for (FieldElement g = 1; g < q_; ++g) {
      FieldElement x = 1;
      std::uint32_t ord = 0;
      std::vector<FieldElement> powers;
      powers.reserve(q_ - 1);
      do {
        powers.push_back(x);
        x = slow_mul(x, g);
        ++ord;
      } while (x != 1 && ord < q_);
      if (ord == q_ - 1) {
        generator_ = g;
        for (std::uint32_t i = 0; i < ord; ++i) {
          exp_[i] = powers[i];
          log_[powers[i]] = i;
        }
        return;
      }
    }
    throw NotPrimePower("no generator found");
  }

  std::uint32_t p_ = 0;
  int m_ = 0;
  std::uint32_t q_ = 0;
  Poly modulus_;
  FieldElement generator_ = 0;
  std::vector<FieldElement> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<FieldElement> add_table_;
};

using Field = std::shared_ptr<const FieldSpec>;

inline Field build_field(std::int64_t q) { return std::make_shared<const FieldSpec>(q); }

using TorusPoint = std::pair<FieldElement, FieldElement>;

// (g^i, g^j) with i outer, j inner; this is the column order of every code.
inline std::vector<TorusPoint> torus_points(const FieldSpec& F) {
  std::vector<TorusPoint> out;
  const std::uint32_t n = F.q() - 1;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) out.push_back({F.exp(i), F.exp(j)});
  return out;
}

}  // namespace toriclass
