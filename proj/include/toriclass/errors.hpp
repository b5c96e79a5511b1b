#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace toriclass {

// Every failure raised by the library derives from Error; `kind()` is the
// stable machine-readable name used in JSON output and CLI exit handling.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define TORICLASS_SIMPLE_ERROR(Name)                                       \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& what) : Error(#Name, what) {}         \
  };

TORICLASS_SIMPLE_ERROR(ZeroAreaDegenerate)
TORICLASS_SIMPLE_ERROR(NotPositiveDimensional)
TORICLASS_SIMPLE_ERROR(NotPolygon)
TORICLASS_SIMPLE_ERROR(NotPrimePower)
TORICLASS_SIMPLE_ERROR(DivisionByZero)
TORICLASS_SIMPLE_ERROR(NotOnTorus)
TORICLASS_SIMPLE_ERROR(ZeroPolynomial)
TORICLASS_SIMPLE_ERROR(InvalidParams)
TORICLASS_SIMPLE_ERROR(NotInCatalog)
TORICLASS_SIMPLE_ERROR(Incomparable)
TORICLASS_SIMPLE_ERROR(ParseError)
TORICLASS_SIMPLE_ERROR(NotUnimodular)

#undef TORICLASS_SIMPLE_ERROR

// Polygon does not fit inside the box [0, q-2]^2.
class DoesNotFit : public Error {
 public:
  DoesNotFit(const std::string& what, std::int64_t q_min)
      : Error("DoesNotFit", what), q_min_(q_min) {}
  std::int64_t q_min() const noexcept { return q_min_; }

 private:
  std::int64_t q_min_;
};

// Exhaustive enumeration would exceed the column-operation budget.
class TooLarge : public Error {
 public:
  TooLarge(const std::string& what, double required, double budget)
      : Error("TooLarge", what), required_(required), budget_(budget) {}
  double required() const noexcept { return required_; }
  double budget() const noexcept { return budget_; }

 private:
  double required_;
  double budget_;
};

// q is below the validity threshold of a bound; threshold = num / den.
class ThresholdNotMet : public Error {
 public:
  ThresholdNotMet(const std::string& what, std::int64_t num, std::int64_t den)
      : Error("ThresholdNotMet", what), num_(num), den_(den) {}
  std::int64_t threshold_num() const noexcept { return num_; }
  std::int64_t threshold_den() const noexcept { return den_; }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace toriclass
