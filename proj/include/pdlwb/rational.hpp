#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pdlwb {

/// Exact rational. mpq_class keeps values canonical (lowest terms) after
/// every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "n", "n/d" (optionally with a leading '-'). Throws Error(Syntax).
Rational parse_rational(std::string_view text);

/// "n" when the denominator is 1, "n/d" otherwise.
std::string format_rational(const Rational& q);

/// Least common multiple of the denominators.
Integer denominator_lcm(const std::vector<Rational>& values);

/// Simplest rational (smallest denominator, then numerator) in the half-open
/// interval (lo, hi]. Walks the Stern-Brocot tree. Requires 0 <= lo < hi.
Rational simplest_in_half_open(const Rational& lo, const Rational& hi);

/// Smallest fraction strictly above x whose denominator is at most
/// max_den; nullopt when it would exceed 1. Requires x >= 0, max_den >= 1.
std::optional<Rational> farey_successor(const Rational& x, const Integer& max_den);

/// All fractions in (0,1] with denominator at most max_den, ascending.
std::vector<Rational> farey_grid(long max_den);

/// Nonnegative rational extended by +infinity. Addition and multiplication
/// follow the conventions of measure theory: x + inf = inf, 0 * inf = 0.
class ExtendedRational {
 public:
  ExtendedRational() = default;
  ExtendedRational(Rational value) : value_(std::move(value)) {}  // NOLINT
  ExtendedRational(long value) : value_(value) {}                 // NOLINT

  static ExtendedRational infinity() {
    ExtendedRational x;
    x.infinite_ = true;
    return x;
  }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }
  /// Precondition: is_finite().
  const Rational& value() const;

  bool is_zero() const { return !infinite_ && sgn(value_) == 0; }
  bool less_than(const Rational& q) const { return !infinite_ && value_ < q; }

  friend ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b);
  friend ExtendedRational operator*(const ExtendedRational& a, const ExtendedRational& b);
  ExtendedRational& operator+=(const ExtendedRational& other) {
    *this = *this + other;
    return *this;
  }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b);
  friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b);

 private:
  Rational value_{0};
  bool infinite_ = false;
};

/// "num/den", plain integers, or "inf".
std::string format_extended(const ExtendedRational& x);

}  // namespace pdlwb
