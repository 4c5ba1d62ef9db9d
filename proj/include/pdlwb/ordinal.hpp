#pragma once

#include <compare>
#include <string>
#include <vector>

#include "pdlwb/rational.hpp"
#include "pdlwb/syntax.hpp"

namespace pdlwb {

// Ordinals below epsilon_0 in Cantor normal form:
//   w^{e1}*c1 + w^{e2}*c2 + ...   with e1 > e2 > ... and every ci >= 1.
// The empty sum is 0. Exponents are themselves ordinals, nested at most
// kMaxOrdinalDepth levels.
class Ordinal {
 public:
  struct Term;

  Ordinal() = default;
  Ordinal(long n);  // NOLINT
  explicit Ordinal(const Integer& n);

  static Ordinal omega();
  /// w^exponent * coefficient; coefficient must be positive.
  static Ordinal omega_power(const Ordinal& exponent, const Integer& coefficient = 1);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  /// Precondition: is_finite().
  Integer finite_value() const;
  /// Exponent of the leading term; 0 for the zero ordinal.
  Ordinal leading_exponent() const;
  /// Nesting depth of exponents (finite ordinals have depth 0).
  int depth() const;

  friend bool operator==(const Ordinal& a, const Ordinal& b);
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

 private:
  // Caller guarantees normal form; only the depth cap is checked.
  static Ordinal from_terms(std::vector<Term> terms);
  friend Ordinal ord_add(const Ordinal& a, const Ordinal& b);
  friend Ordinal ord_mul(const Ordinal& a, const Ordinal& b);

  std::vector<Term> terms_;
};

struct Ordinal::Term {
  Ordinal exponent;
  Integer coefficient;
};

inline constexpr int kMaxOrdinalDepth = 64;

enum class OrdCmp { Less, Equal, Greater };

Ordinal ord_add(const Ordinal& a, const Ordinal& b);
Ordinal ord_mul(const Ordinal& a, const Ordinal& b);
OrdCmp ord_cmp(const Ordinal& a, const Ordinal& b);
/// a^k for a natural number k (a^0 = 1), by repeated right multiplication.
Ordinal ord_pow(const Ordinal& a, unsigned k);
/// sup over k of a^k. Throws ZeroWeight for a = 0.
Ordinal sup_powers(const Ordinal& a);

inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return ord_add(a, b); }
inline Ordinal operator*(const Ordinal& a, const Ordinal& b) { return ord_mul(a, b); }

/// "w^{e}*c + ...", with bare exponents when they are integers or w itself.
std::string to_string(const Ordinal& a);

Ordinal weight(const Program& p);

}  // namespace pdlwb
