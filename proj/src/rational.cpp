#include "pdlwb/rational.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "pdlwb/errors.hpp"

namespace pdlwb {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::UnknownToken: return "UnknownToken";
    case ErrorCode::ThresholdOutOfRange: return "ThresholdOutOfRange";
    case ErrorCode::InfiniteWeight: return "InfiniteWeight";
    case ErrorCode::ZeroWeight: return "ZeroWeight";
    case ErrorCode::DepthLimit: return "DepthLimit";
    case ErrorCode::UnknownPrimitive: return "UnknownPrimitive";
    case ErrorCode::UnknownAtom: return "UnknownAtom";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::AtomMismatch: return "AtomMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::PartialMap: return "PartialMap";
    case ErrorCode::NotClassConstant: return "NotClassConstant";
    case ErrorCode::MassMismatch: return "MassMismatch";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> position)
    : std::runtime_error(message), code_(code), position_(position) {}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw Error(ErrorCode::Syntax, "malformed rational '" + std::string(text) + "'");
  }
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw Error(ErrorCode::Syntax, "zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer denominator_lcm(const std::vector<Rational>& values) {
  Integer acc = 1;
  for (const auto& v : values) {
    mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), v.get_den_mpz_t());
  }
  return acc;
}

Rational simplest_in_half_open(const Rational& lo, const Rational& hi) {
  if (sgn(lo) < 0 || !(lo < hi)) {
    throw Error(ErrorCode::InvalidArgument, "simplest_in_half_open needs 0 <= lo < hi");
  }
  // Stern-Brocot descent between left = a/b and right = c/d (right may be 1/0).
  Integer a = 0, b = 1, c = 1, d = 0;
  for (;;) {
    Rational m(Integer(a + c), Integer(b + d));
    m.canonicalize();
    if (m <= lo) {
      // Move right as far as possible in one batch: largest k with (a+kc)/(b+kd) <= lo.
      // (a + k c) <= lo (b + k d)  <=>  k (c - lo d) <= lo b - a, and c/d > lo.
      Integer k = 1;
      Rational denom = Rational(c) - lo * Rational(d);
      if (sgn(denom) > 0) {
        Rational bound = (lo * Rational(b) - Rational(a)) / denom;
        k = bound.get_num() / bound.get_den();
        if (k < 1) k = 1;
      }
      a += k * c;
      b += k * d;
    } else if (m > hi) {
      // Largest k with (c + k a)/(d + k b) > hi.
      Integer k = 1;
      Rational denom = hi * Rational(b) - Rational(a);
      if (sgn(denom) > 0) {
        // c + k a > hi (d + k b)  <=>  k (hi b - a) < c - hi d
        Rational bound = (Rational(c) - hi * Rational(d)) / denom;
        Integer fl = bound.get_num() / bound.get_den();
        k = (Rational(fl) == bound) ? Integer(fl - 1) : fl;
        if (k < 1) k = 1;
      }
      c += k * a;
      d += k * b;
    } else {
      return m;
    }
  }
}

std::optional<Rational> farey_successor(const Rational& x, const Integer& max_den) {
  if (sgn(x) < 0 || max_den < 1) throw Error(ErrorCode::InvalidArgument, "farey_successor needs x >= 0, max_den >= 1");
  // Stern-Brocot descent towards x from the right: left = a/b <= x < c/d = right.
  Integer a = 0, b = 1, c = 1, d = 0;
  for (;;) {
    if (b + d > max_den) break;
    Rational m(Integer(a + c), Integer(b + d));
    m.canonicalize();
    if (m <= x) {
      // Largest k with (a + k c)/(b + k d) <= x and b + k d <= max_den.
      Integer k = d == 0 ? Integer(1) : Integer((max_den - b) / d);
      Rational room = Rational(c) - x * Rational(d);
      if (sgn(room) > 0) {
        Rational bound = (x * Rational(b) - Rational(a)) / room;
        Integer fl = bound.get_num() / bound.get_den();
        if (d == 0 || fl < k) k = fl;
      }
      if (k < 1) k = 1;
      a += k * c;
      b += k * d;
    } else {
      // Largest k with (c + k a)/(d + k b) > x and d + k b <= max_den.
      Integer k = (max_den - d) / b;
      Rational lead = x * Rational(b) - Rational(a);
      if (sgn(lead) > 0) {
        Rational bound = (Rational(c) - x * Rational(d)) / lead;
        Integer fl = bound.get_num() / bound.get_den();
        Integer strict = Rational(fl) == bound ? Integer(fl - 1) : fl;
        if (strict < k) k = strict;
      }
      if (k < 1) k = 1;
      c += k * a;
      d += k * b;
    }
  }
  if (d == 0) return std::nullopt;
  Rational r(c, d);
  r.canonicalize();
  if (r > 1) return std::nullopt;
  return r;
}

std::vector<Rational> farey_grid(long max_den) {
  std::vector<Rational> out;
  for (long den = 1; den <= max_den; ++den) {
    for (long num = 1; num <= den; ++num) {
      if (std::gcd(num, den) == 1) out.emplace_back(num, den);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

const Rational& ExtendedRational::value() const {
  if (infinite_) throw Error(ErrorCode::InvalidArgument, "value() of infinite extended rational");
  return value_;
}

ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.infinite_ || b.infinite_) return ExtendedRational::infinity();
  return ExtendedRational(Rational(a.value_ + b.value_));
}

ExtendedRational operator*(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.is_zero() || b.is_zero()) return ExtendedRational(0L);
  if (a.infinite_ || b.infinite_) return ExtendedRational::infinity();
  return ExtendedRational(Rational(a.value_ * b.value_));
}

bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.infinite_ || b.infinite_) {
    return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
  }
  const int c = cmp(a.value_, b.value_);
  return c <=> 0;
}

std::string format_extended(const ExtendedRational& x) {
  return x.is_infinite() ? std::string("inf") : format_rational(x.value());
}

}  // namespace pdlwb
