#include "pdlwb/ordinal.hpp"

#include <algorithm>

#include "pdlwb/errors.hpp"

namespace pdlwb {

Ordinal::Ordinal(long n) : Ordinal(Integer(n)) {}

Ordinal::Ordinal(const Integer& n) {
  if (sgn(n) < 0) throw Error(ErrorCode::InvalidArgument, "negative ordinal");
  if (sgn(n) > 0) terms_.push_back(Term{Ordinal(), n});
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  Ordinal out;
  out.terms_ = std::move(terms);
  if (out.depth() > kMaxOrdinalDepth) {
    throw Error(ErrorCode::DepthLimit, "ordinal nesting exceeds depth " + std::to_string(kMaxOrdinalDepth));
  }
  return out;
}

Ordinal Ordinal::omega() { return omega_power(Ordinal(1)); }

Ordinal Ordinal::omega_power(const Ordinal& exponent, const Integer& coefficient) {
  if (sgn(coefficient) <= 0) throw Error(ErrorCode::InvalidArgument, "ordinal coefficient must be positive");
  return from_terms({Term{exponent, coefficient}});
}

bool Ordinal::is_finite() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero()); }

Integer Ordinal::finite_value() const {
  if (!is_finite()) throw Error(ErrorCode::InfiniteWeight, "ordinal is not finite");
  return terms_.empty() ? Integer(0) : terms_[0].coefficient;
}

Ordinal Ordinal::leading_exponent() const { return terms_.empty() ? Ordinal() : terms_[0].exponent; }

int Ordinal::depth() const {
  int d = 0;
  for (const auto& t : terms_) {
    if (!t.exponent.is_zero()) d = std::max(d, 1 + t.exponent.depth());
  }
  return d;
}

bool operator==(const Ordinal& a, const Ordinal& b) { return ord_cmp(a, b) == OrdCmp::Equal; }

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  switch (ord_cmp(a, b)) {
    case OrdCmp::Less: return std::strong_ordering::less;
    case OrdCmp::Greater: return std::strong_ordering::greater;
    default: return std::strong_ordering::equal;
  }
}

OrdCmp ord_cmp(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    OrdCmp c = ord_cmp(x[i].exponent, y[i].exponent);
    if (c != OrdCmp::Equal) return c;
    if (x[i].coefficient != y[i].coefficient) return x[i].coefficient < y[i].coefficient ? OrdCmp::Less : OrdCmp::Greater;
  }
  if (x.size() == y.size()) return OrdCmp::Equal;
  return x.size() < y.size() ? OrdCmp::Less : OrdCmp::Greater;
}

Ordinal ord_add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const Ordinal& lead = b.terms_[0].exponent;
  std::vector<Ordinal::Term> out;
  Integer carry = 0;
  // Terms of a below the leading exponent of b are absorbed.
  for (const auto& t : a.terms_) {
    OrdCmp c = ord_cmp(t.exponent, lead);
    if (c == OrdCmp::Greater) {
      out.push_back(t);
    } else {
      if (c == OrdCmp::Equal) carry = t.coefficient;
      break;
    }
  }
  out.insert(out.end(), b.terms_.begin(), b.terms_.end());
  out[out.size() - b.terms_.size()].coefficient += carry;
  return Ordinal::from_terms(std::move(out));
}

Ordinal ord_mul(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero() || b.is_zero()) return Ordinal();
  const auto& head = a.terms_[0];
  Ordinal sum;
  for (const auto& t : b.terms_) {
    std::vector<Ordinal::Term> piece;
    if (t.exponent.is_zero()) {
      // a * n: the leading coefficient scales, the tail is kept once.
      piece = a.terms_;
      piece[0].coefficient = head.coefficient * t.coefficient;
    } else {
      piece.push_back({ord_add(head.exponent, t.exponent), t.coefficient});
    }
    sum = ord_add(sum, Ordinal::from_terms(std::move(piece)));
  }
  return sum;
}

Ordinal ord_pow(const Ordinal& a, unsigned k) {
  Ordinal out(1);
  for (unsigned i = 0; i < k; ++i) out = ord_mul(out, a);
  return out;
}

Ordinal sup_powers(const Ordinal& a) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroWeight, "sup of powers of 0 is undefined here");
  if (a.is_finite()) return a.finite_value() == 1 ? Ordinal(1) : Ordinal::omega();
  return Ordinal::omega_power(ord_mul(a.leading_exponent(), Ordinal::omega()));
}

namespace {

bool is_atomic(const Ordinal& a) { return a.is_finite() || a == Ordinal::omega(); }

}  // namespace

std::string to_string(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& t : a.terms()) {
    if (!out.empty()) out += " + ";
    if (t.exponent.is_zero()) {
      out += t.coefficient.get_str();
      continue;
    }
    out += "w";
    if (!(t.exponent == Ordinal(1))) {
      const std::string e = to_string(t.exponent);
      out += is_atomic(t.exponent) ? "^" + e : "^{" + e + "}";
    }
    if (t.coefficient != 1) out += "*" + t.coefficient.get_str();
  }
  return out;
}

Ordinal weight(const Program& p) {
  switch (p.kind()) {
    case Program::Kind::Epsilon: return Ordinal(1);
    case Program::Kind::Primitive: return Ordinal(2);
    case Program::Kind::Seq: return ord_mul(weight(p.left()), weight(p.right()));
    case Program::Kind::Choice: return ord_add(ord_add(weight(p.left()), weight(p.right())), Ordinal(1));
    case Program::Kind::Star: return sup_powers(weight(p.body()));
  }
  return Ordinal();
}

}  // namespace pdlwb
