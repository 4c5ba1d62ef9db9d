#include "pdlwb/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <utility>
#include <vector>

#include "pdlwb/errors.hpp"

namespace pdlwb {

// ---------------------------------------------------------------- Program

Program Program::primitive(std::string name) {
  if (name == kEpsilon) return epsilon();
  return Program(std::make_shared<const Node>(Node{Kind::Primitive, std::move(name), nullptr, nullptr}));
}

Program Program::epsilon() {
  static const Program eps(std::make_shared<const Node>(Node{Kind::Epsilon, std::string(kEpsilon), nullptr, nullptr}));
  return eps;
}

Program Program::seq(Program left, Program right) {
  return Program(std::make_shared<const Node>(Node{Kind::Seq, {}, std::make_shared<const Program>(std::move(left)),
                                                   std::make_shared<const Program>(std::move(right))}));
}

Program Program::choice(Program left, Program right) {
  return Program(std::make_shared<const Node>(Node{Kind::Choice, {}, std::make_shared<const Program>(std::move(left)),
                                                   std::make_shared<const Program>(std::move(right))}));
}

Program Program::star(Program body) {
  return Program(
      std::make_shared<const Node>(Node{Kind::Star, {}, std::make_shared<const Program>(std::move(body)), nullptr}));
}

int Program::arity() const {
  switch (kind()) {
    case Kind::Seq:
    case Kind::Choice: return 2;
    case Kind::Star: return 1;
    default: return 0;
  }
}

const Program& Program::child(int index) const {
  if (index < 0 || index >= arity()) throw Error(ErrorCode::InvalidArgument, "child index out of range");
  return index == 0 ? left() : right();
}

bool Program::contains_star() const {
  switch (kind()) {
    case Kind::Star: return true;
    case Kind::Seq:
    case Kind::Choice: return left().contains_star() || right().contains_star();
    default: return false;
  }
}

std::size_t Program::size() const {
  std::size_t n = 1;
  for (int i = 0; i < arity(); ++i) n += child(i).size();
  return n;
}

std::size_t Program::depth() const {
  std::size_t d = 0;
  for (int i = 0; i < arity(); ++i) d = std::max(d, child(i).depth());
  return d + 1;
}

std::set<std::string> Program::primitives() const {
  std::set<std::string> out;
  std::vector<const Program*> stack{this};
  while (!stack.empty()) {
    const Program* p = stack.back();
    stack.pop_back();
    if (p->is(Kind::Primitive)) out.insert(p->name());
    for (int i = 0; i < p->arity(); ++i) stack.push_back(&p->child(i));
  }
  return out;
}

bool operator==(const Program& a, const Program& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Program::Kind::Primitive: return a.name() == b.name();
    case Program::Kind::Epsilon: return true;
    case Program::Kind::Star: return a.body() == b.body();
    default: return a.left() == b.left() && a.right() == b.right();
  }
}

// ---------------------------------------------------------------- PdlFormula

PdlFormula PdlFormula::top() {
  return PdlFormula(std::make_shared<const Node>(Node{Kind::Top, "tt", nullptr, 0, nullptr, nullptr}));
}

PdlFormula PdlFormula::atom(std::string name) {
  return PdlFormula(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), nullptr, 0, nullptr, nullptr}));
}

PdlFormula PdlFormula::conj(PdlFormula left, PdlFormula right) {
  return PdlFormula(std::make_shared<const Node>(Node{Kind::And, {}, nullptr, 0,
                                                      std::make_shared<const PdlFormula>(std::move(left)),
                                                      std::make_shared<const PdlFormula>(std::move(right))}));
}

PdlFormula PdlFormula::diamond(Program program, Rational threshold, PdlFormula body) {
  threshold.canonicalize();
  return PdlFormula(std::make_shared<const Node>(Node{Kind::Diamond, {}, std::make_shared<const Program>(std::move(program)),
                                                      std::move(threshold),
                                                      std::make_shared<const PdlFormula>(std::move(body)), nullptr}));
}

std::set<std::string> PdlFormula::atoms() const {
  switch (kind()) {
    case Kind::Atom: return {name()};
    case Kind::And: {
      auto out = left().atoms();
      out.merge(right().atoms());
      return out;
    }
    case Kind::Diamond: return body().atoms();
    default: return {};
  }
}

std::set<std::string> PdlFormula::primitives() const {
  switch (kind()) {
    case Kind::And: {
      auto out = left().primitives();
      out.merge(right().primitives());
      return out;
    }
    case Kind::Diamond: {
      auto out = program().primitives();
      out.merge(body().primitives());
      return out;
    }
    default: return {};
  }
}

int PdlFormula::modal_depth() const {
  switch (kind()) {
    case Kind::And: return std::max(left().modal_depth(), right().modal_depth());
    case Kind::Diamond: return 1 + body().modal_depth();
    default: return 0;
  }
}

bool operator==(const PdlFormula& a, const PdlFormula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case PdlFormula::Kind::Top: return true;
    case PdlFormula::Kind::Atom: return a.name() == b.name();
    case PdlFormula::Kind::And: return a.left() == b.left() && a.right() == b.right();
    case PdlFormula::Kind::Diamond:
      return a.threshold() == b.threshold() && a.program() == b.program() && a.body() == b.body();
  }
  return false;
}

// ---------------------------------------------------------------- HmFormula

HmFormula HmFormula::top() {
  return HmFormula(std::make_shared<const Node>(Node{Kind::Top, "tt", 0, nullptr, nullptr}));
}

HmFormula HmFormula::atom(std::string name) {
  return HmFormula(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), 0, nullptr, nullptr}));
}

HmFormula HmFormula::conj(HmFormula left, HmFormula right) {
  return HmFormula(std::make_shared<const Node>(Node{Kind::And, {}, 0, std::make_shared<const HmFormula>(std::move(left)),
                                                     std::make_shared<const HmFormula>(std::move(right))}));
}

HmFormula HmFormula::diamond_geq(std::string primitive, Rational threshold, HmFormula body) {
  threshold.canonicalize();
  return HmFormula(std::make_shared<const Node>(Node{Kind::DiamondGeq, std::move(primitive), std::move(threshold),
                                                     std::make_shared<const HmFormula>(std::move(body)), nullptr}));
}

std::set<std::string> HmFormula::atoms() const {
  switch (kind()) {
    case Kind::Atom: return {name()};
    case Kind::And: {
      auto out = left().atoms();
      out.merge(right().atoms());
      return out;
    }
    case Kind::DiamondGeq: return body().atoms();
    default: return {};
  }
}

std::set<std::string> HmFormula::primitives() const {
  switch (kind()) {
    case Kind::And: {
      auto out = left().primitives();
      out.merge(right().primitives());
      return out;
    }
    case Kind::DiamondGeq: {
      auto out = body().primitives();
      out.insert(name());
      return out;
    }
    default: return {};
  }
}

int HmFormula::modal_depth() const {
  switch (kind()) {
    case Kind::And: return std::max(left().modal_depth(), right().modal_depth());
    case Kind::DiamondGeq: return 1 + body().modal_depth();
    default: return 0;
  }
}

bool operator==(const HmFormula& a, const HmFormula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case HmFormula::Kind::Top: return true;
    case HmFormula::Kind::Atom: return a.name() == b.name();
    case HmFormula::Kind::And: return a.left() == b.left() && a.right() == b.right();
    case HmFormula::Kind::DiamondGeq:
      return a.name() == b.name() && a.threshold() == b.threshold() && a.body() == b.body();
  }
  return false;
}

// ---------------------------------------------------------------- lexer

bool is_reserved(std::string_view text) {
  return text == "eps" || text == "tt" || text == "u" || text == "hm";
}

bool is_identifier(std::string_view text) {
  if (text.empty() || !(text[0] >= 'a' && text[0] <= 'z')) return false;
  for (char c : text) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return !is_reserved(text);
}

namespace {

enum class Tok { Ident, Keyword, Number, Symbol, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (c >= 'a' && c <= 'z') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
      std::string word(src.substr(start, i - start));
      out.push_back({is_reserved(word) ? Tok::Keyword : Tok::Ident, std::move(word), start});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      out.push_back({Tok::Number, std::string(src.substr(start, i - start)), start});
    } else if (std::string_view(";*()<>{}&/").find(c) != std::string_view::npos) {
      out.push_back({Tok::Symbol, std::string(1, c), start});
      ++i;
    } else {
      throw Error(ErrorCode::UnknownToken, "illegal character '" + std::string(1, c) + "' at offset " +
                                               std::to_string(start), start);
    }
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(tokenize(src)) {}

  Program program() {
    Program p = choice();
    return p;
  }

  template <class F>
  F formula(bool hm) {
    F f = unit<F>(hm);
    while (at_symbol("&")) {
      advance();
      f = F::conj(std::move(f), unit<F>(hm));
    }
    return f;
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }
  bool at_symbol(std::string_view s) const { return peek().kind == Tok::Symbol && peek().text == s; }
  bool at_keyword(std::string_view s) const { return peek().kind == Tok::Keyword && peek().text == s; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    const std::string where = t.kind == Tok::End ? "end of input" : "offset " + std::to_string(t.pos);
    throw Error(ErrorCode::Syntax, what + " at " + where, t.pos);
  }

  void expect_symbol(std::string_view s) {
    if (!at_symbol(s)) fail("expected '" + std::string(s) + "'");
    advance();
  }

  Program choice() {
    Program p = seq();
    while (at_keyword("u")) {
      advance();
      p = Program::choice(std::move(p), seq());
    }
    return p;
  }

  Program seq() {
    Program p = star();
    while (at_symbol(";")) {
      advance();
      p = Program::seq(std::move(p), star());
    }
    return p;
  }

  Program star() {
    Program p = atom();
    while (at_symbol("*")) {
      advance();
      p = Program::star(std::move(p));
    }
    return p;
  }

  Program atom() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      advance();
      return Program::primitive(t.text);
    }
    if (at_keyword("eps")) {
      advance();
      return Program::epsilon();
    }
    if (at_symbol("(")) {
      advance();
      Program p = choice();
      expect_symbol(")");
      return p;
    }
    fail(t.kind == Tok::End ? "expected a program" : "expected a program, found '" + t.text + "'");
  }

  Rational threshold() {
    expect_symbol("{");
    const std::size_t at = peek().pos;
    if (peek().kind != Tok::Number) fail("expected a rational threshold");
    std::string text = advance().text;
    if (at_symbol("/")) {
      advance();
      if (peek().kind != Tok::Number) fail("expected a denominator");
      text += "/" + advance().text;
    }
    Rational q = parse_rational(text);
    if (sgn(q) <= 0 || q > 1) {
      throw Error(ErrorCode::ThresholdOutOfRange,
                  "threshold " + format_rational(q) + " outside (0,1] at offset " + std::to_string(at), at);
    }
    expect_symbol("}");
    return q;
  }

  template <class F>
  F unit(bool hm) {
    const Token& t = peek();
    if (at_keyword("tt")) {
      advance();
      return F::top();
    }
    if (t.kind == Tok::Ident) {
      advance();
      return F::atom(t.text);
    }
    if (at_symbol("(")) {
      advance();
      F f = formula<F>(hm);
      expect_symbol(")");
      return f;
    }
    if constexpr (std::is_same_v<F, PdlFormula>) {
      if (at_symbol("<")) {
        advance();
        Program p = program();
        expect_symbol(">");
        Rational q = threshold();
        return PdlFormula::diamond(std::move(p), std::move(q), unit<F>(hm));
      }
    } else {
      if (at_keyword("hm")) {
        advance();
        expect_symbol("<");
        if (peek().kind != Tok::Ident) fail("expected a primitive program name");
        std::string rho = advance().text;
        expect_symbol(">");
        Rational q = threshold();
        return HmFormula::diamond_geq(std::move(rho), std::move(q), unit<F>(hm));
      }
    }
    fail(t.kind == Tok::End ? "expected a formula" : "expected a formula, found '" + t.text + "'");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// Precedence levels: 0 choice, 1 seq, 2 star/atom.
int level(const Program& p) {
  switch (p.kind()) {
    case Program::Kind::Choice: return 0;
    case Program::Kind::Seq: return 1;
    default: return 2;
  }
}

void print_into(const Program& p, int min_level, std::string& out) {
  const bool parens = level(p) < min_level;
  if (parens) out += '(';
  switch (p.kind()) {
    case Program::Kind::Primitive: out += p.name(); break;
    case Program::Kind::Epsilon: out += kEpsilon; break;
    case Program::Kind::Choice:
      print_into(p.left(), 0, out);
      out += " u ";
      print_into(p.right(), 1, out);
      break;
    case Program::Kind::Seq:
      print_into(p.left(), 1, out);
      out += ';';
      print_into(p.right(), 2, out);
      break;
    case Program::Kind::Star:
      print_into(p.body(), 2, out);
      out += '*';
      break;
  }
  if (parens) out += ')';
}

std::string threshold_text(const Rational& q) { return "{" + format_rational(q) + "}"; }

template <class F>
void print_formula(const F& f, bool as_unit, std::string& out) {
  using K = typename F::Kind;
  switch (f.kind()) {
    case K::Top: out += "tt"; return;
    case K::Atom: out += f.name(); return;
    case K::And:
      if (as_unit) out += '(';
      print_formula(f.left(), false, out);
      out += " & ";
      print_formula(f.right(), true, out);
      if (as_unit) out += ')';
      return;
    default: break;
  }
  if constexpr (std::is_same_v<F, PdlFormula>) {
    out += '<';
    print_into(f.program(), 0, out);
    out += '>';
  } else {
    out += "hm<" + f.name() + ">";
  }
  out += threshold_text(f.threshold()) + " ";
  print_formula(f.body(), true, out);
}

}  // namespace

Program parse_program(std::string_view text) {
  Parser parser(text);
  Program p = parser.program();
  parser.expect_end();
  return p;
}

PdlFormula parse_pdl(std::string_view text) {
  Parser parser(text);
  PdlFormula f = parser.formula<PdlFormula>(false);
  parser.expect_end();
  return f;
}

HmFormula parse_hm(std::string_view text) {
  Parser parser(text);
  HmFormula f = parser.formula<HmFormula>(true);
  parser.expect_end();
  return f;
}

std::string print_program(const Program& p) {
  std::string out;
  print_into(p, 0, out);
  return out;
}

std::string print_pdl(const PdlFormula& f) {
  std::string out;
  print_formula(f, false, out);
  return out;
}

std::string print_hm(const HmFormula& f) {
  std::string out;
  print_formula(f, false, out);
  return out;
}

}  // namespace pdlwb
