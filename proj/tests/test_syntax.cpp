#include "doctest.h"
#include "pdlwb/errors.hpp"
#include "pdlwb/syntax.hpp"
#include "support/generators.hpp"

using namespace pdlwb;

namespace {

Program prim(const char* n) { return Program::primitive(n); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("program parsing follows precedence") {
  CHECK(parse_program("a;b u c") == Program::choice(Program::seq(prim("a"), prim("b")), prim("c")));
  CHECK(parse_program("eps") == Program::epsilon());
  CHECK(parse_program("(a u b);c*") ==
        Program::seq(Program::choice(prim("a"), prim("b")), Program::star(prim("c"))));
  CHECK(parse_program("a;b u c;d") ==
        Program::choice(Program::seq(prim("a"), prim("b")), Program::seq(prim("c"), prim("d"))));
  CHECK(parse_program("a**") == Program::star(Program::star(prim("a"))));
}

TEST_CASE("formula parsing") {
  CHECK(parse_pdl("<a*>{3/4} p") ==
        PdlFormula::diamond(Program::star(prim("a")), Rational(3, 4), PdlFormula::atom("p")));
  CHECK(parse_pdl("tt & p") == PdlFormula::conj(PdlFormula::top(), PdlFormula::atom("p")));
  CHECK(parse_pdl("<a;b>{1/2} (p & q)") ==
        PdlFormula::diamond(Program::seq(prim("a"), prim("b")), Rational(1, 2),
                            PdlFormula::conj(PdlFormula::atom("p"), PdlFormula::atom("q"))));
  CHECK(parse_hm("hm<a>{1/2} p") == HmFormula::diamond_geq("a", Rational(1, 2), HmFormula::atom("p")));
  CHECK(parse_pdl("<a>{1} tt").threshold() == 1);
  CHECK(parse_pdl("<a>{2/4} tt").threshold() == Rational(1, 2));
}

TEST_CASE("printing uses minimal parentheses") {
  CHECK(print_program(Program::choice(Program::seq(prim("a"), prim("b")), prim("c"))) == "a;b u c");
  CHECK(print_program(Program::star(Program::choice(prim("a"), prim("b")))) == "(a u b)*");
  CHECK(print_program(Program::epsilon()) == "eps");
  CHECK(print_program(parse_program("a;(b;c)")) == "a;(b;c)");
  CHECK(print_program(parse_program("(a;b);c")) == "a;b;c");
  CHECK(print_pdl(parse_pdl("<a u b>{2/3} (p & tt)")) == "<a u b>{2/3} (p & tt)");
  CHECK(print_hm(parse_hm("hm<b>{1} p & q")) == "hm<b>{1} p & q");
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_program("a;;b");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Syntax);
    REQUIRE(e.position());
    CHECK(*e.position() == 2);
  }
  try {
    parse_program("a + b");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownToken);
    CHECK(*e.position() == 2);
  }
  CHECK(code_of([] { parse_pdl("<a>{0} p"); }) == ErrorCode::ThresholdOutOfRange);
  CHECK(code_of([] { parse_pdl("<a>{3/2} p"); }) == ErrorCode::ThresholdOutOfRange);
  CHECK(code_of([] { parse_pdl("<a>{1/0} p"); }) == ErrorCode::Syntax);
  CHECK(code_of([] { parse_hm("hm<a;b>{1/2} p"); }) == ErrorCode::Syntax);
  CHECK(code_of([] { parse_program("(a u b"); }) == ErrorCode::Syntax);
  CHECK(code_of([] { parse_program("u"); }) == ErrorCode::Syntax);
  CHECK(code_of([] { parse_program(""); }) == ErrorCode::Syntax);
}

TEST_CASE("identifiers") {
  CHECK(is_identifier("a1_B"));
  CHECK_FALSE(is_identifier("1a"));
  CHECK_FALSE(is_identifier("Ab"));
  CHECK(is_reserved("u"));
  CHECK(is_reserved("hm"));
  CHECK(parse_program("ab_2").name() == "ab_2");
}

TEST_CASE("print then parse is the identity on random programs and formulas") {
  gen::Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    const Program p = gen::program(rng, {});
    CHECK(parse_program(print_program(p)) == p);
    const PdlFormula f = PdlFormula::diamond(
        p, Rational(gen::uniform(rng, 1, 6), 6),
        gen::coin(rng, 50) ? PdlFormula::conj(PdlFormula::atom("p"), PdlFormula::top()) : PdlFormula::atom("q"));
    const PdlFormula g = gen::coin(rng, 50) ? PdlFormula::conj(f, f) : f;
    CHECK(parse_pdl(print_pdl(g)) == g);
  }
}
