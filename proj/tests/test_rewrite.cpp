#include "doctest.h"
#include "pdlwb/automaton.hpp"
#include "pdlwb/errors.hpp"
#include "pdlwb/ordinal.hpp"
#include "pdlwb/rewrite.hpp"
#include "support/programs.hpp"

using namespace pdlwb;

namespace {

WordSet words(std::initializer_list<const char*> list) {
  WordSet out;
  for (const char* w : list) out.insert(parse_word(w));
  return out;
}

}  // namespace

TEST_CASE("single steps") {
  const auto d_l = rewrite_step(parse_program("a;(b u c)"));
  REQUIRE(d_l);
  CHECK(d_l->rule == Rule::DistLeft);
  CHECK(rule_name(d_l->rule) == "d_l");
  CHECK(d_l->position.empty());
  CHECK(d_l->substitution.at("x") == parse_program("a"));
  CHECK(d_l->substitution.at("y") == parse_program("b"));
  CHECK(d_l->substitution.at("z") == parse_program("c"));
  CHECK(d_l->after == parse_program("a;b u a;c"));

  const auto d_r = rewrite_step(parse_program("(a u b);c"));
  REQUIRE(d_r);
  CHECK(d_r->rule == Rule::DistRight);
  CHECK(d_r->after == parse_program("a;c u b;c"));

  CHECK_FALSE(rewrite_step(parse_program("a;b;c")));
  CHECK_FALSE(rewrite_step(parse_program("a u b;c")));
}

TEST_CASE("innermost redex is rewritten first") {
  const auto step = rewrite_step(parse_program("a;(b;(c u d))"));
  REQUIRE(step);
  CHECK(step->position == std::vector<int>{1});
  CHECK(subtree_at(parse_program("a;(b;(c u d))"), {1}) == parse_program("b;(c u d)"));
}

TEST_CASE("normal forms of star-free programs") {
  CHECK(normalize_starfree(parse_program("a;(b u c)")) == words({"a;b", "a;c"}));
  CHECK(normalize_starfree(parse_program("(a u b);(c u a)")) == words({"a;c", "a;a", "b;c", "b;a"}));
  CHECK(normalize_starfree(parse_program("eps;a u a;eps u a")) == words({"a"}));
  CHECK(normalize_starfree(parse_program("eps")) == words({"eps"}));
  CHECK_THROWS_AS(normalize_starfree(parse_program("a*")), Error);
}

TEST_CASE("words print and parse") {
  CHECK(format_word({}) == "eps");
  CHECK(format_word({"a", "b"}) == "a;b");
  CHECK(parse_word("a;b") == Word{"a", "b"});
  CHECK(parse_word("eps").empty());
  CHECK(LengthLex{}(Word{"b"}, Word{"a", "a"}));
}

TEST_CASE("every step decreases the weight and preserves the language") {
  gen::Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    const Program p = gen::program(rng, {.depth = 4, .alphabet = gen::letters(3), .stars = false, .eps = true});
    for (const auto& step : normalization_trace(p)) {
      CHECK(weight(step.before) > weight(step.after));
      CHECK(theta(step.before) == theta(step.after));
    }
    CHECK(normalize_starfree(p) == gen::expand(p));
  }
}

TEST_CASE("traces follow the leftmost-innermost strategy") {
  gen::Rng rng(24);
  for (int i = 0; i < 200; ++i) {
    const Program p = gen::program(rng, {.depth = 5, .alphabet = gen::letters(3), .stars = false, .eps = true});
    const auto trace = normalization_trace(p);
    Program cur = strip_units(p);
    for (const auto& step : trace) {
      CHECK(step.before == cur);
      const auto single = rewrite_step(cur);
      REQUIRE(single);
      CHECK(single->rule == step.rule);
      CHECK(single->position == step.position);
      CHECK(single->after == step.after);
      cur = strip_units(step.after);
    }
    CHECK_FALSE(rewrite_step(cur));
  }
}

TEST_CASE("unit stripping keeps the weight") {
  gen::Rng rng(22);
  for (int i = 0; i < 200; ++i) {
    const Program p = gen::program(rng, {.depth = 4, .alphabet = gen::letters(2), .stars = true, .eps = true});
    CHECK(weight(strip_units(p)) <= weight(p));
    CHECK(theta(strip_units(p)) == theta(p));
  }
  // With an eps factor the rule instance does not shrink the weight.
  const auto step = rewrite_step(parse_program("eps;(a u b)"));
  REQUIRE(step);
  CHECK(weight(step->before) == weight(step->after));
}

TEST_CASE("equational variants normalize to the same set") {
  gen::Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    const Program p = gen::program(rng, {.depth = 5, .alphabet = gen::letters(3), .stars = false, .eps = true});
    const WordSet base = normalize_starfree(p);
    for (int k = 0; k < 3; ++k) CHECK(normalize_starfree(gen::shuffle(rng, p)) == base);
  }
}

TEST_CASE("replace_at rebuilds the tree") {
  const Program p = parse_program("a;(b u c)");
  CHECK(replace_at(p, {1}, parse_program("d")) == parse_program("a;d"));
  CHECK(replace_at(p, {}, parse_program("d")) == parse_program("d"));
}
