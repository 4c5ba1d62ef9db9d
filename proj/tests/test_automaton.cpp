#include "doctest.h"
#include "pdlwb/automaton.hpp"
#include "pdlwb/rewrite.hpp"
#include "support/generators.hpp"

using namespace pdlwb;

namespace {

std::vector<Word> first(const char* program, std::size_t n) { return enumerate_words(theta(parse_program(program)), n); }

std::vector<Word> list(std::initializer_list<const char*> words) {
  std::vector<Word> out;
  for (const char* w : words) out.push_back(parse_word(w));
  return out;
}

}  // namespace

TEST_CASE("enumeration in length-lex order") {
  CHECK(first("a*", 3) == list({"eps", "a", "a;a"}));
  CHECK(first("(a;b)*", 3) == list({"eps", "a;b", "a;b;a;b"}));
  CHECK(first("eps", 5) == list({"eps"}));
  CHECK(first("a u b", 5) == list({"a", "b"}));
  CHECK(first("a;(b u c)", 10) == list({"a;b", "a;c"}));
  CHECK(first("(a u b)*;c", 4) == list({"c", "a;c", "b;c", "a;a;c"}));
  CHECK(first("eps*", 3) == list({"eps"}));
}

TEST_CASE("canonical automata") {
  CHECK(theta(parse_program("a*;a*")) == theta(parse_program("a*")));
  CHECK(theta(parse_program("(a*)*")) == theta(parse_program("a*")));
  CHECK(theta(parse_program("a;(b u c)")) == theta(parse_program("a;b u a;c")));
  CHECK(theta(parse_program("b u a")) == theta(parse_program("a u b")));
  CHECK(theta(parse_program("a*")) == theta(parse_program("eps u a;a*")));
  CHECK(theta(parse_program("a*;b*")) != theta(parse_program("b*;a*")));
  CHECK(theta(parse_program("a*")).num_states() == 1);
  CHECK_FALSE(theta(parse_program("a*")).is_finite());
  CHECK(theta(parse_program("a;b u c")).is_finite());
}

TEST_CASE("a*;b* is the join of the blocks a^i;b^j") {
  const auto words = first("a*;b*", 40);
  WordSet expected;
  for (int i = 0; i <= 8; ++i) {
    for (int j = 0; i + j <= 8; ++j) {
      Word w(i, "a");
      w.insert(w.end(), j, "b");
      expected.insert(w);
    }
  }
  std::vector<Word> prefix(expected.begin(), expected.end());
  prefix.resize(40);
  CHECK(words == prefix);
}

TEST_CASE("language_of and membership") {
  WordSet ws{parse_word("a;b"), parse_word("b")};
  const WordLanguage l = language_of(ws);
  CHECK(l == theta(parse_program("a;b u b")));
  CHECK(l.accepts(parse_word("b")));
  CHECK_FALSE(l.accepts(parse_word("a")));
  CHECK_FALSE(l.accepts(parse_word("c")));
}

TEST_CASE("star-free languages equal normal forms") {
  gen::Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const Program p = gen::program(rng, {.depth = 5, .alphabet = gen::letters(3), .stars = false, .eps = true});
    const WordSet nf = normalize_starfree(p);
    const auto words = enumerate_words(theta(p), nf.size() + 5);
    CHECK(words == std::vector<Word>(nf.begin(), nf.end()));
  }
}

TEST_CASE("text export") {
  const std::string text = to_text(theta(parse_program("a;b")));
  CHECK(text.find("states 4") != std::string::npos);
  CHECK(text.find("sink") != std::string::npos);
}
