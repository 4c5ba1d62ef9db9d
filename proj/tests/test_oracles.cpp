#include "doctest.h"
#include "pdlwb/automaton.hpp"
#include "pdlwb/errors.hpp"
#include "pdlwb/model_io.hpp"
#include "pdlwb/oracles.hpp"
#include "pdlwb/semantics.hpp"
#include "support/generators.hpp"

using namespace pdlwb;

namespace {

KripkeModel fixture(const char* name) { return load_model(std::string(PDLWB_FIXTURES) + "/" + name); }

Rational q(long n, long d) {
  Rational x(n, d);
  x.canonicalize();
  return x;
}

}  // namespace

TEST_CASE("rational helpers") {
  CHECK(parse_rational("6/8") == q(3, 4));
  CHECK(format_rational(q(3, 4)) == "3/4");
  CHECK(format_rational(Rational(2)) == "2");
  CHECK(simplest_in_half_open(q(1, 3), q(1, 2)) == q(1, 2));
  CHECK(simplest_in_half_open(q(1, 3), q(2, 5)) == q(2, 5));
  CHECK(simplest_in_half_open(q(7, 12), q(2, 3)) == q(2, 3));
  CHECK(simplest_in_half_open(q(1, 4), q(1, 3)) == q(1, 3));
  CHECK(simplest_in_half_open(q(0, 1), q(1, 1)) == 1);
  CHECK(simplest_in_half_open(q(3, 10), q(4, 10)) == q(1, 3));
  CHECK(farey_grid(3) == std::vector<Rational>{q(1, 3), q(1, 2), q(2, 3), 1});
}

TEST_CASE("farey successor walks the grid") {
  for (long d : {1L, 2L, 5L, 12L, 24L}) {
    const auto grid = farey_grid(d);
    std::optional<Rational> x = Rational(0);
    for (const auto& g : grid) {
      x = farey_successor(*x, Integer(d));
      REQUIRE(x);
      CHECK(*x == g);
    }
    CHECK_FALSE(farey_successor(*x, Integer(d)));
  }
  CHECK(farey_successor(q(5, 17), Integer(6)) == q(1, 3));
}

TEST_CASE("truncated sums") {
  const KripkeModel fix1 = fixture("fix1.json");
  const KripkeModel fix3 = fixture("fix3.json");
  CHECK(oracle_nu_truncated(fix1, theta(parse_program("a*")), {false, true}, 2) == std::vector<Rational>{q(1, 2), 1});
  const auto deep = oracle_nu_truncated(fix3, theta(parse_program("a*")), {false, true}, 20);
  CHECK(deep[0] > 15);
  CHECK(deep[0] == 19 + Rational(1, 1 << 20));
  CHECK(oracle_nu_truncated(fix1, theta(parse_program("a")), {true, true}, 0) == std::vector<Rational>{0, 0});
}

TEST_CASE("semiring elimination") {
  using X = ExtendedRational;
  // x = 1 + x/2 has least solution 2; x = 1 + x has none below infinity.
  CHECK(semiring_least_solution({{X(q(1, 2))}}, {X(1)}) == std::vector<X>{X(2)});
  CHECK(semiring_least_solution({{X(1)}}, {X(1)})[0].is_infinite());
  CHECK(semiring_least_solution({{X(1)}}, {X(0)})[0] == X(0));
}

TEST_CASE("grid oracle on the fixtures") {
  const KripkeModel fix2 = fixture("fix2.json");
  const int s0 = 0, s1 = 1;
  CHECK(oracle_grid_membership(fix2, parse_pdl("<a u b>{2/3} p"), s0, Integer(24)));
  CHECK_FALSE(oracle_grid_membership(fix2, parse_pdl("<a u b>{1/2} p"), s1));
  CHECK_FALSE(oracle_grid_membership(fix2, parse_pdl("<a u b>{7/12} p"), s0));
  CHECK(oracle_grid_membership(fix2, parse_pdl("<a u b>{7/12} p"), s1) == false);

  const GridVerdict v = oracle_grid(fix2, parse_pdl("<a u b>{2/3} p"), s0);
  REQUIRE(v.witness.size() == 2);
  CHECK(v.witness[0] + v.witness[1] <= q(2, 3));
  CHECK(v.witness[0] > q(1, 3));
  CHECK(v.witness[1] > q(1, 4));

  const KripkeModel fix1 = fixture("fix1.json");
  CHECK(oracle_grid_membership(fix1, parse_pdl("<a*>{3/4} p"), 0));
  CHECK_FALSE(oracle_grid_membership(fix1, parse_pdl("<a*>{3/4} p"), 1));
  const KripkeModel fix3 = fixture("fix3.json");
  CHECK_FALSE(oracle_grid_membership(fix3, parse_pdl("<a*>{1} p"), 0));
}

TEST_CASE("a coarse grid without a witness is reported") {
  const KripkeModel fix2 = fixture("fix2.json");
  try {
    oracle_grid(fix2, parse_pdl("<a u b>{7/12} p"), 0, {.denominator_bound = Integer(2)});
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GridTooCoarse);
  }
}

TEST_CASE("two-word unions with large denominators skip the literal grid") {
  const KripkeModel m({"s0", "s1"}, {{"a", {{q(0, 1), q(389, 997)}, {q(0, 1), q(0, 1)}}},
                                     {"b", {{q(0, 1), q(512, 991)}, {q(0, 1), q(0, 1)}}}},
                      {{"p", {"s1"}}});
  for (const auto& t : {q(1, 2), q(9, 10), q(1, 1)}) {
    const PdlFormula f = PdlFormula::diamond(parse_program("a u b"), t, PdlFormula::atom("p"));
    const GridVerdict v = oracle_grid(m, f, 0);
    CHECK(v.exactness_bound > 100000);
    CHECK(v.member == static_cast<bool>(eval_pdl(m, f)[0]));
  }
}

TEST_CASE("grid oracle agrees with the closed form on random models") {
  gen::Rng rng(61);
  for (int i = 0; i < 40; ++i) {
    const KripkeModel m = gen::model(rng, {.states = 3, .primitives = 2});
    const Program p = gen::coin(rng, 50) ? Program::choice(gen::program(rng, {.depth = 2, .alphabet = gen::letters(2), .stars = false}),
                                                           gen::program(rng, {.depth = 2, .alphabet = gen::letters(2), .stars = false}))
                                         : Program::star(gen::program(rng, {.depth = 2, .alphabet = gen::letters(2)}));
    const PdlFormula f = PdlFormula::diamond(p, q(gen::uniform(rng, 1, 6), 6), PdlFormula::atom("p"));
    const StateSet closed = eval_pdl(m, f);
    for (std::size_t s = 0; s < m.size(); ++s) {
      CAPTURE(print_pdl(f));
      CHECK(oracle_grid_membership(m, f, static_cast<int>(s)) == static_cast<bool>(closed[s]));
    }
  }
}
