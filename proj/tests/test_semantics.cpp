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

std::vector<ExtendedRational> nu_of(const KripkeModel& m, const char* program, const StateSet& target) {
  return nu(m, theta(parse_program(program)), target).values;
}

Rational q(long n, long d) {
  Rational x(n, d);
  x.canonicalize();
  return x;
}

bool subset(const StateSet& a, const StateSet& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("accumulated mass on the fixtures") {
  const KripkeModel fix1 = fixture("fix1.json");
  CHECK(nu_of(fix1, "a*", {false, true}) == std::vector<ExtendedRational>{q(1, 2), 1});
  CHECK(nu_of(fix1, "eps", {false, true}) == std::vector<ExtendedRational>{0, 1});

  const KripkeModel fix3 = fixture("fix3.json");
  const NuResult r = nu(fix3, theta(parse_program("a*")), {false, true});
  CHECK(r.values[0].is_infinite());
  CHECK(r.values[1].is_infinite());
  CHECK(r.divergence_detected);
  CHECK(format_extended(r.values[0]) == "inf");

  // Mass that never reaches the target stays finite even on a divergent loop.
  CHECK(nu_of(fix3, "a*", {false, false}) == std::vector<ExtendedRational>{0, 0});
  CHECK(nu_of(fix3, "a", {false, true}) == std::vector<ExtendedRational>{q(1, 2), 1});
}

TEST_CASE("coordinate cap") {
  const KripkeModel fix3 = fixture("fix3.json");
  try {
    nu(fix3, theta(parse_program("a*")), {false, true}, 1);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ResourceLimit);
  }
}

TEST_CASE("validity sets on the fixtures") {
  const KripkeModel fix1 = fixture("fix1.json");
  const KripkeModel fix2 = fixture("fix2.json");
  CHECK(eval_pdl(fix1, parse_pdl("<a*>{3/4} p")) == StateSet{true, false});
  CHECK(eval_pdl(fix2, parse_pdl("<a u b>{2/3} p")) == StateSet{true, false});
  CHECK(eval_pdl(fix1, parse_pdl("tt")) == StateSet{true, true});
  CHECK(eval_hm(fix1, parse_hm("hm<a>{1/2} p")) == StateSet{true, false});
  CHECK(eval_hm(fix1, parse_hm("tt & p")) == fix1.atom("p"));
  CHECK(eval_pdl(fix1, parse_pdl("<a>{1/2} p")) == StateSet{false, true});
  CHECK(eval_pdl(fix2, parse_pdl("<a u b>{7/12} p")) == StateSet{false, false});
  CHECK_THROWS_AS(eval_pdl(fix1, parse_pdl("<b>{1/2} p")), Error);
  CHECK_THROWS_AS(eval_pdl(fix1, parse_pdl("<a>{1/2} q")), Error);
}

TEST_CASE("threshold sets") {
  const KripkeModel fix1 = fixture("fix1.json");
  const StateSet p = fix1.atom("p");
  CHECK(im_set(fix1, p, {{"a", q(3, 4)}}).members() == StateSet{true, true});
  CHECK(ik_set(fix1, p, {{"a", q(1, 2)}}).members() == StateSet{true, false});
  CHECK(threshold_set(fix1, "a", p, Comparison::LessEq, q(1, 2)).members() == StateSet{true, true});
  CHECK(threshold_set(fix1, "a", p, Comparison::GreaterThan, q(1, 2)).members() == StateSet{false, false});
  CHECK_THROWS_AS(ik_set(fix1, p, {}), Error);
  gen::Rng rng(51);
  for (int i = 0; i < 50; ++i) {
    const KripkeModel m = gen::model(rng, {});
    const Chain chain{{"a", q(gen::uniform(rng, 1, 4), 4)}};
    CHECK(ik_set(m, m.atom("p"), chain).members() == complement(im_set(m, m.atom("p"), chain).members()));
  }
}

TEST_CASE("nu against truncated sums on random models") {
  gen::Rng rng(52);
  for (int i = 0; i < 60; ++i) {
    const KripkeModel m = gen::model(rng, {.states = 3, .primitives = 2});
    const Program p = gen::program(rng, {.depth = 3, .alphabet = gen::letters(2)});
    const WordLanguage lang = theta(p);
    const StateSet target = m.atom("p");
    const auto exact = nu(m, lang, target).values;
    std::vector<Rational> prev(m.size());
    for (std::size_t len = 0; len <= 12; ++len) {
      const auto approx = oracle_nu_truncated(m, lang, target, len);
      for (std::size_t s = 0; s < m.size(); ++s) {
        CHECK(approx[s] >= prev[s]);
        if (!exact[s].is_infinite()) CHECK(approx[s] <= exact[s].value());
      }
      prev = approx;
    }
    if (lang.is_finite()) {
      const auto all = oracle_nu_truncated(m, lang, target, lang.num_states());
      for (std::size_t s = 0; s < m.size(); ++s) CHECK(ExtendedRational(all[s]) == exact[s]);
    }
  }
}

TEST_CASE("choice adds masses of disjoint languages") {
  gen::Rng rng(53);
  for (int i = 0; i < 60; ++i) {
    const KripkeModel m = gen::model(rng, {.states = 3, .primitives = 2});
    const Program p1 = gen::program(rng, {.depth = 3, .alphabet = gen::letters(2)});
    const Program p2 = gen::program(rng, {.depth = 3, .alphabet = gen::letters(2)});
    const StateSet target = m.atom("p");
    const auto n1 = nu(m, theta(p1), target).values;
    const auto n2 = nu(m, theta(p2), target).values;
    const auto both = nu(m, theta(Program::choice(p1, p2)), target).values;
    // Checked exhaustively when the first language is finite.
    const WordLanguage l1 = theta(p1), l2 = theta(p2);
    bool disjoint = l1.is_finite();
    for (const auto& w : enumerate_words(l1, 200)) disjoint = disjoint && !l2.accepts(w);
    for (std::size_t s = 0; s < m.size(); ++s) {
      CHECK(both[s] <= n1[s] + n2[s]);
      if (disjoint) CHECK(both[s] == n1[s] + n2[s]);
    }
  }
}

TEST_CASE("diamonds are monotone in the threshold") {
  gen::Rng rng(54);
  for (int i = 0; i < 60; ++i) {
    const KripkeModel m = gen::model(rng, {.states = 3, .primitives = 2});
    const Program p = gen::program(rng, {.depth = 3, .alphabet = gen::letters(2)});
    StateSet prev = m.no_states();
    for (int k = 1; k <= 12; ++k) {
      const StateSet cur = eval_pdl(m, PdlFormula::diamond(p, q(k, 12), PdlFormula::atom("p")));
      CHECK(subset(prev, cur));
      prev = cur;
    }
  }
}

TEST_CASE("one-step diamonds of both logics are complementary") {
  gen::Rng rng(55);
  for (int i = 0; i < 100; ++i) {
    const KripkeModel m = gen::model(rng, {.states = 3, .primitives = 2});
    const Rational t = q(gen::uniform(rng, 1, 6), 6);
    const std::string rho = gen::coin(rng, 50) ? "a" : "b";
    CHECK(eval_pdl(m, PdlFormula::diamond(Program::primitive(rho), t, PdlFormula::atom("p"))) ==
          complement(eval_hm(m, HmFormula::diamond_geq(rho, t, HmFormula::atom("p")))));
  }
}

TEST_CASE("evaluator caches agree with fresh evaluation") {
  gen::Rng rng(56);
  const KripkeModel m = gen::model(rng, {.states = 4, .primitives = 2});
  Evaluator ev(m);
  for (int i = 0; i < 40; ++i) {
    const PdlFormula f = PdlFormula::diamond(gen::program(rng, {.depth = 3, .alphabet = gen::letters(2)}),
                                             q(gen::uniform(rng, 1, 4), 4), PdlFormula::atom("p"));
    CHECK(ev.pdl(f) == eval_pdl(m, f));
  }
}
