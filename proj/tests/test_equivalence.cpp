#include "doctest.h"
#include "pdlwb/equivalence.hpp"
#include "pdlwb/errors.hpp"
#include "pdlwb/fingerprint.hpp"
#include "pdlwb/model_io.hpp"
#include "pdlwb/semantics.hpp"
#include "support/generators.hpp"

using namespace pdlwb;

namespace {

KripkeModel fixture(const char* name) { return load_model(std::string(PDLWB_FIXTURES) + "/" + name); }

KripkeModel duplicate_rows() {
  return parse_model(R"({"states":["s0","s1","s2"],"alphabet":["a"],
    "kernels":{"a":[["0","0","1/2"],["0","0","1/2"],["0","0","0"]]},
    "atoms":{"p":["s2"]}})");
}

bool distinguishes(const KripkeModel& l, const KripkeModel& r, const Distinguisher& d) {
  const StateSet vl = d.logic == "pdl" ? eval_pdl(l, parse_pdl(d.formula)) : eval_hm(l, parse_hm(d.formula));
  const StateSet vr = d.logic == "pdl" ? eval_pdl(r, parse_pdl(d.formula)) : eval_hm(r, parse_hm(d.formula));
  return vl[d.left_state] == d.holds_left && vr[d.right_state] == d.holds_right && d.holds_left != d.holds_right;
}

}  // namespace

TEST_CASE("partition refinement") {
  const Partition dup = refine_partition(duplicate_rows());
  CHECK(dup.blocks == std::vector<std::vector<int>>{{0, 1}, {2}});
  CHECK(dup.block_of == std::vector<int>{0, 0, 1});
  CHECK(refine_partition(fixture("fix3.json")).blocks == std::vector<std::vector<int>>{{0}, {1}});

  gen::Rng rng(71);
  for (int i = 0; i < 100; ++i) {
    const KripkeModel m = gen::model(rng, {.states = 5, .primitives = 2, .atoms = 2});
    const Partition part = refine_partition(m);
    CHECK(part.rounds <= static_cast<int>(m.size()));
    for (const auto& block : part.blocks) {
      for (int s : block) {
        for (const auto& [p, set] : m.atoms()) CHECK(set[s] == set[block[0]]);
      }
    }
  }
}

TEST_CASE("quotients") {
  const KripkeModel m = duplicate_rows();
  const Quotient q = quotient_model(m, refine_partition(m));
  CHECK(q.model.size() == 2);
  CHECK(q.model.states() == std::vector<std::string>{"[s0,s1]", "[s2]"});
  CHECK_FALSE(check_morphism(m, q.model, q.projection));

  const Partition discrete = partition_from_labels({0, 1, 2});
  CHECK(quotient_model(m, discrete).model.size() == 3);

  try {
    quotient_model(m, partition_from_labels({0, 0, 0}));
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotClassConstant);
  }
}

TEST_CASE("quotient projections preserve validity and fingerprints") {
  gen::Rng rng(72);
  for (int i = 0; i < 40; ++i) {
    const KripkeModel base = gen::model(rng, {.states = 3, .primitives = 2, .stochastic = gen::coin(rng, 50)});
    const KripkeModel m = gen::duplicate_blowup(rng, base, 2);
    const Quotient q = quotient_model(m, refine_partition(m));
    REQUIRE_FALSE(check_morphism(m, q.model, q.projection));
    const auto fm = pdl_fingerprints(m), fq = pdl_fingerprints(q.model);
    const auto hm = hm_fingerprints(m), hq = hm_fingerprints(q.model);
    for (std::size_t s = 0; s < m.size(); ++s) {
      CHECK(fm[s] == fq[q.projection[s]]);
      CHECK(hm[s] == hq[q.projection[s]]);
    }
    const PdlFormula f = PdlFormula::diamond(gen::program(rng, {.depth = 3, .alphabet = gen::letters(2)}),
                                             Rational(gen::uniform(rng, 1, 4), 4), PdlFormula::atom("p"));
    CHECK(eval_pdl(m, f) == preimage(q.projection, eval_pdl(q.model, f)));
  }
}

TEST_CASE("logical equivalence") {
  const KripkeModel fix1 = fixture("fix1.json");
  const KripkeModel fix3 = fixture("fix3.json");
  CHECK(logically_equivalent(fix1, fix1).equivalent);
  const EquivalenceReport r = logically_equivalent(fix1, fix3);
  CHECK_FALSE(r.equivalent);
  CHECK(r.sampled);
  REQUIRE(r.counterexample);
  CHECK(distinguishes(fix1, fix3, *r.counterexample));

  const KripkeModel m = duplicate_rows();
  const Quotient q = quotient_model(m, refine_partition(m));
  const EquivalenceReport mq = logically_equivalent(m, q.model);
  CHECK(mq.equivalent);
  CHECK(mq.left_partners[1] == std::vector<int>{0});
  CHECK_THROWS_AS(logically_equivalent(fix1, fixture("fix2.json")), Error);
}

TEST_CASE("cospans and spans") {
  const KripkeModel fix1 = fixture("fix1.json");
  const auto same = behavioral_equivalence(fix1, fix1);
  REQUIRE(same.cospan);
  CHECK(same.cospan->mediating.size() == 2);
  CHECK(is_surjective(same.cospan->left, 2));
  CHECK_FALSE(behavioral_equivalence(fix1, fixture("fix3.json")).cospan);
  CHECK_FALSE(bisimulation_span(fix1, fixture("fix3.json")).span);

  const auto span = bisimulation_span(fix1, fix1);
  REQUIRE(span.span);
  CHECK(span.span->mediating.states() == std::vector<std::string>{"(s0,s0)", "(s1,s1)"});

  gen::Rng rng(73);
  for (int i = 0; i < 40; ++i) {
    const KripkeModel m = gen::model(rng, {.states = 2, .primitives = 2, .stochastic = true});
    const KripkeModel big = gen::duplicate_blowup(rng, m, 1);
    const auto s = bisimulation_span(m, big);
    REQUIRE(s.span);
    CHECK_FALSE(check_morphism(s.span->mediating, m, s.span->left));
    CHECK_FALSE(check_morphism(s.span->mediating, big, s.span->right));
    CHECK(is_surjective(s.span->left, m.size()));
    CHECK(is_surjective(s.span->right, big.size()));
  }
}

TEST_CASE("distinguishing formulas separate their states") {
  gen::Rng rng(74);
  int negatives = 0;
  for (int i = 0; i < 60; ++i) {
    const bool stochastic = gen::coin(rng, 50);
    const KripkeModel l = gen::model(rng, {.states = 3, .primitives = 2, .stochastic = stochastic});
    const KripkeModel r = gen::rename(gen::model(rng, {.states = 3, .primitives = 2, .stochastic = stochastic}), "t");
    const EquivalenceReport rep = logically_equivalent(l, r);
    if (rep.equivalent) continue;
    ++negatives;
    REQUIRE(rep.counterexample);
    CHECK(distinguishes(l, r, *rep.counterexample));
  }
  CHECK(negatives > 30);
}

TEST_CASE("hm equivalence") {
  const KripkeModel m = duplicate_rows();
  const Quotient q = quotient_model(m, refine_partition(m));
  const HmEquivalence h = hm_equivalent(m, q.model);
  CHECK(h.equivalent);
  CHECK(h.left_witness == std::vector<int>{0, 0, 1});

  const KripkeModel with_p = parse_model(R"({"states":["s0"],"alphabet":["a"],"kernels":{"a":[["0"]]},"atoms":{"p":["s0"]}})");
  const KripkeModel without_p = parse_model(R"({"states":["s0"],"alphabet":["a"],"kernels":{"a":[["0"]]},"atoms":{"p":[]}})");
  CHECK_FALSE(hm_equivalent(with_p, without_p, 1).equivalent);

  gen::Rng rng(75);
  for (int i = 0; i < 60; ++i) {
    const KripkeModel l = gen::model(rng, {.states = 3, .primitives = 2, .stochastic = true});
    const KripkeModel r = gen::coin(rng, 50) ? gen::duplicate_blowup(rng, l, 2)
                                             : gen::model(rng, {.states = 3, .primitives = 2, .stochastic = true});
    CHECK(hm_equivalent(l, r).equivalent == logically_equivalent(l, r).equivalent);
  }
}

TEST_CASE("compose") { CHECK(compose({1, 0, 1}, {2, 3}) == ModelMap{3, 2, 3}); }
