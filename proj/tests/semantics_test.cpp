#include <gtest/gtest.h>

#include "qhc/semantics.hpp"
#include "qhc/syntax.hpp"
#include "qhc/translate.hpp"
#include "random_formula.hpp"
#include "s4_oracle.hpp"

using namespace qhc;

namespace {

Signature sig() { return parse_signature("prob a, b, r(2). prop p, q, t(1)."); }
Formula F(const char* s) { return parse_formula(s, sig()); }
Formula S4(const char* s) { return parse_formula(s, parse_signature("prop p, q, s.")); }

void expect_countermodel(const Formula& f, const Decision& d) {
  ASSERT_TRUE(d.has_value()) << print(f);
  EXPECT_TRUE(d->model.is_s4_frame());
  EXPECT_EQ(model_check(d->model, f).count(d->world), 0U) << print(f);
}

// Replaces problem atoms by propositions so QH-language formulas can be
// handed to the oracle through box_translate.
Formula as_s4(const Formula& f) { return box_translate(f); }

}  // namespace

TEST(ModelCheck, Examples) {
  KripkeModel one(1);
  one.relation[0][0] = true;
  one.valuation["p"] = {true};
  EXPECT_EQ(model_check(one, S4("box p -> p")), (std::set<int>{0}));

  KripkeModel chain(2);
  chain.relation = {{true, true}, {false, true}};
  chain.valuation["p"] = {true, false};
  EXPECT_EQ(model_check(chain, S4("p -> box p")), (std::set<int>{1}));
  EXPECT_TRUE(model_check(chain, S4("0")).empty());
  EXPECT_EQ(model_check(chain, S4("dia ~p")), (std::set<int>{0, 1}));
}

TEST(ModelCheck, Errors) {
  KripkeModel m(1);
  m.relation[0][0] = true;
  try {
    model_check(m, S4("q"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownAtom);
  }
  try {
    model_check(m, F("?a"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPropositionalInput);
  }
}

TEST(KripkeModel, Closure) {
  KripkeModel m(3);
  m.relation[0][1] = m.relation[1][2] = true;
  EXPECT_FALSE(m.is_s4_frame());
  m.close();
  EXPECT_TRUE(m.is_s4_frame());
  EXPECT_TRUE(m.relation[0][2]);
  EXPECT_FALSE(m.relation[2][0]);
}

TEST(DecideS4, Examples) {
  EXPECT_FALSE(decide_s4(S4("box(box p -> p)")));
  Formula f = S4("p -> box p");
  Decision d = decide_s4(f);
  expect_countermodel(f, d);
  EXPECT_LE(d->model.worlds, 2);
  Formula lem = S4("box p | box ~box p");
  expect_countermodel(lem, decide_s4(lem));
  EXPECT_FALSE(decide_s4(S4("box p -> box box p")));
  EXPECT_FALSE(decide_s4(S4("box(p -> q) -> (box p -> box q)")));
  EXPECT_FALSE(decide_s4(S4("dia box dia box p -> dia box p")));
  Formula b5 = S4("p -> box dia p");
  expect_countermodel(b5, decide_s4(b5));
  // Grzegorczyk's axiom needs a proper cluster to fail.
  Formula grz = S4("box(box(p -> box p) -> p) -> p");
  Decision g = decide_s4(grz);
  expect_countermodel(grz, g);
  EXPECT_GE(g->model.worlds, 2);
}

TEST(DecideS4, RejectsQuantifiers) {
  try {
    decide_s4(F("forall x. t(x)"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPropositionalInput);
  }
}

TEST(DecideIpc, Examples) {
  EXPECT_FALSE(decide_ipc(F("a -> ~~a")));
  Formula dne = F("~~a -> a");
  Decision d = decide_ipc(dne);
  expect_countermodel(box_translate(dne), d);
  EXPECT_LE(d->model.worlds, 2);
  EXPECT_FALSE(decide_ipc(F("~~(a | ~a)")));
  EXPECT_TRUE(decide_ipc(F("a | ~a")));
  EXPECT_TRUE(decide_ipc(F("((a -> b) -> a) -> a")));
  EXPECT_TRUE(decide_ipc(F("(~~a -> a) -> a | ~a")));
  EXPECT_TRUE(decide_ipc(F("(a -> b) | (b -> a)")));
  EXPECT_FALSE(decide_ipc(F("~~~a <-> ~a")));
  EXPECT_FALSE(decide_ipc(F("~~(a -> b) <-> (~~a -> ~~b)")));
  EXPECT_FALSE(decide_ipc(F("(a | b -> bot) <-> ~a & ~b")));
}

TEST(DecideIpc, RejectsOtherLanguages) {
  for (const char* s : {"p", "!p", "?a -> ?a"}) {
    EXPECT_THROW(decide_ipc(F(s)), Error) << s;
  }
}

TEST(Entailment, RuleForms) {
  EXPECT_FALSE(entails_s4({S4("p")}, S4("box p")));
  EXPECT_TRUE(entails_s4({S4("dia p")}, S4("p")));
  EXPECT_FALSE(entails_ipc({F("a"), F("a -> b")}, F("b")));
  EXPECT_TRUE(entails_ipc({F("~~a")}, F("a")));
}

TEST(Refute, Examples) {
  auto r = refute_qhc(F("p -> ?!p"));
  ASSERT_EQ(r.size(), 1U);
  EXPECT_EQ(r[0].channel, Channel::Box);
  EXPECT_EQ(r[0].translated, box_translate(F("p -> ?!p")));

  r = refute_qhc(F("!?a -> a"), true);
  ASSERT_EQ(r.size(), 1U);
  EXPECT_EQ(r[0].channel, Channel::NegNeg);
  EXPECT_FALSE(decide_s4(box_translate(F("!?a -> a"))));

  // Both images are invalid here; the box channel is tried first.
  r = refute_qhc(F("!(p | q) -> (!p | !q)"), true);
  ASSERT_EQ(r.size(), 2U);
  EXPECT_EQ(r[0].channel, Channel::Box);
  EXPECT_EQ(r[1].channel, Channel::NegNeg);
  EXPECT_EQ(r[1].translated, negneg_translate(F("!(p | q) -> (!p | !q)")));
  EXPECT_EQ(print(r[1].translated), "~~(~~p | ~~q) -> ~~p | ~~q");

  r = refute_qhc(F("a | ~a"), true);
  EXPECT_EQ(r.size(), 2U);

  EXPECT_TRUE(refute_qhc(F("?!p -> p")).empty());
  EXPECT_TRUE(refute_qhc(F("a -> !?a")).empty());
  EXPECT_TRUE(refute_qhc(F("~!0")).empty());

  for (const char* s : {"p -> ?!p", "!?a -> a", "!(p | q) -> (!p | !q)", "a | ~a"}) {
    for (const auto& ref : refute_qhc(F(s), true)) {
      EXPECT_LE(ref.model.worlds, 3) << s;
      EXPECT_TRUE(ref.model.is_s4_frame());
      EXPECT_EQ(model_check(ref.model, ref.checked).count(ref.world), 0U) << s;
    }
  }
  EXPECT_THROW(refute_qhc(F("exists x. t(x)")), Error);
}

TEST(DecideS4, AgreesWithOracleOnRandomFormulas) {
  testkit::S4Oracle oracle({"p", "q", "s"}, 2);
  testkit::Generator gen({false, true, false, true, false, false}, 23);
  int invalid = 0;
  for (int i = 0; i < 3000; ++i) {
    Formula f = gen(1 + i % 5);
    Decision d = decide_s4(f);
    if (d) {
      ++invalid;
      expect_countermodel(f, d);
    }
    if (!oracle.valid(f)) {
      EXPECT_TRUE(d) << print(f);
    }
  }
  EXPECT_GT(invalid, 100);
}

TEST(DecideIpc, AgreesWithOracleOnRandomFormulas) {
  testkit::S4Oracle oracle({"a", "b"}, 3);
  testkit::Generator gen(testkit::Lang{true, false, false, false, false, false}, 29);
  for (int i = 0; i < 2000; ++i) {
    Formula f = gen(1 + i % 4);
    Decision d = decide_ipc(f);
    if (!oracle.valid(as_s4(f))) {
      EXPECT_TRUE(d) << print(f);
    }
    if (d) expect_countermodel(box_translate(f), d);
  }
}
