#include <gtest/gtest.h>

#include <random>

#include "qhc/syntax.hpp"

using namespace qhc;

namespace {

Signature sig() { return parse_signature("prob a, b, r(2). prop p, q, t(1)."); }
Formula F(const char* s) { return parse_formula(s, sig()); }

// Random well-typed formula of the requested sort.
Formula random_formula(std::mt19937& g, Sort s, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  const std::vector<std::string> vars = {"x", "y", "z"};
  auto var = [&] { return vars[g() % vars.size()]; };
  if (depth == 0) {
    switch (g() % 4) {
      case 0: return s == Sort::Problem ? Formula::bot() : Formula::zero();
      case 1: return s == Sort::Problem ? Formula::atom("r", s, {var(), var()})
                                        : Formula::atom("t", s, {var()});
      default: return Formula::atom(s == Sort::Problem ? (g() % 2 ? "a" : "b")
                                                       : (g() % 2 ? "p" : "q"),
                                    s);
    }
  }
  auto sub = [&](Sort t) { return random_formula(g, t, depth - 1); };
  switch (pick(g)) {
    case 0: return Formula::conj(sub(s), sub(s));
    case 1: return Formula::disj(sub(s), sub(s));
    case 2: return Formula::imp(sub(s), sub(s));
    case 3: return Formula::neg(sub(s));
    case 4: return Formula::iff(sub(s), sub(s));
    case 5: return Formula::forall(var(), sub(s));
    case 6: return Formula::exists(var(), sub(s));
    case 7:
      return s == Sort::Problem ? Formula::oc(sub(Sort::Proposition))
                                : Formula::wn(sub(Sort::Problem));
    default: return random_formula(g, s, 0);
  }
}

}  // namespace

TEST(Parse, Precedence) {
  EXPECT_EQ(F("a & b | a -> b"), F("((a & b) | a) -> b"));
  EXPECT_EQ(F("a -> b -> a"), F("a -> (b -> a)"));
  EXPECT_EQ(F("a & b & a"), F("(a & b) & a"));
  EXPECT_EQ(F("~a & b"), F("(~a) & b"));
  EXPECT_EQ(F("?a -> p"), F("(?a) -> p"));
  EXPECT_EQ(F("forall x. r(x,y) -> a"), F("(forall x. r(x,y)) -> a"));
  EXPECT_EQ(F("a -> b <-> b"), F("(a -> b) <-> b"));
}

TEST(Parse, IffIsNotAssociative) {
  EXPECT_THROW(F("a <-> b <-> a"), Error);
}

TEST(Parse, Errors) {
  EXPECT_THROW(F("a &"), Error);
  EXPECT_THROW(F("(a"), Error);
  EXPECT_THROW(F("a b"), Error);
  EXPECT_THROW(F("forall x r(x,x)"), Error);
  EXPECT_THROW(F("a $ b"), Error);
}

TEST(Parse, UnicodeSpellings) {
  EXPECT_EQ(F("\xC2\xAC a \xE2\x88\xA7 b \xE2\x86\x92 \xE2\x8A\xA5"), F("~a & b -> bot"));
}

TEST(Parse, Preamble) {
  Signature s;
  Formula f = parse_with_preamble("prop p. p -> ?!p", s);
  EXPECT_EQ(print(f), "p -> ?!p");
  EXPECT_EQ(s.atoms().size(), 1u);
}

TEST(Parse, MetasShadowAtoms) {
  Signature metas = parse_signature("prob a.");
  Formula f = parse_formula("a -> b", sig(), &metas);
  EXPECT_EQ(f.left().op(), Op::Meta);
  EXPECT_EQ(f.right().op(), Op::Atom);
}

TEST(Print, FoldsAbbreviations) {
  EXPECT_EQ(print(F("~a")), "~a");
  EXPECT_EQ(print(F("a -> bot")), "~a");
  EXPECT_EQ(print(F("top")), "top");
  EXPECT_EQ(print(F("1 & ~~p")), "1 & ~~p");
  EXPECT_EQ(print(F("(a -> b) & (b -> a)")), "a <-> b");
  EXPECT_EQ(print(F("!(p | q) -> !p | !q")), "!(p | q) -> !p | !q");
  EXPECT_EQ(print(F("(a -> b) -> a")), "(a -> b) -> a");
  EXPECT_EQ(print(F("forall x. r(x,y) & a")), "forall x. r(x,y) & a");
  EXPECT_EQ(print(F("forall x. (r(x,y) & a)")), "forall x. (r(x,y) & a)");
  EXPECT_EQ(print(F("~(a & b)")), "~(a & b)");
}

TEST(Print, BoxAndDiamond) {
  Signature s = parse_signature("prop p.");
  Formula f = parse_formula("dia p -> box dia p", s);
  EXPECT_EQ(print(f), "dia p -> box dia p");
  EXPECT_EQ(parse_formula("nabla a", parse_signature("prob a.")).op(), Op::Nabla);
}

TEST(Print, RoundTripFuzz) {
  std::mt19937 g(20261015);
  for (int i = 0; i < 1000; ++i) {
    Sort s = i % 2 ? Sort::Problem : Sort::Proposition;
    Formula f = random_formula(g, s, 1 + i % 5);
    std::string text = print(f);
    Formula back = parse_formula(text, sig());
    ASSERT_EQ(back, f) << text;
    EXPECT_EQ(typecheck(back, sig()), s);
  }
}

TEST(Print, Signature) {
  EXPECT_EQ(print_signature(sig()), "prob a, b, r(2). prop p, q, t(1).");
}
