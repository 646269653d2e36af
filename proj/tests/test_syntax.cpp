#include "support.hpp"

namespace cspbt::test {
namespace {

TEST(Parse, Leaves) {
  EXPECT_TRUE(P("STOP").is(Op::Stop));
  EXPECT_TRUE(P("div").is(Op::Div));
}

TEST(Parse, ExternalChoiceOfPrefixes) {
  Process p = P("a -> STOP [] b -> STOP");
  EXPECT_EQ(p, Process::ext_choice(Process::prefix("a", Process::stop()),
                                   Process::prefix("b", Process::stop())));
}

TEST(Parse, Recursion) {
  EXPECT_EQ(P("mu X . a -> X"), Process::mu("X", Process::prefix("a", Process::ident("X"))));
}

TEST(Parse, PrecedenceLoosestToTightest) {
  Process p = P("a -> STOP |~| b -> STOP [> c -> STOP [] d -> STOP");
  ASSERT_TRUE(p.is(Op::IntChoice));
  ASSERT_TRUE(p.right().is(Op::Sliding));
  EXPECT_TRUE(p.right().right().is(Op::ExtChoice));
}

TEST(Parse, BinaryOperatorsAssociateLeft) {
  Process p = P("STOP [] div [] STOP");
  ASSERT_TRUE(p.is(Op::ExtChoice));
  EXPECT_TRUE(p.left().is(Op::ExtChoice));
}

TEST(Parse, SetsAndRenaming) {
  Process p = P("(a -> STOP) [|{a, b}|] (b -> STOP) \\ {b}");
  ASSERT_TRUE(p.is(Op::Parallel));
  EXPECT_EQ(p.set(), (ActionSet{"a", "b"}));
  EXPECT_TRUE(p.right().is(Op::Conceal));
  Process r = P("a -> STOP [[a := b, c := d]]");
  ASSERT_TRUE(r.is(Op::Rename));
  EXPECT_EQ(r.renaming(), (Renaming{{"a", "b"}, {"c", "d"}}));
}

TEST(Parse, ThrowAndInterrupt) {
  Process t = P("a -> STOP [|{a}|> div");
  ASSERT_TRUE(t.is(Op::Throw));
  EXPECT_EQ(t.set(), ActionSet{"a"});
  EXPECT_TRUE(P("STOP /\\ a -> STOP").is(Op::Interrupt));
}

TEST(Parse, SyntaxErrorCarriesPosition) {
  try {
    P("a -> ");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& e) {
    EXPECT_NE(std::string(e.what()).find("offset"), std::string::npos);
  }
  EXPECT_THROW(P("a -> STOP |~|"), SyntaxError);
  EXPECT_THROW(P("(STOP"), SyntaxError);
  EXPECT_THROW(P("STOP STOP"), SyntaxError);
}

TEST(Parse, UnboundIdentifierIsDistinct) {
  EXPECT_THROW(P("a -> X"), UnboundIdentifier);
  EXPECT_THROW(P("mu X . a -> Y"), UnboundIdentifier);
  EXPECT_NO_THROW(P("mu X . a -> mu Y . b -> X"));
}

TEST(Unparse, Examples) {
  EXPECT_EQ(unparse(Process::stop()), "STOP");
  EXPECT_EQ(unparse(Process::int_choice(Process::prefix("a", Process::stop()), Process::div())),
            "a -> STOP |~| div");
  EXPECT_EQ(unparse(Process::parallel({"a"}, Process::stop(), Process::div())),
            "STOP [|{a}|] div");
}

TEST(Unparse, RightOperandsParenthesised) {
  Process p = Process::ext_choice(Process::stop(), Process::ext_choice(Process::div(), Process::stop()));
  EXPECT_EQ(parse(unparse(p)), p);
  EXPECT_EQ(unparse(p), "STOP [] (div [] STOP)");
}

TEST(Unparse, RoundTripOnGeneratedTerms) {
  GenOptions g = GenOptions::everything();
  g.with(Op::Mu);
  g.recursion_rate = 0.2;
  g.max_depth = 5;
  TermGenerator gen(g, 11);
  for (int i = 0; i < 2000; ++i) {
    Process p = gen.term();
    ASSERT_EQ(parse(unparse(p)), p) << unparse(p);
  }
}

TEST(Alphabet, Examples) {
  EXPECT_TRUE(alphabet(P("STOP")).empty());
  EXPECT_EQ(alphabet(P("a -> STOP [[a := b]]")), (ActionSet{"a", "b"}));
  EXPECT_EQ(alphabet(P("(a -> STOP) [|{c}|] STOP")), (ActionSet{"a", "c"}));
  EXPECT_EQ(alphabet(P("STOP \\ {d} [|{e}|> STOP")), (ActionSet{"d", "e"}));
}

TEST(Substitute, Examples) {
  Process x = Process::ident("X");
  EXPECT_EQ(substitute(x, "X", Process::stop()), Process::stop());
  Process mu = Process::mu("X", Process::prefix("a", x));
  EXPECT_EQ(substitute(Process::prefix("a", x), "X", mu), Process::prefix("a", mu));
  Process shadow = Process::mu("X", x);
  EXPECT_EQ(substitute(shadow, "X", Process::stop()), shadow);
}

TEST(Substitute, AlphabetBound) {
  GenOptions g = GenOptions::everything();
  TermGenerator gen(g, 5);
  for (int i = 0; i < 300; ++i) {
    Process body = Process::prefix("a", Process::ext_choice(gen.term(), Process::ident("X")));
    Process q = gen.term();
    ActionSet got = alphabet(substitute(body, "X", q));
    ActionSet allowed = alphabet(Process::mu("X", body));
    auto aq = alphabet(q);
    allowed.insert(aq.begin(), aq.end());
    for (const auto& a : got) EXPECT_TRUE(allowed.count(a)) << a;
  }
}

}  // namespace
}  // namespace cspbt::test
