#include "support.hpp"

namespace cspbt::test {
namespace {

std::string U(const Process& p) { return unparse(p); }

std::optional<std::string> law(const std::string& name, std::string_view t) {
  auto r = (*find_law(name))(P(t));
  if (!r) return std::nullopt;
  return U(*r);
}

TEST(Laws, Examples) {
  EXPECT_EQ(law("I1", "a -> STOP |~| a -> STOP"), "a -> STOP");
  EXPECT_EQ(law("I1", "a -> STOP |~| b -> STOP"), std::nullopt);
  EXPECT_EQ(law("E4", "div [] STOP"), "div");
  EXPECT_EQ(law("S1", "a -> STOP [> a -> STOP"), "a -> STOP");
  EXPECT_EQ(law("S5", "STOP [> a -> STOP"), "a -> STOP");
  EXPECT_EQ(law("Prune", "a -> STOP [] a -> (STOP |~| STOP)"), "a -> (STOP |~| STOP)");
  EXPECT_EQ(law("P4", "a -> STOP [|{a}|] a -> STOP"), "a -> (STOP [|{a}|] STOP)");
  EXPECT_EQ(law("H5", "(a -> STOP) \\ {b}"), "a -> (STOP \\ {b})");
  EXPECT_EQ(law("R4", "STOP [[a := b]]"), "STOP");
}

TEST(Laws, SideConditions) {
  EXPECT_EQ(law("Prune", "a -> STOP [] b -> (STOP |~| STOP)"), std::nullopt);
  EXPECT_EQ(law("S1", "a -> STOP [> b -> STOP"), std::nullopt);
}

TEST(Replay, AppliesSteps) {
  ProofTrace t{{"I1", {0}, Direction::LeftToRight, std::nullopt},
               {"E4", {}, Direction::LeftToRight, std::nullopt}};
  EXPECT_EQ(U(replay(P("(a -> STOP |~| a -> STOP) [] STOP"), t)), "a -> STOP");
}

TEST(Replay, RejectsIllegalStep) {
  ProofTrace t{{"E4", {}, Direction::LeftToRight, std::nullopt},
               {"I1", {}, Direction::LeftToRight, std::nullopt}};
  try {
    replay(P("a -> STOP [] STOP"), t);
    FAIL();
  } catch (const RewriteError& e) {
    EXPECT_EQ(e.step(), 1u);
  }
  ProofTrace bad_path{{"E4", {3}, Direction::LeftToRight, std::nullopt}};
  EXPECT_THROW(replay(P("a -> STOP"), bad_path), RewriteError);
  ProofTrace unknown{{"Z9", {}, Direction::LeftToRight, std::nullopt}};
  EXPECT_THROW(replay(P("STOP"), unknown), RewriteError);
}

TEST(Replay, RightToLeftChecksWitness) {
  ProofTrace ok{{"I1", {}, Direction::RightToLeft, P("b -> STOP |~| b -> STOP")}};
  EXPECT_EQ(U(replay(P("b -> STOP"), ok)), "b -> STOP |~| b -> STOP");
  ProofTrace wrong{{"I1", {}, Direction::RightToLeft, P("a -> STOP |~| a -> STOP")}};
  EXPECT_THROW(replay(P("b -> STOP"), wrong), RewriteError);
  ProofTrace missing{{"I1", {}, Direction::RightToLeft, std::nullopt}};
  EXPECT_THROW(replay(P("b -> STOP"), missing), RewriteError);
}

TEST(ReverseTrace, ReplaysBack) {
  TermGenerator gen(GenOptions::finite(), 3);
  for (int i = 0; i < 200; ++i) {
    Process p = gen.term();
    auto n = normalize(p);
    EXPECT_EQ(replay(n.term, reverse_trace(p, n.trace)), p) << U(p);
  }
}

TEST(Normalize, Examples) {
  EXPECT_EQ(U(normalize(P("a -> STOP")).term), "a -> STOP");
  EXPECT_TRUE(normalize(P("a -> STOP")).trace.empty());
  EXPECT_EQ(U(normalize(P("a -> STOP |~| b -> STOP")).term), "STOP [> (a -> STOP |~| b -> STOP)");
  EXPECT_EQ(U(normalize(P("(a -> STOP) \\ {a}")).term), "STOP");
}

TEST(Normalize, RejectsUnsupported) {
  EXPECT_THROW(normalize(P("mu X . a -> X")), UnsupportedConstruct);
  EXPECT_THROW(normalize(P("a -> STOP /\\ b -> STOP")), UnsupportedConstruct);
}

TEST(Normalize, GrammarTraceAndEquivalence) {
  TermGenerator gen(GenOptions::finite(), 21);
  for (int i = 0; i < 300; ++i) {
    Process p = gen.term();
    auto n = normalize(p);
    EXPECT_TRUE(is_normal_form(n.term)) << U(p);
    EXPECT_EQ(replay(p, n.trace), n.term) << U(p);
    EXPECT_TRUE(cs_equiv(p, n.term)) << U(p);
    EXPECT_EQ(n.form.to_process(), n.term);
  }
}

TEST(Normalize, EveryStepPreservesEquivalence) {
  TermGenerator gen(GenOptions::finite(), 22);
  for (int i = 0; i < 40; ++i) {
    Process cur = gen.term(2);
    for (const auto& s : normalize(cur).trace) {
      Process next = std::get<Process>(apply_step(cur, s));
      const Axiom* ax = find_axiom(s.axiom);
      ASSERT_NE(ax, nullptr) << s.axiom;
      if (ax->kind == AxiomKind::Equation)
        EXPECT_TRUE(cs_equiv(cur, next)) << s.axiom << " " << U(cur);
      cur = next;
    }
  }
}

TEST(GrammarPredicate, Examples) {
  EXPECT_TRUE(is_normal_form(P("STOP")));
  EXPECT_TRUE(is_normal_form(P("div")));
  EXPECT_TRUE(is_normal_form(P("div [] a -> STOP")));
  EXPECT_TRUE(is_normal_form(P("a -> STOP [> (b -> STOP |~| div)")));
  EXPECT_FALSE(is_normal_form(P("a -> STOP |~| b -> STOP")));
  EXPECT_FALSE(is_normal_form(P("a -> STOP [] div")));
  EXPECT_FALSE(is_normal_form(P("a -> (STOP |~| STOP)")));
  EXPECT_FALSE(is_normal_form(P("STOP [> (STOP [> STOP)")));
}

TEST(Saturate, Examples) {
  auto s = saturate(P("a -> STOP [> b -> STOP"));
  EXPECT_TRUE(is_saturated(s.form));
  EXPECT_TRUE(cs_equiv(s.term, P("(a -> STOP [] b -> STOP) [> b -> STOP")));
  EXPECT_EQ(replay(P("a -> STOP [> b -> STOP"), s.trace), s.term);
  EXPECT_EQ(U(saturate(P("STOP")).term), "STOP");
  auto d = saturate(P("a -> STOP [> (div [] b -> STOP)"));
  EXPECT_TRUE(d.form.div_top);
  EXPECT_TRUE(is_saturated(d.form));
  EXPECT_THROW(saturate(P("a -> STOP |~| b -> STOP")), std::invalid_argument);
}

TEST(Saturate, Generated) {
  TermGenerator gen(GenOptions::finite(), 23);
  for (int i = 0; i < 150; ++i) {
    Process n = normalize(gen.term()).term;
    auto s = saturate(n);
    EXPECT_TRUE(is_saturated(s.form)) << U(n);
    EXPECT_EQ(replay(n, s.trace), s.term);
    EXPECT_TRUE(cs_equiv(n, s.term)) << U(n);
  }
}

TEST(Prune, Examples) {
  EXPECT_EQ(U(prune(P("a -> STOP [] a -> STOP")).term), "a -> STOP");
  EXPECT_EQ(U(prune(P("a -> STOP [] b -> STOP")).term), "a -> STOP [] b -> STOP");
  EXPECT_EQ(U(prune(P("a -> div [] a -> STOP")).term), "a -> div [] a -> STOP");
  // The dominated a -> STOP branch goes; the survivor is a -> (STOP |~| STOP) in normal form.
  auto p = prune(P("a -> STOP [] a -> (STOP [> STOP)"));
  EXPECT_TRUE(is_pruned(p.form));
  EXPECT_EQ(p.form.branches.size(), 1u);
}

TEST(Prune, Generated) {
  TermGenerator gen(GenOptions::finite(), 24);
  for (int i = 0; i < 150; ++i) {
    Process n = saturate(normalize(gen.term()).term).term;
    auto p = prune(n);
    EXPECT_TRUE(is_pruned(p.form)) << U(n);
    EXPECT_EQ(replay(n, p.trace), p.term);
    EXPECT_TRUE(cs_equiv(n, p.term)) << U(n);
  }
}

TEST(Canonical, Properties) {
  TermGenerator gen(GenOptions::finite(), 25);
  for (int i = 0; i < 150; ++i) {
    Process p = gen.term();
    auto c = canonical_form(p);
    EXPECT_TRUE(is_normal_form(c.term));
    EXPECT_TRUE(is_saturated(c.form, true)) << U(p);
    EXPECT_TRUE(is_pruned(c.form)) << U(p);
    EXPECT_EQ(replay(p, c.trace), c.term);
    EXPECT_EQ(canonical_form(c.term).term, c.term) << U(p);
  }
}

TEST(Decide, Examples) {
  EXPECT_TRUE(decide_equal(P("a -> STOP [> a -> STOP"), P("a -> STOP")).equal);
  const char* xs[] = {"a -> STOP", "b -> STOP", "div"};
  for (auto a : xs)
    for (auto b : xs)
      for (auto c : xs) {
        std::string l = std::string(a) + " |~| (" + b + " |~| " + c + ")";
        std::string r = std::string("(") + a + " |~| " + b + ") |~| " + c;
        auto d = decide_equal(P(l), P(r));
        EXPECT_TRUE(d.equal) << l;
        EXPECT_EQ(replay(P(l), d.trace), P(r));
      }
  auto no = decide_equal(P("div"), P("STOP"));
  EXPECT_FALSE(no.equal);
  EXPECT_TRUE(no.trace.empty());
}

TEST(Decide, AgreesWithCsEquiv) {
  TermGenerator gen(GenOptions::finite(), 26);
  Canonicalizer c;
  for (int i = 0; i < 300; ++i) {
    Process p = gen.term(), q = gen.term();
    auto d = decide_equal(p, q, c);
    EXPECT_EQ(d.equal, cs_equiv(p, q)) << U(p) << " vs " << U(q);
    if (d.equal) EXPECT_EQ(replay(p, d.trace), q);
  }
}

TEST(TraceJson, RoundTrip) {
  auto d = decide_equal(P("(a -> STOP |~| b -> STOP) [> div"), P("(b -> STOP |~| a -> STOP) [> div"));
  ASSERT_TRUE(d.equal);
  auto back = trace_from_json(Json::parse(to_json(d.trace).dump()));
  ASSERT_EQ(back.size(), d.trace.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].axiom, d.trace[i].axiom);
    EXPECT_EQ(back[i].path, d.trace[i].path);
    EXPECT_EQ(back[i].direction, d.trace[i].direction);
    EXPECT_EQ(back[i].witness.has_value(), d.trace[i].witness.has_value());
  }
  EXPECT_EQ(replay(P("(a -> STOP |~| b -> STOP) [> div"), back),
            P("(b -> STOP |~| a -> STOP) [> div"));
}

}  // namespace
}  // namespace cspbt::test
