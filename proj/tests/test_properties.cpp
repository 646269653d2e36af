#include "support.hpp"

namespace cspbt::test {
namespace {

std::string pair_text(const Process& p, const Process& q) { return unparse(p) + "  /  " + unparse(q); }

TEST(Preorder, ReflexiveAndTransitive) {
  TermGenerator gen(GenOptions::everything(), 31);
  int chains = 0;
  for (int i = 0; i < 600; ++i) {
    Process p = gen.term(), q = gen.term(), r = gen.term();
    EXPECT_TRUE(cs_geq(p, p)) << unparse(p);
    if (cs_geq(p, q) && cs_geq(q, r)) {
      ++chains;
      EXPECT_TRUE(cs_geq(p, r)) << pair_text(p, q) << "  /  " << unparse(r);
    }
  }
  EXPECT_GT(chains, 10);
}

TEST(Preorder, InternalStepsMoveAhead) {
  TermGenerator gen(GenOptions::everything(), 32);
  for (int i = 0; i < 150; ++i) {
    Process p = gen.term();
    Lts lts = build_lts(p);
    WeakClosure wc = weak_closure(lts);
    wc.tau_reach[lts.root()].for_each([&](std::size_t s) {
      EXPECT_TRUE(cs_geq(lts.terms[s], p)) << pair_text(lts.terms[s], p);
    });
  }
}

TEST(Preorder, ExamplesFromInternalChoice) {
  EXPECT_TRUE(cs_geq(P("b -> STOP"), P("a -> STOP |~| b -> STOP")));
  EXPECT_FALSE(cs_geq(P("a -> STOP |~| b -> STOP"), P("b -> STOP")));
}

TEST(Preorder, CharacterisedByInternalChoice) {
  TermGenerator gen(GenOptions::everything(), 33);
  for (int i = 0; i < 400; ++i) {
    Process p = gen.term(), q = gen.term();
    EXPECT_EQ(cs_geq(p, q), cs_equiv(Process::int_choice(p, q), q)) << pair_text(p, q);
  }
}

TEST(TauFree, CoincidesWithStrongBisimilarity) {
  TermGenerator gen(GenOptions::tau_free(), 34);
  int equal = 0;
  for (int i = 0; i < 400; ++i) {
    Process p = gen.term(), q = gen.term();
    bool cs = cs_equiv(p, q);
    equal += cs;
    EXPECT_EQ(cs, strong_bisim(p, q)) << pair_text(p, q);
  }
  EXPECT_GT(equal, 5);
}

TEST(Hierarchy, FinerThanFailuresDivergences) {
  TermGenerator gen(GenOptions::everything(), 35);
  int strict = 0;
  for (int i = 0; i < 600; ++i) {
    Process p = gen.term(2), q = gen.term(2);
    if (cs_equiv(p, q)) EXPECT_TRUE(fd_equiv(p, q)) << pair_text(p, q);
    if (cs_geq(p, q)) EXPECT_TRUE(fd_refines(p, q)) << pair_text(p, q);
    strict += fd_equiv(p, q) && !cs_equiv(p, q);
  }
  EXPECT_GT(strict, 0);
}

TEST(Hierarchy, StrongBisimilarityFinerStill) {
  TermGenerator gen(GenOptions::everything(), 36);
  for (int i = 0; i < 400; ++i) {
    Process p = gen.term(2), q = gen.term(2);
    if (strong_bisim(p, q)) EXPECT_TRUE(cs_equiv(p, q)) << pair_text(p, q);
  }
}

/// Equivalent pairs: axiom instances and terms against their normal forms.
std::vector<std::pair<Process, Process>> equivalent_pairs(std::size_t n, std::uint64_t seed) {
  std::vector<std::pair<Process, Process>> out;
  TermGenerator gen(GenOptions::finite(), seed);
  std::vector<const Axiom*> eqs;
  for (const Axiom* ax : axioms_of_table(3))
    if (ax->kind == AxiomKind::Equation) eqs.push_back(ax);
  Instantiator in(filler_options(3, 2), seed);
  while (out.size() < n) {
    if (gen.chance(0.5)) {
      out.push_back(eqs[gen.pick(eqs.size())]->instantiate(in));
    } else {
      Process p = gen.term(2);
      out.emplace_back(p, normalize(p).term);
    }
  }
  return out;
}

TEST(Congruence, OneOperatorContexts) {
  TermGenerator gen(GenOptions::everything(), 37);
  for (const auto& [p, q] : equivalent_pairs(120, 37)) {
    ASSERT_TRUE(cs_equiv(p, q)) << pair_text(p, q);
    for (const auto& c : random_contexts(gen))
      EXPECT_TRUE(cs_equiv(c.fill(p), c.fill(q))) << c.name << ": " << pair_text(p, q);
  }
}

TEST(Precongruence, OneOperatorContexts) {
  TermGenerator gen(GenOptions::everything(), 38);
  int tested = 0;
  for (int i = 0; i < 400 && tested < 120; ++i) {
    Process p = gen.term(2);
    Lts lts = build_lts(p);
    WeakClosure wc = weak_closure(lts);
    std::vector<std::size_t> ahead;
    wc.tau_reach[lts.root()].for_each([&](std::size_t s) { ahead.push_back(s); });
    Process q = lts.terms[ahead[gen.pick(ahead.size())]];
    if (q == p) continue;
    ++tested;
    for (const auto& c : random_contexts(gen))
      if (c.precongruent)
        EXPECT_TRUE(cs_geq(c.fill(q), c.fill(p))) << c.name << ": " << pair_text(q, p);
  }
  EXPECT_GE(tested, 60);
}

TEST(Precongruence, FailsUnderPrefix) {
  Process p = P("STOP"), q = P("(a -> STOP) [> STOP");
  ASSERT_TRUE(cs_geq(p, q));
  EXPECT_FALSE(cs_geq(Process::prefix("b", p), Process::prefix("b", q)));
  EXPECT_FALSE(cs_geq(Process::throw_({"b"}, P("b -> STOP"), p),
                      Process::throw_({"b"}, P("b -> STOP"), q)));
}

TEST(Throw, EncodesPrefixing) {
  TermGenerator gen(GenOptions::everything(), 39);
  for (int i = 0; i < 150; ++i) {
    Process p = gen.term();
    Action a = gen.action();
    EXPECT_TRUE(strong_bisim(Process::prefix(a, p),
                             Process::throw_({a}, Process::prefix(a, Process::stop()), p)))
        << unparse(p);
  }
}

}  // namespace
}  // namespace cspbt::test
