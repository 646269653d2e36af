#include "support.hpp"

namespace cspbt::test {
namespace {

TEST(StrongBisim, Examples) {
  EXPECT_TRUE(strong_bisim(P("a -> STOP [] b -> div"), P("b -> div [] a -> STOP")));
  EXPECT_FALSE(strong_bisim(P("a -> STOP |~| a -> STOP"), P("a -> STOP")));
  EXPECT_TRUE(strong_bisim(P("a -> b -> STOP"), P("(a -> STOP) [|{a}|> b -> STOP")));
  EXPECT_FALSE(strong_bisim(P("div"), P("STOP")));
}

TEST(StrongBisim, DistinguishesBranchingTime) {
  EXPECT_FALSE(strong_bisim(P("a -> (b -> STOP [] c -> STOP)"),
                            P("a -> b -> STOP [] a -> c -> STOP")));
}

std::pair<std::size_t, std::size_t> roots(const PairSpace& ps) {
  return {ps.lts.roots[0], ps.lts.roots[1]};
}

TEST(Dpcs, StopStop) {
  auto ps = pair_space(P("STOP"), P("STOP"));
  auto r = dpcs_largest(ps.lts, ps.closure).relation;
  auto [a, b] = roots(ps);
  EXPECT_TRUE(r.contains(a, b));
}

TEST(Dpcs, DivStopUnrelatedBothWays) {
  auto ps = pair_space(P("div"), P("STOP"));
  auto r = dpcs_largest(ps.lts, ps.closure).relation;
  auto [d, s] = roots(ps);
  EXPECT_FALSE(r.contains(d, s));
  EXPECT_FALSE(r.contains(s, d));
}

TEST(Dpcs, StopAheadOfTimedOutPrefix) {
  auto ps = pair_space(P("STOP"), P("(a -> STOP) [> STOP"));
  auto r = dpcs_largest(ps.lts, ps.closure).relation;
  auto [s, t] = roots(ps);
  EXPECT_TRUE(r.contains(s, t));
  EXPECT_FALSE(r.contains(t, s));
}

TEST(Dpcs, LargestRelationIsACoupledSimulation) {
  TermGenerator gen(GenOptions::everything(), 8);
  for (int i = 0; i < 200; ++i) {
    auto ps = pair_space(gen.term(), gen.term());
    auto res = dpcs_largest(ps.lts, ps.closure);
    EXPECT_FALSE(verify_coupled_simulation(ps.lts, ps.closure, res.relation, true).has_value());
    EXPECT_EQ(res.relation.kind, RelationKind::Largest);
  }
}

TEST(Dpcs, LargestAmongCandidates) {
  // Adding any missing pair to the largest relation breaks it.
  TermGenerator gen(GenOptions::everything(), 12);
  for (int i = 0; i < 40; ++i) {
    auto ps = pair_space(gen.term(2), gen.term(2));
    auto r = dpcs_largest(ps.lts, ps.closure).relation;
    const std::size_t n = ps.lts.num_states;
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t) {
        if (r.contains(s, t)) continue;
        SimRelation bigger = r;
        bigger.insert(s, t);
        EXPECT_TRUE(verify_coupled_simulation(ps.lts, ps.closure, bigger, true).has_value());
      }
  }
}

TEST(Dpcs, IndependentOfDeletionOrder) {
  TermGenerator gen(GenOptions::everything(), 15);
  std::mt19937_64 rng(99);
  for (int i = 0; i < 150; ++i) {
    auto ps = pair_space(gen.term(), gen.term());
    auto a = dpcs_largest(ps.lts, ps.closure).relation;
    auto b = dpcs_largest(ps.lts, ps.closure, &rng).relation;
    EXPECT_TRUE(a == b);
  }
}

TEST(CsGeq, Examples) {
  EXPECT_TRUE(cs_geq(P("a -> STOP"), P("a -> STOP")));
  EXPECT_TRUE(cs_geq(P("b -> STOP"), P("a -> STOP |~| b -> STOP")));
  EXPECT_FALSE(cs_geq(P("(a -> STOP) [> STOP"), P("STOP")));
  EXPECT_TRUE(cs_geq(P("STOP"), P("(a -> STOP) [> STOP")));
}

TEST(CsEquiv, Examples) {
  EXPECT_TRUE(cs_equiv(P("a -> STOP |~| a -> STOP"), P("a -> STOP")));
  Process q = P("a -> STOP |~| b -> STOP");
  EXPECT_FALSE(cs_equiv(Process::ext_choice(q, q), q));
  EXPECT_FALSE(cs_equiv(P("div"), P("STOP")));
}

TEST(VerifyRelation, Examples) {
  // Identity plus the pair in both directions for P |~| P against P.
  auto ps = pair_space(P("a -> STOP |~| a -> STOP"), P("a -> STOP"));
  const std::size_t n = ps.lts.num_states;
  SimRelation r(n);
  for (std::size_t s = 0; s < n; ++s) r.insert(s, s);
  auto [x, y] = roots(ps);
  r.insert(x, y);
  r.insert(y, x);
  EXPECT_FALSE(verify_coupled_simulation(ps.lts, ps.closure, r, true).has_value());

  SimRelation one(n);
  for (std::size_t s = 0; s < n; ++s) one.insert(s, s);
  one.insert(x, y);
  auto bad = verify_coupled_simulation(ps.lts, ps.closure, one, true);
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(bad->clause, Clause::Coupling);
  SimRelation rev(n);
  for (std::size_t s = 0; s < n; ++s) rev.insert(s, s);
  rev.insert(y, x);
  auto v = verify_coupled_simulation(ps.lts, ps.closure, rev, true);
  EXPECT_FALSE(v.has_value());

  EXPECT_FALSE(verify_coupled_simulation(ps.lts, ps.closure, SimRelation(n), true).has_value());
}

TEST(VerifyRelation, ReportsViolatedClause) {
  auto ps = pair_space(P("div"), P("STOP"));
  SimRelation r(ps.lts.num_states);
  auto [d, s] = roots(ps);
  r.insert(d, s);
  auto v = verify_coupled_simulation(ps.lts, ps.closure, r, true);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->clause, Clause::Divergence);
  auto plain = verify_coupled_simulation(ps.lts, ps.closure, r, false);
  ASSERT_TRUE(plain);
  EXPECT_EQ(plain->clause, Clause::Coupling);
}

}  // namespace
}  // namespace cspbt::test
