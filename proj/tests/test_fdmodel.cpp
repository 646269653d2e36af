#include "support.hpp"

namespace cspbt::test {
namespace {

TEST(FdSemantics, Stop) {
  FdDenotation d = fd_semantics(P("STOP"), {"a", "b"});
  EXPECT_TRUE(d.minimal_divergences(4).empty());
  EXPECT_EQ(d.maximal_refusals({}), (std::vector<ActionSet>{{"a", "b"}}));
  EXPECT_FALSE(d.is_trace({"a"}));
}

TEST(FdSemantics, Div) {
  FdDenotation d = fd_semantics(P("div"), {"a"});
  EXPECT_EQ(d.minimal_divergences(4), (std::vector<Trace>{{}}));
  EXPECT_TRUE(d.maximal_refusals({}).empty());
  EXPECT_TRUE(d.is_failure({"a", "a"}, ActionSet{"a"}));
  EXPECT_TRUE(d.is_divergence({"a"}));
}

TEST(FdSemantics, InternalChoiceOfPrefixes) {
  FdDenotation d = fd_semantics(P("a -> STOP |~| b -> STOP"), {"a", "b"});
  auto eps = d.maximal_refusals({});
  std::sort(eps.begin(), eps.end());
  EXPECT_EQ(eps, (std::vector<ActionSet>{{"a"}, {"b"}}));
  EXPECT_EQ(d.maximal_refusals({"a"}), (std::vector<ActionSet>{{"a", "b"}}));
  EXPECT_EQ(d.maximal_refusals({"b"}), (std::vector<ActionSet>{{"a", "b"}}));
  EXPECT_TRUE(d.minimal_divergences(4).empty());
  EXPECT_TRUE(d.is_failure({}, ActionSet{"b", "zz"}));
  EXPECT_FALSE(d.is_failure({}, ActionSet{"a", "b"}));
}

TEST(FdSemantics, DivergenceCutsExploration) {
  FdDenotation d = fd_semantics(P("a -> (div |~| b -> STOP)"));
  EXPECT_EQ(d.minimal_divergences(4), (std::vector<Trace>{{"a"}}));
  EXPECT_TRUE(d.is_trace({"a", "b", "b", "a"}));
}

TEST(FdRefines, Examples) {
  TermGenerator gen(GenOptions::everything(), 4);
  for (int i = 0; i < 50; ++i) EXPECT_TRUE(fd_refines(gen.term(), P("div")));
  EXPECT_FALSE(fd_refines(P("a -> STOP"), P("b -> STOP")));
  Process lhs = P("a -> STOP [] (b -> STOP |~| STOP)");
  Process rhs = P("(a -> STOP [] b -> STOP) |~| (a -> STOP [] STOP)");
  EXPECT_TRUE(fd_refines(lhs, rhs));
  EXPECT_TRUE(fd_refines(rhs, lhs));
}

TEST(FdEquiv, Examples) {
  EXPECT_TRUE(fd_equiv(P("a -> STOP [] div"), P("div")));
  EXPECT_TRUE(fd_equiv(P("a -> STOP"), P("a -> STOP")));
  EXPECT_TRUE(fd_equiv(P("a -> STOP [> b -> STOP"), P("(a -> STOP [] b -> STOP) |~| b -> STOP")));
  EXPECT_FALSE(fd_equiv(P("STOP"), P("div")));
}

TEST(FdRefines, PreorderAndKernel) {
  TermGenerator gen(GenOptions::everything(), 17);
  int chains = 0;
  for (int i = 0; i < 400; ++i) {
    Process p = gen.term(), q = gen.term(), r = gen.term();
    EXPECT_TRUE(fd_refines(p, p));
    EXPECT_EQ(fd_equiv(p, q), fd_refines(p, q) && fd_refines(q, p));
    if (fd_refines(p, q) && fd_refines(q, r)) {
      ++chains;
      EXPECT_TRUE(fd_refines(p, r)) << unparse(p) << " / " << unparse(q) << " / " << unparse(r);
    }
  }
  EXPECT_GT(chains, 10);
}

TEST(FdRefines, MonotoneInUnaryContexts) {
  TermGenerator gen(GenOptions::everything(), 23);
  int tested = 0;
  for (int i = 0; i < 600 && tested < 200; ++i) {
    Process p = gen.term(), q = gen.term();
    if (!fd_refines(p, q)) continue;
    ++tested;
    Process o = gen.term(2);
    ActionSet a = gen.action_set();
    Renaming f = gen.renaming();
    std::vector<std::function<Process(const Process&)>> ctx = {
        [&](const Process& x) { return Process::prefix("a", x); },
        [&](const Process& x) { return Process::int_choice(x, o); },
        [&](const Process& x) { return Process::ext_choice(o, x); },
        [&](const Process& x) { return Process::sliding(x, o); },
        [&](const Process& x) { return Process::sliding(o, x); },
        [&](const Process& x) { return Process::parallel(a, x, o); },
        [&](const Process& x) { return Process::conceal(a, x); },
        [&](const Process& x) { return Process::rename(f, x); },
        [&](const Process& x) { return Process::interrupt(x, o); },
        [&](const Process& x) { return Process::interrupt(o, x); },
        [&](const Process& x) { return Process::throw_(a, x, o); },
        [&](const Process& x) { return Process::throw_(a, o, x); },
    };
    for (auto& c : ctx) EXPECT_TRUE(fd_refines(c(p), c(q))) << unparse(c(p)) << " / " << unparse(c(q));
  }
  EXPECT_GE(tested, 100);
}

TEST(FdCounterexample, ShortestMissingBehaviour) {
  auto [dp, dq] = fd_pair(P("a -> b -> STOP"), P("a -> STOP"));
  auto cx = fd_counterexample(dp, dq);
  ASSERT_TRUE(cx);
  EXPECT_EQ(cx->kind, FdCounterexample::Trace);
  EXPECT_EQ(cx->trace, (Trace{"a", "b"}));
  auto [ds, dd] = fd_pair(P("STOP"), P("div"));
  EXPECT_FALSE(fd_counterexample(ds, dd));
  auto cd = fd_counterexample(dd, ds);
  ASSERT_TRUE(cd);
  EXPECT_EQ(cd->kind, FdCounterexample::Divergence);
}

TEST(Healthiness, Examples) {
  EXPECT_TRUE(check_healthiness(fd_semantics(P("STOP"), {"a"}), 4).healthy);
  EXPECT_TRUE(check_healthiness(fd_semantics(P("div"), {"a", "b"}), 4).healthy);
  FdDenotation bad = fd_semantics(P("STOP"), {"a"});
  bad.nodes[0].refusals.clear();
  HealthReport r = check_healthiness(bad, 4);
  EXPECT_FALSE(r.healthy);
  EXPECT_EQ(r.violated, "N1");
  ASSERT_FALSE(r.skipped.empty());
  EXPECT_EQ(r.skipped[0].substr(0, 2), "N5");
}

TEST(Healthiness, DetectsMissingRefusalClosure) {
  FdDenotation bad = fd_semantics(P("a -> STOP"), {"a", "b"});
  bad.nodes[0].next.clear();
  EXPECT_FALSE(check_healthiness(bad, 4).healthy);
}

TEST(Healthiness, GeneratedDenotations) {
  GenOptions g = GenOptions::everything();
  g.with(Op::Mu);
  g.recursion_rate = 0.2;
  TermGenerator gen(g, 31);
  for (int i = 0; i < 200; ++i) {
    Process p = gen.term();
    HealthReport r = check_healthiness(fd_semantics(p), 4);
    EXPECT_TRUE(r.healthy) << unparse(p) << ": " << r.violated << " " << r.detail;
  }
}

TEST(FdJson, SortedTracesAndRefusals) {
  Json j = to_json(fd_semantics(P("a -> STOP |~| b -> STOP")), 3);
  EXPECT_EQ(j["alphabet"], Json::parse(R"(["a","b"])"));
  ASSERT_EQ(j["failures"].size(), 3u);
  EXPECT_EQ(j["failures"][1]["trace"], Json::parse(R"(["a"])"));
  EXPECT_EQ(j["failures"][1]["maximal_refusals"], Json::parse(R"([["a","b"]])"));
  EXPECT_TRUE(j["minimal_divergences"].empty());
}

}  // namespace
}  // namespace cspbt::test
