#include "support.hpp"

namespace cspbt::test {
namespace {

TEST(AxiomDb, TablesAndTiers) {
  for (const char* n : {"Bot", "I4", "E1", "E5", "D2", "D3", "D4", "SC", "P2", "P3", "H2", "U2",
                        "U3", "U5"}) {
    const Axiom* ax = find_axiom(n);
    ASSERT_NE(ax, nullptr) << n;
    EXPECT_EQ(ax->tier, Tier::FdOnly) << n;
  }
  for (const char* n : {"I2", "E2", "E3", "E4", "P0", "P1", "P4", "P10", "H1", "H3", "H4", "R0",
                        "R5", "T0", "T6", "U4", "E1div"})
    EXPECT_EQ(find_axiom(n)->tier, Tier::StrongBisim) << n;
  for (const char* n : {"I1", "I3", "S1", "S5", "Prune", "P16"})
    EXPECT_EQ(find_axiom(n)->tier, Tier::CsDelta) << n;
  EXPECT_EQ(find_axiom("Nope"), nullptr);
  for (const Axiom* ax : axioms_of_table(2)) EXPECT_TRUE(ax->in_fd_table) << ax->name;
  for (const Axiom* ax : axioms_of_table(3)) {
    EXPECT_TRUE(ax->in_cs_table || ax->auxiliary) << ax->name;
    EXPECT_NE(ax->tier, Tier::FdOnly) << ax->name;
  }
}

TEST(AxiomInstances, Examples) {
  for (const auto& [l, r] : axiom_instances(*find_axiom("I1"), 20, 1)) {
    ASSERT_TRUE(l.is(Op::IntChoice));
    EXPECT_EQ(l.left(), l.right());
    EXPECT_EQ(l.left(), r);
  }
  for (const auto& [l, r] : axiom_instances(*find_axiom("E4"), 20, 2)) {
    ASSERT_TRUE(l.is(Op::ExtChoice));
    EXPECT_TRUE(l.right().is(Op::Stop));
    EXPECT_EQ(l.left(), r);
  }
  for (const auto& [l, r] : axiom_instances(*find_axiom("P4"), 20, 3)) {
    EXPECT_TRUE(l.is(Op::Parallel)) << unparse(l);
    EXPECT_TRUE(strong_bisim(l, r)) << unparse(l);
  }
}

TEST(AxiomInstances, Deterministic) {
  auto a = axiom_instances(*find_axiom("P11"), 30, 9);
  auto b = axiom_instances(*find_axiom("P11"), 30, 9);
  EXPECT_EQ(a, b);
}

TEST(AxiomInstances, LawsRewriteLeftToRight) {
  for (const auto& [name, fn] : law_table()) {
    const Axiom* ax = find_axiom(name);
    ASSERT_NE(ax, nullptr) << name;
    for (const auto& [l, r] : axiom_instances(*ax, 50, 4)) {
      auto got = fn(l);
      ASSERT_TRUE(got.has_value()) << name << ": " << unparse(l);
      EXPECT_EQ(*got, r) << name << ": " << unparse(l);
    }
  }
}

TEST(Harness, CsTableSound) {
  HarnessOptions o;
  o.table = 3;
  o.samples = 40;
  auto rep = soundness_harness(o);
  EXPECT_EQ(rep.axioms.size(), axioms_of_table(3).size());
  for (const auto& a : rep.axioms) {
    EXPECT_TRUE(a.ok()) << a.name << " " << a.error;
    EXPECT_EQ(a.instances, 40u);
  }
}

TEST(Harness, FdTableSound) {
  HarnessOptions o;
  o.table = 2;
  o.samples = 40;
  o.behavioural = false;
  auto rep = soundness_harness(o);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.violations(), 0u);
}

TEST(Harness, RedAxiomReported) {
  Axiom e5 = *find_axiom("E5");
  auto v = check_instance(e5, P("(a -> STOP) [] div"), P("div"), true, kDefaultStateBound);
  EXPECT_TRUE(v.empty());  // fd-only: behavioural checks skipped
  e5.tier = Tier::CsDelta;
  v = check_instance(e5, P("(a -> STOP) [] div"), P("div"), true, kDefaultStateBound);
  EXPECT_EQ(v, std::vector<std::string>{"cs"});
}

TEST(Separation, FoundForE5) {
  auto s = find_separation(*find_axiom("E5"), 200, 2);
  ASSERT_TRUE(s.found);
  EXPECT_TRUE(fd_equiv(s.lhs, s.rhs));
  EXPECT_FALSE(cs_equiv(s.lhs, s.rhs));
}

TEST(Separation, NoneForI4) {
  // P |~| Q below P holds in both models, so no instance separates them.
  auto s = find_separation(*find_axiom("I4"), 200, 2);
  EXPECT_FALSE(s.found);
  EXPECT_EQ(s.tried, 600u);
}

TEST(HarnessJson, Shape) {
  HarnessOptions o;
  o.samples = 5;
  auto rep = check_axiom(*find_axiom("S1"), o);
  auto j = to_json(rep);
  EXPECT_EQ(j["axiom"], "S1");
  EXPECT_EQ(j["tier"], "cs-delta");
  EXPECT_EQ(j["instances"], 5);
  EXPECT_EQ(j["holds"], true);
  EXPECT_TRUE(j["violations"].empty());
}

}  // namespace
}  // namespace cspbt::test
