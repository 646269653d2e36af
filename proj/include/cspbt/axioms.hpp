// Axiom databases: the failures-divergences table, the coupled-simulation table and the
// auxiliary laws the normaliser needs, each with a validity tier and an instantiator that
// builds both sides directly from the schema.
#pragma once

#include <functional>
#include <string>

#include "cspbt/generate.hpp"
#include "cspbt/laws.hpp"

namespace cspbt {

/// Strongest relation an axiom is valid for.
enum class Tier { StrongBisim, CsDelta, FdOnly };
enum class AxiomKind { Equation, Inequation };

inline const char* tier_name(Tier t) {
  switch (t) {
    case Tier::StrongBisim: return "strong-bisim";
    case Tier::CsDelta: return "cs-delta";
    case Tier::FdOnly: return "fd-only";
  }
  return "?";
}

/// Fresh fillers for metavariables: terms, actions, sets, renamings and indexed families.
class Instantiator {
 public:
  Instantiator(GenOptions opts, std::uint64_t seed) : gen_(std::move(opts), seed) {}

  Process term() { return gen_.term(); }
  Process small() { return gen_.term(std::max(gen_.options().max_depth - 1, 0)); }
  Action action() { return gen_.action(); }
  ActionSet set() { return gen_.action_set(); }
  Renaming renaming() { return gen_.renaming(); }
  bool chance(double p) { return gen_.chance(p); }
  std::size_t pick(std::size_t n) { return gen_.pick(n); }

  /// A family of 0-2 guarded branches whose actions satisfy `ok`.
  std::vector<Branch> family(const std::function<bool(const Action&)>& ok = nullptr) {
    std::vector<Action> allowed;
    for (const auto& a : gen_.options().alphabet)
      if (!ok || ok(a)) allowed.push_back(a);
    std::vector<Branch> out;
    if (allowed.empty()) return out;
    std::size_t n = pick(3);
    for (std::size_t i = 0; i < n; ++i) out.push_back({allowed[pick(allowed.size())], small()});
    return out;
  }

  /// 1-2 terms for an internal family; members are not internal choices themselves.
  std::vector<Process> int_family() {
    std::vector<Process> out{member()};
    if (chance(0.5)) out.push_back(member());
    return out;
  }

 private:
  Process member() {
    for (;;) {
      Process p = small();
      if (!p.is(Op::IntChoice)) return p;
    }
  }

  TermGenerator gen_;
};

struct Axiom {
  std::string name;
  std::string schema;  // human-readable statement
  Tier tier = Tier::CsDelta;
  AxiomKind kind = AxiomKind::Equation;
  bool in_fd_table = false;
  bool in_cs_table = false;
  bool auxiliary = false;
  /// Builds (left, right) for fresh fillers.
  std::function<std::pair<Process, Process>(Instantiator&)> instantiate;
};

namespace detail {

using P = Process;

inline P ext(P l, P r) { return P::ext_choice(std::move(l), std::move(r)); }
inline P intc(P l, P r) { return P::int_choice(std::move(l), std::move(r)); }
inline P slide(P l, P r) { return P::sliding(std::move(l), std::move(r)); }
inline P pre(const Action& a, P b) { return P::prefix(a, std::move(b)); }

/// Metavariables of one operand of an expansion law.
struct Operand {
  bool div = false;
  std::vector<Branch> family;
  std::optional<P> slide;

  P head() const { return with_div(div, ext_all(family)); }
  P term() const { return slide ? P::sliding(head(), *slide) : head(); }
};

inline Operand operand(Instantiator& in, bool div, bool has_slide) {
  Operand o;
  o.div = div;
  o.family = in.family();
  if (has_slide) o.slide = in.small();
  return o;
}

/// Right-hand side of the expansion laws, written out from the schema.
inline P expansion_rhs(const ActionSet& a, const Operand& l, const Operand& r) {
  const P lt = l.term(), rt = r.term();
  std::vector<P> summands;
  for (const auto& bi : l.family)
    if (!a.count(bi.action)) summands.push_back(pre(bi.action, P::parallel(a, bi.body, rt)));
  for (const auto& bi : l.family)
    for (const auto& bj : r.family)
      if (bi.action == bj.action && a.count(bj.action))
        summands.push_back(pre(bi.action, P::parallel(a, bi.body, bj.body)));
  for (const auto& bj : r.family)
    if (!a.count(bj.action)) summands.push_back(pre(bj.action, P::parallel(a, lt, bj.body)));
  P top = with_div(l.div || r.div, ext_all(summands));
  std::vector<P> tail;
  if (l.slide) tail.push_back(P::parallel(a, *l.slide, rt));
  if (r.slide) tail.push_back(P::parallel(a, lt, *r.slide));
  return tail.empty() ? top : P::sliding(top, int_all(tail));
}

inline Axiom expansion_axiom(const std::string& name, bool ldiv, bool lslide, bool rdiv,
                             bool rslide, Tier tier, bool fd_table) {
  Axiom ax;
  ax.name = name;
  ax.schema = std::string(lslide ? "(" : "") + (ldiv ? "(div [] P)" : "P") +
              (lslide ? " [> P')" : "") + " [|A|] " + (rslide ? "(" : "") +
              (rdiv ? "(div [] Q)" : "Q") + (rslide ? " [> Q')" : "") +
              " = expansion, P = [] a_i -> P_i, Q = [] b_j -> Q_j";
  ax.tier = tier;
  ax.in_fd_table = fd_table;
  ax.in_cs_table = true;
  ax.instantiate = [=](Instantiator& in) {
    ActionSet a = in.set();
    Operand l = operand(in, ldiv, lslide);
    Operand r = operand(in, rdiv, rslide);
    return std::make_pair(P::parallel(a, l.term(), r.term()), expansion_rhs(a, l, r));
  };
  return ax;
}

/// H5-H8: concealment of [div []] family [[> P'].
inline Axiom hiding_axiom(const std::string& name, bool div, bool has_slide) {
  Axiom ax;
  ax.name = name;
  ax.schema = std::string(has_slide ? "((" : "(") + (div ? "div [] " : "") + "[] a_i -> P_i" +
              (has_slide ? ") [> P')" : ")") + " \\ A = ([div []] [] {a_i not in A} a_i -> P_i \\ A)" +
              " [> (" + (has_slide ? "P' \\ A |~| " : "") + "|~| {a_i in A} P_i \\ A)";
  ax.tier = Tier::CsDelta;
  ax.in_cs_table = true;
  ax.instantiate = [=](Instantiator& in) {
    ActionSet a = in.set();
    Operand o = operand(in, div, has_slide);
    std::vector<P> kept, hidden;
    if (o.slide) hidden.push_back(P::conceal(a, *o.slide));
    for (const auto& b : o.family) {
      if (a.count(b.action))
        hidden.push_back(P::conceal(a, b.body));
      else
        kept.push_back(pre(b.action, P::conceal(a, b.body)));
    }
    P top = with_div(div, ext_all(kept));
    P rhs = hidden.empty() ? top : P::sliding(top, int_all(hidden));
    return std::make_pair(P::conceal(a, o.term()), rhs);
  };
  return ax;
}

}  // namespace detail

/// Every axiom: the failures-divergences table, the coupled-simulation table and the
/// auxiliary laws, ordered by name within each group.
inline const std::vector<Axiom>& all_axioms() {
  using namespace detail;
  static const std::vector<Axiom> db = [] {
    std::vector<Axiom> v;
    using Inst = std::function<std::pair<P, P>(Instantiator&)>;
    auto add = [&](std::string name, std::string schema, Tier tier, bool fd, bool cs, Inst f,
                   AxiomKind kind = AxiomKind::Equation) {
      Axiom ax;
      ax.name = std::move(name);
      ax.schema = std::move(schema);
      ax.tier = tier;
      ax.kind = kind;
      ax.in_fd_table = fd;
      ax.in_cs_table = cs;
      ax.instantiate = std::move(f);
      v.push_back(std::move(ax));
    };
    const Tier SB = Tier::StrongBisim, CS = Tier::CsDelta, FD = Tier::FdOnly;

    add("Bot", "div [= P", FD, true, false,
        [](Instantiator& in) { return std::make_pair(P::div(), in.term()); },
        AxiomKind::Inequation);
    add("I1", "P |~| P = P", CS, true, true, [](Instantiator& in) {
      P p = in.term();
      return std::make_pair(intc(p, p), p);
    });
    add("I2", "P |~| Q = Q |~| P", SB, true, true, [](Instantiator& in) {
      P p = in.term(), q = in.term();
      return std::make_pair(intc(p, q), intc(q, p));
    });
    add("I3", "P |~| (Q |~| R) = (P |~| Q) |~| R", CS, true, true, [](Instantiator& in) {
      P p = in.term(), q = in.term(), r = in.term();
      return std::make_pair(intc(p, intc(q, r)), intc(intc(p, q), r));
    });
    add("I4", "P |~| Q [= P", FD, true, false,
        [](Instantiator& in) {
          P p = in.term(), q = in.term();
          return std::make_pair(intc(p, q), p);
        },
        AxiomKind::Inequation);
    add("E1", "P [] P = P", FD, true, false, [](Instantiator& in) {
      P p = in.term();
      return std::make_pair(ext(p, p), p);
    });
    add("E2", "P [] Q = Q [] P", SB, true, true, [](Instantiator& in) {
      P p = in.term(), q = in.term();
      return std::make_pair(ext(p, q), ext(q, p));
    });
    add("E3", "P [] (Q [] R) = (P [] Q) [] R", SB, true, true, [](Instantiator& in) {
      P p = in.term(), q = in.term(), r = in.term();
      return std::make_pair(ext(p, ext(q, r)), ext(ext(p, q), r));
    });
    add("E4", "P [] STOP = P", SB, true, true, [](Instantiator& in) {
      P p = in.term();
      return std::make_pair(ext(p, P::stop()), p);
    });
    add("E5", "P [] div = div", FD, true, false, [](Instantiator& in) {
      return std::make_pair(ext(in.term(), P::div()), P::div());
    });
    add("D1", "P [] (Q |~| R) = (P [] Q) |~| (P [] R)", CS, true, true, [](Instantiator& in) {
      P p = in.term(), q = in.term(), r = in.term();
      return std::make_pair(ext(p, intc(q, r)), intc(ext(p, q), ext(p, r)));
    });
    add("D2", "P |~| (Q [] R) = (P |~| Q) [] (P |~| R)", FD, true, false, [](Instantiator& in) {
      P p = in.term(), q = in.term(), r = in.term();
      return std::make_pair(intc(p, ext(q, r)), ext(intc(p, q), intc(p, r)));
    });
    add("D3", "(a -> P) [] (a -> Q) = a -> (P |~| Q)", FD, true, false, [](Instantiator& in) {
      Action a = in.action();
      P p = in.term(), q = in.term();
      return std::make_pair(ext(pre(a, p), pre(a, q)), pre(a, intc(p, q)));
    });
    add("D4", "(a -> P) |~| (a -> Q) = a -> (P |~| Q)", FD, true, false, [](Instantiator& in) {
      Action a = in.action();
      P p = in.term(), q = in.term();
      return std::make_pair(intc(pre(a, p), pre(a, q)), pre(a, intc(p, q)));
    });
    add("SC", "P [> Q = (P [] Q) |~| Q", FD, true, false, [](Instantiator& in) {
      P p = in.term(), q = in.term();
      return std::make_pair(slide(p, q), intc(ext(p, q), q));
    });
    add("S1", "P [> P = P", CS, false, true, [](Instantiator& in) {
      P p = in.term();
      return std::make_pair(slide(p, p), p);
    });
    add("S2", "P [> (Q [> R) = (P [> Q) [> R", CS, false, true, [](Instantiator& in) {
      P p = in.term(), q = in.term(), r = in.term();
      return std::make_pair(slide(p, slide(q, r)), slide(slide(p, q), r));
    });
    add("S3", "(P [> Q) [> R = (P [] Q) [> R", CS, false, true, [](Instantiator& in) {
      P p = in.term(), q = in.term(), r = in.term();
      return std::make_pair(slide(slide(p, q), r), slide(ext(p, q), r));
    });
    add("S4", "(P |~| Q) [> R = (P [] Q) [> R", CS, false, true, [](Instantiator& in) {
      P p = in.term(), q = in.term(), r = in.term();
      return std::make_pair(slide(intc(p, q), r), slide(ext(p, q), r));
    });
    add("S5", "STOP [> P = P", CS, false, true, [](Instantiator& in) {
      P p = in.term();
      return std::make_pair(slide(P::stop(), p), p);
    });
    add("S6", "(P [> Q) |~| (R [> S) = (P [] R) [> (Q |~| S)", CS, false, true,
        [](Instantiator& in) {
          P p = in.term(), q = in.term(), r = in.term(), s = in.term();
          return std::make_pair(intc(slide(p, q), slide(r, s)), slide(ext(p, r), intc(q, s)));
        });
    add("S7", "(P [> Q) [] (R [> S) = (P [] R) [> (Q [] S)", CS, false, true,
        [](Instantiator& in) {
          P p = in.term(), q = in.term(), r = in.term(), s = in.term();
          return std::make_pair(ext(slide(p, q), slide(r, s)), slide(ext(p, r), ext(q, s)));
        });
    add("Prune", "(a -> P) [] a -> (P |~| Q) = a -> (P |~| Q)", CS, false, true,
        [](Instantiator& in) {
          Action a = in.action();
          P p = in.term(), q = in.term();
          return std::make_pair(ext(pre(a, p), pre(a, intc(p, q))), pre(a, intc(p, q)));
        });
    add("P0", "P [|A|] (Q [|A|] R) = (P [|A|] Q) [|A|] R", SB, true, true, [](Instantiator& in) {
      ActionSet a = in.set();
      P p = in.term(), q = in.term(), r = in.term();
      return std::make_pair(P::parallel(a, p, P::parallel(a, q, r)),
                            P::parallel(a, P::parallel(a, p, q), r));
    });
    add("P1", "P [|A|] Q = Q [|A|] P", SB, true, true, [](Instantiator& in) {
      ActionSet a = in.set();
      P p = in.term(), q = in.term();
      return std::make_pair(P::parallel(a, p, q), P::parallel(a, q, p));
    });
    add("P2", "(P |~| Q) [|A|] R = (P [|A|] R) |~| (Q [|A|] R)", FD, true, false,
        [](Instantiator& in) {
          ActionSet a = in.set();
          P p = in.term(), q = in.term(), r = in.term();
          return std::make_pair(P::parallel(a, intc(p, q), r),
                                intc(P::parallel(a, p, r), P::parallel(a, q, r)));
        });
    add("P3", "P [|A|] div = div", FD, true, false, [](Instantiator& in) {
      ActionSet a = in.set();
      return std::make_pair(P::parallel(a, in.term(), P::div()), P::div());
    });
    v.push_back(expansion_axiom("P4", false, false, false, false, SB, true));
    v.push_back(expansion_axiom("P5", true, false, false, false, SB, false));
    v.push_back(expansion_axiom("P6", true, false, true, false, SB, false));
    v.push_back(expansion_axiom("P7", false, true, false, false, SB, false));
    v.push_back(expansion_axiom("P8", true, true, false, false, SB, false));
    v.push_back(expansion_axiom("P9", false, true, true, false, SB, false));
    v.push_back(expansion_axiom("P10", true, true, true, false, SB, false));
    v.push_back(expansion_axiom("P11", false, true, false, true, CS, false));
    v.push_back(expansion_axiom("P12", true, true, false, true, CS, false));
    v.push_back(expansion_axiom("P13", true, true, true, true, CS, false));
    for (bool div : {false, true}) {
      add(div ? "P15" : "P14",
          std::string(div ? "(div [] P)" : "P") +
              " [|A|] Q = ([div []] [] {a_i not in A} a_i -> P_i [|A|] Q) [> |~| {j} " +
              (div ? "(div [] P)" : "P") + " [|A|] Q_j, Q = |~| Q_j",
          CS, false, true, [div](Instantiator& in) {
            ActionSet a = in.set();
            Operand l = operand(in, div, false);
            std::vector<P> qs = in.int_family();
            P q = int_all(qs), lt = l.term();
            std::vector<P> kept, tail;
            for (const auto& b : l.family)
              if (!a.count(b.action)) kept.push_back(pre(b.action, P::parallel(a, b.body, q)));
            for (const auto& qj : qs) tail.push_back(P::parallel(a, lt, qj));
            return std::make_pair(P::parallel(a, lt, q),
                                  slide(with_div(div, ext_all(kept)), int_all(tail)));
          });
    }
    add("P16", "P [|A|] Q = |~| {i} (P_i [|A|] Q) |~| |~| {j} (P [|A|] Q_j), P = |~| P_i, Q = |~| Q_j",
        CS, false, true, [](Instantiator& in) {
          ActionSet a = in.set();
          std::vector<P> ps = in.int_family(), qs = in.int_family();
          P p = int_all(ps), q = int_all(qs);
          std::vector<P> all;
          for (const auto& pi : ps) all.push_back(P::parallel(a, pi, q));
          for (const auto& qj : qs) all.push_back(P::parallel(a, p, qj));
          return std::make_pair(P::parallel(a, p, q), int_all(all));
        });
    add("H1", "(P |~| Q) \\ A = (P \\ A) |~| (Q \\ A)", SB, true, true, [](Instantiator& in) {
      ActionSet a = in.set();
      P p = in.term(), q = in.term();
      return std::make_pair(P::conceal(a, intc(p, q)),
                            intc(P::conceal(a, p), P::conceal(a, q)));
    });
    add("H2", "(P [] a -> Q) \\ A = ((P [] Q) \\ A) |~| (Q \\ A) if a in A", FD, true, false,
        [](Instantiator& in) {
          ActionSet a = in.set();
          Action x = in.action();
          a.insert(x);
          P p = in.term(), q = in.term();
          return std::make_pair(P::conceal(a, ext(p, pre(x, q))),
                                intc(P::conceal(a, ext(p, q)), P::conceal(a, q)));
        });
    add("H3", "([] b_i -> P_i) \\ A = [] b_i -> (P_i \\ A) if no b_i in A", SB, true, false,
        [](Instantiator& in) {
          ActionSet a = in.set();
          auto fam = in.family([&](const Action& b) { return !a.count(b); });
          std::vector<Branch> hidden;
          for (const auto& b : fam) hidden.push_back({b.action, P::conceal(a, b.body)});
          return std::make_pair(P::conceal(a, ext_all(fam)), ext_all(hidden));
        });
    add("H4", "div \\ A = div", SB, true, false, [](Instantiator& in) {
      return std::make_pair(P::conceal(in.set(), P::div()), P::div());
    });
    v.push_back(hiding_axiom("H5", false, false));
    v.push_back(hiding_axiom("H6", true, false));
    v.push_back(hiding_axiom("H7", false, true));
    v.push_back(hiding_axiom("H8", true, true));
    for (auto [name, op] : {std::pair{"R0", Op::Sliding}, std::pair{"R1", Op::IntChoice},
                            std::pair{"R2", Op::ExtChoice}}) {
      std::string o = op == Op::Sliding ? " [> " : op == Op::IntChoice ? " |~| " : " [] ";
      add(name, "f(P" + o + "Q) = f(P)" + o + "f(Q)", SB, op != Op::Sliding, true,
          [op](Instantiator& in) {
            Renaming f = in.renaming();
            P p = in.term(), q = in.term();
            P lhs = op == Op::Sliding     ? slide(p, q)
                    : op == Op::IntChoice ? intc(p, q)
                                          : ext(p, q);
            P fp = P::rename(f, p), fq = P::rename(f, q);
            P rhs = op == Op::Sliding     ? slide(fp, fq)
                    : op == Op::IntChoice ? intc(fp, fq)
                                          : ext(fp, fq);
            return std::make_pair(P::rename(f, lhs), rhs);
          });
    }
    add("R3", "f(a -> P) = f(a) -> f(P)", SB, true, true, [](Instantiator& in) {
      Renaming f = in.renaming();
      Action a = in.action();
      P p = in.term();
      return std::make_pair(P::rename(f, pre(a, p)), pre(apply_renaming(f, a), P::rename(f, p)));
    });
    add("R4", "f(STOP) = STOP", SB, true, true, [](Instantiator& in) {
      return std::make_pair(P::rename(in.renaming(), P::stop()), P::stop());
    });
    add("R5", "f(div) = div", SB, true, true, [](Instantiator& in) {
      return std::make_pair(P::rename(in.renaming(), P::div()), P::div());
    });
    for (auto [name, op] : {std::pair{"T0", Op::Sliding}, std::pair{"T1", Op::IntChoice},
                            std::pair{"T2", Op::ExtChoice}}) {
      std::string o = op == Op::Sliding ? " [> " : op == Op::IntChoice ? " |~| " : " [] ";
      add(name, "(P" + o + "Q) [|A|> R = (P [|A|> R)" + o + "(Q [|A|> R)", SB,
          op != Op::Sliding, true, [op](Instantiator& in) {
            ActionSet a = in.set();
            P p = in.term(), q = in.term(), r = in.term();
            auto mk = [op](P x, P y) {
              return op == Op::Sliding     ? slide(x, y)
                     : op == Op::IntChoice ? intc(x, y)
                                           : ext(x, y);
            };
            return std::make_pair(P::throw_(a, mk(p, q), r),
                                  mk(P::throw_(a, p, r), P::throw_(a, q, r)));
          });
    }
    add("T3", "(a -> P) [|A|> Q = a -> (P [|A|> Q) if a not in A", SB, true, true,
        [](Instantiator& in) {
          ActionSet a = in.set();
          Action x = in.action();
          a.erase(x);
          P p = in.term(), q = in.term();
          return std::make_pair(P::throw_(a, pre(x, p), q), pre(x, P::throw_(a, p, q)));
        });
    add("T4", "(a -> P) [|A|> Q = a -> Q if a in A", SB, true, true, [](Instantiator& in) {
      ActionSet a = in.set();
      Action x = in.action();
      a.insert(x);
      P p = in.term(), q = in.term();
      return std::make_pair(P::throw_(a, pre(x, p), q), pre(x, q));
    });
    add("T5", "STOP [|A|> Q = STOP", SB, true, true, [](Instantiator& in) {
      return std::make_pair(P::throw_(in.set(), P::stop(), in.term()), P::stop());
    });
    add("T6", "div [|A|> Q = div", SB, true, true, [](Instantiator& in) {
      return std::make_pair(P::throw_(in.set(), P::div(), in.term()), P::div());
    });
    add("U1", "(P |~| Q) /\\ R = (P /\\ R) |~| (Q /\\ R)", CS, true, false, [](Instantiator& in) {
      P p = in.term(), q = in.term(), r = in.term();
      return std::make_pair(P::interrupt(intc(p, q), r),
                            intc(P::interrupt(p, r), P::interrupt(q, r)));
    });
    add("U2", "(P [] Q) /\\ R = (P /\\ R) [] (Q /\\ R)", FD, true, false, [](Instantiator& in) {
      P p = in.term(), q = in.term(), r = in.term();
      return std::make_pair(P::interrupt(ext(p, q), r),
                            ext(P::interrupt(p, r), P::interrupt(q, r)));
    });
    add("U3", "(a -> P) /\\ Q = (a -> (P /\\ Q)) [] Q", FD, true, false, [](Instantiator& in) {
      Action a = in.action();
      P p = in.term(), q = in.term();
      return std::make_pair(P::interrupt(pre(a, p), q), ext(pre(a, P::interrupt(p, q)), q));
    });
    add("U4", "STOP /\\ P = P", SB, true, false, [](Instantiator& in) {
      P p = in.term();
      return std::make_pair(P::interrupt(P::stop(), p), p);
    });
    add("U5", "div /\\ P = div", FD, true, false, [](Instantiator& in) {
      return std::make_pair(P::interrupt(P::div(), in.term()), P::div());
    });

    // Laws the normaliser uses beyond the two tables.
    Axiom e1div;
    e1div.name = "E1div";
    e1div.schema = "div [] div = div";
    e1div.tier = SB;
    e1div.auxiliary = true;
    e1div.instantiate = [](Instantiator&) { return std::make_pair(ext(P::div(), P::div()), P::div()); };
    v.push_back(e1div);
    for (bool div : {false, true}) {
      Axiom ax;
      ax.name = div ? "P18" : "P17";
      ax.schema = std::string("(") + (div ? "(div [] P)" : "P") +
                  " [> P') [|A|] Q = ([div []] [] {a_i not in A} a_i -> P_i [|A|] Q) [> (P' [|A|] Q |~| "
                  "|~| {j} (L [|A|] Q_j)), Q = |~| Q_j";
      ax.tier = CS;
      ax.auxiliary = true;
      ax.instantiate = [div](Instantiator& in) {
        ActionSet a = in.set();
        Operand l = operand(in, div, true);
        std::vector<P> qs = in.int_family();
        P q = int_all(qs), lt = l.term();
        std::vector<P> kept, tail{P::parallel(a, *l.slide, q)};
        for (const auto& b : l.family)
          if (!a.count(b.action)) kept.push_back(pre(b.action, P::parallel(a, b.body, q)));
        for (const auto& qj : qs) tail.push_back(P::parallel(a, lt, qj));
        return std::make_pair(P::parallel(a, lt, q), slide(with_div(div, ext_all(kept)), int_all(tail)));
      };
      v.push_back(ax);
    }
    return v;
  }();
  return db;
}

inline const Axiom* find_axiom(const std::string& name) {
  for (const auto& ax : all_axioms())
    if (ax.name == name) return &ax;
  return nullptr;
}

/// Axioms of one table: 2 (failures-divergences) or 3 (coupled simulation, with the
/// auxiliary laws).
inline std::vector<const Axiom*> axioms_of_table(int table) {
  std::vector<const Axiom*> out;
  for (const auto& ax : all_axioms())
    if ((table == 2 && ax.in_fd_table) || (table == 3 && (ax.in_cs_table || ax.auxiliary)))
      out.push_back(&ax);
  return out;
}

/// Filler settings for a table: interrupt appears only in the failures-divergences table.
inline GenOptions filler_options(int table, int depth = 3) {
  GenOptions g = table == 2 ? GenOptions::everything() : GenOptions::finite();
  g.max_depth = depth;
  return g;
}

/// Closed instances of `ax` with fillers of depth at most `depth` over {a, b}.
inline std::vector<std::pair<Process, Process>> axiom_instances(const Axiom& ax, std::size_t count,
                                                                std::uint64_t seed, int table = 3,
                                                                int depth = 3) {
  Instantiator in(filler_options(table, depth), seed);
  std::vector<std::pair<Process, Process>> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(ax.instantiate(in));
  return out;
}

}  // namespace cspbt
