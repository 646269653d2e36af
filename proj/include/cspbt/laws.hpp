// Root-level rewrite functions for the equational laws used by the normaliser.
//
// Each law maps an instance of its left-hand side to the corresponding right-hand side, or
// returns nothing when the term does not match (including failed side conditions).
// Indexed families are read off by flattening: a choice family is any tree of [] whose
// leaves are prefixes or STOP (STOP contributes nothing), an internal family any tree of |~|.
// Right-hand families are always rebuilt right-nested, STOP standing for the empty family.
#pragma once

#include <functional>
#include <map>
#include <optional>

#include "cspbt/process.hpp"

namespace cspbt {

using Law = std::function<std::optional<Process>(const Process&)>;

struct Branch {
  Action action;
  Process body;
  friend bool operator==(const Branch&, const Branch&) = default;
};

/// Leaves of the maximal `op`-tree rooted at p, left to right.
inline void flatten(const Process& p, Op op, std::vector<Process>& out) {
  if (p.is(op)) {
    flatten(p.left(), op, out);
    flatten(p.right(), op, out);
  } else {
    out.push_back(p);
  }
}

inline std::vector<Process> flatten(const Process& p, Op op) {
  std::vector<Process> out;
  flatten(p, op, out);
  return out;
}

/// p as a family of guarded branches, or nothing if some leaf is not a prefix or STOP.
inline std::optional<std::vector<Branch>> choice_family(const Process& p) {
  std::vector<Branch> out;
  for (const auto& leaf : flatten(p, Op::ExtChoice)) {
    if (leaf.is(Op::Stop)) continue;
    if (!leaf.is(Op::Prefix)) return std::nullopt;
    out.push_back({leaf.name(), leaf.body()});
  }
  return out;
}

/// Right-nested [] of the terms; STOP when empty.
inline Process ext_all(const std::vector<Process>& ps) {
  if (ps.empty()) return Process::stop();
  Process r = ps.back();
  for (std::size_t i = ps.size() - 1; i-- > 0;) r = Process::ext_choice(ps[i], r);
  return r;
}

inline Process ext_all(const std::vector<Branch>& bs) {
  std::vector<Process> ps;
  for (const auto& b : bs) ps.push_back(Process::prefix(b.action, b.body));
  return ext_all(ps);
}

/// Right-nested |~| of a nonempty list.
inline Process int_all(const std::vector<Process>& ps) {
  if (ps.empty()) throw std::logic_error("int_all: empty family");
  Process r = ps.back();
  for (std::size_t i = ps.size() - 1; i-- > 0;) r = Process::int_choice(ps[i], r);
  return r;
}

/// F [> (|~| I), with the slide dropped when I is empty.
inline Process slide_opt(const Process& top, const std::vector<Process>& rest) {
  return rest.empty() ? top : Process::sliding(top, int_all(rest));
}

/// `div [] F` when the flag is set, F otherwise.
inline Process with_div(bool d, const Process& f) {
  return d ? Process::ext_choice(Process::div(), f) : f;
}

/// Operand shape for the parallel expansion laws: [div []] family [[> slide].
struct ParShape {
  bool div = false;
  std::vector<Branch> family;
  std::optional<Process> slide;
};

/// Reads the head of p: `div [] F` (strictly, div on the left) or F.
inline std::optional<std::pair<bool, std::vector<Branch>>> head_family(const Process& p,
                                                                       bool want_div) {
  if (want_div) {
    if (!p.is(Op::ExtChoice) || !p.left().is(Op::Div)) return std::nullopt;
    auto f = choice_family(p.right());
    if (!f) return std::nullopt;
    return std::make_pair(true, *f);
  }
  auto f = choice_family(p);
  if (!f) return std::nullopt;
  return std::make_pair(false, *f);
}

inline std::optional<ParShape> par_shape(const Process& p, bool want_div, bool want_slide) {
  ParShape s;
  const Process* head = &p;
  if (want_slide) {
    if (!p.is(Op::Sliding)) return std::nullopt;
    s.slide = p.right();
    head = &p.left();
  }
  auto h = head_family(*head, want_div);
  if (!h) return std::nullopt;
  s.div = h->first;
  s.family = std::move(h->second);
  return s;
}

/// Common right-hand side of the expansion laws for L ||_A R.
inline Process par_expand(const ActionSet& a, const Process& l, const ParShape& ls,
                          const Process& r, const ParShape& rs) {
  auto par = [&](const Process& x, const Process& y) { return Process::parallel(a, x, y); };
  std::vector<Branch> fam;
  for (const auto& b : ls.family)
    if (!a.count(b.action)) fam.push_back({b.action, par(b.body, r)});
  for (const auto& bi : ls.family)
    for (const auto& bj : rs.family)
      if (bi.action == bj.action && a.count(bi.action))
        fam.push_back({bi.action, par(bi.body, bj.body)});
  for (const auto& b : rs.family)
    if (!a.count(b.action)) fam.push_back({b.action, par(l, b.body)});
  Process top = with_div(ls.div || rs.div, ext_all(fam));
  std::vector<Process> rest;
  if (ls.slide) rest.push_back(par(*ls.slide, r));
  if (rs.slide) rest.push_back(par(l, *rs.slide));
  return slide_opt(top, rest);
}

namespace laws {

using P = Process;
using R = std::optional<Process>;

inline R i1(const P& t) {
  if (t.is(Op::IntChoice) && t.left() == t.right()) return t.left();
  return std::nullopt;
}
inline R i2(const P& t) {
  if (t.is(Op::IntChoice)) return P::int_choice(t.right(), t.left());
  return std::nullopt;
}
inline R i3(const P& t) {
  if (t.is(Op::IntChoice) && t.right().is(Op::IntChoice))
    return P::int_choice(P::int_choice(t.left(), t.right().left()), t.right().right());
  return std::nullopt;
}
inline R e2(const P& t) {
  if (t.is(Op::ExtChoice)) return P::ext_choice(t.right(), t.left());
  return std::nullopt;
}
inline R e3(const P& t) {
  if (t.is(Op::ExtChoice) && t.right().is(Op::ExtChoice))
    return P::ext_choice(P::ext_choice(t.left(), t.right().left()), t.right().right());
  return std::nullopt;
}
inline R e4(const P& t) {
  if (t.is(Op::ExtChoice) && t.right().is(Op::Stop)) return t.left();
  return std::nullopt;
}
inline R e1div(const P& t) {
  if (t.is(Op::ExtChoice) && t.left().is(Op::Div) && t.right().is(Op::Div)) return P::div();
  return std::nullopt;
}
inline R s1(const P& t) {
  if (t.is(Op::Sliding) && t.left() == t.right()) return t.left();
  return std::nullopt;
}
inline R s2(const P& t) {
  if (t.is(Op::Sliding) && t.right().is(Op::Sliding))
    return P::sliding(P::sliding(t.left(), t.right().left()), t.right().right());
  return std::nullopt;
}
inline R s3(const P& t) {
  if (t.is(Op::Sliding) && t.left().is(Op::Sliding))
    return P::sliding(P::ext_choice(t.left().left(), t.left().right()), t.right());
  return std::nullopt;
}
inline R s4(const P& t) {
  if (t.is(Op::Sliding) && t.left().is(Op::IntChoice))
    return P::sliding(P::ext_choice(t.left().left(), t.left().right()), t.right());
  return std::nullopt;
}
inline R s5(const P& t) {
  if (t.is(Op::Sliding) && t.left().is(Op::Stop)) return t.right();
  return std::nullopt;
}
inline R s6(const P& t) {
  if (t.is(Op::IntChoice) && t.left().is(Op::Sliding) && t.right().is(Op::Sliding))
    return P::sliding(P::ext_choice(t.left().left(), t.right().left()),
                      P::int_choice(t.left().right(), t.right().right()));
  return std::nullopt;
}
inline R s7(const P& t) {
  if (t.is(Op::ExtChoice) && t.left().is(Op::Sliding) && t.right().is(Op::Sliding))
    return P::sliding(P::ext_choice(t.left().left(), t.right().left()),
                      P::ext_choice(t.left().right(), t.right().right()));
  return std::nullopt;
}
inline R d1(const P& t) {
  if (t.is(Op::ExtChoice) && t.right().is(Op::IntChoice))
    return P::int_choice(P::ext_choice(t.left(), t.right().left()),
                         P::ext_choice(t.left(), t.right().right()));
  return std::nullopt;
}
inline R prune(const P& t) {
  if (!t.is(Op::ExtChoice)) return std::nullopt;
  const P& l = t.left();
  const P& r = t.right();
  if (!l.is(Op::Prefix) || !r.is(Op::Prefix) || l.name() != r.name()) return std::nullopt;
  if (!r.body().is(Op::IntChoice) || r.body().left() != l.body()) return std::nullopt;
  return r;
}
inline R p0(const P& t) {
  if (t.is(Op::Parallel) && t.right().is(Op::Parallel) && t.right().set() == t.set())
    return P::parallel(t.set(), P::parallel(t.set(), t.left(), t.right().left()),
                       t.right().right());
  return std::nullopt;
}
inline R p1(const P& t) {
  if (t.is(Op::Parallel)) return P::parallel(t.set(), t.right(), t.left());
  return std::nullopt;
}

/// One of the expansion laws: operand shapes fixed by (div, slide) flags on each side.
inline Law par_law(bool ldiv, bool lslide, bool rdiv, bool rslide) {
  return [=](const P& t) -> R {
    if (!t.is(Op::Parallel)) return std::nullopt;
    auto ls = par_shape(t.left(), ldiv, lslide);
    auto rs = par_shape(t.right(), rdiv, rslide);
    if (!ls || !rs) return std::nullopt;
    return par_expand(t.set(), t.left(), *ls, t.right(), *rs);
  };
}

/// P14 / P15: guarded family (with or without div) against an internal family.
inline Law par_int_law(bool ldiv) {
  return [=](const P& t) -> R {
    if (!t.is(Op::Parallel)) return std::nullopt;
    auto h = head_family(t.left(), ldiv);
    if (!h) return std::nullopt;
    const auto& a = t.set();
    std::vector<Branch> fam;
    for (const auto& b : h->second)
      if (!a.count(b.action)) fam.push_back({b.action, P::parallel(a, b.body, t.right())});
    std::vector<P> rest;
    for (const auto& q : flatten(t.right(), Op::IntChoice))
      rest.push_back(P::parallel(a, t.left(), q));
    return P::sliding(with_div(ldiv, ext_all(fam)), int_all(rest));
  };
}

/// (D [> P') ||_A (|~| Q_j): expansion of a sliding operand against an internal family.
inline Law par_slide_int_law(bool ldiv) {
  return [=](const P& t) -> R {
    if (!t.is(Op::Parallel)) return std::nullopt;
    auto s = par_shape(t.left(), ldiv, true);
    if (!s) return std::nullopt;
    const auto& a = t.set();
    std::vector<Branch> fam;
    for (const auto& b : s->family)
      if (!a.count(b.action)) fam.push_back({b.action, P::parallel(a, b.body, t.right())});
    std::vector<P> rest{P::parallel(a, *s->slide, t.right())};
    for (const auto& q : flatten(t.right(), Op::IntChoice))
      rest.push_back(P::parallel(a, t.left(), q));
    return P::sliding(with_div(ldiv, ext_all(fam)), int_all(rest));
  };
}

inline R p16(const P& t) {
  if (!t.is(Op::Parallel)) return std::nullopt;
  const auto& a = t.set();
  std::vector<P> rest;
  for (const auto& p : flatten(t.left(), Op::IntChoice))
    rest.push_back(P::parallel(a, p, t.right()));
  for (const auto& q : flatten(t.right(), Op::IntChoice))
    rest.push_back(P::parallel(a, t.left(), q));
  return int_all(rest);
}

inline R h1(const P& t) {
  if (t.is(Op::Conceal) && t.body().is(Op::IntChoice))
    return P::int_choice(P::conceal(t.set(), t.body().left()),
                         P::conceal(t.set(), t.body().right()));
  return std::nullopt;
}

/// H5-H8: concealment of [div []] family [[> P'].
inline Law hide_law(bool div, bool slide) {
  return [=](const P& t) -> R {
    if (!t.is(Op::Conceal)) return std::nullopt;
    auto s = par_shape(t.body(), div, slide);
    if (!s) return std::nullopt;
    const auto& a = t.set();
    std::vector<Branch> kept;
    std::vector<P> rest;
    if (s->slide) rest.push_back(P::conceal(a, *s->slide));
    for (const auto& b : s->family) {
      if (a.count(b.action))
        rest.push_back(P::conceal(a, b.body));
      else
        kept.push_back({b.action, P::conceal(a, b.body)});
    }
    return slide_opt(with_div(div, ext_all(kept)), rest);
  };
}

inline Law rename_over(Op op) {
  return [=](const P& t) -> R {
    if (!t.is(Op::Rename) || !t.body().is(op)) return std::nullopt;
    const auto& f = t.renaming();
    return t.body().with_children(
        {P::rename(f, t.body().left()), P::rename(f, t.body().right())});
  };
}
inline R r3(const P& t) {
  if (t.is(Op::Rename) && t.body().is(Op::Prefix))
    return P::prefix(apply_renaming(t.renaming(), t.body().name()),
                     P::rename(t.renaming(), t.body().body()));
  return std::nullopt;
}
inline Law rename_leaf(Op op) {
  return [=](const P& t) -> R {
    if (t.is(Op::Rename) && t.body().is(op)) return t.body();
    return std::nullopt;
  };
}

inline Law throw_over(Op op) {
  return [=](const P& t) -> R {
    if (!t.is(Op::Throw) || !t.left().is(op)) return std::nullopt;
    const auto& a = t.set();
    return t.left().with_children({P::throw_(a, t.left().left(), t.right()),
                                   P::throw_(a, t.left().right(), t.right())});
  };
}
inline R t3(const P& t) {
  if (t.is(Op::Throw) && t.left().is(Op::Prefix) && !t.set().count(t.left().name()))
    return P::prefix(t.left().name(), P::throw_(t.set(), t.left().body(), t.right()));
  return std::nullopt;
}
inline R t4(const P& t) {
  if (t.is(Op::Throw) && t.left().is(Op::Prefix) && t.set().count(t.left().name()))
    return P::prefix(t.left().name(), t.right());
  return std::nullopt;
}
inline Law throw_leaf(Op op) {
  return [=](const P& t) -> R {
    if (t.is(Op::Throw) && t.left().is(op)) return t.left();
    return std::nullopt;
  };
}

}  // namespace laws

/// Rewrite functions by law name.
inline const std::map<std::string, Law>& law_table() {
  using namespace laws;
  static const std::map<std::string, Law> table = {
      {"I1", i1},
      {"I2", i2},
      {"I3", i3},
      {"E2", e2},
      {"E3", e3},
      {"E4", e4},
      {"E1div", e1div},
      {"S1", s1},
      {"S2", s2},
      {"S3", s3},
      {"S4", s4},
      {"S5", s5},
      {"S6", s6},
      {"S7", s7},
      {"D1", d1},
      {"Prune", prune},
      {"P0", p0},
      {"P1", p1},
      {"P4", par_law(false, false, false, false)},
      {"P5", par_law(true, false, false, false)},
      {"P6", par_law(true, false, true, false)},
      {"P7", par_law(false, true, false, false)},
      {"P8", par_law(true, true, false, false)},
      {"P9", par_law(false, true, true, false)},
      {"P10", par_law(true, true, true, false)},
      {"P11", par_law(false, true, false, true)},
      {"P12", par_law(true, true, false, true)},
      {"P13", par_law(true, true, true, true)},
      {"P14", par_int_law(false)},
      {"P15", par_int_law(true)},
      {"P16", p16},
      {"P17", par_slide_int_law(false)},
      {"P18", par_slide_int_law(true)},
      {"H1", h1},
      {"H5", hide_law(false, false)},
      {"H6", hide_law(true, false)},
      {"H7", hide_law(false, true)},
      {"H8", hide_law(true, true)},
      {"R0", rename_over(Op::Sliding)},
      {"R1", rename_over(Op::IntChoice)},
      {"R2", rename_over(Op::ExtChoice)},
      {"R3", r3},
      {"R4", rename_leaf(Op::Stop)},
      {"R5", rename_leaf(Op::Div)},
      {"T0", throw_over(Op::Sliding)},
      {"T1", throw_over(Op::IntChoice)},
      {"T2", throw_over(Op::ExtChoice)},
      {"T3", t3},
      {"T4", t4},
      {"T5", throw_leaf(Op::Stop)},
      {"T6", throw_leaf(Op::Div)},
  };
  return table;
}

inline const Law* find_law(const std::string& name) {
  const auto& t = law_table();
  auto it = t.find(name);
  return it == t.end() ? nullptr : &it->second;
}

}  // namespace cspbt
