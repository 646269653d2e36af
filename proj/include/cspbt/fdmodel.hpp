// Operational failures-divergences semantics.
//
// A denotation is kept as the determinised weak-step automaton of the process: one node
// per set of states reachable by a trace. Each node records whether the trace diverges
// (everything beyond it is flooded) and, otherwise, the maximal refusals of its stable
// states over the relevant alphabet.
#pragma once

#include <bit>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "cspbt/semantics.hpp"

namespace cspbt {

using Trace = std::vector<Action>;
/// Refusal set as a bitmask over FdDenotation::alphabet.
using RefusalMask = std::uint64_t;

struct FdNode {
  bool divergent = false;
  std::vector<RefusalMask> refusals;         // antichain of maximal refusals
  std::map<std::size_t, std::size_t> next;   // alphabet index -> node
};

struct FdDenotation {
  std::vector<Action> alphabet;  // sorted; the relevant alphabet
  std::vector<FdNode> nodes;     // node 0 is the empty trace

  std::optional<std::size_t> index_of(const Action& a) const {
    auto it = std::lower_bound(alphabet.begin(), alphabet.end(), a);
    if (it == alphabet.end() || *it != a) return std::nullopt;
    return static_cast<std::size_t>(it - alphabet.begin());
  }

  RefusalMask mask_of(const ActionSet& xs) const {
    RefusalMask m = 0;
    for (const auto& x : xs)
      if (auto i = index_of(x)) m |= RefusalMask{1} << *i;
    return m;
  }

  ActionSet set_of(RefusalMask m) const {
    ActionSet s;
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (m >> i & 1) s.insert(alphabet[i]);
    return s;
  }

  /// Result of following a trace: the node reached, or flooded / impossible.
  struct Walk {
    enum Kind { Node, Flooded, Impossible } kind;
    std::size_t node = 0;
  };

  Walk walk(const Trace& s) const {
    std::size_t cur = 0;
    for (const auto& a : s) {
      if (nodes[cur].divergent) return {Walk::Flooded};
      auto i = index_of(a);
      if (!i) return {Walk::Impossible};
      auto it = nodes[cur].next.find(*i);
      if (it == nodes[cur].next.end()) return {Walk::Impossible};
      cur = it->second;
    }
    if (nodes[cur].divergent) return {Walk::Flooded};
    return {Walk::Node, cur};
  }

  bool is_divergence(const Trace& s) const { return walk(s).kind == Walk::Flooded; }

  bool is_trace(const Trace& s) const { return walk(s).kind != Walk::Impossible; }

  /// Membership in the failure set. Actions outside the alphabet are refused by every
  /// stable state, so only the part of X inside the alphabet matters.
  bool is_failure(const Trace& s, const ActionSet& x) const {
    return is_failure(s, mask_of(x));
  }

  bool is_failure(const Trace& s, RefusalMask x) const {
    auto w = walk(s);
    if (w.kind == Walk::Flooded) return true;
    if (w.kind == Walk::Impossible) return false;
    for (auto r : nodes[w.node].refusals)
      if ((x & ~r) == 0) return true;
    return false;
  }

  /// Visits every non-flooded trace up to `depth` with its node; returns false on truncation.
  bool for_each_trace(std::size_t depth,
                      const std::function<void(const Trace&, std::size_t)>& f) const {
    bool complete = true;
    Trace t;
    std::function<void(std::size_t)> rec = [&](std::size_t node) {
      f(t, node);
      if (nodes[node].divergent) return;
      if (t.size() == depth) {
        if (!nodes[node].next.empty()) complete = false;
        return;
      }
      for (auto [a, nx] : nodes[node].next) {
        t.push_back(alphabet[a]);
        rec(nx);
        t.pop_back();
      }
    };
    rec(0);
    return complete;
  }

  /// Minimal divergence traces up to `depth`.
  std::vector<Trace> minimal_divergences(std::size_t depth) const {
    std::vector<Trace> out;
    for_each_trace(depth, [&](const Trace& t, std::size_t n) {
      if (nodes[n].divergent) out.push_back(t);
    });
    return out;
  }

  /// Maximal refusals, as action sets, after a non-flooded trace.
  std::vector<ActionSet> maximal_refusals(const Trace& s) const {
    std::vector<ActionSet> out;
    auto w = walk(s);
    if (w.kind != Walk::Node) return out;
    for (auto r : nodes[w.node].refusals) out.push_back(set_of(r));
    return out;
  }
};

namespace detail {

inline void insert_maximal(std::vector<RefusalMask>& chain, RefusalMask r) {
  for (auto x : chain)
    if ((r & ~x) == 0) return;
  chain.erase(std::remove_if(chain.begin(), chain.end(),
                             [&](RefusalMask x) { return (x & ~r) == 0; }),
              chain.end());
  chain.push_back(r);
}

struct StateSetHash {
  std::size_t operator()(const StateSet& s) const { return s.hash(); }
};

/// Determinises the weak-step graph from `root` over `alphabet`.
inline FdDenotation determinise(const Lts& lts, const WeakClosure& wc, std::size_t root,
                                const std::vector<Action>& alphabet) {
  if (alphabet.size() > 64) throw std::invalid_argument("alphabet larger than 64 actions");
  FdDenotation d;
  d.alphabet = alphabet;
  // lts label id -> alphabet index
  std::vector<std::optional<std::size_t>> lab(lts.labels.size());
  for (std::size_t l = 1; l < lts.labels.size(); ++l) {
    lab[l] = d.index_of(lts.labels[l]);
    if (!lab[l]) throw std::invalid_argument("action '" + lts.labels[l] + "' outside alphabet");
  }
  std::vector<RefusalMask> initials(lts.num_states, 0);
  std::vector<char> stable(lts.num_states, 1);
  for (const auto& t : lts.transitions) {
    if (t.label == 0)
      stable[t.source] = 0;
    else
      initials[t.source] |= RefusalMask{1} << *lab[t.label];
  }
  const RefusalMask full =
      alphabet.size() == 64 ? ~RefusalMask{0} : (RefusalMask{1} << alphabet.size()) - 1;

  std::unordered_map<StateSet, std::size_t, StateSetHash> ids;
  std::vector<StateSet> sets;
  std::deque<std::size_t> work;
  auto intern = [&](StateSet s) {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    std::size_t id = d.nodes.size();
    ids.emplace(s, id);
    sets.push_back(std::move(s));
    d.nodes.emplace_back();
    work.push_back(id);
    return id;
  };
  intern(wc.tau_reach[root]);
  while (!work.empty()) {
    std::size_t id = work.front();
    work.pop_front();
    StateSet cur = sets[id];
    if (cur.intersects(wc.divergent)) {
      d.nodes[id].divergent = true;
      continue;
    }
    std::vector<RefusalMask> chain;
    cur.for_each([&](std::size_t s) {
      if (stable[s]) insert_maximal(chain, full & ~initials[s]);
    });
    std::sort(chain.begin(), chain.end());
    d.nodes[id].refusals = std::move(chain);
    for (std::size_t l = 1; l < lts.labels.size(); ++l) {
      StateSet nx(lts.num_states);
      cur.for_each([&](std::size_t s) { nx |= wc.weak_step[l][s]; });
      if (!nx.any()) continue;
      std::size_t to = intern(std::move(nx));
      d.nodes[id].next[*lab[l]] = to;
    }
  }
  return d;
}

inline std::vector<Action> relevant_alphabet(const Lts& lts, const ActionSet& extra) {
  ActionSet all = extra;
  for (std::size_t l = 1; l < lts.labels.size(); ++l) all.insert(lts.labels[l]);
  return {all.begin(), all.end()};
}

}  // namespace detail

inline FdDenotation fd_semantics(const Process& p, const ActionSet& alpha,
                                 std::size_t bound = kDefaultStateBound) {
  Lts lts = build_lts(p, bound);
  WeakClosure wc = weak_closure(lts);
  return detail::determinise(lts, wc, lts.root(), detail::relevant_alphabet(lts, alpha));
}

inline FdDenotation fd_semantics(const Process& p, std::size_t bound = kDefaultStateBound) {
  return fd_semantics(p, alphabet(p), bound);
}

/// F(p) within F(q) and D(p) within D(q) for two denotations over the same alphabet.
inline bool fd_refines(const FdDenotation& p, const FdDenotation& q) {
  if (p.alphabet != q.alphabet) throw std::invalid_argument("denotations over different alphabets");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<std::pair<std::size_t, std::size_t>> work{{0, 0}};
  seen.insert({0, 0});
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    const FdNode& x = p.nodes[a];
    const FdNode& y = q.nodes[b];
    if (y.divergent) continue;  // everything beyond is flooded in q
    if (x.divergent) return false;
    for (auto r : x.refusals) {
      bool dominated = false;
      for (auto s : y.refusals)
        if ((r & ~s) == 0) {
          dominated = true;
          break;
        }
      if (!dominated) return false;
    }
    for (auto [act, nx] : x.next) {
      auto it = y.next.find(act);
      if (it == y.next.end()) return false;
      if (seen.insert({nx, it->second}).second) work.emplace_back(nx, it->second);
    }
  }
  return true;
}

/// A behaviour of one denotation missing from another.
struct FdCounterexample {
  enum Kind { Divergence, Refusal, Trace } kind = Trace;
  cspbt::Trace trace;
  ActionSet refusal;  // for Refusal: a maximal refusal with no dominating counterpart
};

inline const char* kind_name(FdCounterexample::Kind k) {
  switch (k) {
    case FdCounterexample::Divergence: return "divergence";
    case FdCounterexample::Refusal: return "refusal";
    case FdCounterexample::Trace: return "trace";
  }
  return "?";
}

/// Shortest behaviour of `p` outside `q`, if any; nullopt exactly when p refines q.
inline std::optional<FdCounterexample> fd_counterexample(const FdDenotation& p,
                                                         const FdDenotation& q) {
  if (p.alphabet != q.alphabet) throw std::invalid_argument("denotations over different alphabets");
  std::set<std::pair<std::size_t, std::size_t>> seen{{0, 0}};
  std::deque<std::pair<std::pair<std::size_t, std::size_t>, cspbt::Trace>> work{{{0, 0}, {}}};
  while (!work.empty()) {
    auto [ab, t] = work.front();
    work.pop_front();
    const FdNode& x = p.nodes[ab.first];
    const FdNode& y = q.nodes[ab.second];
    if (y.divergent) continue;
    if (x.divergent) return FdCounterexample{FdCounterexample::Divergence, t, {}};
    for (auto r : x.refusals) {
      bool dominated = false;
      for (auto s2 : y.refusals)
        if ((r & ~s2) == 0) dominated = true;
      if (!dominated) return FdCounterexample{FdCounterexample::Refusal, t, p.set_of(r)};
    }
    for (auto [act, nx] : x.next) {
      cspbt::Trace t2 = t;
      t2.push_back(p.alphabet[act]);
      auto it = y.next.find(act);
      if (it == y.next.end()) return FdCounterexample{FdCounterexample::Trace, t2, {}};
      if (seen.insert({nx, it->second}).second) work.push_back({{nx, it->second}, t2});
    }
  }
  return std::nullopt;
}

/// Both denotations of a pair over the union of their alphabets and `extra`.
inline std::pair<FdDenotation, FdDenotation> fd_pair(const Process& p, const Process& q,
                                                     std::size_t bound = kDefaultStateBound,
                                                     const ActionSet& extra = {}) {
  Lts lts = build_lts_multi({p, q}, bound);
  WeakClosure wc = weak_closure(lts);
  ActionSet alpha = extra;
  auto ap = alphabet(p);
  alpha.insert(ap.begin(), ap.end());
  auto aq = alphabet(q);
  alpha.insert(aq.begin(), aq.end());
  auto sigma = detail::relevant_alphabet(lts, alpha);
  return {detail::determinise(lts, wc, lts.roots[0], sigma),
          detail::determinise(lts, wc, lts.roots[1], sigma)};
}

/// p refines q: F(p) within F(q) and D(p) within D(q).
inline bool fd_refines(const Process& p, const Process& q, std::size_t bound = kDefaultStateBound) {
  auto [dp, dq] = fd_pair(p, q, bound);
  return fd_refines(dp, dq);
}

inline bool fd_equiv(const Process& p, const Process& q, std::size_t bound = kDefaultStateBound) {
  auto [dp, dq] = fd_pair(p, q, bound);
  return fd_refines(dp, dq) && fd_refines(dq, dp);
}

struct HealthReport {
  bool healthy = true;
  std::string violated;  // first failing condition, e.g. "N1"
  std::string detail;
  std::vector<std::string> skipped;
};

/// Expands the denotation to explicit failures and divergences for traces up to
/// `depth_limit` and checks the closure conditions literally on that expansion.
inline HealthReport check_healthiness(const FdDenotation& d, std::size_t depth_limit) {
  HealthReport rep;
  rep.skipped.push_back("N5: holds for every finite alphabet");
  const std::size_t k = d.alphabet.size();
  if (k > 16) throw std::invalid_argument("alphabet too large for explicit expansion");
  const RefusalMask full = (RefusalMask{1} << k) - 1;

  std::vector<Trace> words{{}};
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i].size() == depth_limit) continue;
    for (const auto& a : d.alphabet) {
      Trace w = words[i];
      w.push_back(a);
      words.push_back(std::move(w));
    }
  }
  auto fail = [&](const char* cond, const Trace& s, std::string what) {
    rep.healthy = false;
    rep.violated = cond;
    std::string t;
    for (const auto& a : s) t += (t.empty() ? "" : ".") + a;
    rep.detail = what + " at trace <" + t + ">";
    return rep;
  };

  if (!d.is_failure(Trace{}, RefusalMask{0})) return fail("N1", {}, "<e,{}> missing");
  for (const auto& w : words) {
    bool tr = d.is_failure(w, RefusalMask{0});
    if (tr && !w.empty()) {
      Trace s(w.begin(), w.end() - 1);
      if (!d.is_failure(s, RefusalMask{0})) return fail("N2", w, "prefix not a trace");
    }
    for (RefusalMask x = 0; x <= full; ++x) {
      if (!d.is_failure(w, x)) continue;
      for (RefusalMask y = x;; y = (y - 1) & x) {  // subsets of x
        if (!d.is_failure(w, y)) return fail("N3", w, "subset of a refusal not refused");
        if (y == 0) break;
      }
      if (w.size() < depth_limit) {
        RefusalMask impossible = 0;
        for (std::size_t c = 0; c < k; ++c) {
          Trace wc = w;
          wc.push_back(d.alphabet[c]);
          if (!d.is_failure(wc, RefusalMask{0})) impossible |= RefusalMask{1} << c;
        }
        for (RefusalMask y = impossible;; y = (y - 1) & impossible) {
          if (!d.is_failure(w, x | y)) return fail("N4", w, "impossible events not refusable");
          if (y == 0) break;
        }
      }
    }
    if (d.is_divergence(w)) {
      for (const auto& v : words) {
        if (v.size() < w.size() || !std::equal(w.begin(), w.end(), v.begin())) continue;
        if (!d.is_divergence(v)) return fail("D1", v, "extension of a divergence not divergent");
        if (!d.is_failure(v, full)) return fail("D2", v, "extension of a divergence not flooded");
      }
    }
  }
  return rep;
}

}  // namespace cspbt
