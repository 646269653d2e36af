// Strong bisimilarity and divergence-preserving coupled similarity on finite LTSs.
#pragma once

#include <map>
#include <numeric>
#include <random>

#include "cspbt/semantics.hpp"

namespace cspbt {

/// Partition of the states into strong bisimulation classes; tau is an ordinary label.
inline std::vector<std::size_t> bisimulation_classes(const Lts& lts) {
  const std::size_t n = lts.num_states;
  std::vector<std::size_t> block(n, 0);
  auto succ = lts.successors();
  std::size_t count = 1;
  for (;;) {
    std::map<std::pair<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>, std::size_t>
        ids;
    std::vector<std::size_t> next(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<std::pair<std::size_t, std::size_t>> sig;
      sig.reserve(succ[s].size());
      for (auto [l, t] : succ[s]) sig.emplace_back(l, block[t]);
      std::sort(sig.begin(), sig.end());
      sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
      auto key = std::make_pair(block[s], std::move(sig));
      auto it = ids.emplace(std::move(key), ids.size()).first;
      next[s] = it->second;
    }
    block = std::move(next);
    if (ids.size() == count) return block;
    count = ids.size();
  }
}

inline bool strong_bisim(const Process& p, const Process& q,
                         std::size_t bound = kDefaultStateBound) {
  Lts lts = build_lts_multi({p, q}, bound);
  auto block = bisimulation_classes(lts);
  return block[lts.roots[0]] == block[lts.roots[1]];
}

enum class RelationKind { Candidate, Largest };

/// Set of ordered state pairs over one LTS, stored as rows: pairs[s] = { t | s R t }.
struct SimRelation {
  std::vector<StateSet> rows;
  RelationKind kind = RelationKind::Candidate;

  explicit SimRelation(std::size_t n = 0) : rows(n, StateSet(n)) {}
  std::size_t num_states() const { return rows.size(); }
  bool contains(std::size_t s, std::size_t t) const { return rows[s].test(t); }
  void insert(std::size_t s, std::size_t t) { rows[s].set(t); }
  void erase(std::size_t s, std::size_t t) { rows[s].reset(t); }
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t s = 0; s < rows.size(); ++s)
      rows[s].for_each([&](std::size_t t) { out.emplace_back(s, t); });
    return out;
  }
  friend bool operator==(const SimRelation& a, const SimRelation& b) { return a.rows == b.rows; }
};

enum class Clause { None, Simulation, Coupling, Divergence };

inline const char* clause_name(Clause c) {
  switch (c) {
    case Clause::None: return "none";
    case Clause::Simulation: return "simulation";
    case Clause::Coupling: return "coupling";
    case Clause::Divergence: return "divergence";
  }
  return "?";
}

/// First pair found to violate a clause, with the clause.
struct Violation {
  std::size_t source = 0;
  std::size_t target = 0;
  Clause clause = Clause::None;
};

namespace detail {

inline bool simulation_ok(const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& succ,
                          const WeakClosure& wc, const std::vector<StateSet>& rows, std::size_t s,
                          std::size_t t) {
  for (auto [l, s2] : succ[s])
    if (!wc.hat(l, t).intersects(rows[s2])) return false;
  return true;
}

inline bool coupling_ok(const WeakClosure& wc, const std::vector<StateSet>& cols, std::size_t s,
                        std::size_t t) {
  // some t => t' with t' R s
  return wc.tau_reach[t].intersects(cols[s]);
}

}  // namespace detail

struct CoupledSimulationResult {
  SimRelation relation;
  std::optional<Violation> first_deleted;  // first pair removed by the fixpoint
};

/// Largest divergence-preserving coupled simulation on `lts` as a greatest fixpoint.
/// Pairs are examined in lexicographic order unless `shuffle` supplies a generator.
inline CoupledSimulationResult dpcs_largest(const Lts& lts, const WeakClosure& wc,
                                           std::mt19937_64* shuffle = nullptr) {
  const std::size_t n = lts.num_states;
  auto succ = lts.successors();
  std::vector<StateSet> rows(n, StateSet(n)), cols(n, StateSet(n));
  CoupledSimulationResult res;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      if (wc.divergent.test(s) && !wc.divergent.test(t)) {
        if (!res.first_deleted) res.first_deleted = Violation{s, t, Clause::Divergence};
        continue;
      }
      rows[s].set(t);
      cols[t].set(s);
    }
  std::vector<std::pair<std::size_t, std::size_t>> order;
  order.reserve(n * n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) order.emplace_back(s, t);
  if (shuffle) std::shuffle(order.begin(), order.end(), *shuffle);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [s, t] : order) {
      if (!rows[s].test(t)) continue;
      Clause bad = Clause::None;
      if (!detail::simulation_ok(succ, wc, rows, s, t))
        bad = Clause::Simulation;
      else if (!detail::coupling_ok(wc, cols, s, t))
        bad = Clause::Coupling;
      if (bad == Clause::None) continue;
      rows[s].reset(t);
      cols[t].reset(s);
      if (!res.first_deleted) res.first_deleted = Violation{s, t, bad};
      changed = true;
    }
  }
  res.relation.rows = std::move(rows);
  res.relation.kind = RelationKind::Largest;
  return res;
}

/// Checks both coupled-simulation clauses (and divergence preservation when asked).
inline std::optional<Violation> verify_coupled_simulation(const Lts& lts, const WeakClosure& wc,
                                                          const SimRelation& r,
                                                          bool divergence_preserving) {
  const std::size_t n = lts.num_states;
  if (r.num_states() != n) throw std::invalid_argument("relation and LTS sizes differ");
  auto succ = lts.successors();
  std::vector<StateSet> cols(n, StateSet(n));
  for (std::size_t s = 0; s < n; ++s) r.rows[s].for_each([&](std::size_t t) { cols[t].set(s); });
  for (std::size_t s = 0; s < n; ++s) {
    std::optional<Violation> v;
    r.rows[s].for_each([&](std::size_t t) {
      if (v) return;
      if (divergence_preserving && wc.divergent.test(s) && !wc.divergent.test(t))
        v = Violation{s, t, Clause::Divergence};
      else if (!detail::simulation_ok(succ, wc, r.rows, s, t))
        v = Violation{s, t, Clause::Simulation};
      else if (!detail::coupling_ok(wc, cols, s, t))
        v = Violation{s, t, Clause::Coupling};
    });
    if (v) return v;
  }
  return std::nullopt;
}

/// Both terms in one LTS with its closure; roots[0] is p, roots[1] is q.
struct PairSpace {
  Lts lts;
  WeakClosure closure;
};

inline PairSpace pair_space(const Process& p, const Process& q,
                            std::size_t bound = kDefaultStateBound) {
  PairSpace ps;
  ps.lts = build_lts_multi({p, q}, bound);
  ps.closure = weak_closure(ps.lts);
  return ps;
}

inline SimRelation dpcs_largest(const Process& p, const Process& q,
                                std::size_t bound = kDefaultStateBound) {
  auto ps = pair_space(p, q, bound);
  return dpcs_largest(ps.lts, ps.closure).relation;
}

/// p is ahead of q: some divergence-preserving coupled simulation relates them.
inline bool cs_geq(const Process& p, const Process& q, std::size_t bound = kDefaultStateBound) {
  auto ps = pair_space(p, q, bound);
  auto r = dpcs_largest(ps.lts, ps.closure).relation;
  return r.contains(ps.lts.roots[0], ps.lts.roots[1]);
}

inline bool cs_equiv(const Process& p, const Process& q, std::size_t bound = kDefaultStateBound) {
  auto ps = pair_space(p, q, bound);
  auto r = dpcs_largest(ps.lts, ps.closure).relation;
  return r.contains(ps.lts.roots[0], ps.lts.roots[1]) &&
         r.contains(ps.lts.roots[1], ps.lts.roots[0]);
}

}  // namespace cspbt
