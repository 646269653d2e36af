// Soundness harness for the axiom databases and the search for instances separating the
// failures-divergences model from coupled simulation.
#pragma once

#include <algorithm>
#include <future>
#include <sstream>

#include "cspbt/axioms.hpp"
#include "cspbt/equivalences.hpp"
#include "cspbt/fdmodel.hpp"

namespace cspbt {

/// Which checks an instance failed.
struct InstanceFailure {
  std::string check;  // "fd", "cs" or "strong"
  Process lhs;
  Process rhs;
  std::size_t index = 0;
};

struct AxiomReport {
  std::string name;
  Tier tier = Tier::CsDelta;
  std::size_t instances = 0;
  std::vector<InstanceFailure> violations;
  std::string error;  // e.g. a state bound hit

  bool ok() const { return violations.empty() && error.empty(); }
};

struct HarnessReport {
  int table = 3;
  std::vector<AxiomReport> axioms;

  std::size_t violations() const {
    std::size_t n = 0;
    for (const auto& a : axioms) n += a.violations.size() + (a.error.empty() ? 0 : 1);
    return n;
  }
  bool ok() const { return violations() == 0; }
};

struct HarnessOptions {
  int table = 3;
  std::size_t samples = 100;
  int depth = 3;
  std::uint64_t seed = 1;
  /// Restrict to axioms of these tiers; empty means all.
  std::vector<Tier> tiers;
  /// With false, only the failures-divergences checks run.
  bool behavioural = true;
  bool parallel = true;
  std::size_t bound = kDefaultStateBound;
};

/// Checks one instance at every level the axiom's tier claims, plus the FD model.
inline std::vector<std::string> check_instance(const Axiom& ax, const Process& l, const Process& r,
                                               bool behavioural, std::size_t bound) {
  std::vector<std::string> failed;
  const bool eq = ax.kind == AxiomKind::Equation;
  if (!(eq ? fd_equiv(l, r, bound) : fd_refines(r, l, bound))) failed.push_back("fd");
  if (!behavioural || ax.tier == Tier::FdOnly) return failed;
  if (!(eq ? cs_equiv(l, r, bound) : cs_geq(r, l, bound))) failed.push_back("cs");
  if (ax.tier == Tier::StrongBisim && !strong_bisim(l, r, bound)) failed.push_back("strong");
  return failed;
}

inline AxiomReport check_axiom(const Axiom& ax, const HarnessOptions& o) {
  AxiomReport rep;
  rep.name = ax.name;
  rep.tier = ax.tier;
  std::uint64_t seed = o.seed * 1000003u + std::hash<std::string>{}(ax.name);
  try {
    auto inst = axiom_instances(ax, o.samples, seed, o.table, o.depth);
    for (std::size_t i = 0; i < inst.size(); ++i) {
      const auto& [l, r] = inst[i];
      for (const auto& c : check_instance(ax, l, r, o.behavioural, o.bound))
        rep.violations.push_back({c, l, r, i});
      ++rep.instances;
    }
  } catch (const std::exception& e) {
    rep.error = e.what();
  }
  return rep;
}

/// Instantiates every axiom of a table and reports each violated check.
inline HarnessReport soundness_harness(const HarnessOptions& o = {}) {
  HarnessReport out;
  out.table = o.table;
  std::vector<const Axiom*> axs;
  for (const Axiom* ax : axioms_of_table(o.table))
    if (o.tiers.empty() || std::find(o.tiers.begin(), o.tiers.end(), ax->tier) != o.tiers.end())
      axs.push_back(ax);
  if (o.parallel) {
    std::vector<std::future<AxiomReport>> jobs;
    for (const Axiom* ax : axs)
      jobs.push_back(std::async(std::launch::async, [ax, &o] { return check_axiom(*ax, o); }));
    for (auto& j : jobs) out.axioms.push_back(j.get());
  } else {
    for (const Axiom* ax : axs) out.axioms.push_back(check_axiom(*ax, o));
  }
  std::sort(out.axioms.begin(), out.axioms.end(),
            [](const AxiomReport& a, const AxiomReport& b) { return a.name < b.name; });
  return out;
}

/// An instance where the FD check holds but the coupled-simulation check fails.
struct Separation {
  std::string axiom;
  bool found = false;
  std::size_t tried = 0;
  Process lhs;
  Process rhs;
};

/// Searches instances with fillers of depth 0..max_depth, shallow first.
inline Separation find_separation(const Axiom& ax, std::size_t per_depth = 500, int max_depth = 3,
                                  std::uint64_t seed = 1,
                                  std::size_t bound = kDefaultStateBound) {
  Separation s;
  s.axiom = ax.name;
  const bool eq = ax.kind == AxiomKind::Equation;
  for (int d = 0; d <= max_depth && !s.found; ++d) {
    Instantiator in(filler_options(2, d), seed + static_cast<std::uint64_t>(d));
    for (std::size_t i = 0; i < per_depth; ++i) {
      auto [l, r] = ax.instantiate(in);
      ++s.tried;
      try {
        bool fd = eq ? fd_equiv(l, r, bound) : fd_refines(r, l, bound);
        if (!fd) continue;
        bool cs = eq ? cs_equiv(l, r, bound) : cs_geq(r, l, bound);
        if (!cs) {
          s.found = true;
          s.lhs = l;
          s.rhs = r;
          break;
        }
      } catch (const StateBoundExceeded&) {
      }
    }
  }
  return s;
}

/// Separation search over every fd-only axiom.
inline std::vector<Separation> red_axiom_separations(std::size_t per_depth = 500, int max_depth = 3,
                                                      std::uint64_t seed = 1) {
  std::vector<std::future<Separation>> jobs;
  for (const auto& ax : all_axioms())
    if (ax.tier == Tier::FdOnly)
      jobs.push_back(std::async(std::launch::async, [&ax, per_depth, max_depth, seed] {
        return find_separation(ax, per_depth, max_depth, seed);
      }));
  std::vector<Separation> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace cspbt
