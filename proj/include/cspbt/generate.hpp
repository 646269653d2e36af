// Random and exhaustive term generation for property tests.
#pragma once

#include <functional>
#include <random>
#include <set>

#include "cspbt/process.hpp"

namespace cspbt {

struct GenOptions {
  std::vector<Action> alphabet{"a", "b"};
  int max_depth = 3;
  std::set<Op> ops{Op::Stop,     Op::Div,     Op::Prefix, Op::IntChoice, Op::ExtChoice,
                   Op::Sliding,  Op::Parallel, Op::Conceal, Op::Rename,   Op::Throw};
  /// Probability of stopping early at an inner position.
  double leaf_bias = 0.25;
  /// Chance that a generated term is wrapped in a guarded recursion (needs Op::Mu in ops).
  double recursion_rate = 0.0;

  GenOptions& without(Op o) {
    ops.erase(o);
    return *this;
  }
  GenOptions& with(Op o) {
    ops.insert(o);
    return *this;
  }

  /// Operators whose terms never perform an internal step on their own.
  static GenOptions tau_free() {
    GenOptions g;
    g.ops = {Op::Stop, Op::Prefix, Op::ExtChoice, Op::Parallel, Op::Rename, Op::Throw};
    return g;
  }

  /// The fragment covered by the normal-form procedure.
  static GenOptions finite() { return GenOptions{}; }

  static GenOptions everything() {
    GenOptions g;
    g.ops.insert(Op::Interrupt);
    return g;
  }
};

class TermGenerator {
 public:
  TermGenerator(GenOptions opts, std::uint64_t seed) : opts_(std::move(opts)), rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }
  const GenOptions& options() const { return opts_; }

  Process term() { return term(opts_.max_depth); }

  Process term(int depth) {
    if (opts_.recursion_rate > 0 && opts_.ops.count(Op::Mu) && chance(opts_.recursion_rate))
      return Process::mu("X", guarded(depth, "X"));
    return build(depth, nullptr);
  }

  Action action() { return opts_.alphabet[pick(opts_.alphabet.size())]; }

  ActionSet action_set() {
    ActionSet s;
    for (const auto& a : opts_.alphabet)
      if (chance(0.5)) s.insert(a);
    return s;
  }

  Renaming renaming() {
    Renaming f;
    for (const auto& a : opts_.alphabet)
      if (chance(0.5)) f[a] = action();
    return f;
  }

  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

 private:
  /// Body of a recursion: the variable may appear only under a prefix.
  Process guarded(int depth, const std::string& x) {
    return Process::prefix(action(), build(std::max(depth - 1, 0), &x));
  }

  Process leaf(const std::string* var) {
    std::vector<Process> leaves;
    if (opts_.ops.count(Op::Stop)) leaves.push_back(Process::stop());
    if (opts_.ops.count(Op::Div)) leaves.push_back(Process::div());
    if (var) leaves.push_back(Process::ident(*var));
    if (leaves.empty()) leaves.push_back(Process::stop());
    return leaves[pick(leaves.size())];
  }

  Process build(int depth, const std::string* var) {
    if (depth <= 0 || chance(opts_.leaf_bias)) return leaf(var);
    static const Op inner[] = {Op::Prefix,   Op::IntChoice, Op::ExtChoice, Op::Sliding,
                               Op::Parallel, Op::Conceal,   Op::Rename,    Op::Interrupt,
                               Op::Throw};
    std::vector<Op> avail;
    for (Op o : inner)
      if (opts_.ops.count(o)) avail.push_back(o);
    if (avail.empty()) return leaf(var);
    Op o = avail[pick(avail.size())];
    auto sub = [&] { return build(depth - 1, var); };
    // Operands that stay in place after acting never see the variable, so recursive terms
    // remain finite-state.
    auto fixed = [&] { return build(depth - 1, nullptr); };
    switch (o) {
      case Op::Prefix:
        return Process::prefix(action(), sub());
      case Op::IntChoice:
        return Process::int_choice(sub(), sub());
      case Op::ExtChoice:
        return Process::ext_choice(sub(), sub());
      case Op::Sliding:
        return Process::sliding(sub(), sub());
      case Op::Parallel: {
        auto s = action_set();
        return Process::parallel(s, fixed(), fixed());
      }
      case Op::Conceal:
        return Process::conceal(action_set(), fixed());
      case Op::Rename:
        return Process::rename(renaming(), fixed());
      case Op::Interrupt:
        return Process::interrupt(fixed(), sub());
      case Op::Throw: {
        auto s = action_set();
        return Process::throw_(s, fixed(), sub());
      }
      default:
        return leaf(var);
    }
  }

  GenOptions opts_;
  std::mt19937_64 rng_;
};

/// Every term of exactly `size` nodes over the alphabet {a, b}: leaves STOP and div,
/// prefixing by a or b, concealment and synchronisation over all four subsets, and the
/// three non-identity renamings.
inline std::vector<Process> enumerate_terms(std::size_t size) {
  static std::vector<std::vector<Process>> memo;
  const std::vector<ActionSet> sets{{}, {"a"}, {"b"}, {"a", "b"}};
  const std::vector<Renaming> maps{{{"a", "b"}}, {{"b", "a"}}, {{"a", "b"}, {"b", "a"}}};
  while (memo.size() <= size) {
    std::size_t n = memo.size();
    std::vector<Process> out;
    if (n == 1) {
      out = {Process::stop(), Process::div()};
    } else if (n >= 2) {
      for (const auto& p : memo[n - 1]) {
        out.push_back(Process::prefix("a", p));
        out.push_back(Process::prefix("b", p));
        for (const auto& s : sets) out.push_back(Process::conceal(s, p));
        for (const auto& f : maps) out.push_back(Process::rename(f, p));
      }
      for (std::size_t k = 1; k + 1 < n; ++k)
        for (const auto& l : memo[k])
          for (const auto& r : memo[n - 1 - k]) {
            out.push_back(Process::int_choice(l, r));
            out.push_back(Process::ext_choice(l, r));
            out.push_back(Process::sliding(l, r));
            for (const auto& s : sets) {
              out.push_back(Process::parallel(s, l, r));
              out.push_back(Process::throw_(s, l, r));
            }
          }
    }
    memo.push_back(std::move(out));
  }
  return memo[size];
}

/// All enumerated terms of size 1..max_size.
inline std::vector<Process> enumerate_terms_upto(std::size_t max_size) {
  std::vector<Process> out;
  for (std::size_t n = 1; n <= max_size; ++n) {
    auto v = enumerate_terms(n);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

/// A one-operator context with a hole.
struct Context {
  std::string name;
  /// Whether the coupled-simulation preorder is preserved here (not only the equivalence).
  bool precongruent = true;
  std::function<Process(const Process&)> fill;
};

/// One context per operator position, with fresh siblings, sets and renamings from `gen`.
inline std::vector<Context> random_contexts(TermGenerator& gen, int sibling_depth = 2) {
  Process o = gen.term(sibling_depth);
  Action a = gen.action();
  ActionSet s = gen.action_set();
  Renaming f = gen.renaming();
  return {
      {"prefix", false, [=](const Process& x) { return Process::prefix(a, x); }},
      {"int-choice", true, [=](const Process& x) { return Process::int_choice(x, o); }},
      {"ext-choice", true, [=](const Process& x) { return Process::ext_choice(o, x); }},
      {"sliding-left", true, [=](const Process& x) { return Process::sliding(x, o); }},
      {"sliding-right", true, [=](const Process& x) { return Process::sliding(o, x); }},
      {"parallel", true, [=](const Process& x) { return Process::parallel(s, x, o); }},
      {"conceal", true, [=](const Process& x) { return Process::conceal(s, x); }},
      {"rename", true, [=](const Process& x) { return Process::rename(f, x); }},
      {"interrupt-left", true, [=](const Process& x) { return Process::interrupt(x, o); }},
      {"interrupt-right", true, [=](const Process& x) { return Process::interrupt(o, x); }},
      {"throw-left", true, [=](const Process& x) { return Process::throw_(s, x, o); }},
      {"throw-right", false, [=](const Process& x) { return Process::throw_(s, o, x); }},
      {"recursion", false,
       [=](const Process& x) {
         return Process::mu("X", Process::ext_choice(x, Process::prefix(a, Process::ident("X"))));
       }},
  };
}

}  // namespace cspbt
