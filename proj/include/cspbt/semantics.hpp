// Structural operational semantics, explicit transition systems and weak closures.
#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdint>
#include <deque>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "cspbt/process.hpp"
#include "cspbt/syntax.hpp"

namespace cspbt {

inline constexpr std::size_t kDefaultStateBound = 100000;

class StateBoundExceeded : public std::runtime_error {
 public:
  explicit StateBoundExceeded(std::size_t b)
      : std::runtime_error("state bound of " + std::to_string(b) + " exceeded"), bound(b) {}
  std::size_t bound;
};

struct Step {
  Action label;  // kTau for the internal action
  Process target;
};

namespace detail {

inline void add_step(std::vector<Step>& out, Action label, Process target) {
  for (const auto& s : out)
    if (s.label == label && s.target == target) return;
  out.push_back({std::move(label), std::move(target)});
}

}  // namespace detail

/// All transitions of a closed term, one per distinct (label, target).
inline std::vector<Step> step(const Process& p) {
  std::vector<Step> out;
  switch (p.op()) {
    case Op::Stop:
    case Op::Ident:
      break;
    case Op::Div:
      out.push_back({kTau, p});
      break;
    case Op::Prefix:
      out.push_back({p.name(), p.body()});
      break;
    case Op::IntChoice:
      detail::add_step(out, kTau, p.left());
      detail::add_step(out, kTau, p.right());
      break;
    case Op::ExtChoice:
      for (auto& s : step(p.left())) {
        if (s.label == kTau)
          detail::add_step(out, kTau, Process::ext_choice(s.target, p.right()));
        else
          detail::add_step(out, s.label, s.target);
      }
      for (auto& s : step(p.right())) {
        if (s.label == kTau)
          detail::add_step(out, kTau, Process::ext_choice(p.left(), s.target));
        else
          detail::add_step(out, s.label, s.target);
      }
      break;
    case Op::Sliding:
      for (auto& s : step(p.left())) {
        if (s.label == kTau)
          detail::add_step(out, kTau, Process::sliding(s.target, p.right()));
        else
          detail::add_step(out, s.label, s.target);
      }
      detail::add_step(out, kTau, p.right());
      break;
    case Op::Parallel: {
      const ActionSet& a = p.set();
      auto ls = step(p.left());
      auto rs = step(p.right());
      for (auto& s : ls)
        if (!a.count(s.label))
          detail::add_step(out, s.label, Process::parallel(a, s.target, p.right()));
      for (auto& s : ls) {
        if (!a.count(s.label)) continue;
        for (auto& t : rs)
          if (t.label == s.label)
            detail::add_step(out, s.label, Process::parallel(a, s.target, t.target));
      }
      for (auto& t : rs)
        if (!a.count(t.label))
          detail::add_step(out, t.label, Process::parallel(a, p.left(), t.target));
      break;
    }
    case Op::Conceal:
      for (auto& s : step(p.body())) {
        Action l = p.set().count(s.label) ? kTau : s.label;
        detail::add_step(out, std::move(l), Process::conceal(p.set(), s.target));
      }
      break;
    case Op::Rename:
      for (auto& s : step(p.body()))
        detail::add_step(out, apply_renaming(p.renaming(), s.label),
                         Process::rename(p.renaming(), s.target));
      break;
    case Op::Interrupt:
      for (auto& s : step(p.left()))
        detail::add_step(out, s.label, Process::interrupt(s.target, p.right()));
      for (auto& t : step(p.right())) {
        if (t.label == kTau)
          detail::add_step(out, kTau, Process::interrupt(p.left(), t.target));
        else
          detail::add_step(out, t.label, t.target);
      }
      break;
    case Op::Throw:
      for (auto& s : step(p.left())) {
        if (p.set().count(s.label))
          detail::add_step(out, s.label, p.right());
        else
          detail::add_step(out, s.label, Process::throw_(p.set(), s.target, p.right()));
      }
      break;
    case Op::Mu:
      out.push_back({kTau, substitute(p.body(), p.name(), p)});
      break;
  }
  return out;
}

/// Growable bitset over state indices.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}
  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool intersects(const StateSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  StateSet& operator|=(const StateSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        int b = __builtin_ctzll(bits);
        f(w * 64 + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }
  std::vector<std::size_t> members() const {
    std::vector<std::size_t> v;
    for_each([&](std::size_t i) { v.push_back(i); });
    return v;
  }
  friend bool operator==(const StateSet& a, const StateSet& b) { return a.words_ == b.words_; }
  friend bool operator<(const StateSet& a, const StateSet& b) { return a.words_ < b.words_; }
  std::size_t hash() const {
    std::size_t h = n_;
    for (auto w : words_) h = detail::mix(h, std::hash<std::uint64_t>{}(w));
    return h;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct Transition {
  std::size_t source;
  std::size_t label;  // index into Lts::labels; 0 is tau
  std::size_t target;
  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Explicit finite LTS. `terms` is empty when the LTS was read from a file.
struct Lts {
  std::vector<std::string> labels{kTau};
  std::vector<Transition> transitions;
  std::vector<Process> terms;
  std::size_t num_states = 0;
  std::vector<std::size_t> roots;

  std::size_t root() const { return roots.at(0); }

  /// The term of state s as text, or its number when the LTS has no terms.
  std::string text(std::size_t s) const {
    return s < terms.size() ? unparse(terms[s]) : std::to_string(s);
  }

  std::size_t label_id(const Action& a) {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == a) return i;
    labels.push_back(a);
    return labels.size() - 1;
  }
  std::optional<std::size_t> find_label(const Action& a) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == a) return i;
    return std::nullopt;
  }

  /// Outgoing transitions per state, in transition-list order.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> successors() const {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out(num_states);
    for (const auto& t : transitions) out[t.source].emplace_back(t.label, t.target);
    return out;
  }
};

/// Explores every term reachable from `starts` breadth first. State 0 is the first start;
/// successors are discovered in order of label, then target text.
inline Lts build_lts_multi(const std::vector<Process>& starts,
                           std::size_t bound = kDefaultStateBound) {
  Lts lts;
  std::unordered_map<Process, std::size_t, ProcessHash> index;
  std::deque<std::size_t> queue;
  auto intern = [&](const Process& p) -> std::size_t {
    auto it = index.find(p);
    if (it != index.end()) return it->second;
    if (lts.num_states >= bound) throw StateBoundExceeded(bound);
    std::size_t id = lts.num_states++;
    index.emplace(p, id);
    lts.terms.push_back(p);
    queue.push_back(id);
    return id;
  };
  for (const auto& s : starts) {
    lts.roots.push_back(intern(s));
    while (!queue.empty()) {
      std::size_t src = queue.front();
      queue.pop_front();
      auto steps = step(lts.terms[src]);
      std::vector<std::size_t> order(steps.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      // Texts are rendered only to break ties between equal labels.
      std::vector<std::optional<std::string>> texts(steps.size());
      auto text = [&](std::size_t i) -> const std::string& {
        if (!texts[i]) texts[i] = unparse(steps[i].target);
        return *texts[i];
      };
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (steps[x].label != steps[y].label) return steps[x].label < steps[y].label;
        return text(x) < text(y);
      });
      for (std::size_t i : order) {
        std::size_t dst = intern(steps[i].target);
        lts.transitions.push_back({src, lts.label_id(steps[i].label), dst});
      }
    }
  }
  return lts;
}

inline Lts build_lts(const Process& p, std::size_t bound = kDefaultStateBound) {
  return build_lts_multi({p}, bound);
}

/// Reflexive-transitive tau closure, weak visible steps and divergence.
struct WeakClosure {
  std::vector<StateSet> tau_reach;                // s => t
  std::vector<std::vector<StateSet>> weak_step;   // [label][s]: s =a=> t; label 0 unused
  StateSet divergent;

  /// s =alpha-hat=> t; for tau this is tau_reach.
  const StateSet& hat(std::size_t label, std::size_t s) const {
    return label == 0 ? tau_reach[s] : weak_step[label][s];
  }
};

/// States from which an infinite tau-run starts.
inline StateSet divergent_states(const Lts& lts) {
  const std::size_t n = lts.num_states;
  std::vector<std::vector<std::size_t>> tau(n), rtau(n);
  for (const auto& t : lts.transitions)
    if (t.label == 0) {
      tau[t.source].push_back(t.target);
      rtau[t.target].push_back(t.source);
    }
  // Iterative Tarjan over the tau-subgraph.
  std::vector<long> idx(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack, comp(n, 0);
  std::vector<std::vector<std::size_t>> comps;
  long counter = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (idx[root] != -1) continue;
    std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
    idx[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, i] = call.back();
      if (i < tau[v].size()) {
        std::size_t w = tau[v][i++];
        if (idx[w] == -1) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], idx[w]);
        }
        continue;
      }
      if (low[v] == idx[v]) {
        comps.emplace_back();
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = comps.size() - 1;
          comps.back().push_back(w);
        } while (w != v);
      }
      std::size_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  StateSet div(n);
  std::deque<std::size_t> work;
  for (const auto& t : lts.transitions)
    if (t.label == 0 && comp[t.source] == comp[t.target] && !div.test(t.source)) {
      div.set(t.source);
      work.push_back(t.source);
    }
  while (!work.empty()) {
    std::size_t v = work.front();
    work.pop_front();
    for (std::size_t u : rtau[v])
      if (!div.test(u)) {
        div.set(u);
        work.push_back(u);
      }
  }
  return div;
}

inline WeakClosure weak_closure(const Lts& lts) {
  const std::size_t n = lts.num_states;
  WeakClosure wc;
  std::vector<std::vector<std::size_t>> tau(n);
  for (const auto& t : lts.transitions)
    if (t.label == 0) tau[t.source].push_back(t.target);
  wc.tau_reach.assign(n, StateSet(n));
  for (std::size_t s = 0; s < n; ++s) {
    StateSet& r = wc.tau_reach[s];
    std::vector<std::size_t> work{s};
    r.set(s);
    while (!work.empty()) {
      std::size_t v = work.back();
      work.pop_back();
      for (std::size_t w : tau[v])
        if (!r.test(w)) {
          r.set(w);
          work.push_back(w);
        }
    }
  }
  wc.weak_step.assign(lts.labels.size(), {});
  for (std::size_t l = 1; l < lts.labels.size(); ++l) {
    // after[s] = union of tau_reach(t) over s -l-> t
    std::vector<StateSet> after(n, StateSet(n));
    for (const auto& t : lts.transitions)
      if (t.label == l) after[t.source] |= wc.tau_reach[t.target];
    auto& ws = wc.weak_step[l];
    ws.assign(n, StateSet(n));
    for (std::size_t s = 0; s < n; ++s)
      wc.tau_reach[s].for_each([&](std::size_t m) { ws[s] |= after[m]; });
  }
  wc.divergent = divergent_states(lts);
  return wc;
}

/// Aldebaran text: header `des (0, T, S)` then one `(src, "label", dst)` line per transition.
inline void write_aut(std::ostream& os, const Lts& lts) {
  os << "des (" << lts.root() << ", " << lts.transitions.size() << ", " << lts.num_states
     << ")\n";
  for (const auto& t : lts.transitions)
    os << '(' << t.source << ", \"" << lts.labels[t.label] << "\", " << t.target << ")\n";
}

inline std::string to_aut(const Lts& lts) {
  std::ostringstream os;
  write_aut(os, lts);
  return os.str();
}

class AutFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads an Aldebaran file; labels "tau" and "i" denote the internal action.
inline Lts read_aut(std::istream& is) {
  Lts lts;
  std::string line;
  std::size_t lineno = 0;
  std::size_t declared = 0;
  bool header = false;
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (!header) {
      std::size_t root, t, s;
      if (std::sscanf(line.c_str(), "des (%zu , %zu , %zu )", &root, &t, &s) != 3 &&
          std::sscanf(line.c_str(), "des(%zu,%zu,%zu)", &root, &t, &s) != 3)
        throw AutFormatError("line " + std::to_string(lineno) + ": bad des header");
      lts.num_states = s;
      lts.roots = {root};
      declared = t;
      header = true;
      continue;
    }
    auto q1 = line.find('"');
    auto q2 = line.rfind('"');
    if (line.front() != '(' || line.back() != ')' || q1 == std::string::npos || q2 <= q1)
      throw AutFormatError("line " + std::to_string(lineno) + ": bad transition");
    std::string label = line.substr(q1 + 1, q2 - q1 - 1);
    std::string pre = trim(line.substr(1, q1 - 1));
    std::string post = trim(line.substr(q2 + 1, line.size() - q2 - 2));
    if (pre.empty() || pre.back() != ',' || post.empty() || post.front() != ',')
      throw AutFormatError("line " + std::to_string(lineno) + ": bad transition");
    std::size_t src = std::stoul(trim(pre.substr(0, pre.size() - 1)));
    std::size_t dst = std::stoul(trim(post.substr(1)));
    if (src >= lts.num_states || dst >= lts.num_states)
      throw AutFormatError("line " + std::to_string(lineno) + ": state out of range");
    std::size_t l = (label == "tau" || label == "i") ? 0 : lts.label_id(label);
    lts.transitions.push_back({src, l, dst});
  }
  if (!header) throw AutFormatError("missing des header");
  if (lts.transitions.size() != declared)
    throw AutFormatError("transition count does not match header");
  if (lts.roots[0] >= lts.num_states) throw AutFormatError("root out of range");
  return lts;
}

}  // namespace cspbt
