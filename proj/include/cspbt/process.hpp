// Abstract syntax of the CSP dialect: immutable, structurally shared terms.
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cspbt {

using Action = std::string;
using ActionSet = std::set<Action>;
/// Finite relabelling; actions not listed map to themselves.
using Renaming = std::map<Action, Action>;

inline const Action kTau = "tau";

enum class Op {
  Stop,
  Div,
  Prefix,
  IntChoice,
  ExtChoice,
  Sliding,
  Parallel,
  Conceal,
  Rename,
  Interrupt,
  Throw,
  Ident,
  Mu,
};

class Process;

namespace detail {
struct Node;
}

/// A CSP term. Cheap to copy; the underlying node is shared and never mutated.
class Process {
 public:
  Process();  // STOP

  static Process stop();
  static Process div();
  static Process prefix(Action a, Process body);
  static Process int_choice(Process l, Process r);
  static Process ext_choice(Process l, Process r);
  static Process sliding(Process l, Process r);
  static Process parallel(ActionSet sync, Process l, Process r);
  static Process conceal(ActionSet hidden, Process body);
  static Process rename(Renaming f, Process body);
  static Process interrupt(Process l, Process r);
  static Process throw_(ActionSet handled, Process l, Process r);
  static Process ident(std::string name);
  static Process mu(std::string name, Process body);

  Op op() const;
  /// Action of a Prefix, or the identifier of Ident / Mu.
  const std::string& name() const;
  /// Synchronisation / concealment / throw set.
  const ActionSet& set() const;
  const Renaming& renaming() const;

  std::size_t arity() const;
  const Process& child(std::size_t i) const;
  const Process& left() const { return child(0); }
  const Process& right() const { return child(1); }
  const Process& body() const { return child(0); }

  /// Same operator and parameters, new children.
  Process with_children(std::vector<Process> kids) const;

  bool is(Op o) const { return op() == o; }
  std::size_t hash() const;

  friend bool operator==(const Process& a, const Process& b);
  friend bool operator!=(const Process& a, const Process& b) { return !(a == b); }

 private:
  explicit Process(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::Node> node_;
};

namespace detail {

struct Node {
  Op op = Op::Stop;
  std::string name;
  ActionSet set;
  Renaming renaming;
  std::vector<Process> kids;
  std::size_t hash = 0;
};

inline std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

inline std::shared_ptr<const Node> make(Op op, std::string name, ActionSet set, Renaming f,
                                        std::vector<Process> kids) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->name = std::move(name);
  n->set = std::move(set);
  n->renaming = std::move(f);
  n->kids = std::move(kids);
  std::size_t h = static_cast<std::size_t>(op) * 1315423911u;
  std::hash<std::string> hs;
  h = mix(h, hs(n->name));
  for (const auto& a : n->set) h = mix(h, hs(a));
  for (const auto& [k, v] : n->renaming) h = mix(mix(h, hs(k)), hs(v));
  for (const auto& k : n->kids) h = mix(h, k.hash());
  n->hash = h;
  return n;
}

inline const std::shared_ptr<const Node>& stop_node() {
  static const auto n = make(Op::Stop, {}, {}, {}, {});
  return n;
}

inline const std::shared_ptr<const Node>& div_node() {
  static const auto n = make(Op::Div, {}, {}, {}, {});
  return n;
}

}  // namespace detail

inline Process::Process() : node_(detail::stop_node()) {}

inline Process Process::stop() { return Process(detail::stop_node()); }
inline Process Process::div() { return Process(detail::div_node()); }
inline Process Process::prefix(Action a, Process body) {
  return Process(detail::make(Op::Prefix, std::move(a), {}, {}, {std::move(body)}));
}
inline Process Process::int_choice(Process l, Process r) {
  return Process(detail::make(Op::IntChoice, {}, {}, {}, {std::move(l), std::move(r)}));
}
inline Process Process::ext_choice(Process l, Process r) {
  return Process(detail::make(Op::ExtChoice, {}, {}, {}, {std::move(l), std::move(r)}));
}
inline Process Process::sliding(Process l, Process r) {
  return Process(detail::make(Op::Sliding, {}, {}, {}, {std::move(l), std::move(r)}));
}
inline Process Process::parallel(ActionSet sync, Process l, Process r) {
  return Process(
      detail::make(Op::Parallel, {}, std::move(sync), {}, {std::move(l), std::move(r)}));
}
inline Process Process::conceal(ActionSet hidden, Process body) {
  return Process(detail::make(Op::Conceal, {}, std::move(hidden), {}, {std::move(body)}));
}
inline Process Process::rename(Renaming f, Process body) {
  // Identity entries carry no information; drop them so equal maps compare equal.
  for (auto it = f.begin(); it != f.end();) it = it->first == it->second ? f.erase(it) : ++it;
  return Process(detail::make(Op::Rename, {}, {}, std::move(f), {std::move(body)}));
}
inline Process Process::interrupt(Process l, Process r) {
  return Process(detail::make(Op::Interrupt, {}, {}, {}, {std::move(l), std::move(r)}));
}
inline Process Process::throw_(ActionSet handled, Process l, Process r) {
  return Process(
      detail::make(Op::Throw, {}, std::move(handled), {}, {std::move(l), std::move(r)}));
}
inline Process Process::ident(std::string name) {
  return Process(detail::make(Op::Ident, std::move(name), {}, {}, {}));
}
inline Process Process::mu(std::string name, Process body) {
  return Process(detail::make(Op::Mu, std::move(name), {}, {}, {std::move(body)}));
}

inline Op Process::op() const { return node_->op; }
inline const std::string& Process::name() const { return node_->name; }
inline const ActionSet& Process::set() const { return node_->set; }
inline const Renaming& Process::renaming() const { return node_->renaming; }
inline std::size_t Process::arity() const { return node_->kids.size(); }
inline const Process& Process::child(std::size_t i) const { return node_->kids.at(i); }
inline std::size_t Process::hash() const { return node_->hash; }

inline Process Process::with_children(std::vector<Process> kids) const {
  if (kids.size() != arity()) throw std::logic_error("with_children: arity mismatch");
  if (op() == Op::Rename) return rename(renaming(), std::move(kids[0]));
  return Process(detail::make(op(), name(), set(), renaming(), std::move(kids)));
}

inline bool operator==(const Process& a, const Process& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.op == y.op && x.name == y.name && x.set == y.set && x.renaming == y.renaming &&
         x.kids == y.kids;
}

struct ProcessHash {
  std::size_t operator()(const Process& p) const { return p.hash(); }
};

/// Number of operator nodes (leaves count one).
inline std::size_t term_size(const Process& p) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < p.arity(); ++i) n += term_size(p.child(i));
  return n;
}

inline bool contains_op(const Process& p, Op o) {
  if (p.op() == o) return true;
  for (std::size_t i = 0; i < p.arity(); ++i)
    if (contains_op(p.child(i), o)) return true;
  return false;
}

inline bool is_binary(Op o) {
  switch (o) {
    case Op::IntChoice:
    case Op::ExtChoice:
    case Op::Sliding:
    case Op::Parallel:
    case Op::Interrupt:
    case Op::Throw:
      return true;
    default:
      return false;
  }
}

inline Action apply_renaming(const Renaming& f, const Action& a) {
  if (a == kTau) return a;
  auto it = f.find(a);
  return it == f.end() ? a : it->second;
}

}  // namespace cspbt
