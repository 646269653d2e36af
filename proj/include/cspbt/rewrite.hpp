// Positional rewriting with recorded, replayable proof traces.
#pragma once

#include <optional>
#include <variant>
#include <string>
#include <vector>

#include "cspbt/laws.hpp"
#include "cspbt/syntax.hpp"

namespace cspbt {

/// Child-index list from the root.
using Path = std::vector<std::size_t>;

enum class Direction { LeftToRight, RightToLeft };

inline const char* direction_name(Direction d) {
  return d == Direction::LeftToRight ? "left-to-right" : "right-to-left";
}

/// One law application. A right-to-left step names the instance of the law's left-hand
/// side it produces in `witness`; it is legal when the law maps the witness back to the
/// subterm it replaces.
struct ProofStep {
  std::string axiom;
  Path path;
  Direction direction = Direction::LeftToRight;
  std::optional<Process> witness;
};

using ProofTrace = std::vector<ProofStep>;

class RewriteError : public std::runtime_error {
 public:
  RewriteError(std::size_t step, const std::string& msg)
      : std::runtime_error("step " + std::to_string(step) + ": " + msg), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

inline const Process& subterm(const Process& p, const Path& path, std::size_t from = 0) {
  const Process* cur = &p;
  for (std::size_t i = from; i < path.size(); ++i) {
    if (path[i] >= cur->arity()) throw std::out_of_range("path leaves the term");
    cur = &cur->child(path[i]);
  }
  return *cur;
}

inline Process replace_at(const Process& p, const Path& path, const Process& q,
                          std::size_t depth = 0) {
  if (depth == path.size()) return q;
  if (path[depth] >= p.arity()) throw std::out_of_range("path leaves the term");
  std::vector<Process> kids;
  for (std::size_t i = 0; i < p.arity(); ++i)
    kids.push_back(i == path[depth] ? replace_at(p.child(i), path, q, depth + 1) : p.child(i));
  return p.with_children(std::move(kids));
}

/// Result of applying a single step to `t`, or a reason it is not a legal step.
inline std::variant<Process, std::string> apply_step(const Process& t, const ProofStep& s) {
  const Law* law = find_law(s.axiom);
  if (!law) return "unknown law " + s.axiom;
  Process old;
  try {
    old = subterm(t, s.path);
  } catch (const std::out_of_range&) {
    return std::string("path leaves the term");
  }
  if (s.direction == Direction::LeftToRight) {
    auto r = (*law)(old);
    if (!r) return s.axiom + " does not match " + unparse(old);
    return replace_at(t, s.path, *r);
  }
  if (!s.witness) return std::string("right-to-left step without witness");
  auto r = (*law)(*s.witness);
  if (!r || *r != old)
    return s.axiom + " does not rewrite " + unparse(*s.witness) + " to " + unparse(old);
  return replace_at(t, s.path, *s.witness);
}

/// Replays `trace` from `source`; throws RewriteError at the first illegal step.
inline Process replay(const Process& source, const ProofTrace& trace) {
  Process cur = source;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    auto r = apply_step(cur, trace[i]);
    if (auto* err = std::get_if<std::string>(&r)) throw RewriteError(i, *err);
    cur = std::get<Process>(r);
  }
  return cur;
}

/// Reverses a derivation t0 -> tn into tn -> t0; needs the intermediate terms.
inline ProofTrace reverse_trace(const Process& source, const ProofTrace& trace) {
  std::vector<Process> terms{source};
  for (const auto& s : trace) terms.push_back(std::get<Process>(apply_step(terms.back(), s)));
  ProofTrace out;
  for (std::size_t i = trace.size(); i-- > 0;) {
    ProofStep s = trace[i];
    const Process& before = subterm(terms[i], s.path);
    if (s.direction == Direction::LeftToRight) {
      s.direction = Direction::RightToLeft;
      s.witness = before;
    } else {
      s.direction = Direction::LeftToRight;
      s.witness.reset();
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// Holds a term under rewriting and the steps applied so far.
class Rewriter {
 public:
  explicit Rewriter(Process t) : term_(std::move(t)) {}

  const Process& term() const { return term_; }
  const ProofTrace& trace() const { return trace_; }
  ProofTrace take_trace() { return std::move(trace_); }
  const Process& at(const Path& p) const { return subterm(term_, p); }

  /// Applies `law` left to right at `path`; false (and no change) if it does not match.
  bool try_apply(const std::string& law, const Path& path) {
    auto r = apply_step(term_, {law, path, Direction::LeftToRight, std::nullopt});
    if (!std::holds_alternative<Process>(r)) return false;
    term_ = std::get<Process>(r);
    trace_.push_back({law, path, Direction::LeftToRight, std::nullopt});
    return true;
  }

  void apply(const std::string& law, const Path& path) {
    if (!try_apply(law, path))
      throw std::logic_error(law + " does not match " + unparse(at(path)));
  }

  /// Replaces the subterm at `path` by `lhs`, an instance of the law's left side.
  void unapply(const std::string& law, const Path& path, const Process& lhs) {
    ProofStep s{law, path, Direction::RightToLeft, lhs};
    auto r = apply_step(term_, s);
    if (auto* err = std::get_if<std::string>(&r)) throw std::logic_error(*err);
    term_ = std::get<Process>(r);
    trace_.push_back(std::move(s));
  }

  /// Appends a derivation recorded against the subterm at `path`.
  void splice(const Path& path, const ProofTrace& sub) {
    for (const auto& s : sub) {
      ProofStep t = s;
      t.path.insert(t.path.begin(), path.begin(), path.end());
      auto r = apply_step(term_, t);
      if (auto* err = std::get_if<std::string>(&r)) throw std::logic_error(*err);
      term_ = std::get<Process>(r);
      trace_.push_back(std::move(t));
    }
  }

 private:
  Process term_;
  ProofTrace trace_;
};

inline Path child_path(Path p, std::size_t i) {
  p.push_back(i);
  return p;
}

}  // namespace cspbt
