// Saturation, pruning, canonical forms and equality by derivation.
//
// The canonical form of a term is its normal form with every nested form saturated,
// every guarded family pruned (dominated duplicates removed) and sorted, and the slide
// family sorted without repeats. Two terms are equivalent exactly when their canonical
// forms coincide, and the derivations into the canonical form combine into a proof.
#pragma once

#include <unordered_map>

#include "cspbt/equivalences.hpp"
#include "cspbt/normal_form.hpp"

namespace cspbt {

struct NfBranch;

/// [div []] a_1 -> R_1 [] ... [] a_n -> R_n
struct DForm {
  bool div = false;
  std::vector<NfBranch> branches;
};

/// Structured view of a normal-form term; an empty slide means no sliding choice.
struct NormalForm {
  bool div_top = false;
  std::vector<NfBranch> branches;
  std::vector<DForm> slide;

  bool has_slide() const { return !slide.empty(); }
  Process to_process() const;
  static NormalForm from_process(const Process& p);
};

struct NfBranch {
  Action action;
  NormalForm body;
};

namespace detail {

inline Process d_process(bool div, const std::vector<NfBranch>& bs) {
  std::vector<Process> ps;
  for (const auto& b : bs) ps.push_back(Process::prefix(b.action, b.body.to_process()));
  if (ps.empty()) return div ? Process::div() : Process::stop();
  return with_div(div, ext_all(ps));
}

inline DForm d_form(const Process& p) {
  DForm d;
  if (p.is(Op::Stop)) return d;
  if (p.is(Op::Div)) {
    d.div = true;
    return d;
  }
  const Process* chain = &p;
  if (Normalizer::has_div(p)) {
    d.div = true;
    chain = &p.right();
  }
  for (const auto& leaf : flatten(*chain, Op::ExtChoice)) {
    if (!leaf.is(Op::Prefix)) throw std::invalid_argument("not a normal form: " + unparse(p));
    d.branches.push_back({leaf.name(), NormalForm::from_process(leaf.body())});
  }
  return d;
}

}  // namespace detail

inline Process NormalForm::to_process() const {
  Process top = detail::d_process(div_top, branches);
  if (slide.empty()) return top;
  std::vector<Process> ds;
  for (const auto& d : slide) ds.push_back(detail::d_process(d.div, d.branches));
  return Process::sliding(top, int_all(ds));
}

inline NormalForm NormalForm::from_process(const Process& p) {
  if (!is_normal_form(p)) throw std::invalid_argument("not a normal form: " + unparse(p));
  NormalForm n;
  DForm top = detail::d_form(p.is(Op::Sliding) ? p.left() : p);
  n.div_top = top.div;
  n.branches = std::move(top.branches);
  if (p.is(Op::Sliding))
    for (const auto& d : flatten(p.right(), Op::IntChoice)) n.slide.push_back(detail::d_form(d));
  return n;
}

/// Every slide divergence and slide branch also appears at the top, at every depth.
/// With `up_to_dominance`, a slide branch need only be dominated by a top branch.
inline bool is_saturated(const NormalForm& n, bool up_to_dominance = false) {
  for (const auto& b : n.branches)
    if (!is_saturated(b.body, up_to_dominance)) return false;
  for (const auto& d : n.slide) {
    if (d.div && !n.div_top) return false;
    for (const auto& b : d.branches) {
      if (!is_saturated(b.body, up_to_dominance)) return false;
      Process body = b.body.to_process();
      bool found = false;
      for (const auto& t : n.branches) {
        if (t.action != b.action) continue;
        Process tb = t.body.to_process();
        if (tb == body || (up_to_dominance && cs_geq(body, tb))) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

namespace detail {

inline bool is_pruned_family(const std::vector<NfBranch>& bs) {
  for (std::size_t i = 0; i < bs.size(); ++i)
    for (std::size_t h = 0; h < bs.size(); ++h)
      if (i != h && bs[i].action == bs[h].action &&
          cs_geq(bs[i].body.to_process(), bs[h].body.to_process()))
        return false;
  return true;
}

}  // namespace detail

/// No guarded family, at any depth, holds a branch dominated by a sibling with the same action.
inline bool is_pruned(const NormalForm& n) {
  if (!detail::is_pruned_family(n.branches)) return false;
  for (const auto& b : n.branches)
    if (!is_pruned(b.body)) return false;
  for (const auto& d : n.slide) {
    if (!detail::is_pruned_family(d.branches)) return false;
    for (const auto& b : d.branches)
      if (!is_pruned(b.body)) return false;
  }
  return true;
}

struct NormalizeResult {
  Process term;
  NormalForm form;
  ProofTrace trace;
};

struct CanonResult {
  Process term;
  ProofTrace trace;  // from the input to `term`
};

/// Canonical forms with memoised derivations and dominance checks.
class Canonicalizer {
 public:
  explicit Canonicalizer(std::size_t bound = kDefaultStateBound) : bound_(bound) {}

  const CanonResult& canon(const Process& p) {
    auto it = cache_.find(p);
    if (it != cache_.end()) return it->second;
    Rewriter rw(p);
    run(rw, {});
    CanonResult r{rw.term(), rw.take_trace()};
    return cache_.emplace(p, std::move(r)).first->second;
  }

  bool geq(const Process& a, const Process& b) {
    auto key = std::make_pair(a, b);
    auto it = geq_.find(key);
    if (it != geq_.end()) return it->second;
    bool r = cs_geq(a, b, bound_);
    geq_.emplace(key, r);
    return r;
  }

  /// Saturates the normal form at `at`: D [> I becomes (D [] I collapsed) [> I.
  void saturate_top(Rewriter& rw, const Path& at) {
    if (!rw.at(at).is(Op::Sliding)) return;
    Normalizer n(rw);
    const Process r = rw.at(at).right();
    rw.unapply("S1", child_path(at, 1), Process::sliding(r, r));
    rw.apply("S2", at);
    rw.apply("S3", at);
    n.dist(child_path(at, 0));
    n.collapse(at);
  }

  /// Recursively saturates a normal form in place.
  void saturate_all(Rewriter& rw, const Path& at) {
    for (const auto& d : d_paths(rw, at))
      for (const auto& b : branch_paths(rw, d)) saturate_all(rw, child_path(b, 0));
    saturate_top(rw, at);
  }

  /// Removes dominated branches from the family of the D at `d`. With `syntactic_first`,
  /// adjacent pairs that match the pruning law literally are merged before anything else.
  void prune_d(Rewriter& rw, const Path& d, bool syntactic_first = false) {
    if (syntactic_first) {
      for (bool again = true; again;) {
        again = false;
        auto bps = branch_paths(rw, d);
        for (std::size_t j = 0; j + 1 < bps.size() && !again; ++j) {
          Path c = chain_path(rw, d);
          for (std::size_t k = 0; k < j; ++k) c.push_back(1);
          const Process t = rw.at(c);
          if (j + 2 == bps.size()) {
            again = rw.try_apply("Prune", c);
          } else if (find_law("Prune")->operator()(Process::ext_choice(t.left(), t.right().left()))) {
            rw.apply("E3", c);
            rw.apply("Prune", child_path(c, 0));
            again = true;
          }
        }
      }
    }
    for (;;) {
      auto bps = branch_paths(rw, d);
      std::vector<Process> bodies;
      for (const auto& b : bps) bodies.push_back(rw.at(child_path(b, 0)));
      std::optional<std::pair<std::size_t, std::size_t>> victim;
      for (std::size_t i = 0; i < bps.size() && !victim; ++i)
        for (std::size_t h = 0; h < bps.size() && !victim; ++h) {
          if (i == h || rw.at(bps[i]).name() != rw.at(bps[h]).name()) continue;
          if (!geq(bodies[i], bodies[h])) continue;
          if (i < h && geq(bodies[h], bodies[i])) continue;  // tie: keep the lower index
          victim = std::make_pair(i, h);
        }
      if (!victim) return;
      remove_branch(rw, d, victim->first, victim->second);
    }
  }

  /// Sorts the family of the D at `d` by (action, body text).
  void sort_d(Rewriter& rw, const Path& d) {
    for (bool swapped = true; swapped;) {
      swapped = false;
      auto bps = branch_paths(rw, d);
      for (std::size_t j = 0; j + 1 < bps.size(); ++j) {
        if (branch_key(rw.at(bps[j + 1])) < branch_key(rw.at(bps[j]))) {
          swap_ext(rw, chain_path(rw, d), j);
          swapped = true;
          break;
        }
      }
    }
  }

  /// Sorts a right-nested internal family by text and drops repeats.
  void sort_int(Rewriter& rw, const Path& at) {
    auto elems = [&] {
      std::vector<std::string> out;
      Path p = at;
      while (rw.at(p).is(Op::IntChoice)) {
        out.push_back(unparse(rw.at(child_path(p, 0))));
        p.push_back(1);
      }
      out.push_back(unparse(rw.at(p)));
      return out;
    };
    for (bool changed = true; changed;) {
      changed = false;
      auto es = elems();
      for (std::size_t j = 0; j + 1 < es.size(); ++j) {
        Path p = at;
        for (std::size_t k = 0; k < j; ++k) p.push_back(1);
        bool last = j + 2 == es.size();
        if (es[j] == es[j + 1]) {
          if (last) {
            rw.apply("I1", p);
          } else {
            rw.apply("I3", p);
            rw.apply("I1", child_path(p, 0));
          }
        } else if (es[j + 1] < es[j]) {
          if (last) {
            rw.apply("I2", p);
          } else {
            rw.apply("I3", p);
            rw.apply("I2", child_path(p, 0));
            const Process t = rw.at(p);
            rw.unapply("I3", p,
                       Process::int_choice(t.left().left(),
                                           Process::int_choice(t.left().right(), t.right())));
          }
        } else {
          continue;
        }
        changed = true;
        break;
      }
    }
  }

  /// Paths of the D at the top of the normal form at `at` and of each slide D.
  std::vector<Path> d_paths(const Rewriter& rw, const Path& at) const {
    if (!rw.at(at).is(Op::Sliding)) return {at};
    std::vector<Path> out{child_path(at, 0)};
    Path p = child_path(at, 1);
    while (rw.at(p).is(Op::IntChoice)) {
      out.push_back(child_path(p, 0));
      p.push_back(1);
    }
    out.push_back(p);
    return out;
  }

  Path chain_path(const Rewriter& rw, const Path& d) const {
    return Normalizer::has_div(rw.at(d)) ? child_path(d, 1) : d;
  }

  /// Paths of the prefix branches in the D at `d`.
  std::vector<Path> branch_paths(const Rewriter& rw, const Path& d) const {
    const Process& t = rw.at(d);
    if (t.is(Op::Stop) || t.is(Op::Div)) return {};
    std::vector<Path> out;
    Path c = chain_path(rw, d);
    while (rw.at(c).is(Op::ExtChoice)) {
      out.push_back(child_path(c, 0));
      c.push_back(1);
    }
    out.push_back(c);
    return out;
  }

 private:
  void run(Rewriter& rw, const Path& at) {
    Normalizer n(rw);
    n.norm(at);
    for (const auto& d : d_paths(rw, at))
      for (const auto& b : branch_paths(rw, d)) {
        Path body = child_path(b, 0);
        rw.splice(body, canon(rw.at(body)).trace);
      }
    saturate_top(rw, at);
    for (const auto& d : d_paths(rw, at)) {
      prune_d(rw, d);
      sort_d(rw, d);
    }
    if (rw.at(at).is(Op::Sliding)) {
      sort_int(rw, child_path(at, 1));
      if (rw.at(at).left() == rw.at(at).right()) rw.apply("S1", at);
    }
  }

  static std::pair<std::string, std::string> branch_key(const Process& prefix) {
    return {prefix.name(), unparse(prefix.body())};
  }

  void swap_ext(Rewriter& rw, const Path& c, std::size_t j) { Normalizer(rw).swap_ext(c, j); }

  void move_to_front(Rewriter& rw, const Path& c, std::size_t k) {
    Normalizer(rw).move_to_front(c, k);
  }

  /// A derivation of `from` into `to`, for terms with the same canonical form.
  ProofTrace bridge(const Process& from, const Process& to) {
    const CanonResult a = canon(from);
    const CanonResult b = canon(to);
    if (a.term != b.term)
      throw std::logic_error("no derivation between " + unparse(from) + " and " + unparse(to));
    ProofTrace t = a.trace;
    auto back = reverse_trace(to, b.trace);
    t.insert(t.end(), back.begin(), back.end());
    return t;
  }

  /// Drops branch i, dominated by branch h, from the D at `d`:
  /// R_h = R_i |~| R_h, then (a -> R_i) [] a -> (R_i |~| R_h) = a -> (R_i |~| R_h).
  void remove_branch(Rewriter& rw, const Path& d, std::size_t i, std::size_t h) {
    const Path c = chain_path(rw, d);
    const std::size_t n = branch_paths(rw, d).size();
    move_to_front(rw, c, h);
    move_to_front(rw, c, i < h ? i + 1 : i);
    const Path y = n == 2 ? child_path(c, 1) : child_path(child_path(c, 1), 0);
    const Process ri = rw.at(c).left().body();
    const Process rh = rw.at(y).body();
    const Process meet = Process::int_choice(ri, rh);
    rw.splice(child_path(y, 0), bridge(rh, meet));
    Path merged = c;
    if (n == 2) {
      rw.apply("Prune", c);
    } else {
      rw.apply("E3", c);
      rw.apply("Prune", child_path(c, 0));
      merged = child_path(c, 0);
    }
    rw.splice(child_path(merged, 0), bridge(meet, rh));
  }

  struct PairHash {
    std::size_t operator()(const std::pair<Process, Process>& p) const {
      return p.first.hash() * 31 + p.second.hash();
    }
  };

  std::size_t bound_;
  std::unordered_map<Process, CanonResult, ProcessHash> cache_;
  std::unordered_map<std::pair<Process, Process>, bool, PairHash> geq_;
};

inline NormalizeResult normalize(const Process& p) {
  Rewriter rw(p);
  Normalizer(rw).norm({});
  NormalizeResult r{rw.term(), NormalForm::from_process(rw.term()), rw.take_trace()};
  return r;
}

/// Saturates every nested normal form; the input must be in normal form.
inline NormalizeResult saturate(const Process& n) {
  if (!is_normal_form(n)) throw std::invalid_argument("saturate: not a normal form");
  Rewriter rw(n);
  Canonicalizer c;
  c.saturate_all(rw, {});
  return {rw.term(), NormalForm::from_process(rw.term()), rw.take_trace()};
}

/// Prunes every guarded family of a saturated normal form, innermost first.
inline NormalizeResult prune(const Process& n) {
  if (!is_normal_form(n)) throw std::invalid_argument("prune: not a normal form");
  Rewriter rw(n);
  Canonicalizer c;
  std::function<void(const Path&)> go = [&](const Path& at) {
    for (const auto& d : c.d_paths(rw, at))
      for (const auto& b : c.branch_paths(rw, d)) go(child_path(b, 0));
    for (const auto& d : c.d_paths(rw, at)) c.prune_d(rw, d, true);
  };
  go({});
  return {rw.term(), NormalForm::from_process(rw.term()), rw.take_trace()};
}

/// Overloads taking a structured normal form.
inline NormalizeResult saturate(const NormalForm& n) { return saturate(n.to_process()); }
inline NormalizeResult prune(const NormalForm& n) { return prune(n.to_process()); }

inline NormalizeResult canonical_form(const Process& p) {
  Canonicalizer c;
  const CanonResult& r = c.canon(p);
  return {r.term, NormalForm::from_process(r.term), r.trace};
}

struct Decision {
  bool equal = false;
  ProofTrace trace;  // derivation from the left term to the right one when equal
  Process lhs_canonical;
  Process rhs_canonical;
};

inline Decision decide_equal(const Process& p, const Process& q, Canonicalizer& c) {
  Decision d;
  const CanonResult cp = c.canon(p);
  const CanonResult cq = c.canon(q);
  d.lhs_canonical = cp.term;
  d.rhs_canonical = cq.term;
  d.equal = cp.term == cq.term;
  if (d.equal) {
    d.trace = cp.trace;
    auto back = reverse_trace(q, cq.trace);
    d.trace.insert(d.trace.end(), back.begin(), back.end());
  }
  return d;
}

inline Decision decide_equal(const Process& p, const Process& q) {
  Canonicalizer c;
  return decide_equal(p, q, c);
}

}  // namespace cspbt
