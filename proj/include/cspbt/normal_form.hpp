// Normal forms for recursion-free, interrupt-free terms and the normalising rewriter.
//
//   N := D | D [> I        I := D | I |~| I
//   D := STOP | div | E | div [] E        E := a -> N | (a -> N) [] E
#pragma once

#include <array>
#include <map>

#include "cspbt/rewrite.hpp"

namespace cspbt {

class UnsupportedConstruct : public std::runtime_error {
 public:
  explicit UnsupportedConstruct(const std::string& what)
      : std::runtime_error("unsupported construct: " + what) {}
};

namespace nf {

bool is_n(const Process& p);

inline bool is_e(const Process& p) {
  if (p.is(Op::Prefix)) return is_n(p.body());
  return p.is(Op::ExtChoice) && p.left().is(Op::Prefix) && is_n(p.left().body()) &&
         is_e(p.right());
}

inline bool is_d(const Process& p) {
  if (p.is(Op::Stop) || p.is(Op::Div)) return true;
  if (p.is(Op::ExtChoice) && p.left().is(Op::Div)) return is_e(p.right());
  return is_e(p);
}

inline bool is_i(const Process& p) {
  if (p.is(Op::IntChoice)) return is_i(p.left()) && is_i(p.right());
  return is_d(p);
}

inline bool is_n(const Process& p) {
  if (p.is(Op::Sliding)) return is_d(p.left()) && is_i(p.right());
  return is_d(p);
}

}  // namespace nf

/// Membership in the normal-form grammar.
inline bool is_normal_form(const Process& p) { return nf::is_n(p); }

/// Rewrites subterms of a Rewriter's term into normal form, one law at a time.
class Normalizer {
 public:
  explicit Normalizer(Rewriter& rw) : rw_(rw) {}

  void norm(const Path& at) {
    const Process t = rw_.at(at);
    if (nf::is_n(t)) return;
    switch (t.op()) {
      case Op::Prefix:
        norm(kid(at, 0));
        return;
      case Op::IntChoice:
        norm(kid(at, 0));
        norm(kid(at, 1));
        int_n(at);
        return;
      case Op::ExtChoice:
        norm(kid(at, 0));
        norm(kid(at, 1));
        ext_n(at);
        return;
      case Op::Sliding:
        norm(kid(at, 0));
        norm(kid(at, 1));
        slide_n(at);
        return;
      case Op::Conceal:
        hide(at);
        return;
      case Op::Rename:
        norm(kid(at, 0));
        ren(at);
        return;
      case Op::Throw:
        norm(kid(at, 0));
        norm(kid(at, 1));
        thr(at);
        return;
      case Op::Parallel:
        operand(kid(at, 0));
        operand(kid(at, 1));
        par(at);
        return;
      case Op::Interrupt:
        throw UnsupportedConstruct("interrupt");
      case Op::Mu:
      case Op::Ident:
        throw UnsupportedConstruct("recursion");
      default:
        return;
    }
  }

  /// D [] D  ->  D, with identical branches merged
  void ext_d(const Path& at) {
    join(at);
    dedup(at);
  }

  /// Merges identical prefix branches of the D at `d`:
  /// (a -> R) [] a -> R  ->  (a -> R) [] a -> (R |~| R)  ->  a -> (R |~| R)  ->  a -> R.
  void dedup(const Path& d) {
    for (;;) {
      const Path c = has_div(rw_.at(d)) ? kid(d, 1) : d;
      if (!rw_.at(c).is(Op::ExtChoice)) return;
      const auto bs = flatten(rw_.at(c), Op::ExtChoice);
      std::optional<std::pair<std::size_t, std::size_t>> dup;
      for (std::size_t j = 1; j < bs.size() && !dup; ++j)
        for (std::size_t i = 0; i < j && !dup; ++i)
          if (bs[i] == bs[j]) dup = std::make_pair(i, j);
      if (!dup) return;
      if (dup->second != 1) {
        move_to_front(c, dup->second);
        move_to_front(c, dup->first + 1);
      }
      const Path y = bs.size() == 2 ? kid(c, 1) : kid(kid(c, 1), 0);
      const Process r = rw_.at(y).body();
      rw_.unapply("I1", kid(y, 0), Process::int_choice(r, r));
      Path merged = c;
      if (bs.size() == 2) {
        rw_.apply("Prune", c);
      } else {
        rw_.apply("E3", c);
        merged = kid(c, 0);
        rw_.apply("Prune", merged);
      }
      rw_.apply("I1", kid(merged, 0));
    }
  }

  /// Swaps branches j and j+1 of the prefix chain at `c`.
  void swap_ext(const Path& c, std::size_t j) {
    Path p = c;
    for (std::size_t k = 0; k < j; ++k) p.push_back(1);
    if (!rw_.at(p).right().is(Op::ExtChoice)) {
      rw_.apply("E2", p);
      return;
    }
    rw_.apply("E3", p);
    rw_.apply("E2", kid(p, 0));
    reassoc(p);
  }

  void move_to_front(const Path& c, std::size_t k) {
    for (std::size_t j = k; j > 0; --j) swap_ext(c, j - 1);
  }

  /// D [] D  ->  D
  void join(const Path& at) {
    const Process t = rw_.at(at);
    const Process& l = t.left();
    const Process& r = t.right();
    const Path lp = kid(at, 0), rp = kid(at, 1);
    if (l.is(Op::Stop)) {
      rw_.apply("E2", at);
      rw_.apply("E4", at);
    } else if (r.is(Op::Stop)) {
      rw_.apply("E4", at);
    } else if (l.is(Op::Div)) {
      if (r.is(Op::Div)) {
        rw_.apply("E1div", at);
      } else if (has_div(r)) {
        rw_.apply("E3", at);
        rw_.apply("E1div", lp);
      }
    } else if (!has_div(l)) {
      if (r.is(Op::Div)) {
        rw_.apply("E2", at);
      } else if (!has_div(r)) {
        chain(at);
      } else {
        rw_.apply("E3", at);
        rw_.apply("E2", lp);
        reassoc(at);
        chain(rp);
      }
    } else if (r.is(Op::Div)) {
      rw_.apply("E2", at);
      rw_.apply("E3", at);
      rw_.apply("E1div", lp);
    } else {
      reassoc(at);
      join(rp);
      if (has_div(rw_.at(rp))) {
        rw_.apply("E3", at);
        rw_.apply("E1div", lp);
      }
    }
  }

  /// N [] N  ->  N
  void ext_n(const Path& at) {
    const Process t = rw_.at(at);
    if (!t.left().is(Op::Sliding) && !t.right().is(Op::Sliding)) return ext_d(at);
    lift(kid(at, 0));
    lift(kid(at, 1));
    rw_.apply("S7", at);
    ext_d(kid(at, 0));
    dist(kid(at, 1));
    simplify(at);
  }

  /// N |~| N  ->  N
  void int_n(const Path& at) {
    lift(kid(at, 0));
    lift(kid(at, 1));
    rw_.apply("S6", at);
    ext_d(kid(at, 0));
    int_merge(kid(at, 1));
    simplify(at);
  }

  /// N [> N  ->  N
  void slide_n(const Path& at) {
    if (rw_.at(at).left().is(Op::Sliding)) {
      rw_.apply("S3", at);
      dist(kid(at, 0));
      collapse(at);
    }
    if (rw_.at(at).right().is(Op::Sliding)) {
      rw_.apply("S2", at);
      rw_.apply("S3", at);
      ext_d(kid(at, 0));
    }
    simplify(at);
  }

  /// I [] I  ->  I
  void dist(const Path& at) {
    const Process t = rw_.at(at);
    if (!t.right().is(Op::IntChoice) && t.left().is(Op::IntChoice)) rw_.apply("E2", at);
    if (rw_.at(at).right().is(Op::IntChoice)) {
      rw_.apply("D1", at);
      dist(kid(at, 0));
      dist(kid(at, 1));
      int_merge(at);
    } else {
      ext_d(at);
    }
  }

  /// Right-nests an internal-choice tree.
  void int_merge(Path at) {
    for (;;) {
      Process t = rw_.at(at);
      if (!t.is(Op::IntChoice)) return;
      while (t.left().is(Op::IntChoice)) {
        const Process& l = t.left();
        rw_.unapply("I3", at,
                    Process::int_choice(l.left(), Process::int_choice(l.right(), t.right())));
        t = rw_.at(at);
      }
      at.push_back(1);
    }
  }

  /// (I [> R) with I internal: fold the family into one D.
  void collapse(const Path& at) {
    while (rw_.at(at).left().is(Op::IntChoice)) {
      rw_.apply("S4", at);
      dist(kid(at, 0));
    }
  }

  /// STOP [> D -> D and D [> D -> D.
  void simplify(const Path& at) {
    const Process t = rw_.at(at);
    if (!t.is(Op::Sliding)) return;
    if (t.left().is(Op::Stop) && !t.right().is(Op::IntChoice))
      rw_.apply("S5", at);
    else if (t.left() == t.right())
      rw_.apply("S1", at);
  }

  static bool has_div(const Process& d) { return d.is(Op::ExtChoice) && d.left().is(Op::Div); }

 private:
  static Path kid(Path p, std::size_t i) {
    p.push_back(i);
    return p;
  }

  /// (x [] y) [] z  ->  x [] (y [] z)
  void reassoc(const Path& at) {
    const Process t = rw_.at(at);
    const Process& l = t.left();
    rw_.unapply("E3", at, Process::ext_choice(l.left(), Process::ext_choice(l.right(), t.right())));
  }

  /// E [] E  ->  E
  void chain(Path at) {
    while (!rw_.at(at).left().is(Op::Prefix)) {
      reassoc(at);
      at.push_back(1);
    }
  }

  void lift(const Path& at) {
    const Process t = rw_.at(at);
    if (!t.is(Op::Sliding)) rw_.unapply("S5", at, Process::sliding(Process::stop(), t));
  }

  /// div -> div [] STOP, so a bare div reads as a divergent empty family.
  void open_div(const Path& at) {
    if (rw_.at(at).is(Op::Div))
      rw_.unapply("E4", at, Process::ext_choice(Process::div(), Process::stop()));
  }

  /// Internal families stay families; everything else goes to normal form.
  void operand(const Path& at) {
    if (rw_.at(at).is(Op::IntChoice)) {
      operand(kid(at, 0));
      operand(kid(at, 1));
    } else {
      norm(at);
    }
  }

  /// Opens a bare div in the head of a normal form; returns (div, slide) flags.
  std::pair<bool, bool> shape(const Path& at) {
    bool slide = rw_.at(at).is(Op::Sliding);
    Path head = slide ? kid(at, 0) : at;
    open_div(head);
    return {has_div(rw_.at(head)), slide};
  }

  void hide(const Path& at) {
    const Path b = kid(at, 0);
    if (rw_.at(b).is(Op::IntChoice)) {
      rw_.apply("H1", at);
      norm(at);
      return;
    }
    norm(b);
    auto [d, s] = shape(b);
    rw_.apply(s ? (d ? "H8" : "H7") : (d ? "H6" : "H5"), at);
    norm(at);
  }

  void ren(const Path& at) {
    const Process& b = rw_.at(at).body();
    switch (b.op()) {
      case Op::Sliding:
      case Op::IntChoice:
      case Op::ExtChoice:
        rw_.apply(b.is(Op::Sliding) ? "R0" : b.is(Op::IntChoice) ? "R1" : "R2", at);
        ren(kid(at, 0));
        ren(kid(at, 1));
        return;
      case Op::Prefix:
        rw_.apply("R3", at);
        ren(kid(at, 0));
        return;
      case Op::Stop:
        rw_.apply("R4", at);
        return;
      case Op::Div:
        rw_.apply("R5", at);
        return;
      default:
        throw std::logic_error("renaming of a term outside normal form");
    }
  }

  void thr(const Path& at) {
    const Process t = rw_.at(at);
    const Process& l = t.left();
    switch (l.op()) {
      case Op::Sliding:
      case Op::IntChoice:
      case Op::ExtChoice:
        rw_.apply(l.is(Op::Sliding) ? "T0" : l.is(Op::IntChoice) ? "T1" : "T2", at);
        thr(kid(at, 0));
        thr(kid(at, 1));
        return;
      case Op::Prefix:
        if (t.set().count(l.name())) {
          rw_.apply("T4", at);
        } else {
          rw_.apply("T3", at);
          thr(kid(at, 0));
        }
        return;
      case Op::Stop:
        rw_.apply("T5", at);
        return;
      case Op::Div:
        rw_.apply("T6", at);
        return;
      default:
        throw std::logic_error("throw over a term outside normal form");
    }
  }

  void par(const Path& at) {
    const Path lp = kid(at, 0), rp = kid(at, 1);
    bool li = rw_.at(lp).is(Op::IntChoice);
    bool ri = rw_.at(rp).is(Op::IntChoice);
    if (li && ri) {
      rw_.apply("P16", at);
    } else if (li || ri) {
      if (li) rw_.apply("P1", at);
      auto [d, s] = shape(lp);
      rw_.apply(s ? (d ? "P18" : "P17") : (d ? "P15" : "P14"), at);
    } else {
      auto [ld, ls] = shape(lp);
      auto [rd, rs] = shape(rp);
      const char* law = expansion(ld, ls, rd, rs);
      if (!law) {
        rw_.apply("P1", at);
        law = expansion(rd, rs, ld, ls);
      }
      rw_.apply(law, at);
    }
    norm(at);
  }

  static const char* expansion(bool ld, bool ls, bool rd, bool rs) {
    static const std::map<std::array<bool, 4>, const char*> table = {
        {{false, false, false, false}, "P4"}, {{true, false, false, false}, "P5"},
        {{true, false, true, false}, "P6"},   {{false, true, false, false}, "P7"},
        {{true, true, false, false}, "P8"},   {{false, true, true, false}, "P9"},
        {{true, true, true, false}, "P10"},   {{false, true, false, true}, "P11"},
        {{true, true, false, true}, "P12"},   {{true, true, true, true}, "P13"},
    };
    auto it = table.find({ld, ls, rd, rs});
    return it == table.end() ? nullptr : it->second;
  }

  Rewriter& rw_;
};

}  // namespace cspbt
