// Textual CSP dialect.
//
// Precedence, loosest first (binary operators on one level associate left):
//
//   P |~| Q
//   P [> Q
//   P [] Q
//   P /\ Q        P [|A|> Q
//   P [|A|] Q
//   P \ A         P [[a := b, ...]]      (postfix)
//   a -> P                               (prefix, right-associative)
//   STOP  div  X  (P)  mu X . P
//
// Action names are lowercase identifiers, process identifiers uppercase.
#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cspbt/process.hpp"

namespace cspbt {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t pos, const std::string& expected, const std::string& found)
      : std::runtime_error("syntax error at offset " + std::to_string(pos) + ": expected " +
                           expected + ", found " + found),
        position(pos),
        expected(expected) {}
  std::size_t position;
  std::string expected;
};

class UnboundIdentifier : public std::runtime_error {
 public:
  explicit UnboundIdentifier(const std::string& n)
      : std::runtime_error("unbound process identifier '" + n + "'"), name(n) {}
  std::string name;
};

namespace detail {

enum class Tok {
  End,
  Action,
  Ident,
  Stop,
  Div,
  Mu,
  Dot,
  Arrow,
  IntChoice,   // |~|
  Slide,       // [>
  ExtChoice,   // []
  Interrupt,   // /\ .
  OpenPar,     // [|
  CloseSync,   // |]
  CloseThrow,  // |>
  Backslash,
  OpenRen,     // [[
  CloseRen,    // ]]
  LBrace,
  RBrace,
  Comma,
  Assign,  // :=
  LParen,
  RParen,
};

inline const char* tok_name(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::Action: return "action name";
    case Tok::Ident: return "process identifier";
    case Tok::Stop: return "'STOP'";
    case Tok::Div: return "'div'";
    case Tok::Mu: return "'mu'";
    case Tok::Dot: return "'.'";
    case Tok::Arrow: return "'->'";
    case Tok::IntChoice: return "'|~|'";
    case Tok::Slide: return "'[>'";
    case Tok::ExtChoice: return "'[]'";
    case Tok::Interrupt: return "'/\\'";
    case Tok::OpenPar: return "'[|'";
    case Tok::CloseSync: return "'|]'";
    case Tok::CloseThrow: return "'|>'";
    case Tok::Backslash: return "'\\'";
    case Tok::OpenRen: return "'[['";
    case Tok::CloseRen: return "']]'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Assign: return "':='";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string w(s.substr(start, i - start));
      Tok k;
      if (w == "STOP") k = Tok::Stop;
      else if (w == "div") k = Tok::Div;
      else if (w == "mu") k = Tok::Mu;
      else if (std::isupper(static_cast<unsigned char>(w[0]))) k = Tok::Ident;
      else if (std::islower(static_cast<unsigned char>(w[0]))) k = Tok::Action;
      else throw SyntaxError(start, "identifier", "'" + w + "'");
      if (k == Tok::Action && w == kTau)
        throw SyntaxError(start, "action name", "reserved internal action 'tau'");
      out.push_back({k, std::move(w), start});
      continue;
    }
    static const std::pair<std::string_view, Tok> puncts[] = {
        {"|~|", Tok::IntChoice}, {"[|", Tok::OpenPar},   {"|]", Tok::CloseSync},
        {"|>", Tok::CloseThrow}, {"[[", Tok::OpenRen},   {"]]", Tok::CloseRen},
        {"[]", Tok::ExtChoice},  {"[>", Tok::Slide},     {"/\\", Tok::Interrupt},
        {"->", Tok::Arrow},      {":=", Tok::Assign},    {"\\", Tok::Backslash},
        {"{", Tok::LBrace},      {"}", Tok::RBrace},     {",", Tok::Comma},
        {"(", Tok::LParen},      {")", Tok::RParen},     {".", Tok::Dot},
    };
    bool matched = false;
    for (const auto& [p, k] : puncts) {
      if (starts(p)) {
        out.push_back({k, std::string(p), start});
        i += p.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw SyntaxError(start, "token", std::string("'") + c + "'");
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Process parse_all() {
    Process p = expr_intchoice();
    expect(Tok::End);
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  Token next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    throw SyntaxError(t.pos, expected, t.kind == Tok::End ? tok_name(Tok::End) : "'" + t.text + "'");
  }

  Token expect(Tok k) {
    if (!at(k)) fail(tok_name(k));
    return next();
  }

  Process expr_intchoice() {
    Process p = expr_slide();
    while (at(Tok::IntChoice)) {
      next();
      p = Process::int_choice(p, expr_slide());
    }
    return p;
  }

  Process expr_slide() {
    Process p = expr_ext();
    while (at(Tok::Slide)) {
      next();
      p = Process::sliding(p, expr_ext());
    }
    return p;
  }

  Process expr_ext() {
    Process p = expr_interrupt();
    while (at(Tok::ExtChoice)) {
      next();
      p = Process::ext_choice(p, expr_interrupt());
    }
    return p;
  }

  // '[|' opens both the throw and the parallel operator; they differ in the closer.
  bool open_par_closes_with(Tok closer) const {
    std::size_t i = pos_ + 1;
    if (toks_[i].kind != Tok::LBrace) return false;
    while (toks_[i].kind != Tok::RBrace && toks_[i].kind != Tok::End) ++i;
    return toks_[i].kind == Tok::RBrace && toks_[i + 1].kind == closer;
  }

  Process expr_interrupt() {
    Process p = expr_par();
    for (;;) {
      if (at(Tok::Interrupt)) {
        next();
        p = Process::interrupt(p, expr_par());
      } else if (at(Tok::OpenPar) && open_par_closes_with(Tok::CloseThrow)) {
        next();
        ActionSet a = action_set();
        expect(Tok::CloseThrow);
        p = Process::throw_(std::move(a), p, expr_par());
      } else {
        return p;
      }
    }
  }

  Process expr_par() {
    Process p = expr_postfix();
    while (at(Tok::OpenPar) && !open_par_closes_with(Tok::CloseThrow)) {
      next();
      ActionSet a = action_set();
      expect(Tok::CloseSync);
      p = Process::parallel(std::move(a), p, expr_postfix());
    }
    return p;
  }

  Process expr_postfix() {
    Process p = expr_prefix();
    for (;;) {
      if (at(Tok::Backslash)) {
        next();
        p = Process::conceal(action_set(), p);
      } else if (at(Tok::OpenRen)) {
        next();
        Renaming f;
        if (!at(Tok::CloseRen)) {
          for (;;) {
            std::string from = expect(Tok::Action).text;
            expect(Tok::Assign);
            std::string to = expect(Tok::Action).text;
            if (f.count(from)) throw SyntaxError(toks_[pos_ - 3].pos, "distinct renaming sources", "'" + from + "' twice");
            f.emplace(std::move(from), std::move(to));
            if (!at(Tok::Comma)) break;
            next();
          }
        }
        expect(Tok::CloseRen);
        p = Process::rename(std::move(f), p);
      } else {
        return p;
      }
    }
  }

  Process expr_prefix() {
    if (at(Tok::Action)) {
      std::string a = next().text;
      expect(Tok::Arrow);
      return Process::prefix(std::move(a), expr_prefix());
    }
    return atom();
  }

  Process atom() {
    switch (peek().kind) {
      case Tok::Stop: next(); return Process::stop();
      case Tok::Div: next(); return Process::div();
      case Tok::Ident: return Process::ident(next().text);
      case Tok::LParen: {
        next();
        Process p = expr_intchoice();
        expect(Tok::RParen);
        return p;
      }
      case Tok::Mu: {
        next();
        std::string x = expect(Tok::Ident).text;
        expect(Tok::Dot);
        return Process::mu(std::move(x), expr_intchoice());
      }
      default:
        fail("'STOP', 'div', action prefix, process identifier, '(' or 'mu'");
    }
  }

  ActionSet action_set() {
    expect(Tok::LBrace);
    ActionSet s;
    if (!at(Tok::RBrace)) {
      for (;;) {
        s.insert(expect(Tok::Action).text);
        if (!at(Tok::Comma)) break;
        next();
      }
    }
    expect(Tok::RBrace);
    return s;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline void check_bound(const Process& p, std::vector<std::string>& scope) {
  if (p.is(Op::Ident)) {
    for (const auto& x : scope)
      if (x == p.name()) return;
    throw UnboundIdentifier(p.name());
  }
  if (p.is(Op::Mu)) {
    scope.push_back(p.name());
    check_bound(p.body(), scope);
    scope.pop_back();
    return;
  }
  for (std::size_t i = 0; i < p.arity(); ++i) check_bound(p.child(i), scope);
}

// Binding strength, larger binds tighter.
inline int level(Op o) {
  switch (o) {
    case Op::IntChoice: return 1;
    case Op::Sliding: return 2;
    case Op::ExtChoice: return 3;
    case Op::Interrupt:
    case Op::Throw: return 4;
    case Op::Parallel: return 5;
    case Op::Conceal:
    case Op::Rename: return 6;
    case Op::Prefix: return 7;
    default: return 8;
  }
}

inline void write_set(std::string& out, const ActionSet& s) {
  out += '{';
  bool first = true;
  for (const auto& a : s) {
    if (!first) out += ", ";
    out += a;
    first = false;
  }
  out += '}';
}

inline void write(std::string& out, const Process& p);

// Mu extends as far right as possible, so it is bracketed whenever it is an operand.
inline void write_operand(std::string& out, const Process& p, int min_level) {
  bool parens = level(p.op()) < min_level || p.is(Op::Mu);
  if (parens) out += '(';
  write(out, p);
  if (parens) out += ')';
}

inline void write(std::string& out, const Process& p) {
  switch (p.op()) {
    case Op::Stop: out += "STOP"; return;
    case Op::Div: out += "div"; return;
    case Op::Ident: out += p.name(); return;
    case Op::Mu:
      out += "mu ";
      out += p.name();
      out += " . ";
      write(out, p.body());
      return;
    case Op::Prefix:
      out += p.name();
      out += " -> ";
      write_operand(out, p.body(), level(Op::Prefix));
      return;
    case Op::Conceal:
      write_operand(out, p.body(), level(Op::Conceal));
      out += " \\ ";
      write_set(out, p.set());
      return;
    case Op::Rename: {
      write_operand(out, p.body(), level(Op::Rename));
      out += " [[";
      bool first = true;
      for (const auto& [a, b] : p.renaming()) {
        if (!first) out += ", ";
        out += a + " := " + b;
        first = false;
      }
      out += "]]";
      return;
    }
    default: break;
  }
  int lv = level(p.op());
  write_operand(out, p.left(), lv);
  switch (p.op()) {
    case Op::IntChoice: out += " |~| "; break;
    case Op::Sliding: out += " [> "; break;
    case Op::ExtChoice: out += " [] "; break;
    case Op::Interrupt: out += " /\\ "; break;
    case Op::Parallel:
      out += " [|";
      write_set(out, p.set());
      out += "|] ";
      break;
    case Op::Throw:
      out += " [|";
      write_set(out, p.set());
      out += "|> ";
      break;
    default: break;
  }
  write_operand(out, p.right(), lv + 1);
}

inline void collect_alphabet(const Process& p, ActionSet& out) {
  switch (p.op()) {
    case Op::Prefix: out.insert(p.name()); break;
    case Op::Parallel:
    case Op::Conceal:
    case Op::Throw: out.insert(p.set().begin(), p.set().end()); break;
    case Op::Rename:
      for (const auto& [a, b] : p.renaming()) {
        out.insert(a);
        out.insert(b);
      }
      break;
    default: break;
  }
  for (std::size_t i = 0; i < p.arity(); ++i) collect_alphabet(p.child(i), out);
}

}  // namespace detail

/// Parses a closed or open term without the binding check.
inline Process parse_term(std::string_view text) { return detail::Parser(text).parse_all(); }

/// Parses a process; every identifier must be bound by an enclosing `mu`.
inline Process parse(std::string_view text) {
  Process p = parse_term(text);
  std::vector<std::string> scope;
  detail::check_bound(p, scope);
  return p;
}

inline std::string unparse(const Process& p) {
  std::string out;
  detail::write(out, p);
  return out;
}

inline bool is_closed(const Process& p) {
  std::vector<std::string> scope;
  try {
    detail::check_bound(p, scope);
  } catch (const UnboundIdentifier&) {
    return false;
  }
  return true;
}

inline ActionSet alphabet(const Process& p) {
  ActionSet s;
  detail::collect_alphabet(p, s);
  return s;
}

/// Replaces the free occurrences of `x` in `p` by the closed term `q`.
inline Process substitute(const Process& p, const std::string& x, const Process& q) {
  if (p.is(Op::Ident)) return p.name() == x ? q : p;
  if (p.is(Op::Mu) && p.name() == x) return p;
  if (p.arity() == 0) return p;
  std::vector<Process> kids;
  kids.reserve(p.arity());
  bool changed = false;
  for (std::size_t i = 0; i < p.arity(); ++i) {
    kids.push_back(substitute(p.child(i), x, q));
    changed |= !(kids.back() == p.child(i));
  }
  return changed ? p.with_children(std::move(kids)) : p;
}

inline std::string to_string(const ActionSet& s) {
  std::string out;
  detail::write_set(out, s);
  return out;
}

}  // namespace cspbt
