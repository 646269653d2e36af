// Command-line front end. Exit codes: 0 holds / success, 1 does not hold, 2 parse or usage
// error, 3 state bound exceeded.
#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cspbt/cspbt.hpp"

namespace cspbt::cli {

enum Exit { kHolds = 0, kFails = 1, kUsage = 2, kBound = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  std::string command;
  std::vector<std::string> terms;
  std::optional<ActionSet> alphabet;
  std::size_t bound = kDefaultStateBound;
  std::string format = "text";
  std::size_t samples = 100;
  int table = 3;
  std::size_t depth = 4;  // trace depth for fd-semantics
  std::uint64_t seed = 1;
  bool plain = false;  // verify-relation without divergence preservation
};

/// Default state bound, overridable through CSP_STATE_BOUND.
inline std::size_t default_bound() {
  const char* env = std::getenv("CSP_STATE_BOUND");
  if (!env || !*env) return kDefaultStateBound;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (*end || v == 0) throw UsageError("CSP_STATE_BOUND must be a positive integer");
  return static_cast<std::size_t>(v);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A term given inline, or as @path to read it from a file.
inline Process load_term(const std::string& arg) {
  return parse(arg.size() > 1 && arg[0] == '@' ? read_file(arg.substr(1)) : arg);
}

inline ActionSet parse_alphabet(const std::string& s) {
  ActionSet out;
  std::stringstream ss(s);
  std::string a;
  while (std::getline(ss, a, ',')) {
    a.erase(0, a.find_first_not_of(" \t"));
    a.erase(a.find_last_not_of(" \t") + 1);
    if (!a.empty()) out.insert(a);
  }
  return out;
}

inline std::string trace_text(const Trace& t) {
  std::string s = "<";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? ", " : "") + t[i];
  return s + ">";
}

inline std::string path_text(const Path& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + "]";
}

class Runner {
 public:
  Runner(const CliConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  int run() {
    const std::string& c = cfg_.command;
    if (c == "parse") return parse_cmd();
    if (c == "lts") return lts_cmd();
    if (c == "diverges") return diverges_cmd();
    if (c == "fd-semantics") return fd_semantics_cmd();
    if (c == "fd-refine" || c == "fd-equiv") return fd_cmd(c == "fd-equiv");
    if (c == "cs-geq" || c == "cs-equiv") return cs_cmd(c == "cs-equiv");
    if (c == "bisim") return bisim_cmd();
    if (c == "normalize") return normalize_cmd();
    if (c == "decide") return decide_cmd();
    if (c == "axiom-check") return axiom_check_cmd();
    if (c == "verify-relation") return verify_cmd();
    throw UsageError("unknown command " + c);
  }

 private:
  bool json() const { return cfg_.format == "json"; }

  Json result(const Json& lhs, const Json& rhs, bool holds, const Json& states) const {
    return Json{{"command", cfg_.command}, {"lhs", lhs}, {"rhs", rhs}, {"holds", holds},
                {"states", states}};
  }

  int finish(Json j, const std::string& text) {
    if (json())
      out_ << j.dump() << "\n";
    else
      out_ << text;
    return j["holds"].get<bool>() ? kHolds : kFails;
  }

  Process term(std::size_t i) const { return load_term(cfg_.terms.at(i)); }

  int parse_cmd() {
    Process p = term(0);
    return finish(result(unparse(p), nullptr, true, nullptr), unparse(p) + "\n");
  }

  int lts_cmd() {
    Lts lts = build_lts(term(0), cfg_.bound);
    std::string aut = to_aut(lts);
    Json j = result(unparse(term(0)), nullptr, true, lts.num_states);
    j["aut"] = aut;
    return finish(j, aut);
  }

  int diverges_cmd() {
    Process p = term(0);
    Lts lts = build_lts(p, cfg_.bound);
    bool d = weak_closure(lts).divergent.test(lts.root());
    return finish(result(unparse(p), nullptr, d, lts.num_states),
                  d ? "diverges\n" : "does not diverge\n");
  }

  int fd_semantics_cmd() {
    Process p = term(0);
    ActionSet alpha = checked_alphabet(p, p);
    Lts lts = build_lts(p, cfg_.bound);
    WeakClosure wc = weak_closure(lts);
    FdDenotation d = detail::determinise(lts, wc, lts.root(), detail::relevant_alphabet(lts, alpha));
    Json j = result(unparse(p), nullptr, true, lts.num_states);
    j["denotation"] = to_json(d, cfg_.depth);
    std::string text;
    for (const auto& t : j["denotation"]["minimal_divergences"])
      text += "divergence " + trace_text(t.get<Trace>()) + "\n";
    for (const auto& f : j["denotation"]["failures"]) {
      text += "trace " + trace_text(f["trace"].get<Trace>()) + " refusals";
      for (const auto& r : f["maximal_refusals"]) text += " " + to_string(r.get<ActionSet>());
      text += "\n";
    }
    return finish(j, text);
  }

  ActionSet checked_alphabet(const Process& p, const Process& q) const {
    ActionSet need = alphabet(p), aq = alphabet(q);
    need.insert(aq.begin(), aq.end());
    if (!cfg_.alphabet) return need;
    for (const auto& a : need)
      if (!cfg_.alphabet->count(a))
        throw UsageError("--alphabet must include every action of the terms; missing " + a);
    return *cfg_.alphabet;
  }

  static Json fd_witness(const FdCounterexample& c, const std::string& side) {
    Json w{{"behaviour_of", side}, {"kind", kind_name(c.kind)}, {"trace", c.trace}};
    if (c.kind == FdCounterexample::Refusal) w["refusal"] = to_json(c.refusal);
    return w;
  }

  static std::string fd_witness_text(const FdCounterexample& c, const std::string& side) {
    std::string s = "witness: " + side + " has " + kind_name(c.kind) + " " + trace_text(c.trace);
    if (c.kind == FdCounterexample::Refusal) s += " refusing " + to_string(c.refusal);
    return s + "\n";
  }

  int fd_cmd(bool both) {
    Process p = term(0), q = term(1);
    ActionSet alpha = checked_alphabet(p, q);
    PairSpace ps = pair_space(p, q, cfg_.bound);
    auto sigma = detail::relevant_alphabet(ps.lts, alpha);
    FdDenotation dp = detail::determinise(ps.lts, ps.closure, ps.lts.roots[0], sigma);
    FdDenotation dq = detail::determinise(ps.lts, ps.closure, ps.lts.roots[1], sigma);
    std::optional<FdCounterexample> cx = fd_counterexample(dp, dq);
    std::string side = "lhs";
    if (!cx && both) {
      cx = fd_counterexample(dq, dp);
      side = "rhs";
    }
    Json j = result(unparse(p), unparse(q), !cx, ps.lts.num_states);
    std::string text = cx ? "does not hold\n" + fd_witness_text(*cx, side) : "holds\n";
    if (cx) j["witness"] = fd_witness(*cx, side);
    return finish(j, text);
  }

  int cs_cmd(bool both) {
    Process p = term(0), q = term(1);
    PairSpace ps = pair_space(p, q, cfg_.bound);
    auto res = dpcs_largest(ps.lts, ps.closure);
    const std::size_t rp = ps.lts.roots[0], rq = ps.lts.roots[1];
    bool holds = res.relation.contains(rp, rq) && (!both || res.relation.contains(rq, rp));
    Json j = result(unparse(p), unparse(q), holds, ps.lts.num_states);
    std::string text = holds ? "holds\n" : "does not hold\n";
    if (!holds && res.first_deleted) {
      const Violation& v = *res.first_deleted;
      Json w = to_json(v);
      w["source_term"] = ps.lts.text(v.source);
      w["target_term"] = ps.lts.text(v.target);
      j["witness"] = w;
      text += std::string("witness: pair (") + ps.lts.text(v.source) + ", " +
              ps.lts.text(v.target) + ") removed by the " + clause_name(v.clause) + " clause\n";
    }
    return finish(j, text);
  }

  int bisim_cmd() {
    Process p = term(0), q = term(1);
    Lts lts = build_lts_multi({p, q}, cfg_.bound);
    auto block = bisimulation_classes(lts);
    bool holds = block[lts.roots[0]] == block[lts.roots[1]];
    return finish(result(unparse(p), unparse(q), holds, lts.num_states),
                  holds ? "holds\n" : "does not hold\n");
  }

  static std::string trace_lines(const ProofTrace& t) {
    std::string s;
    for (const auto& st : t) {
      s += "  " + st.axiom + " " + path_text(st.path) + " " + direction_name(st.direction);
      if (st.witness) s += " " + unparse(*st.witness);
      s += "\n";
    }
    return s;
  }

  int normalize_cmd() {
    Process p = term(0);
    NormalizeResult r = normalize(p);
    Json j = result(unparse(p), unparse(r.term), true, nullptr);
    j["normal_form"] = to_json(r.form);
    j["trace"] = to_json(r.trace);
    return finish(j, unparse(r.term) + "\nproof (" + std::to_string(r.trace.size()) +
                         " steps):\n" + trace_lines(r.trace));
  }

  int decide_cmd() {
    Process p = term(0), q = term(1);
    Canonicalizer c(cfg_.bound);
    Decision d = decide_equal(p, q, c);
    Json j = result(unparse(p), unparse(q), d.equal, nullptr);
    j["lhs_canonical"] = unparse(d.lhs_canonical);
    j["rhs_canonical"] = unparse(d.rhs_canonical);
    std::string text;
    if (d.equal) {
      j["trace"] = to_json(d.trace);
      text = "equal\nproof (" + std::to_string(d.trace.size()) + " steps):\n" + trace_lines(d.trace);
    } else {
      text = "not equal\n  lhs canonical: " + unparse(d.lhs_canonical) +
             "\n  rhs canonical: " + unparse(d.rhs_canonical) + "\n";
    }
    return finish(j, text);
  }

  int axiom_check_cmd() {
    if (cfg_.table != 2 && cfg_.table != 3) throw UsageError("--table must be 2 or 3");
    HarnessOptions o;
    o.table = cfg_.table;
    o.samples = cfg_.samples;
    o.seed = cfg_.seed;
    o.bound = cfg_.bound;
    HarnessReport rep = soundness_harness(o);
    for (const auto& a : rep.axioms) {
      if (json()) {
        out_ << to_json(a).dump() << "\n";
        continue;
      }
      out_ << a.name << " " << tier_name(a.tier) << " " << a.instances << " instances: "
           << (a.ok() ? "ok" : "VIOLATED") << "\n";
      if (!a.error.empty()) out_ << "  error: " << a.error << "\n";
      if (!a.violations.empty()) {
        const auto& v = a.violations.front();
        out_ << "  " << v.check << ": " << unparse(v.lhs) << " = " << unparse(v.rhs) << "\n";
      }
    }
    return rep.ok() ? kHolds : kFails;
  }

  int verify_cmd() {
    std::ifstream aut(cfg_.terms.at(0));
    if (!aut) throw UsageError("cannot read " + cfg_.terms.at(0));
    Lts lts = read_aut(aut);
    WeakClosure wc = weak_closure(lts);
    SimRelation r = relation_from_json(Json::parse(read_file(cfg_.terms.at(1))), lts.num_states);
    auto v = verify_coupled_simulation(lts, wc, r, !cfg_.plain);
    Json j = result(cfg_.terms[0], cfg_.terms[1], !v, lts.num_states);
    std::string text = v ? "does not hold\n" : "holds\n";
    if (v) {
      j["witness"] = to_json(*v);
      text += "witness: pair (" + std::to_string(v->source) + ", " + std::to_string(v->target) +
              ") violates the " + clause_name(v->clause) + " clause\n";
    }
    return finish(j, text);
  }

  const CliConfig& cfg_;
  std::ostream& out_;
};

/// Parses `args` (without the program name) and runs one command.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CliConfig cfg;
  CLI::App app{"Process algebra checker: semantics, equivalences and axiomatics", "cspbt"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string alphabet_text, format = "text";
  std::optional<std::size_t> bound;
  app.add_option("--alphabet", alphabet_text, "Declared alphabet for FD checks, e.g. a,b,c");
  app.add_option("--bound", bound, "State bound")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto one = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("term", cfg.terms, "Term, or @file")->required()->expected(1);
    return s;
  };
  auto two = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("terms", cfg.terms, "Two terms, or @files")->required()->expected(2);
    return s;
  };
  one("parse", "Parse and print a term");
  one("lts", "Emit the transition system in Aldebaran format");
  one("diverges", "Whether the term can diverge immediately");
  one("fd-semantics", "Failures and divergences up to a trace depth")
      ->add_option("--depth", cfg.depth, "Trace depth");
  two("fd-refine", "Whether the first term refines the second in the failures-divergences model");
  two("fd-equiv", "Failures-divergences equivalence");
  two("cs-geq", "Coupled-simulation preorder: the first term is ahead of the second");
  two("cs-equiv", "Coupled-simulation equivalence");
  two("bisim", "Strong bisimilarity");
  one("normalize", "Normal form with its proof");
  two("decide", "Equality by derivation into canonical form");
  auto* ax = app.add_subcommand("axiom-check", "Soundness harness over an axiom table");
  ax->add_option("--table", cfg.table, "2 or 3");
  ax->add_option("--samples", cfg.samples, "Instances per axiom")->check(CLI::PositiveNumber);
  ax->add_option("--seed", cfg.seed, "Random seed");
  auto* vr = app.add_subcommand("verify-relation", "Check a candidate coupled simulation");
  vr->add_option("files", cfg.terms, "LTS file (.aut) and relation file (JSON)")
      ->required()
      ->expected(2);
  vr->add_flag("--plain", cfg.plain, "Do not require divergence preservation");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kHolds;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.format = format;
    cfg.bound = bound ? *bound : default_bound();
    if (!alphabet_text.empty()) cfg.alphabet = parse_alphabet(alphabet_text);
    return Runner(cfg, out).run();
  } catch (const StateBoundExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBound;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace cspbt::cli
