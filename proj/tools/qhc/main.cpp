#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qhc/corpus.hpp"
#include "qhc/semantics.hpp"
#include "qhc/syntax.hpp"
#include "qhc/translate.hpp"

using namespace qhc;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_file(const std::string& s) {
  std::error_code ec;
  return fs::is_regular_file(s, ec);
}

// --signature takes a file or the declarations themselves.
Signature load_signature(const std::string& arg) {
  if (arg.empty()) return {};
  return parse_signature(is_file(arg) ? slurp(arg) : arg);
}

Formula load_formula(const std::string& arg, Signature& sig) {
  std::string text = is_file(arg) ? slurp(arg) : arg;
  try {
    return parse_with_preamble(text, sig);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UndeclaredAtom) {
      throw Error(e.code(), std::string(e.what()) + " (declare atoms with --signature or a preamble)");
    }
    throw;
  }
}

void load_theory_args(CalculusTable& table, const std::vector<std::string>& paths) {
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      load_theories(table, p);
    } else {
      table.load_theory_file(p);
    }
  }
}

json model_json(const KripkeModel& m) {
  json rel = json::array();
  for (int u = 0; u < m.worlds; ++u) {
    for (int v = 0; v < m.worlds; ++v) {
      if (m.relation[u][v]) rel.push_back({u, v});
    }
  }
  json val = json::object();
  for (const auto& [atom, bits] : m.valuation) {
    json on = json::array();
    for (int w = 0; w < m.worlds; ++w) {
      if (bits[w]) on.push_back(w);
    }
    val[atom] = on;
  }
  return json{{"worlds", m.worlds}, {"relation", rel}, {"valuation", val}};
}

std::string model_text(const KripkeModel& m, int world) {
  std::ostringstream out;
  out << "  worlds: " << m.worlds << ", falsified at " << world << "\n  relation:";
  for (int u = 0; u < m.worlds; ++u) {
    for (int v = 0; v < m.worlds; ++v) {
      if (m.relation[u][v] && u != v) out << " " << u << "<=" << v;
    }
  }
  out << " (plus reflexive)\n";
  for (const auto& [atom, bits] : m.valuation) {
    out << "  " << atom << " true at {";
    bool first = true;
    for (int w = 0; w < m.worlds; ++w) {
      if (!bits[w]) continue;
      out << (first ? "" : ", ") << w;
      first = false;
    }
    out << "}\n";
  }
  return out.str();
}

struct Common {
  std::string signature;
  bool json = false;
};

int cmd_parse(const Common& c, const std::string& input) {
  Signature sig = load_signature(c.signature);
  Formula f = load_formula(input, sig);
  if (c.json) {
    std::cout << json{{"status", "ok"}, {"formula", print(f)}, {"sort", sort_name(f.sort())}}.dump(2) << "\n";
  } else {
    std::cout << print(f) << "\n";
  }
  return 0;
}

int cmd_translate(const Common& c, const std::string& input, const std::string& target, bool expand) {
  auto t = translation_by_name(target);
  if (!t) throw UsageError("unknown translation target '" + target + "'");
  Signature sig = load_signature(c.signature);
  Formula f = load_formula(input, sig);
  Formula g = translate(*t, f);
  g = expand ? expand_modalities(g) : fold_modalities(g);
  if (c.json) {
    std::cout << json{{"target", target}, {"formula", print(g)}, {"sort", sort_name(g.sort())}}.dump(2) << "\n";
  } else {
    std::cout << print(g) << "\n";
  }
  return 0;
}

int cmd_refute(const Common& c, const std::string& input, bool all_channels, bool expect_theorem) {
  Signature sig = load_signature(c.signature);
  Formula f = load_formula(input, sig);
  if (has_quantifiers(f)) {
    throw UsageError("refute: quantified formulas are out of scope (first-order S4 is undecidable)");
  }
  std::vector<Refutation> rs = refute_qhc(f, all_channels);
  if (c.json) {
    auto one = [](const Refutation& r) {
      return json{{"channel", channel_name(r.channel)},
                  {"translated", print(r.translated)},
                  {"countermodel", model_json(r.model)},
                  {"world", r.world}};
    };
    json out;
    if (rs.empty()) {
      out = json{{"status", "unknown"}};
    } else {
      out = json{{"status", "refuted"}};
      out.update(one(rs.front()));
      if (all_channels) {
        out["refutations"] = json::array();
        for (const auto& r : rs) out["refutations"].push_back(one(r));
      }
    }
    std::cout << out.dump(2) << "\n";
  } else if (rs.empty()) {
    std::cout << "unknown: no countermodel through either channel\n";
  } else {
    for (const auto& r : rs) {
      std::cout << "refuted (" << channel_name(r.channel) << " channel): " << print(r.translated)
                << " fails\n"
                << model_text(r.model, r.world);
    }
  }
  return expect_theorem && !rs.empty() ? 1 : 0;
}

json entry_json(const EntryReport& e) {
  json j{{"id", e.id},
         {"title", e.title},
         {"calculus", e.calculus},
         {"statement", e.statement},
         {"status", e.accepted ? "accepted" : "rejected"}};
  if (!e.accepted) {
    j["failing_line"] = e.failing_line;
    j["reason"] = e.reason;
  }
  return j;
}

int cmd_check(const Common& c, const std::string& path, const std::string& calculus,
              std::vector<std::string> theories, std::string corpus_dir) {
  Proof p = load_proof(path);
  if (!calculus.empty()) p.calculus = calculus;
  fs::path dir = fs::path(path).parent_path();
  if (dir.empty()) dir = ".";
  if (corpus_dir.empty()) corpus_dir = dir.string();
  if (theories.empty() && fs::is_directory(dir / ".." / "theories")) {
    theories.push_back((dir / ".." / "theories").string());
  }

  Registry reg;
  load_theory_args(reg.calculi(), theories);
  std::vector<Proof> proofs;
  for (auto& q : load_corpus(corpus_dir)) {
    if (q.id != p.id) proofs.push_back(std::move(q));
  }
  proofs.push_back(p);
  CorpusReport r = run_corpus(proofs, reg, p.id);
  const EntryReport* e = nullptr;
  for (const auto& x : r.entries) {
    if (x.id == p.id) e = &x;
  }
  if (!e) throw Error(ErrorCode::Io, "entry " + p.id + " was not checked");

  if (c.json) {
    json j{{"status", e->accepted ? "accepted" : "rejected"}};
    if (!e->accepted) {
      j["failing_line"] = e->failing_line;
      j["reason"] = e->reason;
    }
    std::cout << j.dump(2) << "\n";
  } else if (e->accepted) {
    std::cout << "accepted " << p.id << " (" << p.calculus << "): " << e->statement << "\n";
  } else {
    std::cout << "rejected " << p.id;
    if (e->failing_line) std::cout << " at line " << e->failing_line;
    std::cout << ": " << e->reason << "\n";
  }
  return e->accepted ? 0 : 1;
}

int cmd_corpus_run(const Common& c, const std::string& corpus_dir, const std::vector<std::string>& theories,
                   const std::string& filter, bool timings) {
  Registry reg;
  load_theory_args(reg.calculi(), theories);
  std::vector<Proof> proofs = load_corpus(corpus_dir);
  std::optional<std::string> f;
  if (!filter.empty()) f = filter;
  CorpusReport r = run_corpus(proofs, reg, f);
  std::size_t ok = 0;
  for (const auto& e : r.entries) ok += e.accepted;

  if (c.json) {
    json entries = json::array();
    for (const auto& e : r.entries) {
      json j = entry_json(e);
      if (timings) j["millis"] = e.millis;
      entries.push_back(j);
    }
    json out{{"entries", entries}, {"accepted", ok}, {"total", r.entries.size()}};
    if (timings) out["millis"] = r.millis;
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& e : r.entries) {
      std::cout << (e.accepted ? "ok      " : "FAILED  ") << e.id << "  [" << e.calculus << "]  " << e.statement;
      if (timings) std::cout << "  (" << e.millis << " ms)";
      std::cout << "\n";
      if (!e.accepted) std::cout << "        line " << e.failing_line << ": " << e.reason << "\n";
    }
    std::cout << ok << "/" << r.entries.size() << " accepted";
    if (timings) std::cout << " in " << r.millis << " ms";
    std::cout << "\n";
  }
  return ok == r.entries.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checker and tools for the calculus of problems and propositions"};
  app.require_subcommand(1);
  Common common;
  auto common_flags = [&](CLI::App* s) {
    s->add_option("--signature", common.signature, "declarations, as a file or inline text");
    s->add_flag("--json", common.json, "machine-readable output");
  };

  std::string input, target = "box", calculus, corpus_dir, filter;
  std::vector<std::string> theories;
  bool expand = false, all_channels = false, expect_theorem = false, timings = false;

  auto* parse = app.add_subcommand("parse", "parse and typecheck a formula");
  common_flags(parse);
  parse->add_option("formula", input, "formula or file")->required();

  auto* tr = app.add_subcommand("translate", "apply a translation");
  common_flags(tr);
  tr->add_option("--target", target, "box, nabla, negneg, diamond, embed-qs4 or embed-qh4");
  tr->add_flag("--expand-modality", expand, "print box and nabla as ?! and !?");
  tr->add_option("formula", input, "formula or file")->required();

  auto* ref = app.add_subcommand("refute", "search for a countermodel");
  common_flags(ref);
  ref->add_flag("--all-channels", all_channels, "report every channel that refutes");
  ref->add_flag("--expect-theorem", expect_theorem, "exit 1 when refuted");
  ref->add_option("formula", input, "formula or file")->required();

  auto* chk = app.add_subcommand("check", "check a proof script");
  common_flags(chk);
  chk->add_option("--calculus", calculus, "override the script's calculus");
  chk->add_option("--theory", theories, "theory file or directory");
  chk->add_option("--corpus", corpus_dir, "lemma directory (default: the script's directory)");
  chk->add_option("proof", input, "proof script")->required();

  auto* corpus = app.add_subcommand("corpus", "corpus operations");
  corpus->require_subcommand(1);
  auto* run = corpus->add_subcommand("run", "check every corpus entry");
  common_flags(run);
  std::string run_dir = "corpus";
  std::vector<std::string> run_theories;
  run->add_option("--filter", filter, "glob on entry ids");
  run->add_option("--corpus", run_dir, "corpus directory")->capture_default_str();
  run->add_option("--theory", run_theories, "theory file or directory (default: theories)");
  run->add_flag("--timings", timings, "report check times");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*parse) return cmd_parse(common, input);
    if (*tr) return cmd_translate(common, input, target, expand);
    if (*ref) return cmd_refute(common, input, all_channels, expect_theorem);
    if (*chk) return cmd_check(common, input, calculus, theories, corpus_dir);
    if (*run) {
      if (run_theories.empty() && fs::is_directory("theories")) run_theories.push_back("theories");
      return cmd_corpus_run(common, run_dir, run_theories, filter, timings);
    }
  } catch (const UsageError& e) {
    std::cerr << "qhc: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "qhc: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return 2;
  }
  return 2;
}
