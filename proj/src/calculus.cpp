#include "qhc/calculus.hpp"

#include <fstream>
#include <sstream>

#include "qhc/syntax.hpp"

namespace qhc {

std::optional<std::string> language_violation(const Formula& f, const Language& lang) {
  if (f.sort() == Sort::Problem && !lang.problems) return "problems are not in the language";
  if (f.sort() == Sort::Proposition && !lang.propositions) {
    return "propositions are not in the language";
  }
  switch (f.op()) {
    case Op::Wn:
    case Op::Oc:
      if (!lang.wn_oc) return "'?' and '!' are not in the language";
      break;
    case Op::Box:
      if (!lang.box) return "'box' is not in the language";
      break;
    case Op::Nabla:
      if (!lang.nabla) return "'nabla' is not in the language";
      break;
    default: break;
  }
  if (f.left()) {
    if (auto v = language_violation(f.left(), lang)) return v;
  }
  if (f.right()) return language_violation(f.right(), lang);
  return std::nullopt;
}

Inference parse_inference(std::string_view text, const Signature& metas) {
  std::vector<Token> toks = tokenize(text);
  Signature none;
  std::vector<Formula> fs;
  std::size_t pos = 0;
  bool slash = false;
  for (;;) {
    FormulaParser p(toks, pos, none, &metas);
    fs.push_back(p.parse());
    pos = p.pos();
    if (toks[pos].is(",") && !slash) {
      ++pos;
      continue;
    }
    if (toks[pos].is("/") && !slash) {
      slash = true;
      ++pos;
      continue;
    }
    if (toks[pos].kind != Token::Kind::End) {
      throw Error(ErrorCode::Parse, "unexpected '" + toks[pos].text + "' in schema");
    }
    break;
  }
  if (!slash && fs.size() > 1) throw Error(ErrorCode::Parse, "premises need a '/' and a conclusion");
  Inference inf;
  inf.conclusion = fs.back();
  fs.pop_back();
  inf.premises = std::move(fs);
  inf.metas = metas;
  return inf;
}

const RuleSchema* Calculus::find_axiom(std::string_view n) const {
  for (const auto& a : axioms) {
    if (a.name == n) return &a;
  }
  return nullptr;
}

const RuleSchema* Calculus::find_rule(std::string_view n) const {
  for (const auto& r : rules) {
    if (r.name == n) return &r;
  }
  return nullptr;
}

namespace {

bool has_variants(const RuleSchema* mine, const RuleSchema& theirs) {
  if (!mine) return false;
  for (const auto& v : theirs.variants) {
    bool found = false;
    for (const auto& w : mine->variants) found = found || w == v;
    if (!found) return false;
  }
  return true;
}

}  // namespace

bool Calculus::includes(const Calculus& o) const {
  if (!language.includes(o.language)) return false;
  for (const auto& a : o.axioms) {
    if (!has_variants(find_axiom(a.name), a)) return false;
  }
  for (const auto& r : o.rules) {
    if (!has_variants(find_rule(r.name), r)) return false;
  }
  return true;
}

namespace {

struct Entry {
  const char* name;
  const char* metas;  // e.g. "A, B(1)"; the sort is supplied per variant
  const char* text;
};

// The Hilbert base shared by both sorts, less ex falso.
constexpr Entry kBase[] = {
    {"K", "A, B", "A -> (B -> A)"},
    {"S", "A, B, C", "(A -> (B -> C)) -> ((A -> B) -> (A -> C))"},
    {"and_l", "A, B", "A & B -> A"},
    {"and_r", "A, B", "A & B -> B"},
    {"and_i", "A, B", "A -> (B -> A & B)"},
    {"or_l", "A, B", "A -> A | B"},
    {"or_r", "A, B", "B -> A | B"},
    {"or_e", "A, B, C", "(A -> C) -> ((B -> C) -> (A | B -> C))"},
    {"all_e", "A(1)", "forall x. A(x) -> A(t)"},
    {"ex_i", "A(1)", "A(t) -> exists x. A(x)"},
    {"all_i", "A(1), C", "forall x. (C -> A(x)) -> (C -> forall x. A(x))"},
    {"ex_e", "A(1), C", "forall x. (A(x) -> C) -> (exists x. A(x) -> C)"},
};

constexpr Entry kClassical[] = {
    {"dne", "A", "~~A -> A"},
};

constexpr Entry kQhcAxioms[] = {
    {"wnoc", "prop P.", "?!P -> P"},
    {"ocwn", "prob A.", "A -> !?A"},
    {"oc_imp", "prop P, Q.", "!(P -> Q) -> (!P -> !Q)"},
    {"wn_imp", "prob A, B.", "?(A -> B) -> (?A -> ?B)"},
    {"oc_bot", "", "~!0"},
};

constexpr Entry kQhcRules[] = {
    {"oc_top", "prop P.", "P / !P"},
    {"wn_top", "prob A.", "A / ?A"},
};

constexpr Entry kQs4Axioms[] = {
    {"box1", "prop P.", "box P -> P"},
    {"box2", "prop P.", "box P -> box box P"},
    {"box4", "prop P, Q.", "box(P -> Q) -> (box P -> box Q)"},
};

constexpr Entry kQs4Rules[] = {
    {"nec", "prop P.", "P / box P"},
};

constexpr Entry kQh4Axioms[] = {
    {"nabla1", "prob A.", "A -> nabla A"},
    {"nabla2", "prob A.", "nabla nabla A -> nabla A"},
    {"nabla3", "", "nabla bot -> bot"},
    {"nabla4", "prob A, B.", "nabla(A -> B) -> (nabla A -> nabla B)"},
};

Inference sorted_variant(const Entry& e, Sort s) {
  std::string decl = std::string(s == Sort::Problem ? "prob " : "prop ") + e.metas + ".";
  return parse_inference(e.text, parse_signature(decl));
}

void add_sorted(std::vector<RuleSchema>& out, const Entry& e, Sort s) {
  Inference v = sorted_variant(e, s);
  for (auto& r : out) {
    if (r.name == e.name) {
      r.variants.push_back(std::move(v));
      return;
    }
  }
  out.push_back(RuleSchema{e.name, {std::move(v)}});
}

template <std::size_t N>
void add_fixed(std::vector<RuleSchema>& out, const Entry (&es)[N]) {
  for (const auto& e : es) {
    out.push_back(RuleSchema{e.name, {parse_inference(e.text, parse_signature(e.metas))}});
  }
}

void add_base(Calculus& c, Sort s) {
  for (const auto& e : kBase) add_sorted(c.axioms, e, s);
  add_sorted(c.axioms, Entry{"efq", "A", s == Sort::Problem ? "bot -> A" : "0 -> A"}, s);
  if (s == Sort::Proposition) {
    for (const auto& e : kClassical) add_sorted(c.axioms, e, s);
  }
}

}  // namespace

Calculus builtin(std::string_view name) {
  Calculus c;
  c.name = std::string(name);
  if (name == "QC" || name == "QS4") {
    c.language.propositions = true;
    add_base(c, Sort::Proposition);
    if (name == "QS4") {
      c.language.box = true;
      add_fixed(c.axioms, kQs4Axioms);
      add_fixed(c.rules, kQs4Rules);
    }
  } else if (name == "QH" || name == "QH4") {
    c.language.problems = true;
    add_base(c, Sort::Problem);
    if (name == "QH4") {
      c.language.nabla = true;
      add_fixed(c.axioms, kQh4Axioms);
    }
  } else if (name == "QHC") {
    c.language = Language{true, true, true, false, false};
    add_base(c, Sort::Problem);
    add_base(c, Sort::Proposition);
    add_fixed(c.axioms, kQhcAxioms);
    add_fixed(c.rules, kQhcRules);
  } else {
    throw Error(ErrorCode::UnknownCalculus, "unknown calculus '" + std::string(name) + "'");
  }
  return c;
}

Calculus extend(const Calculus& base, std::vector<RuleSchema> axioms,
                std::vector<RuleSchema> rules, std::string name) {
  Calculus c = base;
  c.name = std::move(name);
  auto validate = [&](const RuleSchema& r) {
    for (const auto& v : r.variants) {
      std::vector<Formula> fs = v.premises;
      fs.push_back(v.conclusion);
      for (const auto& f : fs) {
        check_sorts(f);
        if (auto why = language_violation(f, base.language)) {
          throw Error(ErrorCode::SortClash, "schema '" + r.name + "': " + *why);
        }
      }
    }
  };
  for (auto& a : axioms) {
    validate(a);
    if (!a.is_axiom()) throw Error(ErrorCode::Parse, "axiom '" + a.name + "' has premises");
    if (c.find_axiom(a.name)) {
      throw Error(ErrorCode::DuplicateDeclaration, "axiom '" + a.name + "' already exists");
    }
    c.axioms.push_back(std::move(a));
  }
  for (auto& r : rules) {
    validate(r);
    if (r.is_axiom()) throw Error(ErrorCode::Parse, "rule '" + r.name + "' has no premises");
    if (c.find_rule(r.name)) {
      throw Error(ErrorCode::DuplicateDeclaration, "rule '" + r.name + "' already exists");
    }
    c.rules.push_back(std::move(r));
  }
  return c;
}

CalculusTable::CalculusTable() {
  for (auto n : {"QC", "QH", "QS4", "QH4", "QHC"}) add(builtin(n));
}

const Calculus& CalculusTable::get(std::string_view name) const {
  auto it = table_.find(name);
  if (it == table_.end()) {
    throw Error(ErrorCode::UnknownCalculus, "unknown calculus '" + std::string(name) + "'");
  }
  return it->second;
}

bool CalculusTable::contains(std::string_view name) const { return table_.find(name) != table_.end(); }

void CalculusTable::add(Calculus c) {
  std::string n = c.name;
  table_.insert_or_assign(std::move(n), std::move(c));
}

std::vector<std::string> CalculusTable::names() const {
  std::vector<std::string> out;
  for (const auto& [n, c] : table_) out.push_back(n);
  return out;
}

const Calculus& CalculusTable::load_theory(std::string_view text) {
  std::string name, base;
  Signature metas;
  std::vector<RuleSchema> axioms, rules;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw Error(ErrorCode::Parse, "theory line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream words(line);
    std::string head;
    if (!(words >> head) || head[0] == '#') continue;
    if (head == "calculus") {
      // Names such as QHC+KSP are raw words, not tokens.
      std::string ext, rest;
      if (!(words >> name >> ext >> base) || ext != "extends" || (words >> rest && rest[0] != '#')) {
        fail("expected 'calculus NAME extends BASE'");
      }
      continue;
    }
    std::vector<Token> toks = tokenize(line);
    if (head == "prob" || head == "prop") {
      std::size_t end = parse_declarations(toks, 0, metas);
      if (toks[end].kind != Token::Kind::End) fail("trailing input after declaration");
    } else if (head == "axiom" || head == "rule") {
      auto colon = line.find(':');
      if (toks.size() < 4 || !toks[2].is(":") || colon == std::string::npos) {
        fail("expected '" + head + " NAME: schema'");
      }
      RuleSchema r{toks[1].text, {parse_inference(line.substr(colon + 1), metas)}};
      (head == "axiom" ? axioms : rules).push_back(std::move(r));
    } else {
      fail("unexpected '" + head + "'");
    }
  }
  if (name.empty()) throw Error(ErrorCode::Parse, "theory has no 'calculus' header");
  Calculus c = extend(get(base), std::move(axioms), std::move(rules), name);
  add(std::move(c));
  return get(name);
}

const Calculus& CalculusTable::load_theory_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_theory(ss.str());
}

}  // namespace qhc
