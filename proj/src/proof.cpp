#include "qhc/proof.hpp"

#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

#include "qhc/syntax.hpp"

namespace qhc {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Lemma ids are raw words ("move-nabla", "sup-inf.1"); they are cut out of
// the line before tokenizing.
const std::regex kLemmaId(R"(\bby\s+lemma\s+([^\s\[]+))");

class LineParser {
 public:
  LineParser(std::string_view text, int lineno) : lineno_(lineno) {
    std::string s(text);
    std::smatch m;
    if (std::regex_search(s, m, kLemmaId)) {
      lemma_id_ = m[1].str();
      s.replace(static_cast<std::size_t>(m.position(1)), static_cast<std::size_t>(m.length(1)), "_");
    }
    text_ = std::move(s);
    toks_ = tokenize(text_);
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::Parse, "line " + std::to_string(lineno_) + ": " + msg);
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }

  int number() {
    const Token& t = next();
    if (t.kind != Token::Kind::Number) fail("expected a line number, got '" + t.text + "'");
    return std::stoi(t.text);
  }

  std::string ident(std::string_view what) {
    const Token& t = next();
    if (t.kind != Token::Kind::Ident) fail("expected " + std::string(what));
    return t.text;
  }

  void expect(std::string_view sym) {
    if (!peek().is(sym)) fail("expected '" + std::string(sym) + "'");
    ++pos_;
  }

  Formula formula(const Signature& sig) {
    FormulaParser p(toks_, pos_, sig);
    Formula f = p.parse();
    pos_ = p.pos();
    return f;
  }

  std::vector<BindingItem> binding() {
    std::vector<BindingItem> out;
    if (!peek().is("[")) return out;
    ++pos_;
    if (peek().is("]")) {
      ++pos_;
      return out;
    }
    for (;;) {
      BindingItem item;
      item.name = ident("a metavariable or variable name");
      if (peek().is("(")) {
        ++pos_;
        item.params.push_back(ident("a parameter"));
        while (peek().is(",")) {
          ++pos_;
          item.params.push_back(ident("a parameter"));
        }
        expect(")");
      }
      expect(":=");
      std::size_t start = pos_;
      int depth = 0;
      while (!at_end()) {
        const Token& t = peek();
        if (depth == 0 && (t.is(",") || t.is("]"))) break;
        if (t.is("(")) ++depth;
        if (t.is(")")) --depth;
        ++pos_;
      }
      if (at_end()) fail("unterminated binding");
      if (start == pos_) fail("empty binding for '" + item.name + "'");
      item.rhs = trim(std::string_view(text_).substr(toks_[start].pos, peek().pos - toks_[start].pos));
      out.push_back(std::move(item));
      if (next().is("]")) break;
    }
    return out;
  }

  Justification justification() {
    Justification j;
    std::string kind = ident("a justification");
    if (kind == "axiom") {
      j.kind = Justification::Kind::Axiom;
      j.name = ident("an axiom name");
    } else if (kind == "hyp") {
      j.kind = Justification::Kind::Hyp;
      j.refs.push_back(number());
    } else if (kind == "mp") {
      j.kind = Justification::Kind::MP;
      j.refs.push_back(number());
      j.refs.push_back(number());
    } else if (kind == "gen") {
      j.kind = Justification::Kind::Gen;
      j.refs.push_back(number());
      j.var = ident("a variable");
    } else if (kind == "rule" || kind == "lemma") {
      j.kind = kind == "rule" ? Justification::Kind::Rule : Justification::Kind::Lemma;
      if (at_end()) fail("expected a name");
      j.name = ident("a name");
      if (j.kind == Justification::Kind::Lemma) j.name = lemma_id_;
      while (peek().kind == Token::Kind::Number) j.refs.push_back(number());
    } else {
      fail("unknown justification '" + kind + "'");
    }
    j.binding = binding();
    if (!at_end()) fail("unexpected '" + peek().text + "'");
    return j;
  }

 private:
  std::string text_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int lineno_;
  std::string lemma_id_;
};

}  // namespace

Proof parse_proof(std::string_view text) {
  Proof p;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream words(line);
    std::string head;
    if (!(words >> head) || head[0] == '#') continue;
    if (head == "id" || head == "calculus") {
      std::string value, extra;
      if (!(words >> value) || (words >> extra && extra[0] != '#')) fail("expected one word after " + head);
      (head == "id" ? p.id : p.calculus) = value;
      continue;
    }
    if (head == "title") {
      std::string rest = trim(line.substr(line.find("title") + 5));
      if (rest.size() >= 2 && rest.front() == '"' && rest.back() == '"') {
        rest = rest.substr(1, rest.size() - 2);
      }
      p.title = rest;
      continue;
    }
    LineParser lp(line, lineno);
    if (head == "prob" || head == "prop") {
      std::vector<Token> toks = tokenize(line);
      std::size_t end = parse_declarations(toks, 0, p.sig);
      if (toks[end].kind != Token::Kind::End) fail("trailing input after declaration");
    } else if (head == "hyp" || head == "goal") {
      lp.next();
      Formula f = lp.formula(p.sig);
      if (!lp.at_end()) lp.fail("trailing input");
      if (head == "hyp") {
        p.hyps.push_back(f);
      } else {
        p.goal = f;
      }
    } else if (std::isdigit(static_cast<unsigned char>(head[0]))) {
      ProofLine pl;
      pl.source_line = lineno;
      pl.number = lp.number();
      lp.expect(".");
      if (lp.peek().is("_")) {
        lp.next();
      } else {
        pl.formula = lp.formula(p.sig);
      }
      if (!lp.peek().is("by")) lp.fail("expected 'by'");
      lp.next();
      pl.just = lp.justification();
      int expected = static_cast<int>(p.lines.size()) + 1;
      if (pl.number != expected) {
        lp.fail("line number " + std::to_string(pl.number) + ", expected " + std::to_string(expected));
      }
      p.lines.push_back(std::move(pl));
    } else {
      fail("unexpected '" + head + "'");
    }
  }
  if (p.calculus.empty()) throw Error(ErrorCode::Parse, "proof has no 'calculus' header");
  return p;
}

Proof load_proof(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_proof(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string format_justification(const Justification& j) {
  std::string out;
  auto refs = [&] {
    for (int r : j.refs) out += " " + std::to_string(r);
  };
  switch (j.kind) {
    case Justification::Kind::Axiom: out = "axiom " + j.name; break;
    case Justification::Kind::Hyp: out = "hyp"; refs(); break;
    case Justification::Kind::MP: out = "mp"; refs(); break;
    case Justification::Kind::Gen: out = "gen"; refs(); out += " " + j.var; break;
    case Justification::Kind::Rule: out = "rule " + j.name; refs(); break;
    case Justification::Kind::Lemma: out = "lemma " + j.name; refs(); break;
  }
  if (!j.binding.empty()) {
    out += " [";
    for (std::size_t i = 0; i < j.binding.size(); ++i) {
      const BindingItem& b = j.binding[i];
      if (i) out += ", ";
      out += b.name;
      if (!b.params.empty()) {
        out += "(";
        for (std::size_t k = 0; k < b.params.size(); ++k) out += (k ? "," : "") + b.params[k];
        out += ")";
      }
      out += " := " + b.rhs;
    }
    out += "]";
  }
  return out;
}

std::string format_proof(const Proof& p) {
  std::ostringstream out;
  if (!p.id.empty()) out << "id " << p.id << "\n";
  if (!p.title.empty()) out << "title \"" << p.title << "\"\n";
  out << "calculus " << p.calculus << "\n";
  if (!p.sig.empty()) out << print_signature(p.sig) << "\n";
  for (const auto& h : p.hyps) out << "hyp " << print(h) << "\n";
  if (p.goal) out << "goal " << print(p.goal) << "\n";
  for (const auto& l : p.lines) {
    out << l.number << ". " << (l.formula ? print(l.formula) : "_") << "  by "
        << format_justification(l.just) << "\n";
  }
  return out.str();
}

}  // namespace qhc
