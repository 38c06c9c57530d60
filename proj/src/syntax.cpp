#include "qhc/syntax.hpp"

#include <array>
#include <cctype>
#include <utility>

namespace qhc {

namespace {

constexpr std::array<std::string_view, 9> kKeywords = {
    "forall", "exists", "bot", "top", "box", "nabla", "dia", "prob", "prop"};

struct Alias {
  std::string_view utf8;
  std::string_view ascii;
};

// Unicode spellings accepted on input.
constexpr std::array<Alias, 12> kAliases = {{
    {"\xE2\x88\xA7", "&"},      // ∧
    {"\xE2\x88\xA8", "|"},      // ∨
    {"\xE2\x86\x92", "->"},     // →
    {"\xE2\x86\x94", "<->"},    // ↔
    {"\xC2\xAC", "~"},          // ¬
    {"\xE2\x8A\xA5", "bot"},    // ⊥
    {"\xE2\x8A\xA4", "top"},    // ⊤
    {"\xE2\x88\x80", "forall"}, // ∀
    {"\xE2\x88\x83", "exists"}, // ∃
    {"\xE2\x96\xA1", "box"},    // □
    {"\xE2\x88\x87", "nabla"},  // ∇
    {"\xE2\x97\x87", "dia"},    // ◇
}};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') break;
    bool aliased = false;
    for (const auto& a : kAliases) {
      if (text.substr(i, a.utf8.size()) == a.utf8) {
        Token::Kind kind = std::isalpha(static_cast<unsigned char>(a.ascii[0]))
                               ? Token::Kind::Ident
                               : Token::Kind::Symbol;
        out.push_back({kind, std::string(a.ascii), i});
        i += a.utf8.size();
        aliased = true;
        break;
      }
    }
    if (aliased) continue;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({Token::Kind::Ident, std::string(text.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Token::Kind::Number, std::string(text.substr(i, j - i)), i});
      i = j;
      continue;
    }
    for (std::string_view sym : {"<->", "->", ":="}) {
      if (text.substr(i, sym.size()) == sym) {
        out.push_back({Token::Kind::Symbol, std::string(sym), i});
        i += sym.size();
        aliased = true;
        break;
      }
    }
    if (aliased) continue;
    if (std::string_view("()[],.&|~?!/:*").find(c) != std::string_view::npos) {
      out.push_back({Token::Kind::Symbol, std::string(1, c), i});
      ++i;
      continue;
    }
    throw Error(ErrorCode::Parse,
                "unexpected character '" + std::string(1, c) + "' at offset " + std::to_string(i));
  }
  out.push_back({Token::Kind::End, "", text.size()});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

FormulaParser::FormulaParser(const std::vector<Token>& tokens, std::size_t pos,
                             const Signature& sig, const Signature* metas)
    : tokens_(tokens), pos_(pos), sig_(sig), metas_(metas) {}

void FormulaParser::fail(const std::string& msg) const {
  const Token& t = tokens_[pos_];
  std::string where = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
  throw Error(ErrorCode::Parse, msg + " at " + where + " (offset " + std::to_string(t.pos) + ")");
}

void FormulaParser::expect(std::string_view sym) {
  if (!peek().is(sym)) fail("expected '" + std::string(sym) + "'");
  ++pos_;
}

std::string FormulaParser::expect_ident(std::string_view what) {
  const Token& t = peek();
  if (t.kind != Token::Kind::Ident || is_keyword(t.text)) fail("expected " + std::string(what));
  ++pos_;
  return t.text;
}

Formula FormulaParser::parse() {
  Formula f = parse_iff();
  check_sorts(f);
  return f;
}

Formula FormulaParser::parse_iff() {
  Formula l = parse_imp();
  if (peek().is("<->")) {
    ++pos_;
    Formula r = parse_imp();
    if (peek().is("<->")) fail("'<->' is not associative; add parentheses");
    return Formula::iff(std::move(l), std::move(r));
  }
  return l;
}

Formula FormulaParser::parse_imp() {
  Formula l = parse_or();
  if (peek().is("->")) {
    ++pos_;
    Formula r = parse_imp();
    return Formula::imp(std::move(l), std::move(r));
  }
  return l;
}

Formula FormulaParser::parse_or() {
  Formula l = parse_and();
  while (peek().is("|")) {
    ++pos_;
    l = Formula::disj(std::move(l), parse_and());
  }
  return l;
}

Formula FormulaParser::parse_and() {
  Formula l = parse_unary();
  while (peek().is("&")) {
    ++pos_;
    l = Formula::conj(std::move(l), parse_unary());
  }
  return l;
}

Formula FormulaParser::parse_unary() {
  const Token& t = peek();
  if (t.kind == Token::Kind::End) fail("expected a formula");
  if (t.is("~")) {
    ++pos_;
    return Formula::neg(parse_unary());
  }
  if (t.is("?")) {
    ++pos_;
    return Formula::wn(parse_unary());
  }
  if (t.is("!")) {
    ++pos_;
    return Formula::oc(parse_unary());
  }
  if (t.is("(")) {
    ++pos_;
    Formula f = parse_iff();
    expect(")");
    return f;
  }
  if (t.kind == Token::Kind::Number) {
    ++pos_;
    if (t.text == "0") return Formula::zero();
    if (t.text == "1") return Formula::truth(Sort::Proposition);
    --pos_;
    fail("unexpected number");
  }
  if (t.kind == Token::Kind::Ident) {
    ++pos_;
    if (t.text == "bot") return Formula::bot();
    if (t.text == "top") return Formula::truth(Sort::Problem);
    if (t.text == "box") return Formula::box(parse_unary());
    if (t.text == "nabla") return Formula::nabla(parse_unary());
    if (t.text == "dia") return Formula::dia(parse_unary());
    if (t.text == "forall" || t.text == "exists") {
      std::string var = expect_ident("a bound variable");
      expect(".");
      Formula body = parse_unary();
      return t.text == "forall" ? Formula::forall(std::move(var), std::move(body))
                                : Formula::exists(std::move(var), std::move(body));
    }
    if (is_keyword(t.text)) {
      --pos_;
      fail("unexpected keyword");
    }
    return parse_atomic(t);
  }
  fail("expected a formula");
}

Formula FormulaParser::parse_atomic(const Token& name) {
  std::vector<std::string> args;
  if (peek().is("(")) {
    ++pos_;
    args.push_back(expect_ident("a variable"));
    while (peek().is(",")) {
      ++pos_;
      args.push_back(expect_ident("a variable"));
    }
    expect(")");
  }
  bool is_meta = false;
  const AtomDecl* d = metas_ ? metas_->find(name.text) : nullptr;
  if (d) {
    is_meta = true;
  } else {
    d = sig_.find(name.text);
  }
  if (!d) throw Error(ErrorCode::UndeclaredAtom, "undeclared atom '" + name.text + "'");
  if (d->arity != static_cast<int>(args.size())) {
    throw Error(ErrorCode::ArityMismatch, "atom '" + name.text + "' expects " +
                                              std::to_string(d->arity) + " argument(s), got " +
                                              std::to_string(args.size()));
  }
  return is_meta ? Formula::meta(name.text, d->sort, std::move(args))
                 : Formula::atom(name.text, d->sort, std::move(args));
}

Formula parse_formula(std::string_view text, const Signature& sig, const Signature* metas) {
  std::vector<Token> toks = tokenize(text);
  FormulaParser p(toks, 0, sig, metas);
  Formula f = p.parse();
  if (p.peek().kind != Token::Kind::End) {
    throw Error(ErrorCode::Parse, "trailing input at offset " + std::to_string(p.peek().pos));
  }
  return f;
}

std::size_t parse_declarations(const std::vector<Token>& tokens, std::size_t pos,
                               Signature& sig) {
  while (tokens[pos].is("prob") || tokens[pos].is("prop")) {
    Sort sort = tokens[pos].is("prob") ? Sort::Problem : Sort::Proposition;
    ++pos;
    for (;;) {
      const Token& t = tokens[pos];
      if (t.kind != Token::Kind::Ident || is_keyword(t.text)) {
        throw Error(ErrorCode::Parse, "expected an atom name in declaration at offset " +
                                          std::to_string(t.pos));
      }
      ++pos;
      int arity = 0;
      if (tokens[pos].is("(")) {
        if (tokens[pos + 1].kind != Token::Kind::Number || !tokens[pos + 2].is(")")) {
          throw Error(ErrorCode::Parse, "expected '(arity)' after '" + t.text + "'");
        }
        arity = std::stoi(tokens[pos + 1].text);
        pos += 3;
      }
      sig.declare(t.text, sort, arity);
      if (tokens[pos].is(",")) {
        ++pos;
        continue;
      }
      if (tokens[pos].is(".")) {
        ++pos;
        break;
      }
      throw Error(ErrorCode::Parse, "expected ',' or '.' in declaration at offset " +
                                        std::to_string(tokens[pos].pos));
    }
  }
  return pos;
}

Signature parse_signature(std::string_view text) {
  std::vector<Token> toks = tokenize(text);
  Signature sig;
  std::size_t pos = parse_declarations(toks, 0, sig);
  if (toks[pos].kind != Token::Kind::End) {
    throw Error(ErrorCode::Parse, "expected a declaration at offset " + std::to_string(toks[pos].pos));
  }
  return sig;
}

Formula parse_with_preamble(std::string_view text, Signature& sig) {
  std::vector<Token> toks = tokenize(text);
  std::size_t pos = parse_declarations(toks, 0, sig);
  FormulaParser p(toks, pos, sig);
  Formula f = p.parse();
  if (p.peek().kind != Token::Kind::End) {
    throw Error(ErrorCode::Parse, "trailing input at offset " + std::to_string(p.peek().pos));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Printer

namespace {

// Binding strength: 0 <->, 1 ->, 2 |, 3 &, 4 prefix/atomic.
int level(const Formula& f) {
  if (is_iff(f)) return 0;
  if (is_negation(f)) return 4;
  switch (f.op()) {
    case Op::Imp: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    default: return 4;
  }
}

bool is_dia(const Formula& f) {
  return is_negation(f) && f.right().op() == Op::FalseC && f.left().op() == Op::Box &&
         is_negation(f.left().body()) && f.left().body().right().op() == Op::FalseC;
}

void emit(const Formula& f, int min_level, std::string& out);

void emit_prefix(std::string_view op, const Formula& operand, std::string& out) {
  out += op;
  emit(operand, 4, out);
}

void emit(const Formula& f, int min_level, std::string& out) {
  bool paren = level(f) < min_level;
  if (paren) out += '(';
  if (is_iff(f)) {
    emit(f.left().left(), 1, out);
    out += " <-> ";
    emit(f.left().right(), 1, out);
  } else if (is_negation(f)) {
    const Formula& a = f.left();
    if (a.op() == Op::FalseI && f.right().op() == Op::FalseI) {
      out += "top";
    } else if (a.op() == Op::FalseC && f.right().op() == Op::FalseC) {
      out += "1";
    } else if (is_dia(f)) {
      emit_prefix("dia ", a.body().left(), out);
    } else {
      emit_prefix("~", a, out);
    }
  } else {
    switch (f.op()) {
      case Op::Atom:
      case Op::Meta:
        out += f.name();
        if (!f.args().empty()) {
          out += '(';
          for (std::size_t i = 0; i < f.args().size(); ++i) {
            if (i) out += ',';
            out += f.args()[i];
          }
          out += ')';
        }
        break;
      case Op::FalseI: out += "bot"; break;
      case Op::FalseC: out += "0"; break;
      case Op::And:
        emit(f.left(), 3, out);
        out += " & ";
        emit(f.right(), 4, out);
        break;
      case Op::Or:
        emit(f.left(), 2, out);
        out += " | ";
        emit(f.right(), 3, out);
        break;
      case Op::Imp:
        emit(f.left(), 2, out);
        out += " -> ";
        emit(f.right(), 1, out);
        break;
      case Op::Forall:
      case Op::Exists:
        out += f.op() == Op::Forall ? "forall " : "exists ";
        out += f.name();
        out += ". ";
        emit(f.body(), 4, out);
        break;
      case Op::Wn: emit_prefix("?", f.body(), out); break;
      case Op::Oc: emit_prefix("!", f.body(), out); break;
      case Op::Box: emit_prefix("box ", f.body(), out); break;
      case Op::Nabla: emit_prefix("nabla ", f.body(), out); break;
    }
  }
  if (paren) out += ')';
}

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  if (f) emit(f, 0, out);
  return out;
}

std::string print_signature(const Signature& sig) {
  std::string out;
  for (Sort s : {Sort::Problem, Sort::Proposition}) {
    std::string line;
    for (const auto& a : sig.atoms()) {
      if (a.sort != s) continue;
      line += line.empty() ? (s == Sort::Problem ? "prob " : "prop ") : ", ";
      line += a.name;
      if (a.arity) line += "(" + std::to_string(a.arity) + ")";
    }
    if (!line.empty()) {
      if (!out.empty()) out += ' ';
      out += line + ".";
    }
  }
  return out;
}

}  // namespace qhc
