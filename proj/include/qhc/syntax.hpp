#pragma once

// Concrete syntax: tokenizer, formula parser and pretty-printer.
//
//   declarations   prob a, b(1).   prop p, q(2).
//   connectives    & | -> <-> ~ ? ! box nabla dia  forall x.  exists x.
//   constants      bot 0 top 1
//
// Precedence, tightest first: prefix operators and quantifiers, &, |, ->
// (right associative), <-> (non-associative). & and | associate left.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qhc/formula.hpp"

namespace qhc {

struct Token {
  enum class Kind { Ident, Number, Symbol, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t pos = 0;

  bool is(std::string_view s) const { return kind != Kind::End && text == s; }
};

std::vector<Token> tokenize(std::string_view text);

// Recursive-descent parser over a token stream. `metas` (optional) declares
// schematic metavariables, which shadow atoms of the same name.
class FormulaParser {
 public:
  FormulaParser(const std::vector<Token>& tokens, std::size_t pos, const Signature& sig,
                const Signature* metas = nullptr);

  Formula parse();
  std::size_t pos() const { return pos_; }
  const Token& peek() const { return tokens_[pos_]; }

 private:
  Formula parse_iff();
  Formula parse_imp();
  Formula parse_or();
  Formula parse_and();
  Formula parse_unary();
  Formula parse_atomic(const Token& name);
  std::string expect_ident(std::string_view what);
  void expect(std::string_view sym);
  [[noreturn]] void fail(const std::string& msg) const;

  const std::vector<Token>& tokens_;
  std::size_t pos_;
  const Signature& sig_;
  const Signature* metas_;
};

// Parses and typechecks a complete formula.
Formula parse_formula(std::string_view text, const Signature& sig,
                      const Signature* metas = nullptr);

// Parses a run of declarations such as "prob a, b(1). prop p." into `sig`,
// starting at token `pos`; returns the position after the last declaration.
std::size_t parse_declarations(const std::vector<Token>& tokens, std::size_t pos,
                               Signature& sig);
Signature parse_signature(std::string_view text);

// A formula optionally preceded by declarations, e.g. "prop p. p -> ?!p".
// The preamble is merged into `sig`.
Formula parse_with_preamble(std::string_view text, Signature& sig);

bool is_keyword(std::string_view word);

// Pretty-printer; folds the abbreviations back. parse(print(f)) == f.
std::string print(const Formula& f);
std::string print_signature(const Signature& sig);

}  // namespace qhc
