#pragma once

// Proof scripts.
//
//   id galois.fwd
//   title "Galois connection, forward direction"
//   calculus QHC
//   prob a.  prop p.
//   hyp ?a -> p
//   goal a -> !p
//   1. ?a -> p                     by hyp 1
//   2. !(?a -> p)                  by rule oc_top 1
//   3. !(?a -> p) -> (!?a -> !p)   by axiom oc_imp
//   4. !?a -> !p                   by mp 3 2
//   ...
//
// Justifications: axiom NAME [binding] | hyp I | mp M K (M the implication) | gen M X |
// rule NAME M... [binding] | lemma ID M... [binding]. A line formula may be
// written `_` when it is determined by the justification.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qhc/formula.hpp"

namespace qhc {

// One "NAME(params) := rhs" item, kept as text until the cited schema tells
// whether NAME is a metavariable (rhs a formula) or a variable.
struct BindingItem {
  std::string name;
  std::vector<std::string> params;
  std::string rhs;

  friend bool operator==(const BindingItem&, const BindingItem&) = default;
};

struct Justification {
  enum class Kind { Axiom, Hyp, MP, Gen, Rule, Lemma };
  Kind kind = Kind::Hyp;
  std::string name;       // axiom, rule or lemma id
  std::vector<int> refs;  // hyp index, or earlier line numbers
  std::string var;        // gen
  std::vector<BindingItem> binding;
};

struct ProofLine {
  int number = 0;
  Formula formula;  // empty for `_`
  Justification just;
  int source_line = 0;
};

struct Proof {
  std::string id;
  std::string title;
  std::string calculus;
  Signature sig;
  std::vector<Formula> hyps;
  Formula goal;  // empty: the last line
  std::vector<ProofLine> lines;
};

Proof parse_proof(std::string_view text);
Proof load_proof(const std::string& path);
std::string format_proof(const Proof& p);
std::string format_justification(const Justification& j);

}  // namespace qhc
