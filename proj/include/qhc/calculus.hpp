#pragma once

// Axiom and rule tables for QC, QH, QS4, QH4, QHC and their extensions.
//
// An axiom is a rule schema without premises. A schema that makes sense for
// both sorts (A -> (B -> A)) is stored once per sort as separate variants of
// the same named schema. Modus ponens and generalization are built into the
// kernel and are not listed.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qhc/formula.hpp"
#include "qhc/schema.hpp"

namespace qhc {

struct Language {
  bool problems = false;
  bool propositions = false;
  bool wn_oc = false;
  bool box = false;
  bool nabla = false;

  bool includes(const Language& o) const {
    return (problems || !o.problems) && (propositions || !o.propositions) &&
           (wn_oc || !o.wn_oc) && (box || !o.box) && (nabla || !o.nabla);
  }
};

// Why `f` lies outside `lang`, or nullopt.
std::optional<std::string> language_violation(const Formula& f, const Language& lang);

struct Inference {
  std::vector<Formula> premises;
  Formula conclusion;
  Signature metas;

  friend bool operator==(const Inference&, const Inference&) = default;
};

struct RuleSchema {
  std::string name;
  std::vector<Inference> variants;

  bool is_axiom() const { return variants.front().premises.empty(); }
};

// Parses "A -> B" or "A, B / C" with the atoms of `metas` schematic.
Inference parse_inference(std::string_view text, const Signature& metas);

struct Calculus {
  std::string name;
  Language language;
  std::vector<RuleSchema> axioms;
  std::vector<RuleSchema> rules;

  const RuleSchema* find_axiom(std::string_view n) const;
  const RuleSchema* find_rule(std::string_view n) const;
  // Every formula of `o` is in our language and every variant of every
  // axiom and rule of `o` is one of ours.
  bool includes(const Calculus& o) const;
};

// One of QC, QH, QS4, QH4, QHC; throws UnknownCalculus.
Calculus builtin(std::string_view name);

// Throws SortClash if an extra schema is ill-sorted or outside base's language.
Calculus extend(const Calculus& base, std::vector<RuleSchema> axioms,
                std::vector<RuleSchema> rules, std::string name);

// Name -> calculus. Starts with the builtins; theory files add more:
//
//   calculus QHC+KSP extends QHC
//   prop p.
//   axiom ksp: ~!~p -> !p
//   rule edr: ~(a & b) / !?(a | b) -> !?a | !?b
//
// Every atom declared in a theory file is schematic.
class CalculusTable {
 public:
  CalculusTable();

  const Calculus& get(std::string_view name) const;
  bool contains(std::string_view name) const;
  void add(Calculus c);
  const Calculus& load_theory(std::string_view text);
  const Calculus& load_theory_file(const std::string& path);
  std::vector<std::string> names() const;

 private:
  std::map<std::string, Calculus, std::less<>> table_;
};

}  // namespace qhc
