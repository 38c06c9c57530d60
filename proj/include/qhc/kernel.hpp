#pragma once

// The proof checker. check() is the only function that declares a formula
// proved.
//
// A cited lemma is a derived rule H1..Hn / G over its statement atoms, and
// may be used with any formulas substituted for those atoms and any
// injective renaming of its variables, provided the substituted formulas
// share no variable with the (renamed) lemma proof. Under that condition the
// lemma proof with the substitution applied is itself a proof, which is what
// inline_lemmas() produces.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qhc/calculus.hpp"
#include "qhc/proof.hpp"
#include "qhc/schema.hpp"

namespace qhc {

struct Theorem {
  std::string id;
  std::string calculus;
  Signature sig;
  std::vector<Formula> hyps;
  Formula goal;
  Proof proof;                    // elaborated: every formula and binding explicit
  std::vector<Binding> bindings;  // per line of `proof`
  std::vector<const Theorem*> cited;  // per line; the lemma variant used
  std::set<std::string> vars;       // every variable of the proof, lemmas included
  std::set<std::string> gen_vars;   // generalized variables, lemmas included
  std::set<std::string> uses;       // axioms and rules, lemmas included
  bool flipped = false;             // sort-flipped copy of a QH/QC lemma
};

class LemmaLookup {
 public:
  virtual ~LemmaLookup() = default;
  // All variants of a lemma; empty if unknown.
  virtual std::vector<const Theorem*> lemma(std::string_view id) const = 0;
};

struct CheckOptions {
  // When set, only these axioms and rules may be used, also inside lemmas.
  std::optional<std::set<std::string>> allowed;
};

struct CheckResult {
  bool accepted = false;
  int failing_line = 0;  // 0: not tied to a line
  std::string reason;
  Theorem theorem;  // filled when accepted
};

CheckResult check(const Proof& proof, const CalculusTable& calculi, const LemmaLookup* lemmas,
                  const CheckOptions& opts = {});

// Checks that `proof` derives `conclusion` from `premises`, whose atoms are
// treated as fixed but arbitrary.
CheckResult check_derived_rule(const std::vector<Formula>& premises, const Formula& conclusion,
                               Proof proof, const CalculusTable& calculi,
                               const LemmaLookup* lemmas, const CheckOptions& opts = {});

// Replaces every lemma line by the instantiated lemma proof, recursively.
// The result contains no lemma lines and must be re-checked.
Proof inline_lemmas(const Theorem& t);

// Atoms of `sig` occurring in f become metavariables.
Formula to_schema(const Formula& f, const Signature& atoms);

// The same theorem with all atom sorts flipped (QH <-> QC). Not checked.
Proof flip_proof(const Theorem& t);

}  // namespace qhc
