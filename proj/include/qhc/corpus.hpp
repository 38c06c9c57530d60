#pragma once

// The corpus: one proof script per file under corpus/, checked in lemma
// dependency order. Accepted entries become citable lemmas.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qhc/kernel.hpp"

namespace qhc {

class Registry : public LemmaLookup {
 public:
  explicit Registry(CalculusTable calculi = {}) : calculi_(std::move(calculi)) {}

  CalculusTable& calculi() { return calculi_; }
  const CalculusTable& calculi() const { return calculi_; }

  std::vector<const Theorem*> lemma(std::string_view id) const override;
  // Adds an accepted theorem and, for QH/QC theorems, its sort-flipped copy
  // when that re-checks.
  const Theorem& add(Theorem t);
  std::vector<std::string> ids() const;

 private:
  CalculusTable calculi_;
  std::map<std::string, std::vector<std::unique_ptr<Theorem>>, std::less<>> lemmas_;
};

// Lemma ids cited by a proof.
std::vector<std::string> cited_lemmas(const Proof& p);

// Indices of `proofs` such that every cited lemma precedes its users; ties
// broken by id. Throws CyclicLemmaDependency.
std::vector<std::size_t> dependency_order(const std::vector<Proof>& proofs);

struct EntryReport {
  std::string id;
  std::string title;
  std::string calculus;
  std::string statement;
  bool accepted = false;
  int failing_line = 0;
  std::string reason;
  double millis = 0;
};

struct CorpusReport {
  std::vector<EntryReport> entries;  // sorted by id
  double millis = 0;
  bool all_accepted() const;
};

std::vector<Proof> load_corpus(const std::string& dir);
void load_theories(CalculusTable& table, const std::string& dir);

// Checks the entries whose id matches the glob `filter` (all when absent),
// together with the lemmas they depend on; reports the matching entries.
CorpusReport run_corpus(const std::vector<Proof>& proofs, Registry& registry,
                        const std::optional<std::string>& filter = std::nullopt,
                        const CheckOptions& opts = {});

std::string statement_text(const Proof& p);

}  // namespace qhc
