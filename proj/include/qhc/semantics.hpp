#pragma once

// Propositional Kripke semantics: S4 model checking, an S4 tableau, IPC via
// the box translation, and a refuter for QHC built on the two sound
// interpretations into QS4 and QH.
//
// Formulas here are quantifier-free and nullary. Atoms are identified by
// name; bot and 0 both denote falsity. ? and ! must be translated away first.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qhc/formula.hpp"

namespace qhc {

struct KripkeModel {
  int worlds = 0;
  std::vector<std::vector<bool>> relation;  // relation[u][v]: v is accessible from u
  std::map<std::string, std::vector<bool>> valuation;

  explicit KripkeModel(int n = 0);
  bool is_s4_frame() const;  // reflexive and transitive
  void close();              // reflexive-transitive closure in place
};

// Worlds where f holds. Throws UnknownAtom, NonPropositionalInput.
std::set<int> model_check(const KripkeModel& m, const Formula& f);

struct Countermodel {
  KripkeModel model;
  int world = 0;
};

// Empty when valid.
using Decision = std::optional<Countermodel>;

// Throws NonPropositionalInput.
Decision decide_s4(const Formula& f);
// H1..Hn |- G with necessitation available: box(H1 & .. & Hn) -> G.
Decision entails_s4(const std::vector<Formula>& premises, const Formula& conclusion);

// Problem-sorted, no ?, !; decided through box_translate. The countermodel
// falsifies the box image. Throws NonPropositionalInput, SortClash.
Decision decide_ipc(const Formula& f);
Decision entails_ipc(const std::vector<Formula>& premises, const Formula& conclusion);

enum class Channel { Box, NegNeg };
std::string_view channel_name(Channel c);

struct Refutation {
  Channel channel;
  Formula translated;  // image under the channel's interpretation
  Formula checked;     // the S4 formula the countermodel falsifies
  KripkeModel model;
  int world = 0;
};

// Refutations found, in channel order Box, NegNeg; stops at the first unless
// `all_channels`. Empty means unknown, not valid. Throws NonPropositionalInput.
std::vector<Refutation> refute_qhc(const Formula& f, bool all_channels = false);

}  // namespace qhc
