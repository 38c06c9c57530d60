#pragma once

// Syntactic interpretations between the five languages.
//
//   box_translate       QHC -> QS4   (atoms all become propositions)
//   negneg_translate    QHC -> QH    (atoms all become problems)
//   nabla_translate     QHC -> QHC
//   diamond_translate   QHC -> QHC
//   embed_qs4           QS4 -> QHC   box     ~> ?!
//   embed_qh4           QH4 -> QHC   nabla   ~> !?
//   subst_nabla_negneg  QH4 -> QH    nabla   ~> ~~
//
// Results targeting QHC use the primitives ? and ! only; fold_modalities()
// recovers box and nabla for display. Metavariables are treated like atoms,
// so the transformers also act on schemata.

#include <optional>
#include <string_view>

#include "qhc/formula.hpp"

namespace qhc {

Formula box_translate(const Formula& f);
Formula negneg_translate(const Formula& f);
Formula nabla_translate(const Formula& f);
Formula diamond_translate(const Formula& f);
Formula embed_qs4(const Formula& f);
Formula embed_qh4(const Formula& f);
Formula subst_nabla_negneg(const Formula& f);

// ?!A becomes box A and !?A becomes nabla A, outermost first.
Formula fold_modalities(const Formula& f);
// box A becomes ?!A and nabla A becomes !?A.
Formula expand_modalities(const Formula& f);

// The same atoms, all of sort `s`.
Signature retype(const Signature& sig, Sort s);

enum class Translation { Box, Nabla, NegNeg, Diamond, EmbedQS4, EmbedQH4 };

struct TranslationInfo {
  Translation kind;
  std::string_view name;    // as on the command line
  std::string_view source;  // calculus names
  std::string_view target;
};

const TranslationInfo& info(Translation t);
std::optional<Translation> translation_by_name(std::string_view name);
Formula translate(Translation t, const Formula& f);
// Signature of translate(t, f) given the signature of f.
Signature translate_signature(Translation t, const Signature& sig);

}  // namespace qhc
