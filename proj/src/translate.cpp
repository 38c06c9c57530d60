#include "qhc/translate.hpp"

#include <array>

namespace qhc {

namespace {

Formula retyped(const Formula& f, Sort s) {
  if (f.op() == Op::Meta) return Formula::meta(f.name(), s, f.args());
  return Formula::atom(f.name(), s, f.args());
}

Formula negneg(Formula f) { return Formula::neg(Formula::neg(std::move(f))); }

Formula prefix_box(Formula f) { return Formula::wn(Formula::oc(std::move(f))); }
Formula prefix_nabla(Formula f) { return Formula::oc(Formula::wn(std::move(f))); }

// box dia box, with box = ?! and dia = ~box~.
Formula prefix_bdb(Formula f) {
  Formula inner = prefix_box(std::move(f));
  return prefix_box(Formula::neg(prefix_box(Formula::neg(std::move(inner)))));
}

bool classical(const Formula& f) { return f.sort() == Sort::Proposition; }

}  // namespace

Formula box_translate(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Meta:
      if (classical(f)) return f;
      return Formula::box(retyped(f, Sort::Proposition));
    case Op::FalseI:
    case Op::FalseC:
      return Formula::zero();
    case Op::And:
    case Op::Or:
    case Op::Exists:
      return rebuild(f, box_translate(f.left()), f.is_binary() ? box_translate(f.right()) : Formula{});
    case Op::Imp:
    case Op::Forall: {
      Formula g = rebuild(f, box_translate(f.left()), f.is_binary() ? box_translate(f.right()) : Formula{});
      return classical(f) ? g : Formula::box(g);
    }
    case Op::Wn:
      return box_translate(f.left());
    case Op::Oc:
    case Op::Box:
    case Op::Nabla:
      return Formula::box(box_translate(f.left()));
  }
  return f;
}

Formula negneg_translate(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Meta:
      if (!classical(f)) return f;
      return negneg(retyped(f, Sort::Problem));
    case Op::FalseI:
    case Op::FalseC:
      return Formula::bot();
    case Op::And:
    case Op::Imp:
    case Op::Forall:
      return rebuild(f, negneg_translate(f.left()), f.is_binary() ? negneg_translate(f.right()) : Formula{});
    case Op::Or:
    case Op::Exists: {
      Formula g = rebuild(f, negneg_translate(f.left()), f.is_binary() ? negneg_translate(f.right()) : Formula{});
      return classical(f) ? negneg(g) : g;
    }
    case Op::Oc:
      return negneg_translate(f.left());
    case Op::Wn:
    case Op::Box:
    case Op::Nabla:
      return negneg(negneg_translate(f.left()));
  }
  return f;
}

Formula nabla_translate(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Meta:
      return classical(f) ? f : prefix_nabla(f);
    case Op::FalseI:
    case Op::FalseC:
      return f;
    case Op::Or:
    case Op::Exists: {
      Formula g = rebuild(f, nabla_translate(f.left()), f.is_binary() ? nabla_translate(f.right()) : Formula{});
      return classical(f) ? g : prefix_nabla(g);
    }
    case Op::Box:
      return prefix_box(nabla_translate(f.left()));
    case Op::Nabla:
      return prefix_nabla(nabla_translate(f.left()));
    default:
      return rebuild(f, nabla_translate(f.left()), f.is_binary() ? nabla_translate(f.right()) : Formula{});
  }
}

Formula diamond_translate(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Meta:
      return classical(f) ? prefix_bdb(f) : f;
    case Op::FalseI:
    case Op::FalseC:
      return f;
    case Op::Imp:
    case Op::Forall: {
      Formula g = rebuild(f, diamond_translate(f.left()), f.is_binary() ? diamond_translate(f.right()) : Formula{});
      return classical(f) ? prefix_box(g) : g;
    }
    case Op::Or:
    case Op::Exists: {
      Formula g = rebuild(f, diamond_translate(f.left()), f.is_binary() ? diamond_translate(f.right()) : Formula{});
      return classical(f) ? prefix_bdb(g) : g;
    }
    case Op::Wn:
      return prefix_bdb(Formula::wn(diamond_translate(f.left())));
    case Op::Box:
    case Op::Nabla:
      return diamond_translate(f.op() == Op::Box ? prefix_box(f.left()) : prefix_nabla(f.left()));
    default:
      return rebuild(f, diamond_translate(f.left()), f.is_binary() ? diamond_translate(f.right()) : Formula{});
  }
}

Formula embed_qs4(const Formula& f) {
  if (f.is_leaf()) return f;
  Formula l = embed_qs4(f.left());
  if (f.op() == Op::Box) return prefix_box(l);
  return rebuild(f, l, f.is_binary() ? embed_qs4(f.right()) : Formula{});
}

Formula embed_qh4(const Formula& f) {
  if (f.is_leaf()) return f;
  Formula l = embed_qh4(f.left());
  if (f.op() == Op::Nabla) return prefix_nabla(l);
  return rebuild(f, l, f.is_binary() ? embed_qh4(f.right()) : Formula{});
}

Formula subst_nabla_negneg(const Formula& f) {
  if (f.is_leaf()) return f;
  Formula l = subst_nabla_negneg(f.left());
  if (f.op() == Op::Nabla) return negneg(l);
  return rebuild(f, l, f.is_binary() ? subst_nabla_negneg(f.right()) : Formula{});
}

Formula fold_modalities(const Formula& f) {
  if (f.is_leaf()) return f;
  if ((f.op() == Op::Wn && f.left().op() == Op::Oc) || (f.op() == Op::Oc && f.left().op() == Op::Wn)) {
    Formula inner = fold_modalities(f.left().left());
    return f.op() == Op::Wn ? Formula::box(inner) : Formula::nabla(inner);
  }
  return rebuild(f, fold_modalities(f.left()), f.is_binary() ? fold_modalities(f.right()) : Formula{});
}

Formula expand_modalities(const Formula& f) {
  if (f.is_leaf()) return f;
  Formula l = expand_modalities(f.left());
  if (f.op() == Op::Box) return prefix_box(l);
  if (f.op() == Op::Nabla) return prefix_nabla(l);
  return rebuild(f, l, f.is_binary() ? expand_modalities(f.right()) : Formula{});
}

Signature retype(const Signature& sig, Sort s) {
  Signature out;
  for (const auto& a : sig.atoms()) out.declare(a.name, s, a.arity);
  return out;
}

namespace {

constexpr std::array<TranslationInfo, 6> kTranslations{{
    {Translation::Box, "box", "QHC", "QS4"},
    {Translation::Nabla, "nabla", "QHC", "QHC"},
    {Translation::NegNeg, "negneg", "QHC", "QH"},
    {Translation::Diamond, "diamond", "QHC", "QHC"},
    {Translation::EmbedQS4, "embed-qs4", "QS4", "QHC"},
    {Translation::EmbedQH4, "embed-qh4", "QH4", "QHC"},
}};

}  // namespace

const TranslationInfo& info(Translation t) { return kTranslations[static_cast<std::size_t>(t)]; }

std::optional<Translation> translation_by_name(std::string_view name) {
  for (const auto& t : kTranslations) {
    if (t.name == name) return t.kind;
  }
  return std::nullopt;
}

Formula translate(Translation t, const Formula& f) {
  switch (t) {
    case Translation::Box: return box_translate(f);
    case Translation::Nabla: return nabla_translate(f);
    case Translation::NegNeg: return negneg_translate(f);
    case Translation::Diamond: return diamond_translate(f);
    case Translation::EmbedQS4: return embed_qs4(f);
    case Translation::EmbedQH4: return embed_qh4(f);
  }
  return f;
}

Signature translate_signature(Translation t, const Signature& sig) {
  switch (t) {
    case Translation::Box: return retype(sig, Sort::Proposition);
    case Translation::NegNeg: return retype(sig, Sort::Problem);
    default: return sig;
  }
}

}  // namespace qhc
