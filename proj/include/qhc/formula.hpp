#pragma once

// Two-sorted formulas of the joint problem/proposition language.
//
// A Formula is an immutable, reference-counted tree. Every node carries the
// sort it would have if well typed; whether it *is* well typed against a
// signature is decided by typecheck(). The derived connectives (negation,
// equivalence, top, 1, diamond) have no constructors of their own and are
// expanded when built.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qhc/error.hpp"

namespace qhc {

enum class Sort : unsigned char { Problem, Proposition };

std::string_view sort_name(Sort s);
inline Sort flip(Sort s) {
  return s == Sort::Problem ? Sort::Proposition : Sort::Problem;
}

enum class Op : unsigned char {
  Atom,    // declared logical variable applied to individual variables
  Meta,    // schematic metavariable; only inside schemata
  FalseI,  // intuitionistic absurdity, bot
  FalseC,  // classical falsity, 0
  And,
  Or,
  Imp,
  Forall,
  Exists,
  Wn,     // ?  : problem -> proposition
  Oc,     // !  : proposition -> problem
  Box,    // primitive box of the QS4 language
  Nabla,  // primitive nabla of the QH4 language
};

struct Node;

class Formula {
 public:
  Formula() = default;

  static Formula atom(std::string name, Sort sort,
                      std::vector<std::string> args = {});
  static Formula meta(std::string name, Sort sort,
                      std::vector<std::string> args = {});
  static Formula bot();
  static Formula zero();
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  static Formula wn(Formula a);
  static Formula oc(Formula a);
  static Formula box(Formula a);
  static Formula nabla(Formula a);

  // Abbreviations.
  static Formula falsity(Sort s);
  static Formula neg(Formula a);  // a -> falsity of a's sort
  static Formula iff(Formula a, Formula b);
  static Formula truth(Sort s);   // top or 1
  static Formula dia(Formula a);  // ~box~a, QS4 language

  explicit operator bool() const { return node_ != nullptr; }

  Op op() const;
  Sort sort() const;
  // Atom/Meta name, or the bound variable of a quantifier.
  const std::string& name() const;
  const std::vector<std::string>& args() const;
  // Left operand, sole operand of unary connectives, quantifier body.
  const Formula& left() const;
  const Formula& right() const;
  const Formula& body() const { return left(); }

  bool is_binary() const;
  bool is_unary() const;  // Wn, Oc, Box, Nabla
  bool is_quantifier() const;
  bool is_leaf() const;

  std::size_t hash() const;
  std::size_t size() const;  // number of nodes

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) {
    return !(a == b);
  }
  // Total order used for deterministic containers.
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Node n);

  std::shared_ptr<const Node> node_;
};

struct Node {
  Op op;
  Sort sort;
  std::string name;
  std::vector<std::string> args;
  Formula lhs;
  Formula rhs;
  std::size_t hash = 0;
  std::size_t size = 1;
};

// Rebuilds a node of the same shape as `f` with new children.
Formula rebuild(const Formula& f, Formula lhs, Formula rhs = {});

// Shorthand for the common connective patterns.
bool is_negation(const Formula& f);  // A -> falsity
bool is_iff(const Formula& f);       // (A -> B) & (B -> A)

struct AtomDecl {
  std::string name;
  Sort sort;
  int arity = 0;

  friend bool operator==(const AtomDecl&, const AtomDecl&) = default;
};

class Signature {
 public:
  Signature() = default;

  // Throws DuplicateDeclaration on a clashing name.
  void declare(const AtomDecl& decl);
  void declare(std::string name, Sort sort, int arity = 0) {
    declare(AtomDecl{std::move(name), sort, arity});
  }

  const AtomDecl* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  const std::vector<AtomDecl>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  // Union; throws if the same name is declared with different sort/arity.
  void merge(const Signature& other);
  // Every atom with its sort flipped.
  Signature flipped() const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<AtomDecl> atoms_;
};

// Returns the unique sort of `f`, or throws UndeclaredAtom, ArityMismatch or
// SortClash. Meta nodes are rejected: schemata are not formulas.
Sort typecheck(const Formula& f, const Signature& sig);
// Sort check ignoring the signature (metas and atoms taken at face value).
Sort check_sorts(const Formula& f);

std::set<std::string> free_vars(const Formula& f);
// All variable names occurring anywhere, bound or free.
std::set<std::string> all_vars(const Formula& f);
bool occurs_free(const Formula& f, std::string_view var);

// Replaces the free occurrences of `var` by `term`. Throws CaptureViolation
// when `term` is not free for `var` in `f`.
Formula subst_term(const Formula& f, const std::string& var,
                   const std::string& term);
// Simultaneous version of subst_term.
Formula subst_terms(const Formula& f,
                    const std::map<std::string, std::string>& sigma);
// Convenience pass that alpha-renames binders instead of failing. Never used
// by the kernel.
Formula subst_term_renaming(const Formula& f, const std::string& var,
                            const std::string& term);

// Atoms (name, sort, arity) occurring in f.
Signature atoms_of(const Formula& f);
bool has_quantifiers(const Formula& f);
bool has_meta(const Formula& f);

// Flips the sort of every atom, exchanging bot and 0. Connectives are kept.
// Only meaningful on formulas free of ?, !, box and nabla.
Formula flip_sorts(const Formula& f);

}  // namespace qhc

template <>
struct std::hash<qhc::Formula> {
  std::size_t operator()(const qhc::Formula& f) const noexcept {
    return f.hash();
  }
};
