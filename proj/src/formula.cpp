#include "qhc/formula.hpp"

#include <algorithm>
#include <utility>

namespace qhc {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::UndeclaredAtom: return "UndeclaredAtom";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::SortClash: return "SortClash";
    case ErrorCode::CaptureViolation: return "CaptureViolation";
    case ErrorCode::UnboundMetavariable: return "UnboundMetavariable";
    case ErrorCode::UnknownCalculus: return "UnknownCalculus";
    case ErrorCode::UnknownAtom: return "UnknownAtom";
    case ErrorCode::NonPropositionalInput: return "NonPropositionalInput";
    case ErrorCode::CyclicLemmaDependency: return "CyclicLemmaDependency";
    case ErrorCode::DuplicateDeclaration: return "DuplicateDeclaration";
    case ErrorCode::Io: return "IoError";
  }
  return "Error";
}

std::string_view sort_name(Sort s) {
  return s == Sort::Problem ? "problem" : "proposition";
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

const std::vector<std::string> kNoArgs;
const std::string kNoName;
const Formula kNullFormula;

}  // namespace

Formula Formula::make(Node n) {
  std::size_t h = mix(static_cast<std::size_t>(n.op),
                      static_cast<std::size_t>(n.sort));
  h = mix(h, std::hash<std::string>{}(n.name));
  for (const auto& a : n.args) h = mix(h, std::hash<std::string>{}(a));
  if (n.lhs) {
    h = mix(h, n.lhs.hash());
    n.size += n.lhs.size();
  }
  if (n.rhs) {
    h = mix(h, n.rhs.hash());
    n.size += n.rhs.size();
  }
  n.hash = h;
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::atom(std::string name, Sort sort,
                      std::vector<std::string> args) {
  return make(Node{Op::Atom, sort, std::move(name), std::move(args), {}, {}});
}

Formula Formula::meta(std::string name, Sort sort,
                      std::vector<std::string> args) {
  return make(Node{Op::Meta, sort, std::move(name), std::move(args), {}, {}});
}

Formula Formula::bot() { return make(Node{Op::FalseI, Sort::Problem, {}, {}, {}, {}}); }
Formula Formula::zero() {
  return make(Node{Op::FalseC, Sort::Proposition, {}, {}, {}, {}});
}

Formula Formula::conj(Formula a, Formula b) {
  Sort s = a.sort();
  return make(Node{Op::And, s, {}, {}, std::move(a), std::move(b)});
}
Formula Formula::disj(Formula a, Formula b) {
  Sort s = a.sort();
  return make(Node{Op::Or, s, {}, {}, std::move(a), std::move(b)});
}
Formula Formula::imp(Formula a, Formula b) {
  Sort s = a.sort();
  return make(Node{Op::Imp, s, {}, {}, std::move(a), std::move(b)});
}
Formula Formula::forall(std::string var, Formula body) {
  Sort s = body.sort();
  return make(Node{Op::Forall, s, std::move(var), {}, std::move(body), {}});
}
Formula Formula::exists(std::string var, Formula body) {
  Sort s = body.sort();
  return make(Node{Op::Exists, s, std::move(var), {}, std::move(body), {}});
}
Formula Formula::wn(Formula a) {
  return make(Node{Op::Wn, Sort::Proposition, {}, {}, std::move(a), {}});
}
Formula Formula::oc(Formula a) {
  return make(Node{Op::Oc, Sort::Problem, {}, {}, std::move(a), {}});
}
Formula Formula::box(Formula a) {
  return make(Node{Op::Box, Sort::Proposition, {}, {}, std::move(a), {}});
}
Formula Formula::nabla(Formula a) {
  return make(Node{Op::Nabla, Sort::Problem, {}, {}, std::move(a), {}});
}

Formula Formula::falsity(Sort s) {
  return s == Sort::Problem ? bot() : zero();
}
Formula Formula::neg(Formula a) {
  Sort s = a.sort();
  return imp(std::move(a), falsity(s));
}
Formula Formula::iff(Formula a, Formula b) {
  return conj(imp(a, b), imp(b, a));
}
Formula Formula::truth(Sort s) { return neg(falsity(s)); }
Formula Formula::dia(Formula a) { return neg(box(neg(std::move(a)))); }

Op Formula::op() const { return node_->op; }
Sort Formula::sort() const { return node_->sort; }
const std::string& Formula::name() const {
  return node_ ? node_->name : kNoName;
}
const std::vector<std::string>& Formula::args() const {
  return node_ ? node_->args : kNoArgs;
}
const Formula& Formula::left() const { return node_ ? node_->lhs : kNullFormula; }
const Formula& Formula::right() const { return node_ ? node_->rhs : kNullFormula; }

bool Formula::is_binary() const {
  Op o = op();
  return o == Op::And || o == Op::Or || o == Op::Imp;
}
bool Formula::is_unary() const {
  Op o = op();
  return o == Op::Wn || o == Op::Oc || o == Op::Box || o == Op::Nabla;
}
bool Formula::is_quantifier() const {
  return op() == Op::Forall || op() == Op::Exists;
}
bool Formula::is_leaf() const {
  Op o = op();
  return o == Op::Atom || o == Op::Meta || o == Op::FalseI || o == Op::FalseC;
}

std::size_t Formula::hash() const { return node_ ? node_->hash : 0; }
std::size_t Formula::size() const { return node_ ? node_->size : 0; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  if (x.hash != y.hash || x.op != y.op || x.sort != y.sort ||
      x.size != y.size || x.name != y.name || x.args != y.args) {
    return false;
  }
  return x.lhs == y.lhs && x.rhs == y.rhs;
}

bool operator<(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return false;
  if (!a.node_) return true;
  if (!b.node_) return false;
  const Node& x = *a.node_;
  const Node& y = *b.node_;
  if (x.op != y.op) return x.op < y.op;
  if (x.sort != y.sort) return x.sort < y.sort;
  if (x.name != y.name) return x.name < y.name;
  if (x.args != y.args) return x.args < y.args;
  if (x.lhs != y.lhs) return x.lhs < y.lhs;
  return x.rhs < y.rhs;
}

Formula rebuild(const Formula& f, Formula lhs, Formula rhs) {
  switch (f.op()) {
    case Op::And: return Formula::conj(std::move(lhs), std::move(rhs));
    case Op::Or: return Formula::disj(std::move(lhs), std::move(rhs));
    case Op::Imp: return Formula::imp(std::move(lhs), std::move(rhs));
    case Op::Forall: return Formula::forall(f.name(), std::move(lhs));
    case Op::Exists: return Formula::exists(f.name(), std::move(lhs));
    case Op::Wn: return Formula::wn(std::move(lhs));
    case Op::Oc: return Formula::oc(std::move(lhs));
    case Op::Box: return Formula::box(std::move(lhs));
    case Op::Nabla: return Formula::nabla(std::move(lhs));
    default: return f;
  }
}

bool is_negation(const Formula& f) {
  if (f.op() != Op::Imp) return false;
  Op r = f.right().op();
  return r == Op::FalseI || r == Op::FalseC;
}

bool is_iff(const Formula& f) {
  if (f.op() != Op::And) return false;
  const Formula& l = f.left();
  const Formula& r = f.right();
  return l.op() == Op::Imp && r.op() == Op::Imp && l.left() == r.right() &&
         l.right() == r.left();
}

// ---------------------------------------------------------------------------
// Signature

void Signature::declare(const AtomDecl& decl) {
  if (const AtomDecl* old = find(decl.name)) {
    if (*old == decl) return;
    throw Error(ErrorCode::DuplicateDeclaration,
                "atom '" + decl.name + "' declared twice with different sort or arity");
  }
  if (decl.arity < 0) {
    throw Error(ErrorCode::ArityMismatch, "negative arity for '" + decl.name + "'");
  }
  atoms_.push_back(decl);
}

const AtomDecl* Signature::find(std::string_view name) const {
  for (const auto& a : atoms_) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

void Signature::merge(const Signature& other) {
  for (const auto& a : other.atoms_) declare(a);
}

Signature Signature::flipped() const {
  Signature out;
  for (const auto& a : atoms_) out.declare(a.name, flip(a.sort), a.arity);
  return out;
}

// ---------------------------------------------------------------------------
// Typing

namespace {

[[noreturn]] void clash(const std::string& msg) {
  throw Error(ErrorCode::SortClash, msg);
}

Sort check_impl(const Formula& f, const Signature* sig) {
  switch (f.op()) {
    case Op::Atom: {
      if (sig) {
        const AtomDecl* d = sig->find(f.name());
        if (!d) {
          throw Error(ErrorCode::UndeclaredAtom, "undeclared atom '" + f.name() + "'");
        }
        if (d->arity != static_cast<int>(f.args().size())) {
          throw Error(ErrorCode::ArityMismatch,
                      "atom '" + f.name() + "' expects " + std::to_string(d->arity) +
                          " argument(s), got " + std::to_string(f.args().size()));
        }
        if (d->sort != f.sort()) {
          clash("atom '" + f.name() + "' is declared as a " +
                std::string(sort_name(d->sort)));
        }
      }
      return f.sort();
    }
    case Op::Meta:
      if (sig) clash("schematic metavariable '" + f.name() + "' in a formula");
      return f.sort();
    case Op::FalseI: return Sort::Problem;
    case Op::FalseC: return Sort::Proposition;
    case Op::And:
    case Op::Or:
    case Op::Imp: {
      Sort a = check_impl(f.left(), sig);
      Sort b = check_impl(f.right(), sig);
      if (a != b) clash("binary connective applied to a problem and a proposition");
      return a;
    }
    case Op::Forall:
    case Op::Exists: return check_impl(f.body(), sig);
    case Op::Wn:
      if (check_impl(f.body(), sig) != Sort::Problem) clash("'?' applied to a proposition");
      return Sort::Proposition;
    case Op::Oc:
      if (check_impl(f.body(), sig) != Sort::Proposition) clash("'!' applied to a problem");
      return Sort::Problem;
    case Op::Box:
      if (check_impl(f.body(), sig) != Sort::Proposition) clash("'box' applied to a problem");
      return Sort::Proposition;
    case Op::Nabla:
      if (check_impl(f.body(), sig) != Sort::Problem) clash("'nabla' applied to a proposition");
      return Sort::Problem;
  }
  clash("unknown node");
}

void free_vars_impl(const Formula& f, std::set<std::string>& bound,
                    std::set<std::string>& out) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Meta:
      for (const auto& a : f.args()) {
        if (!bound.count(a)) out.insert(a);
      }
      return;
    case Op::Forall:
    case Op::Exists: {
      bool fresh = bound.insert(f.name()).second;
      free_vars_impl(f.body(), bound, out);
      if (fresh) bound.erase(f.name());
      return;
    }
    default:
      if (f.left()) free_vars_impl(f.left(), bound, out);
      if (f.right()) free_vars_impl(f.right(), bound, out);
  }
}

void all_vars_impl(const Formula& f, std::set<std::string>& out) {
  if (f.op() == Op::Atom || f.op() == Op::Meta) {
    out.insert(f.args().begin(), f.args().end());
    return;
  }
  if (f.is_quantifier()) out.insert(f.name());
  if (f.left()) all_vars_impl(f.left(), out);
  if (f.right()) all_vars_impl(f.right(), out);
}

Formula subst_impl(const Formula& f, const std::map<std::string, std::string>& sigma) {
  if (sigma.empty()) return f;
  switch (f.op()) {
    case Op::Atom:
    case Op::Meta: {
      bool changed = false;
      std::vector<std::string> args = f.args();
      for (auto& a : args) {
        auto it = sigma.find(a);
        if (it != sigma.end()) {
          a = it->second;
          changed = true;
        }
      }
      if (!changed) return f;
      return f.op() == Op::Atom ? Formula::atom(f.name(), f.sort(), std::move(args))
                                : Formula::meta(f.name(), f.sort(), std::move(args));
    }
    case Op::Forall:
    case Op::Exists: {
      const std::string& x = f.name();
      std::map<std::string, std::string> inner = sigma;
      inner.erase(x);
      for (const auto& [v, t] : inner) {
        if (t == x && occurs_free(f.body(), v)) {
          throw Error(ErrorCode::CaptureViolation,
                      "'" + t + "' is not free for '" + v + "': captured by a quantifier on '" +
                          x + "'");
        }
      }
      Formula b = subst_impl(f.body(), inner);
      return b == f.body() ? f : rebuild(f, std::move(b));
    }
    case Op::FalseI:
    case Op::FalseC: return f;
    default: {
      Formula l = subst_impl(f.left(), sigma);
      Formula r = f.right() ? subst_impl(f.right(), sigma) : Formula{};
      if (l == f.left() && r == f.right()) return f;
      return rebuild(f, std::move(l), std::move(r));
    }
  }
}

std::string fresh_var(const std::string& base, const std::set<std::string>& avoid) {
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

void atoms_impl(const Formula& f, Signature& sig) {
  if (f.op() == Op::Atom) {
    sig.declare(f.name(), f.sort(), static_cast<int>(f.args().size()));
    return;
  }
  if (f.left()) atoms_impl(f.left(), sig);
  if (f.right()) atoms_impl(f.right(), sig);
}

}  // namespace

Sort typecheck(const Formula& f, const Signature& sig) { return check_impl(f, &sig); }
Sort check_sorts(const Formula& f) { return check_impl(f, nullptr); }

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  free_vars_impl(f, bound, out);
  return out;
}

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out;
  all_vars_impl(f, out);
  return out;
}

bool occurs_free(const Formula& f, std::string_view var) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Meta:
      return std::find(f.args().begin(), f.args().end(), var) != f.args().end();
    case Op::Forall:
    case Op::Exists:
      return f.name() != var && occurs_free(f.body(), var);
    default:
      return (f.left() && occurs_free(f.left(), var)) ||
             (f.right() && occurs_free(f.right(), var));
  }
}

Formula subst_term(const Formula& f, const std::string& var, const std::string& term) {
  if (var == term) return f;
  return subst_impl(f, {{var, term}});
}

Formula subst_terms(const Formula& f, const std::map<std::string, std::string>& sigma) {
  std::map<std::string, std::string> s;
  for (const auto& [v, t] : sigma) {
    if (v != t) s.emplace(v, t);
  }
  return subst_impl(f, s);
}

Formula subst_term_renaming(const Formula& f, const std::string& var,
                            const std::string& term) {
  if (var == term) return f;
  switch (f.op()) {
    case Op::Atom:
    case Op::Meta: return subst_term(f, var, term);
    case Op::Forall:
    case Op::Exists: {
      if (f.name() == var) return f;
      if (f.name() == term && occurs_free(f.body(), var)) {
        std::set<std::string> avoid = all_vars(f.body());
        avoid.insert(var);
        avoid.insert(term);
        std::string y = fresh_var(f.name(), avoid);
        Formula b = subst_term_renaming(subst_term(f.body(), f.name(), y), var, term);
        return f.op() == Op::Forall ? Formula::forall(y, b) : Formula::exists(y, b);
      }
      return rebuild(f, subst_term_renaming(f.body(), var, term));
    }
    case Op::FalseI:
    case Op::FalseC: return f;
    default:
      return rebuild(f, subst_term_renaming(f.left(), var, term),
                     f.right() ? subst_term_renaming(f.right(), var, term) : Formula{});
  }
}

Signature atoms_of(const Formula& f) {
  Signature sig;
  atoms_impl(f, sig);
  return sig;
}

bool has_quantifiers(const Formula& f) {
  if (f.is_quantifier()) return true;
  return (f.left() && has_quantifiers(f.left())) || (f.right() && has_quantifiers(f.right()));
}

bool has_meta(const Formula& f) {
  if (f.op() == Op::Meta) return true;
  return (f.left() && has_meta(f.left())) || (f.right() && has_meta(f.right()));
}

Formula flip_sorts(const Formula& f) {
  switch (f.op()) {
    case Op::Atom: return Formula::atom(f.name(), flip(f.sort()), f.args());
    case Op::Meta: return Formula::meta(f.name(), flip(f.sort()), f.args());
    case Op::FalseI: return Formula::zero();
    case Op::FalseC: return Formula::bot();
    case Op::Wn:
    case Op::Oc:
    case Op::Box:
    case Op::Nabla:
      throw Error(ErrorCode::SortClash, "cannot flip the sorts of a modal formula");
    default:
      return rebuild(f, flip_sorts(f.left()), f.right() ? flip_sorts(f.right()) : Formula{});
  }
}

}  // namespace qhc
