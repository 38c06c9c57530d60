#pragma once

// Schemata are formulas whose Meta nodes stand for arbitrary formulas of a
// fixed sort. A metavariable applied to variables, A(x), stands for a formula
// with the parameter slot filled by x.
//
// Side conditions are never written down. instantiate() rejects exactly the
// instances in which some variable would change its binder:
//   * the image of a schema variable must resolve to the binder it resolved
//     to in the schema (so "t is free for x in A(x)");
//   * a free variable of a metavariable's value, other than its parameters,
//     must not fall under a schema binder ("x is not free in C").

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhc/formula.hpp"

namespace qhc {

struct MetaBinding {
  std::vector<std::string> params;
  Formula body;

  friend bool operator==(const MetaBinding&, const MetaBinding&) = default;
};

struct Binding {
  std::map<std::string, MetaBinding> metas;
  // Images of schema variables, bound or free; identity when absent.
  std::map<std::string, std::string> vars;

  friend bool operator==(const Binding&, const Binding&) = default;
};

struct Schema {
  Formula body;
  Signature metas;
};

// Throws UnboundMetavariable, ArityMismatch, SortClash or CaptureViolation.
Formula instantiate(const Formula& schema, const Binding& binding);
inline Formula instantiate(const Schema& s, const Binding& b) { return instantiate(s.body, b); }

// Infers a binding under which the schemata added so far instantiate to their
// targets. Untrusted: the result must be confirmed with instantiate().
class Matcher {
 public:
  explicit Matcher(Binding seed = {}) : b_(std::move(seed)) {}

  // False when the shapes disagree outright.
  bool add(const Formula& schema, const Formula& target);
  // Resolves deferred metavariable applications and confirms every pair.
  std::optional<Binding> finish();

 private:
  using Env = std::vector<std::pair<std::string, std::string>>;
  struct Deferred {
    Formula schema;
    Formula target;
    Env env;
  };

  bool go(const Formula& s, const Formula& t, Env& env);
  bool meta_app(const Formula& s, const Formula& t, const Env& env, bool final);
  std::optional<std::string> image(const std::string& v, const Env& env) const;

  Binding b_;
  std::vector<std::pair<Formula, Formula>> pairs_;
  std::vector<Deferred> deferred_;
};

std::optional<Binding> match(const Formula& schema, const Formula& target, Binding seed = {});

// "[A := f, B(x) := g, x := y]"
std::string print_binding(const Binding& b);

}  // namespace qhc
