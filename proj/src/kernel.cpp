#include "qhc/kernel.hpp"

#include <algorithm>
#include <map>

#include "qhc/syntax.hpp"

namespace qhc {

Formula to_schema(const Formula& f, const Signature& atoms) {
  switch (f.op()) {
    case Op::Atom:
      return atoms.contains(f.name()) ? Formula::meta(f.name(), f.sort(), f.args()) : f;
    case Op::Meta:
    case Op::FalseI:
    case Op::FalseC: return f;
    default: {
      Formula l = to_schema(f.left(), atoms);
      Formula r = f.right() ? to_schema(f.right(), atoms) : Formula{};
      if (l == f.left() && r == f.right()) return f;
      return rebuild(f, std::move(l), std::move(r));
    }
  }
}

namespace {

struct Rejection {
  std::string reason;
};

[[noreturn]] void reject(const std::string& reason) { throw Rejection{reason}; }

std::vector<BindingItem> binding_items(const Binding& b) {
  std::vector<BindingItem> out;
  for (const auto& [name, mb] : b.metas) out.push_back({name, mb.params, print(mb.body)});
  for (const auto& [v, img] : b.vars) {
    if (v != img) out.push_back({v, {}, img});
  }
  return out;
}

void collect_binding_vars(const Binding& b, std::set<std::string>& out) {
  for (const auto& [name, mb] : b.metas) {
    out.insert(mb.params.begin(), mb.params.end());
    auto vs = all_vars(mb.body);
    out.insert(vs.begin(), vs.end());
  }
  for (const auto& [v, img] : b.vars) {
    out.insert(v);
    out.insert(img);
  }
}

Signature statement_atoms(const Theorem& t) {
  Signature s = atoms_of(t.goal);
  for (const auto& h : t.hyps) s.merge(atoms_of(h));
  return s;
}

std::set<std::string> schema_vars(const Inference& v) {
  std::set<std::string> out = all_vars(v.conclusion);
  for (const auto& p : v.premises) {
    auto vs = all_vars(p);
    out.insert(vs.begin(), vs.end());
  }
  return out;
}

// Reads binding items against the metavariables `metas`; other names must be
// variables of the schema.
Binding resolve_binding(const std::vector<BindingItem>& items, const Signature& metas,
                        const std::set<std::string>& vars, const Signature& sig) {
  Binding b;
  for (const auto& it : items) {
    if (const AtomDecl* d = metas.find(it.name)) {
      if (static_cast<int>(it.params.size()) != d->arity) {
        reject("'" + it.name + "' takes " + std::to_string(d->arity) + " parameter(s)");
      }
      Formula body = parse_formula(it.rhs, sig);
      if (body.sort() != d->sort) {
        reject("'" + it.name + "' is a " + std::string(sort_name(d->sort)) + ", bound to a " +
               std::string(sort_name(body.sort())));
      }
      b.metas[it.name] = MetaBinding{it.params, body};
    } else if (vars.count(it.name)) {
      std::vector<Token> toks = tokenize(it.rhs);
      if (!it.params.empty() || toks.size() != 2 || toks[0].kind != Token::Kind::Ident ||
          is_keyword(toks[0].text)) {
        reject("variable '" + it.name + "' must be bound to a variable");
      }
      b.vars[it.name] = toks[0].text;
    } else {
      reject("'" + it.name + "' is neither a metavariable nor a variable of the schema");
    }
  }
  return b;
}

class Checker {
 public:
  Checker(const Proof& p, const CalculusTable& table, const LemmaLookup* lemmas,
          const CheckOptions& opts)
      : p_(p), table_(table), calc_(table.get(p.calculus)), lemmas_(lemmas), opts_(opts) {}

  CheckResult run() {
    CheckResult res;
    std::size_t current = 0;
    try {
      for (const auto& h : p_.hyps) {
        admit(h);
        auto fv = free_vars(h);
        hyp_free_.insert(fv.begin(), fv.end());
        th_.vars.insert(fv.begin(), fv.end());
        auto av = all_vars(h);
        th_.vars.insert(av.begin(), av.end());
      }
      if (p_.goal) admit(p_.goal);
      if (p_.lines.empty()) reject("the proof has no lines");
      th_.proof = p_;
      for (current = 0; current < p_.lines.size(); ++current) line(current);
      current = p_.lines.size() - 1;
      if (p_.goal && fs_.back() != p_.goal) reject("the last line is not the goal");
    } catch (const Rejection& r) {
      res.failing_line = current < p_.lines.size() ? p_.lines[current].number : 0;
      res.reason = r.reason;
      return res;
    } catch (const Error& e) {
      res.failing_line = current < p_.lines.size() ? p_.lines[current].number : 0;
      res.reason = std::string(error_code_name(e.code())) + ": " + e.what();
      return res;
    }
    th_.id = p_.id;
    th_.calculus = p_.calculus;
    th_.sig = p_.sig;
    th_.hyps = p_.hyps;
    th_.goal = fs_.back();
    th_.proof.goal = th_.goal;
    res.accepted = true;
    res.theorem = std::move(th_);
    return res;
  }

 private:
  void admit(const Formula& f) {
    typecheck(f, p_.sig);
    if (auto why = language_violation(f, calc_.language)) reject(*why + " of " + calc_.name);
  }

  void use(const std::string& name) {
    if (opts_.allowed && !opts_.allowed->count(name)) {
      reject("'" + name + "' is outside the permitted axioms and rules");
    }
    th_.uses.insert(name);
  }

  const Formula& ref(int n, std::size_t here) const {
    if (n < 1 || static_cast<std::size_t>(n) > here) {
      reject("line " + std::to_string(n) + " is not an earlier line");
    }
    return fs_[static_cast<std::size_t>(n) - 1];
  }

  void line(std::size_t i) {
    const ProofLine& pl = p_.lines[i];
    const Justification& j = pl.just;
    Formula f;
    Binding b;
    const Theorem* cited = nullptr;
    switch (j.kind) {
      case Justification::Kind::Hyp: {
        int k = j.refs.at(0);
        if (k < 1 || static_cast<std::size_t>(k) > p_.hyps.size()) {
          reject("there is no hypothesis " + std::to_string(k));
        }
        f = p_.hyps[static_cast<std::size_t>(k) - 1];
        break;
      }
      case Justification::Kind::MP: {
        const Formula& imp = ref(j.refs.at(0), i);
        const Formula& ante = ref(j.refs.at(1), i);
        if (imp.op() != Op::Imp) reject("line " + std::to_string(j.refs[0]) + " is not an implication");
        if (imp.left() != ante) {
          reject("the antecedent of line " + std::to_string(j.refs[0]) + " is not line " +
                 std::to_string(j.refs[1]));
        }
        f = imp.right();
        break;
      }
      case Justification::Kind::Gen: {
        const Formula& body = ref(j.refs.at(0), i);
        if (hyp_free_.count(j.var)) {
          reject("cannot generalize on '" + j.var + "', which is free in a hypothesis");
        }
        f = Formula::forall(j.var, body);
        th_.gen_vars.insert(j.var);
        th_.vars.insert(j.var);
        break;
      }
      case Justification::Kind::Axiom:
      case Justification::Kind::Rule: {
        bool axiom = j.kind == Justification::Kind::Axiom;
        const RuleSchema* rs = axiom ? calc_.find_axiom(j.name) : calc_.find_rule(j.name);
        if (!rs) reject(std::string(axiom ? "axiom" : "rule") + " '" + j.name + "' is not in " + calc_.name);
        use(j.name);
        f = schema_step(*rs, pl, i, b);
        break;
      }
      case Justification::Kind::Lemma:
        f = lemma_step(pl, i, b, cited);
        break;
    }
    if (pl.formula && pl.formula != f) {
      reject("the line does not follow: justification yields " + print(f));
    }
    admit(f);
    auto av = all_vars(f);
    th_.vars.insert(av.begin(), av.end());
    collect_binding_vars(b, th_.vars);
    fs_.push_back(f);
    ProofLine& out = th_.proof.lines[i];
    out.formula = f;
    if (j.kind == Justification::Kind::Axiom || j.kind == Justification::Kind::Rule ||
        j.kind == Justification::Kind::Lemma) {
      out.just.binding = binding_items(b);
    }
    th_.bindings.push_back(std::move(b));
    th_.cited.push_back(cited);
  }

  Formula schema_step(const RuleSchema& rs, const ProofLine& pl, std::size_t i, Binding& out) {
    const Justification& j = pl.just;
    std::string why = "no variant of '" + rs.name + "' applies";
    for (const auto& v : rs.variants) {
      if (v.premises.size() != j.refs.size()) {
        why = "'" + rs.name + "' takes " + std::to_string(v.premises.size()) + " premise(s)";
        continue;
      }
      try {
        Binding seed = resolve_binding(j.binding, v.metas, schema_vars(v), p_.sig);
        Matcher m(seed);
        bool shape = true;
        for (std::size_t k = 0; k < v.premises.size(); ++k) {
          shape = shape && m.add(v.premises[k], ref(j.refs[k], i));
        }
        if (pl.formula) shape = shape && m.add(v.conclusion, pl.formula);
        std::optional<Binding> b = shape ? m.finish() : std::nullopt;
        // The matcher only proposes; the instance is recomputed here.
        Binding chosen = b ? *b : seed;
        for (std::size_t k = 0; k < v.premises.size(); ++k) {
          if (instantiate(v.premises[k], chosen) != ref(j.refs[k], i)) {
            reject("premise " + std::to_string(k + 1) + " does not match line " +
                   std::to_string(j.refs[k]));
          }
        }
        Formula f = instantiate(v.conclusion, chosen);
        if (pl.formula && f != pl.formula) reject("'" + rs.name + "' yields " + print(f));
        out = std::move(chosen);
        return f;
      } catch (const Rejection& r) {
        why = r.reason;
      } catch (const Error& e) {
        why = std::string(error_code_name(e.code())) + ": " + e.what();
      }
    }
    reject(why);
  }

  Formula lemma_step(const ProofLine& pl, std::size_t i, Binding& out, const Theorem*& cited) {
    const Justification& j = pl.just;
    std::vector<const Theorem*> variants;
    if (lemmas_) variants = lemmas_->lemma(j.name);
    if (variants.empty()) reject("unknown lemma '" + j.name + "'");
    std::string why;
    for (const Theorem* t : variants) {
      try {
        if (!table_.contains(t->calculus) || !calc_.includes(table_.get(t->calculus))) {
          reject("lemma '" + j.name + "' is proved in " + t->calculus + ", not included in " +
                 calc_.name);
        }
        if (opts_.allowed) {
          for (const auto& u : t->uses) {
            if (!opts_.allowed->count(u)) reject("lemma '" + j.name + "' uses '" + u + "'");
          }
        }
        if (t->hyps.size() != j.refs.size()) {
          reject("lemma '" + j.name + "' takes " + std::to_string(t->hyps.size()) + " premise(s)");
        }
        Signature atoms = statement_atoms(*t);
        std::vector<Formula> hyp_schemas;
        for (const auto& h : t->hyps) hyp_schemas.push_back(to_schema(h, atoms));
        Formula goal_schema = to_schema(t->goal, atoms);
        Binding seed = resolve_binding(j.binding, atoms, t->vars, p_.sig);
        Matcher m(seed);
        bool shape = true;
        for (std::size_t k = 0; k < hyp_schemas.size(); ++k) {
          shape = shape && m.add(hyp_schemas[k], ref(j.refs[k], i));
        }
        if (pl.formula) shape = shape && m.add(goal_schema, pl.formula);
        std::optional<Binding> b = shape ? m.finish() : std::nullopt;
        Binding chosen = b ? *b : seed;

        // Side conditions for replaying the lemma proof under `chosen`.
        auto rho = [&](const std::string& v) {
          auto it = chosen.vars.find(v);
          return it == chosen.vars.end() ? v : it->second;
        };
        std::set<std::string> renamed;
        for (const auto& v : t->vars) {
          if (!renamed.insert(rho(v)).second) {
            reject("the renaming of lemma variables is not injective at '" + rho(v) + "'");
          }
        }
        for (const auto& [name, mb] : chosen.metas) {
          std::set<std::string> params(mb.params.begin(), mb.params.end());
          for (const auto& v : all_vars(mb.body)) {
            if (!params.count(v) && renamed.count(v)) {
              reject("variable '" + v + "' in the value of '" + name +
                     "' also occurs in the proof of lemma '" + j.name + "'");
            }
          }
        }
        for (const auto& g : t->gen_vars) {
          if (hyp_free_.count(rho(g))) {
            reject("lemma '" + j.name + "' generalizes on '" + rho(g) +
                   "', which is free in a hypothesis");
          }
        }
        for (std::size_t k = 0; k < hyp_schemas.size(); ++k) {
          if (instantiate(hyp_schemas[k], chosen) != ref(j.refs[k], i)) {
            reject("premise " + std::to_string(k + 1) + " of lemma '" + j.name +
                   "' does not match line " + std::to_string(j.refs[k]));
          }
        }
        Formula f = instantiate(goal_schema, chosen);
        if (pl.formula && f != pl.formula) {
          reject("lemma '" + j.name + "' yields " + print(f));
        }
        th_.vars.insert(renamed.begin(), renamed.end());
        for (const auto& g : t->gen_vars) th_.gen_vars.insert(rho(g));
        for (const auto& u : t->uses) th_.uses.insert(u);
        cited = t;
        out = std::move(chosen);
        return f;
      } catch (const Rejection& r) {
        why = r.reason;
      } catch (const Error& e) {
        why = std::string(error_code_name(e.code())) + ": " + e.what();
      }
    }
    reject(why);
  }

  const Proof& p_;
  const CalculusTable& table_;
  const Calculus& calc_;
  const LemmaLookup* lemmas_;
  const CheckOptions& opts_;
  Theorem th_;
  std::vector<Formula> fs_;
  std::set<std::string> hyp_free_;
};

}  // namespace

CheckResult check(const Proof& proof, const CalculusTable& calculi, const LemmaLookup* lemmas,
                  const CheckOptions& opts) {
  try {
    return Checker(proof, calculi, lemmas, opts).run();
  } catch (const Error& e) {
    CheckResult r;
    r.reason = std::string(error_code_name(e.code())) + ": " + e.what();
    return r;
  }
}

CheckResult check_derived_rule(const std::vector<Formula>& premises, const Formula& conclusion,
                               Proof proof, const CalculusTable& calculi,
                               const LemmaLookup* lemmas, const CheckOptions& opts) {
  proof.hyps = premises;
  proof.goal = conclusion;
  return check(proof, calculi, lemmas, opts);
}

// ---------------------------------------------------------------------------
// Lemma splicing

namespace {

struct FlatLine {
  Formula f;
  Justification just;  // binding items unused
  Binding b;
};

struct Flat {
  std::vector<FlatLine> lines;
  Signature sig;
};

Binding substitute_binding(const Binding& inner, const Signature& atoms, const Binding& outer) {
  auto rho = [&](const std::string& v) {
    auto it = outer.vars.find(v);
    return it == outer.vars.end() ? v : it->second;
  };
  Binding b;
  for (const auto& [name, mb] : inner.metas) {
    MetaBinding m;
    for (const auto& p : mb.params) m.params.push_back(rho(p));
    m.body = instantiate(to_schema(mb.body, atoms), outer);
    b.metas[name] = std::move(m);
  }
  for (const auto& [v, img] : inner.vars) b.vars[v] = rho(img);
  return b;
}

Flat flatten(const Theorem& t) {
  Flat out;
  out.sig = t.sig;
  std::vector<int> map(t.proof.lines.size() + 1, 0);
  for (std::size_t i = 0; i < t.proof.lines.size(); ++i) {
    const ProofLine& pl = t.proof.lines[i];
    auto remap = [&](std::vector<int> refs) {
      for (int& r : refs) r = map[static_cast<std::size_t>(r)];
      return refs;
    };
    if (pl.just.kind != Justification::Kind::Lemma) {
      FlatLine fl{pl.formula, pl.just, t.bindings[i]};
      fl.just.binding.clear();
      if (fl.just.kind != Justification::Kind::Hyp) fl.just.refs = remap(fl.just.refs);
      out.lines.push_back(std::move(fl));
      map[i + 1] = static_cast<int>(out.lines.size());
      continue;
    }
    const Theorem& lem = *t.cited[i];
    const Binding& outer = t.bindings[i];
    Signature atoms = statement_atoms(lem);
    Flat sub = flatten(lem);
    for (const auto& a : sub.sig.atoms()) {
      if (!atoms.contains(a.name) && !out.sig.contains(a.name)) out.sig.declare(a);
    }
    std::vector<int> premises = remap(pl.just.refs);
    auto rho = [&](const std::string& v) {
      auto it = outer.vars.find(v);
      return it == outer.vars.end() ? v : it->second;
    };
    std::vector<int> sub_map(sub.lines.size() + 1, 0);
    int last = 0;
    for (std::size_t k = 0; k < sub.lines.size(); ++k) {
      const FlatLine& sl = sub.lines[k];
      if (sl.just.kind == Justification::Kind::Hyp) {
        last = premises.at(static_cast<std::size_t>(sl.just.refs[0]) - 1);
        sub_map[k + 1] = last;
        continue;
      }
      FlatLine fl;
      fl.f = instantiate(to_schema(sl.f, atoms), outer);
      fl.just = sl.just;
      for (int& r : fl.just.refs) r = sub_map[static_cast<std::size_t>(r)];
      if (fl.just.kind == Justification::Kind::Gen) fl.just.var = rho(fl.just.var);
      fl.b = substitute_binding(sl.b, atoms, outer);
      out.lines.push_back(std::move(fl));
      last = static_cast<int>(out.lines.size());
      sub_map[k + 1] = last;
    }
    map[i + 1] = last;
  }
  return out;
}

}  // namespace

Proof inline_lemmas(const Theorem& t) {
  Flat flat = flatten(t);
  Proof p;
  p.id = t.id;
  p.title = t.proof.title;
  p.calculus = t.calculus;
  p.sig = flat.sig;
  p.hyps = t.hyps;
  p.goal = t.goal;
  for (std::size_t i = 0; i < flat.lines.size(); ++i) {
    ProofLine pl;
    pl.number = static_cast<int>(i) + 1;
    pl.formula = flat.lines[i].f;
    pl.just = flat.lines[i].just;
    if (pl.just.kind == Justification::Kind::Axiom || pl.just.kind == Justification::Kind::Rule) {
      pl.just.binding = binding_items(flat.lines[i].b);
    }
    p.lines.push_back(std::move(pl));
  }
  return p;
}

Proof flip_proof(const Theorem& t) {
  Proof p = t.proof;
  p.calculus = t.calculus == "QH" ? "QC" : t.calculus == "QC" ? "QH" : t.calculus;
  p.sig = t.sig.flipped();
  for (auto& h : p.hyps) h = flip_sorts(h);
  if (p.goal) p.goal = flip_sorts(p.goal);
  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    ProofLine& pl = p.lines[i];
    pl.formula = flip_sorts(pl.formula);
    Binding b = t.bindings[i];
    for (auto& [name, mb] : b.metas) mb.body = flip_sorts(mb.body);
    if (!pl.just.binding.empty()) pl.just.binding = binding_items(b);
  }
  return p;
}

}  // namespace qhc
