// Acceptance criteria. Prints one PASS/FAIL line per criterion; exit status 1
// if any fails. Arguments select criteria by number (default: all).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qhc/corpus.hpp"
#include "qhc/semantics.hpp"
#include "qhc/syntax.hpp"
#include "qhc/translate.hpp"
#include "random_formula.hpp"
#include "s4_oracle.hpp"

using namespace qhc;

namespace {

const std::string kRoot = QHC_SOURCE_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(const std::string& why) {
    pass = false;
    if (failures.size() < 10) failures.push_back(why);
  }
  void require(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct LoadedCorpus {
  std::vector<Proof> proofs;
  Registry registry;
  CorpusReport report;
};

LoadedCorpus& corpus() {
  static LoadedCorpus c = [] {
    LoadedCorpus c;
    load_theories(c.registry.calculi(), kRoot + "/theories");
    c.proofs = load_corpus(kRoot + "/corpus");
    c.report = run_corpus(c.proofs, c.registry);
    return c;
  }();
  return c;
}

const Theorem* theorem(const std::string& id) {
  for (const Theorem* t : corpus().registry.lemma(id)) {
    if (!t->flipped) return t;
  }
  return nullptr;
}

Signature test_sig() { return parse_signature("prob a, b. prop p, q."); }

// ---------------------------------------------------------------------------

const char* const kRequired[] = {
    "galois.fwd", "galois.bwd",
    "sup-inf.a1", "sup-inf.a2", "sup-inf.a3", "sup-inf.a4", "sup-inf.b1", "sup-inf.b2",
    "box.1", "box.2", "box.3", "box.4", "box.star",
    "nabla.1", "nabla.2", "nabla.3", "nabla.4", "nabla.3rule", "nabla.star",
    "negneg-nabla.1", "negneg-nabla.2", "negneg-nabla.3", "negneg-nabla.4",
    "symmetry.wn_all", "symmetry.wn_and.fwd", "symmetry.wn_and.bwd", "symmetry.wn_ex.fwd",
    "symmetry.wn_ex.bwd", "symmetry.wn_or.fwd", "symmetry.wn_or.bwd", "symmetry.wn_bot",
    "symmetry.oc_and.fwd", "symmetry.oc_and.bwd", "symmetry.oc_or", "symmetry.oc_all.fwd",
    "symmetry.oc_all.bwd", "symmetry.oc_ex",
    "v-star.a.1", "v-star.a.2", "v-star.a.3", "v-star.b.1", "v-star.b.2", "v-star.b.3",
    "insolubility.fwd", "insolubility.bwd", "insolubility-2",
    "move-nabla.1", "move-nabla.2", "move-nabla.3", "move-nabla.4",
    "nabla-negneg1", "nabla-negneg1.obot",
    "move-box-diamond.box.fwd", "move-box-diamond.box.bwd", "move-box-diamond.nabla.fwd",
    "move-box-diamond.nabla.bwd",
    "move-oc-wn.a.fwd", "move-oc-wn.a.bwd", "move-oc-wn.b.1", "move-oc-wn.b.2", "move-oc-wn.b.3",
    "move-oc-wn.c.1", "move-oc-wn.c.2",
    "russel-prawitz.law", "russel-prawitz.converse", "russel-prawitz.and", "russel-prawitz.or",
    "russel-prawitz.ex",
    "mckinsey+gentzen.a.fwd", "mckinsey+gentzen.a.bwd", "mckinsey+gentzen.b.fwd",
    "mckinsey+gentzen.b.bwd", "mckinsey+gentzen.c.fwd", "mckinsey+gentzen.c.bwd",
    "mckinsey+gentzen.d.fwd", "mckinsey+gentzen.d.bwd", "mckinsey+gentzen.e.fwd",
    "mckinsey+gentzen.e.bwd", "mckinsey+gentzen.f.fwd", "mckinsey+gentzen.f.bwd",
    "goedel+kuroda.a.fwd", "goedel+kuroda.a.bwd", "goedel+kuroda.b.fwd", "goedel+kuroda.b.bwd",
    "goedel+kuroda.c.fwd", "goedel+kuroda.c.bwd", "goedel+kuroda.d.fwd", "goedel+kuroda.d.bwd",
    "goedel+kuroda.e.fwd", "goedel+kuroda.e.bwd",
    "worst.a.fwd", "worst.a.bwd", "worst.b.fwd", "worst.b.bwd", "worst.c.fwd", "worst.c.bwd",
    "worst.d.fwd", "worst.d.bwd",
    "stable-decidable.a1", "stable-decidable.a2", "stable-decidable.a3", "stable-decidable.a4",
    "stable-decidable.b1", "stable-decidable.b2", "stable-decidable.b3", "stable-decidable.b4",
    "stable-decidable2.a", "stable-decidable2.b.fwd", "stable-decidable2.b.bwd",
    "stable-decidable2.c.fwd", "stable-decidable2.c.bwd",
    "nabla-negneg2.fwd", "nabla-negneg2.bwd",
    "negation-commutes.a.fwd", "negation-commutes.a.bwd", "negation-commutes.b.fwd",
    "negation-commutes.b.bwd",
    "semi-stable-decidable.a.fwd", "semi-stable-decidable.a.bwd", "semi-stable-decidable.b.fwd",
    "semi-stable-decidable.b.bwd",
    "nabla-stable-decidable", "pushout-formula",
    "kolmogorov-implies-hilbert.a.fwd", "kolmogorov-implies-hilbert.a.bwd",
    "kolmogorov-implies-hilbert.b",
    "hilbert-kolmogorov.a.fwd", "hilbert-kolmogorov.a.bwd", "hilbert-kolmogorov.b.1to2",
    "hilbert-kolmogorov.b.2to1", "hilbert-kolmogorov.b.3to4", "hilbert-kolmogorov.b.4to3",
    "hilbert-kolmogorov.b.3tonneg", "hilbert-kolmogorov.b.nnegto3",
    "jankov.a", "jankov.a.rule", "jankov.b", "jankov.b.rule", "jankov.c.fwd.hnip",
    "jankov.c.fwd.edr", "jankov.c.bwd", "jankov.d.fwd.ksp", "jankov.d.fwd.edr", "jankov.d.bwd",
    "oc_top.converse",
};

Outcome corpus_completeness() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<Proof> proofs = load_corpus(kRoot + "/corpus");
  Registry reg;
  load_theories(reg.calculi(), kRoot + "/theories");
  CorpusReport r = run_corpus(proofs, reg);
  double s = seconds_since(t0);

  std::size_t accepted = 0;
  std::set<std::string> ok;
  for (const auto& e : r.entries) {
    if (e.accepted) {
      ++accepted;
      ok.insert(e.id);
    } else {
      o.fail(e.id + ": line " + std::to_string(e.failing_line) + ": " + e.reason);
    }
  }
  for (const char* id : kRequired) o.require(ok.count(id), std::string("required entry missing: ") + id);
  o.require(r.entries.size() >= 35, "fewer than 35 entries");
  o.require(s < 30, fmt("took %.1f s", s));
  o.detail = fmt("%zu/%zu accepted, %zu required ids present, %.2f s", accepted, r.entries.size(),
                 std::size(kRequired), s);
  return o;
}

// ---------------------------------------------------------------------------

Outcome minimal_system() {
  Outcome o;
  Calculus qhc = builtin("QHC");
  std::set<std::string> minimal;
  for (const auto& a : qhc.axioms) minimal.insert(a.name);
  for (const auto& r : qhc.rules) minimal.insert(r.name);
  for (const char* redundant : {"wn_and", "wn_or", "wn_all", "wn_ex", "wn_bot"}) {
    o.require(!minimal.count(redundant), std::string(redundant) + " is a QHC axiom");
  }

  CheckOptions opts{minimal};
  std::vector<Proof> proofs = load_corpus(kRoot + "/corpus");
  Registry reg;
  load_theories(reg.calculi(), kRoot + "/theories");
  const std::vector<std::string> laws = {
      "symmetry.wn_all",     "symmetry.wn_and.fwd", "symmetry.wn_and.bwd", "symmetry.wn_ex.fwd",
      "symmetry.wn_ex.bwd",  "symmetry.wn_or.fwd",  "symmetry.wn_or.bwd",  "symmetry.wn_bot"};
  CorpusReport r = run_corpus(proofs, reg, "symmetry.wn_*", opts);
  std::set<std::string> seen;
  for (const auto& e : r.entries) {
    seen.insert(e.id);
    o.require(e.accepted, e.id + " rejected in minimal mode: " + e.reason);
    for (const Theorem* t : reg.lemma(e.id)) {
      for (const auto& u : t->uses) o.require(minimal.count(u), e.id + " uses " + u);
    }
  }
  for (const auto& id : laws) o.require(seen.count(id), id + " not checked");

  // The mode must bite: a theory-calculus entry and a shrunken table.
  Registry reg2;
  load_theories(reg2.calculi(), kRoot + "/theories");
  CorpusReport hnip = run_corpus(proofs, reg2, "kolmogorov-implies-hilbert.a.fwd", opts);
  o.require(hnip.entries.size() == 1 && !hnip.entries[0].accepted,
            "entry using hnip accepted in minimal mode");
  for (const Theorem* t : reg.lemma("symmetry.wn_and.fwd")) {
    for (const auto& u : t->uses) {
      std::set<std::string> shrunk = minimal;
      shrunk.erase(u);
      Registry reg3;
      CorpusReport r3 = run_corpus(proofs, reg3, "symmetry.wn_and.fwd", CheckOptions{shrunk});
      o.require(r3.entries.size() == 1 && !r3.entries[0].accepted,
                "symmetry.wn_and.fwd accepted without " + u);
    }
  }
  o.detail = fmt("%zu redundant-law proofs accepted with the %zu-name minimal table", seen.size(),
                 minimal.size());
  return o;
}

// ---------------------------------------------------------------------------

std::vector<Formula> instances_of(Sort s) {
  Signature sig = test_sig();
  std::vector<const char*> texts =
      s == Sort::Problem
          ? std::vector<const char*>{"a", "b", "bot", "!p", "!?a", "!(p -> q)", "a -> b", "a | b",
                                     "a & b", "~a"}
          : std::vector<const char*>{"p", "q", "0", "?a", "?!p", "?(a -> b)", "p -> q", "p | q",
                                     "p & q", "~p"};
  std::vector<Formula> out;
  for (const char* t : texts) out.push_back(parse_formula(t, sig));
  return out;
}

// Every instance of `v` with its metavariables drawn from the pools.
void each_instance(const Inference& v, const std::function<void(const Inference&)>& fn) {
  const auto& metas = v.metas.atoms();
  std::vector<std::vector<Formula>> pools;
  for (const auto& m : metas) pools.push_back(instances_of(m.sort));
  std::vector<std::size_t> idx(metas.size(), 0);
  for (;;) {
    Binding b;
    for (std::size_t i = 0; i < metas.size(); ++i) b.metas[metas[i].name] = MetaBinding{{}, pools[i][idx[i]]};
    Inference inst;
    for (const auto& p : v.premises) inst.premises.push_back(instantiate(p, b));
    inst.conclusion = instantiate(v.conclusion, b);
    fn(inst);
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == pools[i].size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
}

bool propositional(const Inference& v) {
  for (const auto& m : v.metas.atoms()) {
    if (m.arity > 0) return false;
  }
  if (has_quantifiers(v.conclusion)) return false;
  for (const auto& p : v.premises) {
    if (has_quantifiers(p)) return false;
  }
  return true;
}

Outcome translation_soundness() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  Calculus qhc = builtin("QHC");
  std::size_t n = 0, schemata = 0, skipped = 0;
  auto sweep = [&](const RuleSchema& r) {
    for (const auto& v : r.variants) {
      if (!propositional(v)) {
        ++skipped;
        continue;
      }
      ++schemata;
      each_instance(v, [&](const Inference& inst) {
        ++n;
        std::vector<Formula> bp, np;
        for (const auto& p : inst.premises) {
          bp.push_back(box_translate(p));
          np.push_back(negneg_translate(p));
        }
        std::string shown = print(inst.conclusion);
        o.require(!entails_s4(bp, box_translate(inst.conclusion)), r.name + ": box image fails: " + shown);
        o.require(!entails_ipc(np, negneg_translate(inst.conclusion)),
                  r.name + ": negneg image fails: " + shown);
      });
    }
  };
  for (const auto& a : qhc.axioms) sweep(a);
  for (const auto& r : qhc.rules) sweep(r);
  double s = seconds_since(t0);
  o.require(s < 10, fmt("took %.1f s", s));
  o.detail = fmt("%zu instances of %zu propositional schema variants (%zu quantifier variants "
                 "skipped), %.2f s",
                 n, schemata, skipped, s);
  return o;
}

// ---------------------------------------------------------------------------

void check_refutation(Outcome& o, const std::string& what, const Refutation& r) {
  o.require(r.model.worlds <= 3, what + ": countermodel has " + std::to_string(r.model.worlds) + " worlds");
  o.require(r.model.is_s4_frame(), what + ": frame is not reflexive-transitive");
  o.require(model_check(r.model, r.checked).count(r.world) == 0, what + ": countermodel does not falsify");
  Formula expect = r.channel == Channel::Box ? r.translated : box_translate(r.translated);
  o.require(r.checked == expect, what + ": checked formula is not the channel image");
}

// A random proof in QHC built forward from axiom instances, the ! and ?
// rules and modus ponens. Every line is a theorem once the kernel accepts.
struct Chain {
  Proof proof;
  std::vector<std::size_t> derived;  // indices of lines not justified by an axiom
};

Chain forward_chain(std::size_t want, unsigned seed) {
  std::mt19937 g(seed);
  Calculus qhc = builtin("QHC");
  std::vector<const Inference*> axioms;
  for (const auto& a : qhc.axioms) {
    for (const auto& v : a.variants) {
      if (propositional(v)) axioms.push_back(&v);
    }
  }
  std::map<const Inference*, std::string> axiom_name;
  for (const auto& a : qhc.axioms) {
    for (const auto& v : a.variants) axiom_name[&v] = a.name;
  }
  testkit::Generator gen({true, true, true, false, false, false}, seed);

  Chain c;
  c.proof.id = "fuzz";
  c.proof.calculus = "QHC";
  c.proof.sig = test_sig();
  std::map<Formula, int> line_of;
  std::vector<Formula> pool;

  auto add = [&](const Formula& f, Justification j) -> bool {
    if (line_of.count(f) || f.size() > 40) return false;
    int n = static_cast<int>(c.proof.lines.size()) + 1;
    if (j.kind != Justification::Kind::Axiom) c.derived.push_back(c.proof.lines.size());
    c.proof.lines.push_back(ProofLine{n, f, std::move(j), 0});
    line_of[f] = n;
    pool.push_back(f);
    return true;
  };
  auto pick = [&](Sort s) {
    std::vector<Formula> cands;
    if (g() % 3) {
      const Formula& f = pool.empty() ? gen.gen(s, 1) : pool[g() % pool.size()];
      // a pool formula or one of its immediate parts
      for (const Formula* x : {&f, &f.left(), &f.right()}) {
        if (*x && x->sort() == s) cands.push_back(*x);
      }
    }
    if (cands.empty()) return gen.gen(s, g() % 3);
    return cands[g() % cands.size()];
  };
  // Modus ponens closure for one new line.
  std::function<void(const Formula&)> close = [&](const Formula& f) {
    std::vector<std::pair<Formula, Justification>> todo;
    if (f.op() == Op::Imp && line_of.count(f.left())) {
      todo.push_back({f.right(), Justification{Justification::Kind::MP, "", {line_of[f], line_of[f.left()]}, "", {}}});
    }
    for (const auto& h : std::vector<Formula>(pool)) {
      if (h.op() == Op::Imp && h.left() == f) {
        todo.push_back({h.right(), Justification{Justification::Kind::MP, "", {line_of[h], line_of[f]}, "", {}}});
      }
    }
    for (auto& [x, j] : todo) {
      if (add(x, j)) close(x);
    }
  };

  while (c.derived.size() < want) {
    unsigned k = g() % 10;
    if (k < 7) {
      const Inference* v = axioms[g() % axioms.size()];
      Binding b;
      for (const auto& m : v->metas.atoms()) b.metas[m.name] = MetaBinding{{}, pick(m.sort)};
      Formula f = instantiate(v->conclusion, b);
      if (add(f, Justification{Justification::Kind::Axiom, axiom_name[v], {}, "", {}})) close(f);
    } else if (!pool.empty()) {
      const Formula& src = pool[g() % pool.size()];
      Formula f = src.sort() == Sort::Proposition ? Formula::oc(src) : Formula::wn(src);
      std::string rule = src.sort() == Sort::Proposition ? "oc_top" : "wn_top";
      if (add(f, Justification{Justification::Kind::Rule, rule, {line_of[src]}, "", {}})) close(f);
    }
  }
  return c;
}

Outcome refuter_separations() {
  Outcome o;
  Signature sig = test_sig();
  for (const char* s : {"p -> ?!p", "!?a -> a", "!(p|q) -> !p|!q", "a | ~a"}) {
    auto rs = refute_qhc(parse_formula(s, sig), true);
    o.require(!rs.empty(), std::string(s) + " not refuted");
    for (const auto& r : rs) check_refutation(o, s, r);
  }
  o.require(refute_qhc(parse_formula("?!p -> p", sig), true).empty(), "?!p -> p refuted");

  // Propositional corpus theorems, QS4/QH4 ones through their QHC images.
  std::size_t corpus_checked = 0;
  for (const auto& e : corpus().report.entries) {
    const Theorem* t = theorem(e.id);
    if (!t || !t->hyps.empty() || has_quantifiers(t->goal)) continue;
    const std::string& c = t->calculus;
    if (c != "QHC" && c != "QH" && c != "QC" && c != "QS4" && c != "QH4") continue;
    ++corpus_checked;
    o.require(refute_qhc(expand_modalities(t->goal), true).empty(), e.id + " refuted");
  }

  Chain chain = forward_chain(1000, 4711);
  CalculusTable table;
  CheckResult r = check(chain.proof, table, nullptr);
  o.require(r.accepted, "fuzz proof rejected at line " + std::to_string(r.failing_line) + ": " + r.reason);
  std::size_t fuzz = 0;
  for (std::size_t i : chain.derived) {
    const Formula& f = chain.proof.lines[i].formula;
    ++fuzz;
    o.require(refute_qhc(f, true).empty(), "fuzz theorem refuted: " + print(f));
  }
  o.detail = fmt("4 separations certified, %zu corpus theorems and %zu kernel-checked fuzz theorems "
                 "never refuted",
                 corpus_checked, fuzz);
  return o;
}

// ---------------------------------------------------------------------------

struct Enumerated {
  Formula f;
  int modal_depth;
  testkit::S4Oracle::Vec v;
};

Outcome oracle_equivalence() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  testkit::S4Oracle oracle({"p", "q"}, 3);
  Sort S = Sort::Proposition;
  auto atom = [&](const char* n) { return Enumerated{Formula::atom(n, S), 0, oracle.atom(n)}; };
  std::vector<Enumerated> shallow = {atom("p"), atom("q")};
  std::size_t n = 0, invalid = 0, beyond = 0;

  auto decide = [&](const Formula& f, const testkit::S4Oracle::Vec& v) {
    ++n;
    bool oracle_valid = oracle.valid(v);
    Decision d = decide_s4(f);
    if (!d) {
      o.require(oracle_valid, "tableau valid, oracle refutes: " + print(f));
      return;
    }
    ++invalid;
    if (oracle_valid) {
      // Only acceptable if no model within the oracle's range refutes f.
      o.require(d->model.worlds > 3, "tableau refutes, oracle valid: " + print(f));
      ++beyond;
    }
    o.require(model_check(d->model, f).count(d->world) == 0, "bad countermodel: " + print(f));
  };
  auto grow = [&](const std::vector<Enumerated>& all, auto&& emit) {
    for (const auto& x : all) {
      emit(Enumerated{Formula::neg(x.f), x.modal_depth, oracle.imp(x.v, oracle.zeros())});
      if (x.modal_depth < 2) emit(Enumerated{Formula::box(x.f), x.modal_depth + 1, oracle.box(x.v)});
    }
    for (const auto& x : all) {
      for (const auto& y : all) {
        int md = std::max(x.modal_depth, y.modal_depth);
        emit(Enumerated{Formula::conj(x.f, y.f), md, oracle.conj(x.v, y.v)});
        emit(Enumerated{Formula::disj(x.f, y.f), md, oracle.disj(x.v, y.v)});
        emit(Enumerated{Formula::imp(x.f, y.f), md, oracle.imp(x.v, y.v)});
      }
    }
  };
  for (const auto& e : shallow) decide(e.f, e.v);
  for (int depth = 1; depth <= 2; ++depth) {
    std::vector<Enumerated> next;
    grow(shallow, [&](Enumerated e) {
      decide(e.f, e.v);
      next.push_back(std::move(e));
    });
    shallow.insert(shallow.end(), next.begin(), next.end());
  }
  grow(shallow, [&](const Enumerated& e) { decide(e.f, e.v); });
  double s = seconds_since(t0);
  o.require(s < 60, fmt("took %.1f s", s));
  o.detail = fmt("%zu formulas (%zu invalid, %zu needing more than 3 worlds) over %zu oracle points, "
                 "%.1f s",
                 n, invalid, beyond, oracle.points(), s);
  return o;
}

// ---------------------------------------------------------------------------

Outcome diagrams() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  Sort S = Sort::Proposition;
  std::vector<Formula> all = {Formula::atom("p", S), Formula::atom("q", S)};
  std::size_t n = 0;
  auto commute = [&](const Formula& f) {
    ++n;
    Formula nn = negneg_translate(f);
    // (*): QC -> QH -> QH_nabla against QC -> QH included in QH_nabla.
    Formula star = subst_nabla_negneg(fold_modalities(nabla_translate(nn)));
    o.require(!decide_ipc(Formula::iff(star, nn)), "(*) fails at " + print(f));
    // (**): QH -> QH_nabla -> QH against QH included in QC -> QH.
    Formula g = flip_sorts(f);
    Formula dstar = subst_nabla_negneg(fold_modalities(nabla_translate(g)));
    o.require(!decide_ipc(Formula::iff(dstar, nn)), "(**) fails at " + print(g));
  };
  auto grow = [&](const std::vector<Formula>& xs, auto&& emit) {
    for (const auto& x : xs) emit(Formula::neg(x));
    for (const auto& x : xs) {
      for (const auto& y : xs) {
        emit(Formula::conj(x, y));
        emit(Formula::disj(x, y));
        emit(Formula::imp(x, y));
      }
    }
  };
  for (const auto& f : all) commute(f);
  for (int depth = 1; depth <= 2; ++depth) {
    std::vector<Formula> next;
    grow(all, [&](Formula f) {
      commute(f);
      next.push_back(std::move(f));
    });
    all.insert(all.end(), next.begin(), next.end());
  }
  grow(all, commute);
  o.detail = fmt("%zu formulas, both diagrams, %.1f s", n, seconds_since(t0));
  return o;
}

// ---------------------------------------------------------------------------

Outcome round_trip() {
  Outcome o;
  testkit::Generator gen(testkit::kQS4, 2024);
  for (int i = 0; i < 1000; ++i) {
    Formula f = gen(1 + i % 7);
    o.require(box_translate(embed_qs4(f)) == f, "round trip changes " + print(f));
  }
  o.detail = "1000 QS4 formulas";
  return o;
}

// ---------------------------------------------------------------------------

Outcome lemma_inlining() {
  Outcome o;
  auto& c = corpus();
  std::vector<std::string> with_lemmas;
  for (const auto& e : c.report.entries) {
    const Theorem* t = theorem(e.id);
    if (t && std::any_of(t->cited.begin(), t->cited.end(), [](const Theorem* x) { return x; })) {
      with_lemmas.push_back(e.id);
    }
  }
  std::mt19937 g(99);
  std::shuffle(with_lemmas.begin(), with_lemmas.end(), g);
  with_lemmas.resize(std::min<std::size_t>(10, with_lemmas.size()));
  std::size_t lines = 0;
  for (const auto& id : with_lemmas) {
    const Theorem* t = theorem(id);
    Proof p = inline_lemmas(*t);
    lines += p.lines.size();
    for (const auto& l : p.lines) {
      o.require(l.just.kind != Justification::Kind::Lemma, id + ": lemma line left after inlining");
    }
    CheckResult r = check(p, c.registry.calculi(), nullptr);
    o.require(r.accepted, id + ": spliced proof rejected at line " + std::to_string(r.failing_line) + ": " + r.reason);
    if (r.accepted) o.require(r.theorem.goal == t->goal, id + ": spliced proof proves something else");
  }
  o.require(with_lemmas.size() == 10, "fewer than 10 entries cite lemmas");
  std::ostringstream ids;
  for (const auto& id : with_lemmas) ids << (ids.tellp() ? " " : "") << id;
  o.detail = fmt("%zu entries, %zu lines after splicing: ", with_lemmas.size(), lines) + ids.str();
  return o;
}

struct Criterion {
  int number;
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "corpus completeness", corpus_completeness},
    {2, "minimal-system redundancy", minimal_system},
    {3, "translation soundness sweep", translation_soundness},
    {4, "refuter separations", refuter_separations},
    {5, "oracle equivalence", oracle_equivalence},
    {6, "diagram (*) and (**) commutation", diagrams},
    {7, "box . embed_qs4 round trip", round_trip},
    {8, "lemma inlining", lemma_inlining},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  bool all_pass = true;
  for (const auto& c : kCriteria) {
    if (!selected.empty() && !selected.count(c.number)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.number, c.name, o.detail.c_str());
    for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
