#include "qhc/semantics.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iterator>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "qhc/syntax.hpp"
#include "qhc/translate.hpp"

namespace qhc {

KripkeModel::KripkeModel(int n)
    : worlds(n), relation(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false)) {}

bool KripkeModel::is_s4_frame() const {
  for (int u = 0; u < worlds; ++u) {
    if (!relation[u][u]) return false;
    for (int v = 0; v < worlds; ++v) {
      if (!relation[u][v]) continue;
      for (int w = 0; w < worlds; ++w) {
        if (relation[v][w] && !relation[u][w]) return false;
      }
    }
  }
  return true;
}

void KripkeModel::close() {
  for (int u = 0; u < worlds; ++u) relation[u][u] = true;
  for (int k = 0; k < worlds; ++k) {
    for (int u = 0; u < worlds; ++u) {
      if (!relation[u][k]) continue;
      for (int v = 0; v < worlds; ++v) {
        if (relation[k][v]) relation[u][v] = true;
      }
    }
  }
}

namespace {

void require_propositional(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
      if (!f.args().empty()) {
        throw Error(ErrorCode::NonPropositionalInput, "atom '" + f.name() + "' has arguments");
      }
      return;
    case Op::Meta:
      throw Error(ErrorCode::NonPropositionalInput, "schematic formula");
    case Op::Forall:
    case Op::Exists:
      throw Error(ErrorCode::NonPropositionalInput, "quantified formula");
    default:
      if (f.left()) require_propositional(f.left());
      if (f.right()) require_propositional(f.right());
  }
}

void require_modal(const Formula& f) {
  require_propositional(f);
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.op() == Op::Wn || g.op() == Op::Oc || g.op() == Op::Nabla) {
      throw Error(ErrorCode::NonPropositionalInput, "? ! and nabla have no Kripke reading; translate first");
    }
    if (g.left()) walk(g.left());
    if (g.right()) walk(g.right());
  };
  walk(f);
}

std::vector<bool> eval(const KripkeModel& m, const Formula& f) {
  std::vector<bool> out(static_cast<std::size_t>(m.worlds), false);
  switch (f.op()) {
    case Op::Atom: {
      auto it = m.valuation.find(f.name());
      if (it == m.valuation.end()) throw Error(ErrorCode::UnknownAtom, "no valuation for '" + f.name() + "'");
      for (int w = 0; w < m.worlds; ++w) out[w] = it->second[w];
      return out;
    }
    case Op::FalseI:
    case Op::FalseC:
      return out;
    case Op::And:
    case Op::Or:
    case Op::Imp: {
      auto a = eval(m, f.left());
      auto b = eval(m, f.right());
      for (int w = 0; w < m.worlds; ++w) {
        out[w] = f.op() == Op::And ? (a[w] && b[w]) : f.op() == Op::Or ? (a[w] || b[w]) : (!a[w] || b[w]);
      }
      return out;
    }
    case Op::Box: {
      auto a = eval(m, f.left());
      for (int u = 0; u < m.worlds; ++u) {
        out[u] = true;
        for (int v = 0; v < m.worlds; ++v) {
          if (m.relation[u][v] && !a[v]) out[u] = false;
        }
      }
      return out;
    }
    default:
      throw Error(ErrorCode::NonPropositionalInput, "not a propositional modal formula");
  }
}

std::set<std::string> atom_names(const Formula& f) {
  std::set<std::string> out;
  Signature atoms = atoms_of(f);
  for (const auto& a : atoms.atoms()) out.insert(a.name);
  return out;
}

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
  void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      if (w_[k] & ~o.w_[k]) return false;
    }
    return true;
  }
  friend bool operator<(const Bits& a, const Bits& b) { return a.w_ < b.w_; }

 private:
  std::vector<std::uint64_t> w_;
};

// Tableau over negation normal form. A node is a set of NNF formulas; its
// saturation closes it under conjunction, T (box A gives A) and a choice of
// disjunct. Each unsatisfied diamond gets a successor carrying the diamond
// body and every box of the node, unless a world built so far already
// contains that set. Such a world is either an ancestor or finished, so
// linking to it is safe.
//
// Every formula in a node records the disjunction choices it depends on, so
// a clash that does not involve the latest choice skips its alternative.
// A failed node is unsatisfiable whatever the path, so failures are cached.
class Tableau {
 public:
  explicit Tableau(const Formula& f) {
    for (const auto& name : atom_names(f)) {
      int a = static_cast<int>(atoms_.size());
      atoms_.push_back(name);
      intern(Kind::Lit, a, -1, -1);
      intern(Kind::NLit, a, -1, -1);
    }
    root_ = nnf(f, false);
  }

  Decision run() {
    Deps conflict;
    int w = sat({{root_, {}}}, conflict);
    if (w < 0) return std::nullopt;
    KripkeModel m(static_cast<int>(worlds_.size()));
    for (auto [u, v] : edges_) m.relation[u][v] = true;
    m.close();
    for (std::size_t a = 0; a < atoms_.size(); ++a) {
      std::vector<bool> val(worlds_.size());
      int lit = lookup(Kind::Lit, static_cast<int>(a), -1, -1);
      for (std::size_t u = 0; u < worlds_.size(); ++u) val[u] = worlds_[u].test(lit);
      m.valuation[atoms_[a]] = val;
    }
    return Countermodel{std::move(m), w};
  }

 private:
  enum class Kind { Lit, NLit, Top, Bot, And, Or, Box, Dia };
  struct Node {
    Kind kind;
    int atom, a, b;
  };
  using Deps = std::vector<int>;  // sorted choice ids

  struct Frame {
    explicit Frame(std::size_t n) : in(n, 0), deps(n) {}
    std::vector<char> in;
    std::vector<Deps> deps;
    std::vector<int> trail;
    std::vector<int> work;

    void add(int i, Deps d) {
      if (in[i]) return;
      in[i] = 1;
      deps[i] = std::move(d);
      trail.push_back(i);
      work.push_back(i);
    }
    void undo(std::size_t mark) {
      while (trail.size() > mark) {
        in[trail.back()] = 0;
        trail.pop_back();
      }
      work.clear();
    }
  };

  static Deps join(const Deps& a, const Deps& b) {
    Deps out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }
  static Deps without(Deps d, int x) {
    d.erase(std::remove(d.begin(), d.end(), x), d.end());
    return d;
  }
  static bool has(const Deps& d, int x) { return std::binary_search(d.begin(), d.end(), x); }

  int intern(Kind k, int atom, int a, int b) {
    auto key = std::make_tuple(static_cast<int>(k), atom, a, b);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{k, atom, a, b});
    index_.emplace(key, id);
    return id;
  }

  int lookup(Kind k, int atom, int a, int b) const {
    return index_.at(std::make_tuple(static_cast<int>(k), atom, a, b));
  }

  int atom_index(const std::string& name) const {
    return static_cast<int>(std::find(atoms_.begin(), atoms_.end(), name) - atoms_.begin());
  }

  int nnf(const Formula& f, bool pos) {
    switch (f.op()) {
      case Op::Atom:
        return lookup(pos ? Kind::Lit : Kind::NLit, atom_index(f.name()), -1, -1);
      case Op::FalseI:
      case Op::FalseC:
        return intern(pos ? Kind::Bot : Kind::Top, -1, -1, -1);
      case Op::And:
        return intern(pos ? Kind::And : Kind::Or, -1, nnf(f.left(), pos), nnf(f.right(), pos));
      case Op::Or:
        return intern(pos ? Kind::Or : Kind::And, -1, nnf(f.left(), pos), nnf(f.right(), pos));
      case Op::Imp:
        return intern(pos ? Kind::Or : Kind::And, -1, nnf(f.left(), !pos), nnf(f.right(), pos));
      case Op::Box:
        return intern(pos ? Kind::Box : Kind::Dia, -1, nnf(f.left(), pos), -1);
      default:
        throw Error(ErrorCode::NonPropositionalInput, "not a propositional modal formula");
    }
  }

  Bits bits_of(const std::vector<std::pair<int, Deps>>& items) const {
    Bits b(nodes_.size());
    for (const auto& [i, d] : items) b.set(i);
    return b;
  }

  // Index of the root world of a model of `core`, or -1 with the choices
  // the failure depends on.
  int sat(const std::vector<std::pair<int, Deps>>& core, Deps& conflict) {
    Bits key = bits_of(core);
    if (unsat_.count(key)) {
      conflict.clear();
      for (const auto& [i, d] : core) conflict = join(conflict, d);
      return -1;
    }
    Frame fr(nodes_.size());
    for (const auto& [i, d] : core) fr.add(i, d);
    int result = -1;
    if (!saturate(fr, conflict, result)) unsat_.insert(key);
    return result;
  }

  bool saturate(Frame& fr, Deps& conflict, int& result) {
    while (!fr.work.empty()) {
      int i = fr.work.back();
      fr.work.pop_back();
      const Node& n = nodes_[i];
      switch (n.kind) {
        case Kind::Lit:
        case Kind::NLit: {
          int other = lookup(n.kind == Kind::Lit ? Kind::NLit : Kind::Lit, n.atom, -1, -1);
          if (fr.in[other]) {
            conflict = join(fr.deps[i], fr.deps[other]);
            return false;
          }
          break;
        }
        case Kind::Bot:
          conflict = fr.deps[i];
          return false;
        case Kind::And:
          fr.add(n.a, fr.deps[i]);
          fr.add(n.b, fr.deps[i]);
          break;
        case Kind::Box:
          fr.add(n.a, fr.deps[i]);
          break;
        default:
          break;
      }
    }
    int pick = -1;
    for (int i : fr.trail) {
      const Node& n = nodes_[i];
      if (n.kind == Kind::Or && !fr.in[n.a] && !fr.in[n.b]) {
        pick = i;
        break;
      }
    }
    if (pick < 0) return expand(fr, conflict, result);

    const Node n = nodes_[pick];
    int choice = next_choice_++;
    std::size_t mark = fr.trail.size();
    Deps first;
    fr.add(n.a, join(fr.deps[pick], {choice}));
    if (saturate(fr, first, result)) return true;
    fr.undo(mark);
    if (!has(first, choice)) {
      conflict = std::move(first);
      return false;
    }
    fr.add(n.b, join(fr.deps[pick], without(first, choice)));
    if (saturate(fr, conflict, result)) return true;
    fr.undo(mark);
    return false;
  }

  bool expand(const Frame& fr, Deps& conflict, int& result) {
    Bits g(nodes_.size());
    for (int i : fr.trail) g.set(i);
    int w = static_cast<int>(worlds_.size());
    std::size_t edge_mark = edges_.size();
    worlds_.push_back(g);
    bool ok = true;
    for (int i : fr.trail) {
      if (nodes_[i].kind != Kind::Dia || fr.in[nodes_[i].a]) continue;
      std::vector<std::pair<int, Deps>> delta{{nodes_[i].a, fr.deps[i]}};
      for (int j : fr.trail) {
        if (nodes_[j].kind == Kind::Box) delta.emplace_back(j, fr.deps[j]);
      }
      Bits want = bits_of(delta);
      int target = -1;
      for (int u = 0; u <= w; ++u) {
        if (want.subset_of(worlds_[u])) {
          target = u;
          break;
        }
      }
      if (target < 0) target = sat(delta, conflict);
      if (target < 0) {
        ok = false;
        break;
      }
      edges_.emplace_back(w, target);
    }
    if (!ok) {
      worlds_.resize(w);
      edges_.resize(edge_mark);
      return false;
    }
    result = w;
    return true;
  }

  std::vector<std::string> atoms_;
  std::vector<Node> nodes_;
  std::map<std::tuple<int, int, int, int>, int> index_;
  int root_ = -1;
  int next_choice_ = 0;
  std::set<Bits> unsat_;
  std::vector<Bits> worlds_;
  std::vector<std::pair<int, int>> edges_;
};

// Quotient by the largest bisimulation: worlds agreeing on every atom and
// seeing the same classes are merged.
Countermodel contract(const Countermodel& c) {
  const KripkeModel& m = c.model;
  std::vector<int> block(static_cast<std::size_t>(m.worlds), 0);
  for (int n = -1;;) {
    std::map<std::pair<std::vector<bool>, std::set<int>>, int> ids;
    std::vector<int> next(block.size());
    for (int u = 0; u < m.worlds; ++u) {
      std::vector<bool> label;
      for (const auto& [name, val] : m.valuation) label.push_back(val[u]);
      std::set<int> seen;
      for (int v = 0; v < m.worlds; ++v) {
        if (m.relation[u][v]) seen.insert(block[v]);
      }
      // The previous class is part of the key, so classes only split.
      auto key = std::make_pair(label, seen);
      key.second.insert(-1 - block[u]);
      next[u] = ids.emplace(key, static_cast<int>(ids.size())).first->second;
    }
    block = std::move(next);
    if (static_cast<int>(ids.size()) == n) break;
    n = static_cast<int>(ids.size());
  }
  int k = *std::max_element(block.begin(), block.end()) + 1;
  KripkeModel q(k);
  for (int u = 0; u < m.worlds; ++u) {
    for (int v = 0; v < m.worlds; ++v) {
      if (m.relation[u][v]) q.relation[block[u]][block[v]] = true;
    }
  }
  for (const auto& [name, val] : m.valuation) {
    std::vector<bool> qv(static_cast<std::size_t>(k));
    for (int u = 0; u < m.worlds; ++u) qv[block[u]] = val[u];
    q.valuation[name] = qv;
  }
  return Countermodel{std::move(q), block[c.world]};
}

// Every S4 frame on n worlds.
std::vector<KripkeModel> preorders(int n) {
  std::vector<std::pair<int, int>> off;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v) off.emplace_back(u, v);
    }
  }
  std::vector<KripkeModel> out;
  for (unsigned mask = 0; mask < (1U << off.size()); ++mask) {
    KripkeModel m(n);
    for (int u = 0; u < n; ++u) m.relation[u][u] = true;
    for (std::size_t k = 0; k < off.size(); ++k) {
      if (mask >> k & 1U) m.relation[off[k].first][off[k].second] = true;
    }
    if (m.is_s4_frame()) out.push_back(std::move(m));
  }
  return out;
}

// A countermodel with fewer than `below` worlds, smallest first.
Decision smaller_countermodel(const Formula& f, int below) {
  std::set<std::string> names = atom_names(f);
  std::vector<std::string> atoms(names.begin(), names.end());
  for (int n = 1; n < below; ++n) {
    std::size_t bits = atoms.size() * static_cast<std::size_t>(n);
    for (const KripkeModel& frame : preorders(n)) {
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << bits); ++v) {
        KripkeModel m = frame;
        for (std::size_t a = 0; a < atoms.size(); ++a) {
          std::vector<bool> val(static_cast<std::size_t>(n));
          for (int w = 0; w < n; ++w) val[w] = v >> (a * n + w) & 1U;
          m.valuation[atoms[a]] = val;
        }
        auto holds = eval(m, f);
        for (int w = 0; w < n; ++w) {
          if (!holds[w]) return Countermodel{std::move(m), w};
        }
      }
    }
  }
  return std::nullopt;
}

// Dyckhoff's contraction-free sequent calculus for intuitionistic
// propositional logic. Proof search terminates without loop checks.
class G4ip {
 public:
  bool provable(const Formula& f) { return prove({}, intern(f)); }

 private:
  enum class Kind { Atom, Bot, And, Or, Imp };
  struct Node {
    Kind kind;
    int a, b;
  };
  using Context = std::vector<int>;  // sorted, no duplicates

  int make(Kind k, int a, int b) {
    auto key = (static_cast<std::uint64_t>(k) << 60) ^ (static_cast<std::uint64_t>(a + 1) << 30) ^
               static_cast<std::uint64_t>(b + 1);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{k, a, b});
    index_.emplace(key, id);
    return id;
  }

  int intern(const Formula& f) {
    if (f.sort() != Sort::Problem) throw Error(ErrorCode::SortClash, "expected a formula of the QH language");
    switch (f.op()) {
      case Op::Atom: {
        if (!f.args().empty()) {
          throw Error(ErrorCode::NonPropositionalInput, "atom '" + f.name() + "' has arguments");
        }
        auto it = atoms_.emplace(f.name(), static_cast<int>(atoms_.size())).first;
        return make(Kind::Atom, it->second, -1);
      }
      case Op::FalseI:
      case Op::FalseC:
        return make(Kind::Bot, -1, -1);
      case Op::And:
        return make(Kind::And, intern(f.left()), intern(f.right()));
      case Op::Or:
        return make(Kind::Or, intern(f.left()), intern(f.right()));
      case Op::Imp:
        return make(Kind::Imp, intern(f.left()), intern(f.right()));
      case Op::Forall:
      case Op::Exists:
      case Op::Meta:
        throw Error(ErrorCode::NonPropositionalInput, "not a propositional formula");
      default:
        throw Error(ErrorCode::SortClash, "expected a formula of the QH language");
    }
  }

  static Context with(Context g, std::initializer_list<int> add, int drop = -1) {
    if (drop >= 0) g.erase(std::lower_bound(g.begin(), g.end(), drop));
    for (int x : add) {
      auto it = std::lower_bound(g.begin(), g.end(), x);
      if (it == g.end() || *it != x) g.insert(it, x);
    }
    return g;
  }

  static bool contains(const Context& g, int x) { return std::binary_search(g.begin(), g.end(), x); }

  struct Key {
    Context g;
    int goal;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = static_cast<std::size_t>(k.goal);
      for (int x : k.g) h = h * 1000003U ^ static_cast<std::size_t>(x);
      return h;
    }
  };

  // Applies the left rules that need no choice. False if the sequent is
  // already an axiom.
  bool simplify(Context& g, int goal) {
    for (bool changed = true; changed;) {
      changed = false;
      for (int x : g) {
        const Node n = nodes_[x];
        if (x == goal || n.kind == Kind::Bot) return false;
        if (n.kind == Kind::And) {
          g = with(std::move(g), {n.a, n.b}, x);
        } else if (n.kind == Kind::Imp) {
          const Node l = nodes_[n.a];
          if (l.kind == Kind::Bot) {
            g = with(std::move(g), {}, x);
          } else if (l.kind == Kind::Atom && contains(g, n.a)) {
            g = with(std::move(g), {n.b}, x);
          } else if (l.kind == Kind::And) {
            g = with(std::move(g), {make(Kind::Imp, l.a, make(Kind::Imp, l.b, n.b))}, x);
          } else if (l.kind == Kind::Or) {
            g = with(std::move(g), {make(Kind::Imp, l.a, n.b), make(Kind::Imp, l.b, n.b)}, x);
          } else {
            continue;
          }
        } else {
          continue;
        }
        changed = true;
        break;
      }
    }
    return true;
  }

  bool prove(Context g, int goal) {
    if (!simplify(g, goal)) return true;
    const Node c = nodes_[goal];
    if (c.kind == Kind::And) return prove(g, c.a) && prove(g, c.b);
    if (c.kind == Kind::Imp) return prove(with(std::move(g), {c.a}), c.b);
    Key key{std::move(g), goal};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool r = search(key.g, goal);
    memo_.emplace(std::move(key), r);
    return r;
  }

  bool search(const Context& g, int goal) {
    for (int x : g) {
      const Node n = nodes_[x];
      if (n.kind == Kind::Or) return prove(with(g, {n.a}, x), goal) && prove(with(g, {n.b}, x), goal);
    }
    const Node c = nodes_[goal];
    if (c.kind == Kind::Or && (prove(g, c.a) || prove(g, c.b))) return true;
    for (int x : g) {
      const Node n = nodes_[x];
      if (n.kind != Kind::Imp || nodes_[n.a].kind != Kind::Imp) continue;
      const Node l = nodes_[n.a];
      Context rest = with(g, {}, x);
      if (prove(with(rest, {make(Kind::Imp, l.b, n.b)}), n.a) && prove(with(rest, {n.b}), goal)) return true;
    }
    return false;
  }

  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, int> index_;
  std::map<std::string, int> atoms_;
  std::unordered_map<Key, bool, KeyHash> memo_;
};

Formula conjunction(const std::vector<Formula>& fs, Sort s) {
  if (fs.empty()) return Formula::truth(s);
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::conj(out, fs[i]);
  return out;
}

}  // namespace

std::set<int> model_check(const KripkeModel& m, const Formula& f) {
  require_modal(f);
  auto holds = eval(m, f);
  std::set<int> out;
  for (int w = 0; w < m.worlds; ++w) {
    if (holds[w]) out.insert(w);
  }
  return out;
}

Decision decide_s4(const Formula& f) {
  require_modal(f);
  Decision d = Tableau(f).run();
  if (!d) return d;
  d = contract(*d);
  if (!d->model.is_s4_frame() || model_check(d->model, f).count(d->world)) {
    throw std::logic_error("tableau countermodel does not falsify " + print(f));
  }
  return d;
}

Decision entails_s4(const std::vector<Formula>& premises, const Formula& conclusion) {
  if (premises.empty()) return decide_s4(conclusion);
  return decide_s4(Formula::imp(Formula::box(conjunction(premises, Sort::Proposition)), conclusion));
}

Decision decide_ipc(const Formula& f) {
  if (G4ip().provable(f)) return std::nullopt;
  Decision d = decide_s4(box_translate(f));
  if (!d) throw std::logic_error("provers disagree on " + print(f));
  return d;
}

Decision entails_ipc(const std::vector<Formula>& premises, const Formula& conclusion) {
  if (premises.empty()) return decide_ipc(conclusion);
  return decide_ipc(Formula::imp(conjunction(premises, Sort::Problem), conclusion));
}

std::string_view channel_name(Channel c) { return c == Channel::Box ? "box" : "negneg"; }

std::vector<Refutation> refute_qhc(const Formula& f, bool all_channels) {
  require_propositional(f);
  std::vector<Refutation> out;
  for (Channel c : {Channel::Box, Channel::NegNeg}) {
    Formula image = c == Channel::Box ? box_translate(f) : negneg_translate(f);
    Formula checked = c == Channel::Box ? image : box_translate(image);
    if (Decision d = c == Channel::Box ? decide_s4(checked) : decide_ipc(image)) {
      // Refutations are read by people; prefer the smallest model when the
      // search is cheap.
      if (d->model.worlds > 2 && atom_names(checked).size() <= 3) {
        if (Decision small = smaller_countermodel(checked, std::min(d->model.worlds, 4))) d = std::move(small);
      }
      out.push_back(Refutation{c, image, checked, std::move(d->model), d->world});
      if (!all_channels) break;
    }
  }
  return out;
}

}  // namespace qhc
