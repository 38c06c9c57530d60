#include "qhc/schema.hpp"

#include <algorithm>
#include <set>

#include "qhc/syntax.hpp"

namespace qhc {

namespace {

using Env = std::vector<std::pair<std::string, std::string>>;

[[noreturn]] void capture(const std::string& msg) { throw Error(ErrorCode::CaptureViolation, msg); }

class Instantiator {
 public:
  explicit Instantiator(const Binding& b) : b_(b) {}

  Formula run(const Formula& f) {
    switch (f.op()) {
      case Op::Atom: return Formula::atom(f.name(), f.sort(), images(f.args()));
      case Op::Meta: return meta(f);
      case Op::FalseI:
      case Op::FalseC: return f;
      case Op::Forall:
      case Op::Exists: {
        std::string img = var_image(f.name());
        env_.emplace_back(f.name(), img);
        Formula body = run(f.body());
        env_.pop_back();
        return f.op() == Op::Forall ? Formula::forall(img, body) : Formula::exists(img, body);
      }
      default: {
        Formula l = run(f.left());
        Formula r = f.right() ? run(f.right()) : Formula{};
        return rebuild(f, std::move(l), std::move(r));
      }
    }
  }

 private:
  std::string var_image(const std::string& v) const {
    auto it = b_.vars.find(v);
    return it == b_.vars.end() ? v : it->second;
  }

  bool under_binder(const std::string& img) const {
    return std::any_of(env_.begin(), env_.end(), [&](const auto& e) { return e.second == img; });
  }

  std::string resolve(const std::string& v) const {
    for (std::size_t i = env_.size(); i-- > 0;) {
      if (env_[i].first != v) continue;
      const std::string& img = env_[i].second;
      for (std::size_t j = i + 1; j < env_.size(); ++j) {
        if (env_[j].second == img) {
          capture("variable '" + v + "' would be captured by the binder of '" + env_[j].first +
                  "' (both become '" + img + "')");
        }
      }
      return img;
    }
    std::string img = var_image(v);
    if (under_binder(img)) {
      capture("free variable '" + v + "' would be captured as '" + img + "'");
    }
    return img;
  }

  std::vector<std::string> images(const std::vector<std::string>& args) const {
    std::vector<std::string> out;
    out.reserve(args.size());
    for (const auto& a : args) out.push_back(resolve(a));
    return out;
  }

  Formula meta(const Formula& f) {
    auto it = b_.metas.find(f.name());
    if (it == b_.metas.end()) {
      throw Error(ErrorCode::UnboundMetavariable, "metavariable '" + f.name() + "' is unbound");
    }
    const MetaBinding& mb = it->second;
    if (mb.params.size() != f.args().size()) {
      throw Error(ErrorCode::ArityMismatch, "metavariable '" + f.name() + "' takes " +
                                                std::to_string(f.args().size()) +
                                                " parameter(s), binding has " +
                                                std::to_string(mb.params.size()));
    }
    if (check_sorts(mb.body) != f.sort()) {
      throw Error(ErrorCode::SortClash, "metavariable '" + f.name() + "' is a " +
                                            std::string(sort_name(f.sort())) +
                                            ", bound to a " +
                                            std::string(sort_name(mb.body.sort())));
    }
    std::set<std::string> params(mb.params.begin(), mb.params.end());
    if (params.size() != mb.params.size()) {
      throw Error(ErrorCode::ArityMismatch, "repeated parameter in binding of '" + f.name() + "'");
    }
    for (const auto& v : free_vars(mb.body)) {
      if (!params.count(v) && under_binder(v)) {
        capture("variable '" + v + "' in the value of '" + f.name() +
                "' would be captured by a quantifier of the schema");
      }
    }
    std::map<std::string, std::string> sigma;
    std::vector<std::string> args = images(f.args());
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (mb.params[i] != args[i]) sigma[mb.params[i]] = args[i];
    }
    return subst_terms(mb.body, sigma);
  }

  const Binding& b_;
  Env env_;
};

}  // namespace

Formula instantiate(const Formula& schema, const Binding& binding) {
  return Instantiator(binding).run(schema);
}

// ---------------------------------------------------------------------------
// Matcher

std::optional<std::string> Matcher::image(const std::string& v, const Env& env) const {
  for (std::size_t i = env.size(); i-- > 0;) {
    if (env[i].first == v) return env[i].second;
  }
  auto it = b_.vars.find(v);
  if (it != b_.vars.end()) return it->second;
  return std::nullopt;
}

bool Matcher::add(const Formula& schema, const Formula& target) {
  pairs_.emplace_back(schema, target);
  Env env;
  return go(schema, target, env);
}

bool Matcher::go(const Formula& s, const Formula& t, Env& env) {
  switch (s.op()) {
    case Op::Meta:
      if (!meta_app(s, t, env, false)) deferred_.push_back({s, t, env});
      return true;
    case Op::Atom: {
      if (t.op() != Op::Atom || t.name() != s.name() || t.sort() != s.sort() ||
          t.args().size() != s.args().size()) {
        return false;
      }
      for (std::size_t i = 0; i < s.args().size(); ++i) {
        auto img = image(s.args()[i], env);
        if (img) {
          if (*img != t.args()[i]) return false;
        } else {
          b_.vars[s.args()[i]] = t.args()[i];
        }
      }
      return true;
    }
    case Op::Forall:
    case Op::Exists: {
      if (t.op() != s.op()) return false;
      auto it = b_.vars.find(s.name());
      if (it == b_.vars.end()) {
        b_.vars[s.name()] = t.name();
      } else if (it->second != t.name()) {
        return false;
      }
      env.emplace_back(s.name(), t.name());
      bool ok = go(s.body(), t.body(), env);
      env.pop_back();
      return ok;
    }
    default:
      if (t.op() != s.op()) return false;
      if (s.is_leaf()) return true;
      if (!go(s.left(), t.left(), env)) return false;
      return !s.right() || go(s.right(), t.right(), env);
  }
}

// Handles A(t1..tn) against t. Returns false when it must wait for more
// information (only when `final` is false).
bool Matcher::meta_app(const Formula& s, const Formula& t, const Env& env, bool final) {
  std::vector<std::optional<std::string>> imgs;
  bool known = true;
  for (const auto& a : s.args()) {
    imgs.push_back(image(a, env));
    known = known && imgs.back().has_value();
  }
  auto it = b_.metas.find(s.name());
  if (it == b_.metas.end()) {
    if (!known) {
      if (!final) return false;
      for (std::size_t i = 0; i < imgs.size(); ++i) {
        if (!imgs[i]) {
          b_.vars.emplace(s.args()[i], s.args()[i]);
          imgs[i] = image(s.args()[i], env);
        }
      }
    }
    std::vector<std::string> params;
    for (const auto& i : imgs) params.push_back(*i);
    std::set<std::string> distinct(params.begin(), params.end());
    if (distinct.size() != params.size()) {
      // A(x, x) does not determine A; leave it to another occurrence.
      return true;
    }
    b_.metas[s.name()] = MetaBinding{std::move(params), t};
    return true;
  }
  if (known) return true;
  if (!final) return false;

  // Metavariable known, some argument images unknown: try the variables of t.
  std::vector<std::size_t> unknown;
  for (std::size_t i = 0; i < imgs.size(); ++i) {
    if (!imgs[i]) unknown.push_back(i);
  }
  std::set<std::string> cand_set = all_vars(t);
  for (std::size_t i : unknown) cand_set.insert(s.args()[i]);
  std::vector<std::string> cands(cand_set.begin(), cand_set.end());
  std::vector<std::size_t> choice(unknown.size(), 0);
  const MetaBinding& mb = it->second;
  for (;;) {
    std::map<std::string, std::string> sigma;
    for (std::size_t i = 0, u = 0; i < imgs.size(); ++i) {
      std::string img = imgs[i] ? *imgs[i] : cands[choice[u++]];
      if (mb.params[i] != img) sigma[mb.params[i]] = img;
    }
    try {
      if (subst_terms(mb.body, sigma) == t) {
        for (std::size_t k = 0; k < unknown.size(); ++k) {
          b_.vars[s.args()[unknown[k]]] = cands[choice[k]];
        }
        return true;
      }
    } catch (const Error&) {
    }
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == cands.size()) choice[k++] = 0;
    if (k == choice.size()) break;
  }
  return true;
}

std::optional<Binding> Matcher::finish() {
  for (bool progress = true; progress && !deferred_.empty();) {
    progress = false;
    for (std::size_t i = 0; i < deferred_.size(); ++i) {
      Deferred& d = deferred_[i];
      if (meta_app(d.schema, d.target, d.env, false)) {
        deferred_.erase(deferred_.begin() + static_cast<std::ptrdiff_t>(i));
        progress = true;
        break;
      }
    }
  }
  for (const auto& d : deferred_) meta_app(d.schema, d.target, d.env, true);
  deferred_.clear();
  try {
    for (const auto& [s, t] : pairs_) {
      if (instantiate(s, b_) != t) return std::nullopt;
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  return b_;
}

std::optional<Binding> match(const Formula& schema, const Formula& target, Binding seed) {
  Matcher m(std::move(seed));
  if (!m.add(schema, target)) return std::nullopt;
  return m.finish();
}

std::string print_binding(const Binding& b) {
  std::string out;
  for (const auto& [name, mb] : b.metas) {
    if (!out.empty()) out += ", ";
    out += name;
    if (!mb.params.empty()) {
      out += '(';
      for (std::size_t i = 0; i < mb.params.size(); ++i) {
        if (i) out += ',';
        out += mb.params[i];
      }
      out += ')';
    }
    out += " := " + print(mb.body);
  }
  for (const auto& [v, img] : b.vars) {
    if (v == img) continue;
    if (!out.empty()) out += ", ";
    out += v + " := " + img;
  }
  return "[" + out + "]";
}

}  // namespace qhc
