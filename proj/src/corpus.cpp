#include "qhc/corpus.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <queue>
#include <set>

#include "qhc/syntax.hpp"

namespace qhc {

namespace fs = std::filesystem;

std::vector<const Theorem*> Registry::lemma(std::string_view id) const {
  std::vector<const Theorem*> out;
  auto it = lemmas_.find(id);
  if (it == lemmas_.end()) return out;
  for (const auto& t : it->second) out.push_back(t.get());
  return out;
}

const Theorem& Registry::add(Theorem t) {
  auto& slot = lemmas_[t.id];
  slot.clear();
  slot.push_back(std::make_unique<Theorem>(std::move(t)));
  const Theorem& added = *slot.back();
  if (added.calculus == "QH" || added.calculus == "QC") {
    try {
      CheckResult r = check(flip_proof(added), calculi_, this);
      if (r.accepted) {
        r.theorem.flipped = true;
        slot.push_back(std::make_unique<Theorem>(std::move(r.theorem)));
      }
    } catch (const Error&) {
      // Not flippable (modal connectives); the original stays citable.
    }
  }
  return *slot.front();
}

std::vector<std::string> Registry::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, v] : lemmas_) out.push_back(id);
  return out;
}

std::vector<std::string> cited_lemmas(const Proof& p) {
  std::set<std::string> ids;
  for (const auto& l : p.lines) {
    if (l.just.kind == Justification::Kind::Lemma) ids.insert(l.just.name);
  }
  return {ids.begin(), ids.end()};
}

std::vector<std::size_t> dependency_order(const std::vector<Proof>& proofs) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < proofs.size(); ++i) {
    if (!index.emplace(proofs[i].id, i).second) {
      throw Error(ErrorCode::DuplicateDeclaration, "duplicate corpus id '" + proofs[i].id + "'");
    }
  }
  std::vector<std::vector<std::size_t>> users(proofs.size());
  std::vector<int> pending(proofs.size(), 0);
  for (std::size_t i = 0; i < proofs.size(); ++i) {
    for (const auto& dep : cited_lemmas(proofs[i])) {
      auto it = index.find(dep);
      if (it == index.end()) continue;
      users[it->second].push_back(i);
      ++pending[i];
    }
  }
  auto by_id = [&](std::size_t a, std::size_t b) { return proofs[a].id > proofs[b].id; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_id)> ready(by_id);
  for (std::size_t i = 0; i < proofs.size(); ++i) {
    if (pending[i] == 0) ready.push(i);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    std::size_t i = ready.top();
    ready.pop();
    order.push_back(i);
    for (std::size_t u : users[i]) {
      if (--pending[u] == 0) ready.push(u);
    }
  }
  if (order.size() != proofs.size()) {
    std::string cycle;
    for (std::size_t i = 0; i < proofs.size(); ++i) {
      if (pending[i] > 0) cycle += (cycle.empty() ? "" : ", ") + proofs[i].id;
    }
    throw Error(ErrorCode::CyclicLemmaDependency, "cyclic lemma dependency among: " + cycle);
  }
  return order;
}

bool CorpusReport::all_accepted() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.accepted; });
}

std::vector<Proof> load_corpus(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".qp") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Proof> out;
  for (const auto& f : files) {
    Proof p = load_proof(f.string());
    if (p.id.empty()) p.id = f.stem().string();
    if (p.id != f.stem().string()) {
      throw Error(ErrorCode::Parse, f.string() + ": id '" + p.id + "' does not match the file name");
    }
    out.push_back(std::move(p));
  }
  return out;
}

void load_theories(CalculusTable& table, const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".qt") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  // A theory may extend another theory; retry until no progress.
  while (!files.empty()) {
    std::vector<fs::path> later;
    std::string last_error;
    for (const auto& f : files) {
      try {
        table.load_theory_file(f.string());
      } catch (const Error& e) {
        if (e.code() != ErrorCode::UnknownCalculus) throw Error(e.code(), f.string() + ": " + e.what());
        later.push_back(f);
        last_error = f.string() + ": " + e.what();
      }
    }
    if (later.size() == files.size()) throw Error(ErrorCode::UnknownCalculus, last_error);
    files = std::move(later);
  }
}

std::string statement_text(const Proof& p) {
  std::string s;
  for (std::size_t i = 0; i < p.hyps.size(); ++i) s += (i ? ", " : "") + print(p.hyps[i]);
  if (!p.hyps.empty()) s += " |- ";
  if (p.goal) {
    s += print(p.goal);
  } else if (!p.lines.empty() && p.lines.back().formula) {
    s += print(p.lines.back().formula);
  }
  return s;
}

CorpusReport run_corpus(const std::vector<Proof>& proofs, Registry& registry,
                        const std::optional<std::string>& filter, const CheckOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  std::vector<std::size_t> order = dependency_order(proofs);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < proofs.size(); ++i) index[proofs[i].id] = i;

  std::vector<bool> wanted(proofs.size(), !filter.has_value());
  std::vector<bool> needed(proofs.size(), !filter.has_value());
  if (filter) {
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < proofs.size(); ++i) {
      if (fnmatch(filter->c_str(), proofs[i].id.c_str(), 0) == 0) {
        wanted[i] = needed[i] = true;
        stack.push_back(i);
      }
    }
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      for (const auto& dep : cited_lemmas(proofs[i])) {
        auto it = index.find(dep);
        if (it != index.end() && !needed[it->second]) {
          needed[it->second] = true;
          stack.push_back(it->second);
        }
      }
    }
  }

  CorpusReport report;
  std::set<std::string> rejected;
  for (std::size_t i : order) {
    if (!needed[i]) continue;
    const Proof& p = proofs[i];
    EntryReport e;
    e.id = p.id;
    e.title = p.title;
    e.calculus = p.calculus;
    e.statement = statement_text(p);
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> bad;
    for (const auto& dep : cited_lemmas(p)) {
      if (rejected.count(dep)) bad.push_back(dep);
    }
    if (!bad.empty()) {
      e.reason = "depends on rejected lemma '" + bad.front() + "'";
    } else if (!p.goal) {
      e.reason = "corpus entries must state a goal";
    } else {
      CheckResult r = check(p, registry.calculi(), &registry, opts);
      e.accepted = r.accepted;
      e.failing_line = r.failing_line;
      e.reason = r.reason;
      if (r.accepted) registry.add(std::move(r.theorem));
    }
    if (!e.accepted) rejected.insert(p.id);
    e.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (wanted[i]) report.entries.push_back(std::move(e));
  }
  std::sort(report.entries.begin(), report.entries.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  report.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace qhc
