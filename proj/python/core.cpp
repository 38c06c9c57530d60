#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qhc/corpus.hpp"
#include "qhc/semantics.hpp"
#include "qhc/syntax.hpp"
#include "qhc/translate.hpp"

namespace py = pybind11;
using namespace qhc;

namespace {

py::dict model_dict(const KripkeModel& m, int world) {
  py::list rel;
  for (int u = 0; u < m.worlds; ++u) {
    for (int v = 0; v < m.worlds; ++v) {
      if (m.relation[u][v]) rel.append(py::make_tuple(u, v));
    }
  }
  py::dict val;
  for (const auto& [atom, bits] : m.valuation) {
    py::list on;
    for (int w = 0; w < m.worlds; ++w) {
      if (bits[w]) on.append(w);
    }
    val[py::str(atom)] = on;
  }
  py::dict d;
  d["worlds"] = m.worlds;
  d["relation"] = rel;
  d["valuation"] = val;
  d["world"] = world;
  return d;
}

py::object decision(const Decision& d) {
  if (!d) return py::none();
  return model_dict(d->model, d->world);
}

py::dict report_dict(const EntryReport& e) {
  py::dict d;
  d["id"] = e.id;
  d["title"] = e.title;
  d["calculus"] = e.calculus;
  d["statement"] = e.statement;
  d["accepted"] = e.accepted;
  d["failing_line"] = e.failing_line;
  d["reason"] = e.reason;
  return d;
}

Formula parse(const std::string& text, const std::string& signature) {
  Signature sig = parse_signature(signature);
  return parse_with_preamble(text, sig);
}

std::vector<py::dict> corpus_run(const std::string& corpus_dir, const std::string& theory_dir,
                                 std::optional<std::string> filter) {
  Registry reg;
  if (!theory_dir.empty()) load_theories(reg.calculi(), theory_dir);
  CorpusReport r = run_corpus(load_corpus(corpus_dir), reg, filter);
  std::vector<py::dict> out;
  for (const auto& e : r.entries) out.push_back(report_dict(e));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-sorted problem/proposition logic: parser, proof checker, translations, refuter";

  py::register_exception<Error>(m, "QhcError", PyExc_ValueError);

  py::class_<Formula>(m, "Formula")
      .def_property_readonly("sort", [](const Formula& f) { return std::string(sort_name(f.sort())); })
      .def_property_readonly("size", &Formula::size)
      .def("has_quantifiers", [](const Formula& f) { return has_quantifiers(f); })
      .def("__str__", [](const Formula& f) { return print(f); })
      .def("__repr__", [](const Formula& f) { return "Formula('" + print(f) + "')"; })
      .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
      .def("__hash__", &Formula::hash);

  m.def("parse", &parse, py::arg("text"), py::arg("signature") = "",
        "Parse and typecheck a formula; declarations may precede it or come from `signature`.");
  m.def(
      "translate",
      [](const std::string& target, const Formula& f, bool expand) {
        auto t = translation_by_name(target);
        if (!t) throw py::value_error("unknown translation '" + target + "'");
        Formula g = translate(*t, f);
        return expand ? expand_modalities(g) : fold_modalities(g);
      },
      py::arg("target"), py::arg("formula"), py::arg("expand_modality") = false);
  m.def("decide_s4", [](const Formula& f) { return decision(decide_s4(f)); },
        "None if S4-valid, else a countermodel dict.");
  m.def("decide_ipc", [](const Formula& f) { return decision(decide_ipc(f)); },
        "None if IPC-valid, else a countermodel dict for the box image.");
  m.def(
      "refute",
      [](const Formula& f, bool all_channels) {
        std::vector<py::dict> out;
        for (const auto& r : refute_qhc(f, all_channels)) {
          py::dict d = model_dict(r.model, r.world);
          d["channel"] = std::string(channel_name(r.channel));
          d["translated"] = print(r.translated);
          out.push_back(d);
        }
        return out;
      },
      py::arg("formula"), py::arg("all_channels") = false);
  m.def(
      "check_proof",
      [](const std::string& text, const std::string& theory_dir) {
        CalculusTable table;
        if (!theory_dir.empty()) load_theories(table, theory_dir);
        CheckResult r = check(parse_proof(text), table, nullptr);
        py::dict d;
        d["accepted"] = r.accepted;
        d["failing_line"] = r.failing_line;
        d["reason"] = r.reason;
        return d;
      },
      py::arg("text"), py::arg("theory_dir") = "",
      "Check a proof script that cites no lemmas.");
  m.def("corpus_run", &corpus_run, py::arg("corpus_dir"), py::arg("theory_dir") = "",
        py::arg("filter") = py::none());
}
