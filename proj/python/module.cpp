#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "torhom/session.hpp"

namespace py = pybind11;

namespace {

torhom::RunFlags make_flags(int max_index, bool strict) {
  torhom::RunFlags f;
  f.max_index = max_index;
  f.strict = strict;
  f.json_output = true;
  return f;
}

/// Thin session handle: declarations are parsed once, commands run on demand
/// and return JSON strings.
class PySession {
 public:
  explicit PySession(const std::string& text) : session_(torhom::Session::parse(text)) {}

  std::string run_json(int max_index, bool strict) {
    return session_.run(make_flags(max_index, strict)).dump();
  }

  std::string command(const std::string& line, int max_index) {
    // append one command to the declarations and run just it
    torhom::Session s = torhom::Session::parse(session_.print() + line + "\n");
    auto report = s.run(make_flags(max_index, false));
    auto results = report["results"];
    if (results.empty()) return "{}";
    return results.back().dump();
  }

 private:
  torhom::Session session_;
};

std::string run_session(const std::string& text, int max_index, bool strict) {
  torhom::Session s = torhom::Session::parse(text);
  return s.run(make_flags(max_index, strict)).dump();
}

py::tuple corpus(const std::string& dir, int max_index) {
  torhom::CorpusOutcome out = torhom::corpus_run(dir, make_flags(max_index, false));
  return py::make_tuple(out.ok, out.summary);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact homological algebra over graded quotient rings";

  m.def("run_session", &run_session, py::arg("text"), py::arg("max_index") = 12,
        py::arg("strict") = false,
        "Parse and run a session; returns the JSON report as a string.");
  m.def("corpus_run", &corpus, py::arg("dir"), py::arg("max_index") = 12,
        "Run a corpus directory; returns (ok, summary).");

  py::class_<PySession>(m, "Session")
      .def(py::init<const std::string&>(), py::arg("text"))
      .def("run_json", &PySession::run_json, py::arg("max_index") = 12,
           py::arg("strict") = false)
      .def("command", &PySession::command, py::arg("line"), py::arg("max_index") = 12,
           "Run a single command line against the session declarations.");

  py::register_exception<torhom::Error>(m, "TorhomError");
}
