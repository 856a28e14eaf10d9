#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "torhom/session.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open '" << path << "'\n";
    exit(2);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::optional<torhom::FieldDesc> parse_field_flag(const std::string& f) {
  if (f.empty()) return std::nullopt;
  if (f == "Q") return torhom::FieldDesc{0};
  if (f.rfind("Fp", 0) == 0) {
    unsigned long p = std::stoul(f.substr(2));
    return torhom::FieldDesc{p};
  }
  std::cerr << "bad --field value '" << f << "' (use Q or Fp<p>)\n";
  exit(2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"torhom: homological invariants of graded modules over quotient rings"};
  app.require_subcommand(1);

  torhom::RunFlags flags;
  std::string session_path;
  std::string field_flag;
  std::string corpus_dir = "corpus";

  auto* run = app.add_subcommand("run", "run a session file (or stdin with '-')");
  run->add_option("session", session_path, "session file path, or - for stdin");
  run->add_option("--max-index", flags.max_index, "resolution / Tor window depth")
      ->default_val(12);
  run->add_flag("--json", flags.json_output, "emit the JSON report");
  run->add_flag("--strict", flags.strict, "abort on the first failing command");
  run->add_flag("--parallel", flags.parallel, "evaluate commands concurrently");
  run->add_flag("--timings", flags.timings, "include per-command timings (non-deterministic)");
  run->add_option("--field", field_flag, "override the session field (Q or Fp<p>)");

  auto* corpus = app.add_subcommand("corpus", "run the bundled regression corpus");
  corpus->add_option("--corpus", corpus_dir, "directory of .session/.expected.json pairs")
      ->default_val("corpus");
  corpus->add_option("--max-index", flags.max_index, "default window depth")->default_val(12);

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    flags.field_override = parse_field_flag(field_flag);
    return torhom::run_session_text(read_input(session_path), std::cout, std::cerr, flags);
  }
  if (corpus->parsed()) {
    torhom::CorpusOutcome out = torhom::corpus_run(corpus_dir, flags);
    std::cout << out.summary;
    if (!out.ok && out.sessions == 0) std::cerr << "error: " << out.summary << "\n";
    return out.ok ? 0 : 1;
  }
  return 2;
}
