#pragma once

#include <iosfwd>
#include <map>

#include <json.hpp>

#include "torhom/mfact.hpp"
#include "torhom/theta.hpp"

namespace torhom {

struct RunFlags {
  int max_index = 12;
  bool json_output = false;
  bool strict = false;
  bool parallel = false;
  bool timings = false;
  std::optional<FieldDesc> field_override;
};

struct MatrixLit {
  std::vector<std::vector<Poly>> rows;
};

struct RingDecl {
  std::string name;
  PolyRingPtr poly_ring;
  std::vector<Poly> ideal;
  std::vector<std::vector<Poly>> primes;
  std::optional<std::pair<std::vector<Poly>, Poly>> split;
  bool dim1 = false;
  bool reduced = false;
  int line = 0;
};

struct ModuleDecl {
  enum Kind { Coker, Ideal, DSum, Tensor, Dual, Transpose, Syzygy, Pushforward, TrOTr };
  std::string name;
  Kind kind = Coker;
  std::string ring;  // Coker/Ideal
  MatrixLit matrix;  // Coker
  std::vector<Poly> gens;  // Ideal
  std::vector<std::string> args;  // module references
  int karg = 0;  // Syzygy index
  int line = 0;
};

struct MfDecl {
  std::string name;
  std::string ring;
  MatrixLit phi, psi;
  int line = 0;
};

struct Command {
  std::string verb;
  std::vector<std::string> args;
  int line = 0;
};

/// Parsed session: field choice, ordered declarations, commands. Parsing does
/// name resolution and grammar checks only; Groebner-level validation happens
/// when a run materializes the declarations.
class Session {
 public:
  static Session parse(const std::string& text,
                       std::optional<FieldDesc> field_override = std::nullopt);

  std::string print() const;
  bool same_ast(const Session& o) const;

  nlohmann::json run(const RunFlags& flags) const;
  /// Renders run() as stable human-readable text; exit-code semantics match run().
  int run_stream(std::ostream& out, const RunFlags& flags) const;

  const FieldDesc& field() const { return field_; }
  const std::vector<Command>& commands() const { return commands_; }

 private:
  friend struct Exec;
  FieldDesc field_;
  bool field_explicit = false;
  std::vector<RingDecl> rings_;
  std::vector<ModuleDecl> modules_;
  std::vector<MfDecl> mfs_;
  std::vector<Command> commands_;
  enum class NameKind { Ring, Module, Mf };
  std::map<std::string, NameKind> names_;
  std::vector<std::pair<NameKind, size_t>> decl_order_;
};

/// Exit code: 0 clean, 1 any command failed, 2 parse failure (message on err).
int run_session_text(const std::string& text, std::ostream& out, std::ostream& err,
                     const RunFlags& flags);

struct CorpusOutcome {
  bool ok = false;
  int sessions = 0;
  int checks = 0;
  int failures = 0;
  std::string summary;
};

/// Runs every *.session in `dir` against its *.expected.json sibling.
CorpusOutcome corpus_run(const std::string& dir, const RunFlags& flags);

Poly parse_poly(const std::string& text, const PolyRingPtr& ring);

nlohmann::json theta_json(const ThetaReport& rep);

}  // namespace torhom
