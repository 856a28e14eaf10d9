#include "torhom/session.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include <json.hpp>

namespace torhom {

using nlohmann::json;

namespace {

[[noreturn]] void syntax_error(int line, const std::string& msg) {
  fail(Err::SyntaxError, "line " + std::to_string(line) + ": " + msg);
}

[[noreturn]] void unknown_symbol(int line, const std::string& name) {
  fail(Err::UnknownSymbol, "line " + std::to_string(line) + ": unknown name '" + name + "'");
}

// ---------------------------------------------------------------- tokenizer

struct Tok {
  enum Type { Ident, Num, Punct, End } type;
  std::string text;
  size_t col;
};

std::vector<Tok> tokenize(const std::string& s, int line) {
  std::vector<Tok> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') break;  // comment to end of line
    if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    if (isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Num, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    static const std::string puncts = "()[]{};,=:+-*^/";
    if (puncts.find(c) != std::string::npos) {
      out.push_back({Tok::Punct, std::string(1, c), i});
      ++i;
      continue;
    }
    syntax_error(line, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

// ------------------------------------------------------ polynomial parsing

struct PolyParser {
  const std::vector<Tok>& toks;
  size_t pos;
  PolyRingPtr ring;
  int line;

  const Tok& peek() const { return toks[pos]; }
  const Tok& next() { return toks[pos++]; }
  bool at_punct(const char* p) const { return peek().type == Tok::Punct && peek().text == p; }
  void expect_punct(const char* p) {
    if (!at_punct(p)) syntax_error(line, std::string("expected '") + p + "'");
    ++pos;
  }

  bool ident_is_var_run(const std::string& text) const {
    if (ring->var_index(text) >= 0) return true;
    for (char c : text)
      if (ring->var_index(std::string(1, c)) < 0) return false;
    return true;
  }

  /// Juxtaposition only continues over tokens that are certainly part of the
  /// polynomial, so keywords like `dim` after a poly end the expression.
  bool starts_atom() const {
    const Tok& t = peek();
    if (t.type == Tok::Num) return true;
    if (t.type == Tok::Ident) return ident_is_var_run(t.text);
    return t.type == Tok::Punct && t.text == "(";
  }

  Poly parse_expr() {
    Poly acc = at_punct("-") ? (next(), -parse_term()) : parse_term();
    while (at_punct("+") || at_punct("-")) {
      bool minus = peek().text == "-";
      ++pos;
      Poly t = parse_term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  Poly parse_term() {
    Poly acc = parse_factor();
    while (true) {
      if (at_punct("*")) {
        ++pos;
        acc = acc * parse_factor();
      } else if (starts_atom()) {
        acc = acc * parse_factor();  // juxtaposition
      } else {
        break;
      }
    }
    return acc;
  }

  Poly parse_factor() {
    Poly base = parse_atom();
    while (at_punct("^")) {
      ++pos;
      if (peek().type != Tok::Num) syntax_error(line, "expected exponent");
      unsigned long e = std::stoul(next().text);
      Poly p = Poly::constant(ring, 1);
      for (unsigned long k = 0; k < e; ++k) p = p * base;
      base = std::move(p);
    }
    return base;
  }

  Poly parse_atom() {
    const Tok& t = peek();
    if (t.type == Tok::Num) {
      ++pos;
      mpz_class num(t.text);
      if (at_punct("/") && toks[pos + 1].type == Tok::Num) {
        pos += 1;
        mpz_class den(next().text);
        return Poly::constant(ring, FieldElem::of(ring->field, mpq_class(num, den)));
      }
      return Poly::constant(ring, FieldElem::of(ring->field, mpq_class(num)));
    }
    if (t.type == Tok::Ident) {
      ++pos;
      int vi = ring->var_index(t.text);
      if (vi >= 0) return Poly::variable(ring, static_cast<size_t>(vi));
      // split a run like "xy" into declared single-letter variables
      Poly acc = Poly::constant(ring, 1);
      for (char c : t.text) {
        int k = ring->var_index(std::string(1, c));
        if (k < 0) unknown_symbol(line, t.text);
        acc = acc * Poly::variable(ring, static_cast<size_t>(k));
      }
      return acc;
    }
    if (t.type == Tok::Punct && t.text == "(") {
      ++pos;
      Poly e = parse_expr();
      expect_punct(")");
      return e;
    }
    if (t.type == Tok::Punct && t.text == "-") {
      ++pos;
      return -parse_factor();
    }
    syntax_error(line, "expected polynomial atom, got '" + t.text + "'");
  }
};

Poly parse_poly_toks(const std::vector<Tok>& toks, size_t& pos, const PolyRingPtr& ring,
                     int line) {
  PolyParser p{toks, pos, ring, line};
  Poly r = p.parse_expr();
  pos = p.pos;
  return r;
}

// ---------------------------------------------------------- declaration AST

bool matrix_equal(const MatrixLit& a, const MatrixLit& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].size() != b.rows[i].size()) return false;
    for (size_t j = 0; j < a.rows[i].size(); ++j)
      if (!structurally_equal(a.rows[i][j], b.rows[i][j])) return false;
  }
  return true;
}

bool polys_equal(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!structurally_equal(a[i], b[i])) return false;
  return true;
}

const char* module_kind_name(ModuleDecl::Kind k) {
  switch (k) {
    case ModuleDecl::Coker: return "coker";
    case ModuleDecl::Ideal: return "ideal";
    case ModuleDecl::DSum: return "dsum";
    case ModuleDecl::Tensor: return "tensor";
    case ModuleDecl::Dual: return "dual";
    case ModuleDecl::Transpose: return "transpose";
    case ModuleDecl::Syzygy: return "syzygy";
    case ModuleDecl::Pushforward: return "pushforward";
    case ModuleDecl::TrOTr: return "trotr";
  }
  return "?";
}

std::string matrix_str(const MatrixLit& m) {
  std::string s = "[";
  for (size_t i = 0; i < m.rows.size(); ++i) {
    if (i) s += "; ";
    s += "[";
    for (size_t j = 0; j < m.rows[i].size(); ++j) {
      if (j) s += ", ";
      s += m.rows[i][j].str();
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace

Poly parse_poly(const std::string& text, const PolyRingPtr& ring) {
  auto toks = tokenize(text, 0);
  size_t pos = 0;
  Poly p = parse_poly_toks(toks, pos, ring, 0);
  if (toks[pos].type != Tok::End) fail(Err::SyntaxError, "trailing input after polynomial");
  return p;
}

// ------------------------------------------------------------------- parse

Session Session::parse(const std::string& text, std::optional<FieldDesc> field_override) {
  Session s;
  if (field_override) {
    s.field_ = *field_override;
    s.field_explicit = true;
  }

  // join physical lines while brackets stay open
  std::vector<std::pair<int, std::string>> lines;
  {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0, start = 0;
    std::string acc;
    int depth = 0;
    while (std::getline(in, raw)) {
      ++lineno;
      std::string stripped = raw.substr(0, raw.find('#'));
      if (acc.empty()) start = lineno;
      acc += stripped;
      acc += ' ';
      for (char c : stripped) {
        if (c == '[' || c == '(') ++depth;
        if (c == ']' || c == ')') --depth;
      }
      if (depth <= 0) {
        bool blank = acc.find_first_not_of(" \t\r") == std::string::npos;
        if (!blank) lines.push_back({start, acc});
        acc.clear();
        depth = 0;
      }
    }
    if (!acc.empty() && acc.find_first_not_of(" \t\r") != std::string::npos)
      syntax_error(lineno, "unbalanced brackets at end of input");
  }

  auto declare = [&](const std::string& name, NameKind kind, int line) {
    if (s.names_.count(name)) syntax_error(line, "duplicate name '" + name + "'");
    s.names_[name] = kind;
  };
  auto require = [&](const std::string& name, NameKind kind, int line) {
    auto it = s.names_.find(name);
    if (it == s.names_.end()) unknown_symbol(line, name);
    if (it->second != kind) syntax_error(line, "'" + name + "' is not of the expected kind");
  };
  // matrix factorizations double as modules through their cokernel
  auto require_module = [&](const std::string& name, int line) {
    auto it = s.names_.find(name);
    if (it == s.names_.end()) unknown_symbol(line, name);
    if (it->second == NameKind::Ring) syntax_error(line, "'" + name + "' names a ring");
  };

  bool any_ring = false;
  for (auto& [line, body] : lines) {
    auto toks = tokenize(body, line);
    size_t pos = 0;
    auto peek = [&]() -> const Tok& { return toks[pos]; };
    auto next = [&]() -> const Tok& { return toks[pos++]; };
    auto at_punct = [&](const char* p) {
      return peek().type == Tok::Punct && peek().text == p;
    };
    auto expect_punct = [&](const char* p) {
      if (!at_punct(p)) syntax_error(line, std::string("expected '") + p + "'");
      ++pos;
    };
    auto expect_ident = [&]() -> std::string {
      if (peek().type != Tok::Ident) syntax_error(line, "expected a name");
      return next().text;
    };
    auto expect_num = [&]() -> long {
      bool neg = at_punct("-");
      if (neg) ++pos;
      if (peek().type != Tok::Num) syntax_error(line, "expected a number");
      long v = std::stol(next().text);
      return neg ? -v : v;
    };
    auto at_end = [&]() { return peek().type == Tok::End; };

    if (peek().type != Tok::Ident) syntax_error(line, "expected a declaration or command");
    std::string head = next().text;

    if (head == "field") {
      if (any_ring) syntax_error(line, "field must be declared before any ring");
      std::string which = expect_ident();
      FieldDesc f;
      if (which == "Q") {
        f.p = 0;
      } else if (which == "Fp") {
        long p = expect_num();
        if (p <= 3) syntax_error(line, "prime field needs p > 3");
        f.p = static_cast<unsigned long>(p);
      } else {
        syntax_error(line, "field must be Q or Fp <p>");
      }
      if (!s.field_explicit) s.field_ = f;  // an override wins
      s.field_explicit = true;
      if (!at_end()) syntax_error(line, "trailing input after field declaration");
      continue;
    }

    if (head == "ring") {
      any_ring = true;
      RingDecl d;
      d.line = line;
      d.name = expect_ident();
      declare(d.name, NameKind::Ring, line);
      expect_punct("=");
      if (expect_ident() != "poly") syntax_error(line, "expected poly(...)");
      expect_punct("(");
      std::vector<std::string> vars;
      std::vector<long> weights;
      while (!at_punct(")")) {
        vars.push_back(expect_ident());
        expect_punct(":");
        weights.push_back(expect_num());
        if (at_punct(",")) ++pos;
      }
      expect_punct(")");
      d.poly_ring = make_poly_ring(vars, weights, s.field_);
      expect_punct("/");
      expect_punct("(");
      while (!at_punct(")")) {
        d.ideal.push_back(parse_poly_toks(toks, pos, d.poly_ring, line));
        if (at_punct(",")) ++pos;
      }
      expect_punct(")");
      while (!at_end()) {
        std::string kw = expect_ident();
        if (kw == "primes") {
          while (at_punct("(")) {
            ++pos;
            std::vector<Poly> gens;
            while (!at_punct(")")) {
              gens.push_back(parse_poly_toks(toks, pos, d.poly_ring, line));
              if (at_punct(",")) ++pos;
            }
            expect_punct(")");
            d.primes.push_back(std::move(gens));
            if (at_punct(";")) ++pos;
          }
        } else if (kw == "split") {
          if (expect_ident() != "base") syntax_error(line, "expected split base=(...)");
          expect_punct("=");
          expect_punct("(");
          std::vector<Poly> base;
          while (!at_punct(")")) {
            base.push_back(parse_poly_toks(toks, pos, d.poly_ring, line));
            if (at_punct(",")) ++pos;
          }
          expect_punct(")");
          if (expect_ident() != "f") syntax_error(line, "expected f=<poly> in split");
          expect_punct("=");
          Poly f = parse_poly_toks(toks, pos, d.poly_ring, line);
          d.split = {std::move(base), std::move(f)};
        } else if (kw == "dim") {
          if (expect_num() != 1) syntax_error(line, "only dim 1 is supported");
          d.dim1 = true;
        } else if (kw == "reduced") {
          d.reduced = true;
        } else {
          syntax_error(line, "unknown ring attribute '" + kw + "'");
        }
      }
      s.decl_order_.push_back({NameKind::Ring, s.rings_.size()});
      s.rings_.push_back(std::move(d));
      continue;
    }

    if (head == "module") {
      ModuleDecl d;
      d.line = line;
      d.name = expect_ident();
      expect_punct("=");
      std::string kind = expect_ident();
      auto parse_matrix = [&](const PolyRingPtr& ring) {
        MatrixLit m;
        expect_punct("[");
        while (at_punct("[")) {
          ++pos;
          std::vector<Poly> row;
          while (!at_punct("]")) {
            row.push_back(parse_poly_toks(toks, pos, ring, line));
            if (at_punct(",")) ++pos;
          }
          expect_punct("]");
          m.rows.push_back(std::move(row));
          if (at_punct(";")) ++pos;
        }
        expect_punct("]");
        return m;
      };
      auto ring_of = [&](const std::string& rname) -> const RingDecl& {
        require(rname, NameKind::Ring, line);
        for (const auto& r : s.rings_)
          if (r.name == rname) return r;
        unknown_symbol(line, rname);
      };
      if (kind == "coker") {
        d.kind = ModuleDecl::Coker;
        d.ring = expect_ident();
        d.matrix = parse_matrix(ring_of(d.ring).poly_ring);
      } else if (kind == "ideal") {
        d.kind = ModuleDecl::Ideal;
        d.ring = expect_ident();
        const auto& rd = ring_of(d.ring);
        expect_punct("(");
        while (!at_punct(")")) {
          d.gens.push_back(parse_poly_toks(toks, pos, rd.poly_ring, line));
          if (at_punct(",")) ++pos;
        }
        expect_punct(")");
      } else {
        static const std::map<std::string, ModuleDecl::Kind> kinds = {
            {"dsum", ModuleDecl::DSum},          {"tensor", ModuleDecl::Tensor},
            {"dual", ModuleDecl::Dual},          {"transpose", ModuleDecl::Transpose},
            {"syzygy", ModuleDecl::Syzygy},      {"pushforward", ModuleDecl::Pushforward},
            {"trotr", ModuleDecl::TrOTr},
        };
        auto it = kinds.find(kind);
        if (it == kinds.end()) syntax_error(line, "unknown module constructor '" + kind + "'");
        d.kind = it->second;
        while (peek().type == Tok::Ident) {
          std::string arg = next().text;
          require_module(arg, line);
          d.args.push_back(arg);
        }
        if (d.kind == ModuleDecl::Syzygy) {
          d.karg = static_cast<int>(expect_num());
          if (d.args.size() != 1) syntax_error(line, "syzygy takes one module and an index");
        } else if (d.kind == ModuleDecl::Tensor) {
          if (d.args.size() != 2) syntax_error(line, "tensor takes two modules");
        } else if (d.kind == ModuleDecl::DSum) {
          if (d.args.empty()) syntax_error(line, "dsum needs at least one module");
        } else if (d.args.size() != 1) {
          syntax_error(line, "constructor takes exactly one module");
        }
      }
      if (!at_end()) syntax_error(line, "trailing input after module declaration");
      declare(d.name, NameKind::Module, line);
      s.decl_order_.push_back({NameKind::Module, s.modules_.size()});
      s.modules_.push_back(std::move(d));
      continue;
    }

    if (head == "mf") {
      MfDecl d;
      d.line = line;
      d.name = expect_ident();
      expect_punct("=");
      if (expect_ident() != "verify") syntax_error(line, "expected mf <name> = verify ...");
      d.ring = expect_ident();
      require(d.ring, NameKind::Ring, line);
      const RingDecl* rd = nullptr;
      for (const auto& r : s.rings_)
        if (r.name == d.ring) rd = &r;
      auto parse_matrix = [&]() {
        MatrixLit m;
        expect_punct("[");
        while (at_punct("[")) {
          ++pos;
          std::vector<Poly> row;
          while (!at_punct("]")) {
            row.push_back(parse_poly_toks(toks, pos, rd->poly_ring, line));
            if (at_punct(",")) ++pos;
          }
          expect_punct("]");
          m.rows.push_back(std::move(row));
          if (at_punct(";")) ++pos;
        }
        expect_punct("]");
        return m;
      };
      d.phi = parse_matrix();
      d.psi = parse_matrix();
      if (!at_end()) syntax_error(line, "trailing input after mf declaration");
      declare(d.name, NameKind::Mf, line);
      s.decl_order_.push_back({NameKind::Mf, s.mfs_.size()});
      s.mfs_.push_back(std::move(d));
      continue;
    }

    // commands: verb -> (module args, total args)
    static const std::map<std::string, std::pair<int, int>> arity = {
        {"resolve", {1, 2}}, {"betti", {1, 2}},   {"tor", {2, 3}},  {"torwindow", {2, 4}},
        {"theta", {2, 2}},   {"torsion", {1, 1}}, {"length", {1, 1}}, {"class", {1, 1}},
        {"hw", {1, 1}},      {"thm32", {2, 2}},   {"extring", {1, 2}}};
    auto it = arity.find(head);
    if (it == arity.end()) syntax_error(line, "unknown command '" + head + "'");
    Command c;
    c.verb = head;
    c.line = line;
    for (int k = 0; k < it->second.first; ++k) {
      std::string name = expect_ident();
      require_module(name, line);
      c.args.push_back(name);
    }
    while (!at_end()) c.args.push_back(std::to_string(expect_num()));
    if (static_cast<int>(c.args.size()) != it->second.second)
      syntax_error(line, "command '" + head + "' expects " + std::to_string(it->second.second) +
                             " arguments");
    s.commands_.push_back(std::move(c));
  }
  return s;
}

// ------------------------------------------------------------------- print

std::string Session::print() const {
  std::ostringstream os;
  os << "field " << (field_.is_rational() ? "Q" : "Fp " + std::to_string(field_.p)) << "\n";
  auto print_ring = [&](const RingDecl& r) {
    os << "ring " << r.name << " = poly(";
    for (size_t i = 0; i < r.poly_ring->vars.size(); ++i) {
      if (i) os << ", ";
      os << r.poly_ring->vars[i] << ":" << r.poly_ring->weights[i];
    }
    os << ") / (";
    for (size_t i = 0; i < r.ideal.size(); ++i) {
      if (i) os << ", ";
      os << r.ideal[i].str();
    }
    os << ")";
    if (!r.primes.empty()) {
      os << " primes ";
      for (size_t i = 0; i < r.primes.size(); ++i) {
        if (i) os << "; ";
        os << "(";
        for (size_t j = 0; j < r.primes[i].size(); ++j) {
          if (j) os << ", ";
          os << r.primes[i][j].str();
        }
        os << ")";
      }
    }
    if (r.split) {
      os << " split base=(";
      for (size_t j = 0; j < r.split->first.size(); ++j) {
        if (j) os << ", ";
        os << r.split->first[j].str();
      }
      os << ") f=" << r.split->second.str();
    }
    if (r.dim1) os << " dim 1";
    if (r.reduced) os << " reduced";
    os << "\n";
  };
  auto print_module = [&](const ModuleDecl& m) {
    os << "module " << m.name << " = " << module_kind_name(m.kind);
    switch (m.kind) {
      case ModuleDecl::Coker:
        os << " " << m.ring << " " << matrix_str(m.matrix);
        break;
      case ModuleDecl::Ideal: {
        os << " " << m.ring << " (";
        for (size_t j = 0; j < m.gens.size(); ++j) {
          if (j) os << ", ";
          os << m.gens[j].str();
        }
        os << ")";
        break;
      }
      case ModuleDecl::Syzygy:
        os << " " << m.args[0] << " " << m.karg;
        break;
      default:
        for (const auto& a : m.args) os << " " << a;
    }
    os << "\n";
  };
  for (const auto& [kind, idx] : decl_order_) {
    if (kind == NameKind::Ring)
      print_ring(rings_[idx]);
    else if (kind == NameKind::Module)
      print_module(modules_[idx]);
    else
      os << "mf " << mfs_[idx].name << " = verify " << mfs_[idx].ring << " "
         << matrix_str(mfs_[idx].phi) << " " << matrix_str(mfs_[idx].psi) << "\n";
  }
  for (const auto& c : commands_) {
    os << c.verb;
    for (const auto& a : c.args) os << " " << a;
    os << "\n";
  }
  return os.str();
}

bool Session::same_ast(const Session& o) const {
  if (!(field_ == o.field_)) return false;
  if (rings_.size() != o.rings_.size() || modules_.size() != o.modules_.size() ||
      mfs_.size() != o.mfs_.size() || commands_.size() != o.commands_.size())
    return false;
  for (size_t i = 0; i < rings_.size(); ++i) {
    const auto& a = rings_[i];
    const auto& b = o.rings_[i];
    if (a.name != b.name || !a.poly_ring->same_structure(*b.poly_ring)) return false;
    if (!polys_equal(a.ideal, b.ideal)) return false;
    if (a.primes.size() != b.primes.size()) return false;
    for (size_t j = 0; j < a.primes.size(); ++j)
      if (!polys_equal(a.primes[j], b.primes[j])) return false;
    if (a.split.has_value() != b.split.has_value()) return false;
    if (a.split && (!polys_equal(a.split->first, b.split->first) ||
                    !structurally_equal(a.split->second, b.split->second)))
      return false;
    if (a.dim1 != b.dim1 || a.reduced != b.reduced) return false;
  }
  for (size_t i = 0; i < modules_.size(); ++i) {
    const auto& a = modules_[i];
    const auto& b = o.modules_[i];
    if (a.name != b.name || a.kind != b.kind || a.ring != b.ring || a.args != b.args ||
        a.karg != b.karg)
      return false;
    if (!matrix_equal(a.matrix, b.matrix) || !polys_equal(a.gens, b.gens)) return false;
  }
  for (size_t i = 0; i < mfs_.size(); ++i) {
    const auto& a = mfs_[i];
    const auto& b = o.mfs_[i];
    if (a.name != b.name || a.ring != b.ring) return false;
    if (!matrix_equal(a.phi, b.phi) || !matrix_equal(a.psi, b.psi)) return false;
  }
  for (size_t i = 0; i < commands_.size(); ++i)
    if (commands_[i].verb != o.commands_[i].verb || commands_[i].args != o.commands_[i].args)
      return false;
  return true;
}

// --------------------------------------------------------------- execution

namespace {

json window_json(const TorWindow& w) {
  json arr = json::array();
  for (int i = w.lo; i <= w.hi; ++i) {
    auto l = w.at(i);
    arr.push_back({i, l ? json(*l) : json("inf")});
  }
  return arr;
}

json betti_json(const BettiTable& t) {
  json table = json::array();
  for (const auto& [key, count] : t.entries)
    table.push_back({{"i", key.first}, {"d", key.second}, {"count", count}});
  return {{"table", table}, {"total", t.totals}};
}

json class_json(const ClassReport& c) {
  json lens = json::array(), rlens = json::array();
  for (const auto& [label, l] : c.localized_lengths) lens.push_back({label, l});
  for (const auto& [label, l] : c.ring_lengths) rlens.push_back({label, l});
  json j{{"localized_lengths", lens},
         {"ring_lengths", rlens},
         {"is_zero_class", c.is_zero_class}};
  j["ratio"] = c.ratio ? json(c.ratio->get_str()) : json(nullptr);
  j["has_rank"] = c.has_rank ? json(*c.has_rank) : json(nullptr);
  return j;
}

}  // namespace

json theta_json(const ThetaReport& rep) {
  json j;
  j["value"] = rep.defined() ? json(*rep.value) : json(nullptr);
  j["reason"] = theta_reason_name(rep.reason);
  j["window"] = window_json(rep.window);
  j["period"] =
      rep.period ? json({rep.period->start, rep.period->period}) : json(nullptr);
  return j;
}

struct Exec {
  const Session& s;
  RunFlags flags;
  std::map<std::string, RingPtr> rings;
  std::map<std::string, PresentedModule> modules;
  std::map<std::string, MatrixFactorization> mfs;

  RingPtr ring(const std::string& name) {
    auto it = rings.find(name);
    if (it != rings.end()) return it->second;
    for (const auto& d : s.rings_)
      if (d.name == name) {
        QuotientRing::Options opts;
        opts.minimal_primes = d.primes;
        opts.split = d.split;
        opts.dim1 = d.dim1;
        opts.reduced = d.reduced;
        RingPtr R = QuotientRing::make(d.poly_ring, d.ideal, opts);
        rings[name] = R;
        return R;
      }
    fail(Err::UnknownSymbol, "ring '" + name + "' not declared");
  }

  PresentedModule module(const std::string& name) {
    auto it = modules.find(name);
    if (it != modules.end()) return it->second;
    for (const auto& d : s.modules_) {
      if (d.name != name) continue;
      PresentedModule m = materialize(d);
      modules[name] = m;
      return m;
    }
    for (const auto& d : s.mfs_)
      if (d.name == name)
        fail(Err::NotAFactorization,
             "matrix factorization '" + name + "' failed verification earlier");
    fail(Err::UnknownSymbol, "module '" + name + "' not declared");
  }

  PresentedModule materialize(const ModuleDecl& d) {
    switch (d.kind) {
      case ModuleDecl::Coker: {
        RingPtr R = ring(d.ring);
        size_t rows = d.matrix.rows.size();
        size_t cols = rows ? d.matrix.rows[0].size() : 0;
        for (const auto& row : d.matrix.rows)
          if (row.size() != cols) fail(Err::ShapeMismatch, "ragged matrix literal");
        PolyMatrix A(R->ambient(), rows, cols);
        for (size_t i = 0; i < rows; ++i)
          for (size_t j = 0; j < cols; ++j) A.at(i, j) = d.matrix.rows[i][j];
        return present(R, std::move(A), std::nullopt, "coker " + d.name);
      }
      case ModuleDecl::Ideal:
        return present_ideal(ring(d.ring), d.gens);
      case ModuleDecl::DSum: {
        std::vector<PresentedModule> parts;
        for (const auto& a : d.args) parts.push_back(module(a));
        return direct_sum(parts);
      }
      case ModuleDecl::Tensor:
        return tensor(module(d.args[0]), module(d.args[1]));
      case ModuleDecl::Dual:
        return dual(module(d.args[0])).module;
      case ModuleDecl::Transpose:
        return transpose(module(d.args[0]));
      case ModuleDecl::Syzygy:
        return syzygy_module(module(d.args[0]), d.karg);
      case ModuleDecl::Pushforward:
        return pushforward(module(d.args[0]));
      case ModuleDecl::TrOTr:
        return tr_omega_tr_omega(module(d.args[0]));
    }
    fail(Err::Internal, "unhandled module kind");
  }

  json run_mf_decl(const MfDecl& d) {
    RingPtr R = ring(d.ring);
    auto lit_to_matrix = [&](const MatrixLit& m) {
      size_t rows = m.rows.size();
      size_t cols = rows ? m.rows[0].size() : 0;
      PolyMatrix A(R->ambient(), rows, cols);
      for (size_t i = 0; i < rows; ++i) {
        if (m.rows[i].size() != cols) fail(Err::ShapeMismatch, "ragged matrix literal");
        for (size_t j = 0; j < cols; ++j) A.at(i, j) = m.rows[i][j];
      }
      return A;
    };
    MatrixFactorization mf = verify_mf(R, lit_to_matrix(d.phi), lit_to_matrix(d.psi));
    mfs[d.name] = mf;
    // the cokernel is available as a module named after the factorization
    modules[d.name] = mf_cokernel(mf);
    return json{{"command", "mf"}, {"name", d.name},       {"ok", true},
                {"valid", true},   {"reduced", mf.reduced}, {"size", mf.size()}};
  }

  json run_command(const Command& c) {
    json j;
    j["command"] = c.verb;
    int max_index = flags.max_index;
    if (c.verb == "resolve" || c.verb == "betti") {
      int n = std::stoi(c.args[1]);
      j["module"] = c.args[0];
      j["n"] = n;
      if (c.verb == "resolve") {
        Resolution res = resolve(module(c.args[0]), n);
        json ranks = json::array(), degs = json::array(), diffs = json::array();
        for (int i = 0; i <= n; ++i) {
          ranks.push_back(res.rank(i));
          degs.push_back(res.degs[i]);
        }
        for (const auto& d : res.diffs) {
          json rows = json::array();
          for (size_t r = 0; r < d.rows(); ++r) {
            json row = json::array();
            for (size_t cidx = 0; cidx < d.cols(); ++cidx) row.push_back(d.at(r, cidx).str());
            rows.push_back(row);
          }
          diffs.push_back(rows);
        }
        auto per = detect_periodicity(res);
        j["ranks"] = ranks;
        j["degrees"] = degs;
        j["differentials"] = diffs;
        j["period"] = per ? json({per->start, per->period}) : json(nullptr);
      } else {
        j.update(betti_json(betti(module(c.args[0]), n)));
      }
    } else if (c.verb == "tor") {
      j["modules"] = {c.args[0], c.args[1]};
      int i = std::stoi(c.args[2]);
      j["i"] = i;
      PresentedModule T = tor(module(c.args[0]), module(c.args[1]), i);
      auto len = length_of(T);
      j["length"] = len ? json(*len) : json("inf");
      j["is_zero"] = is_zero_module(T);
    } else if (c.verb == "torwindow") {
      j["modules"] = {c.args[0], c.args[1]};
      int lo = std::stoi(c.args[2]), hi = std::stoi(c.args[3]);
      j["lo"] = lo;
      j["hi"] = hi;
      j["window"] = window_json(tor_lengths(module(c.args[0]), module(c.args[1]), lo, hi));
    } else if (c.verb == "theta") {
      j["modules"] = {c.args[0], c.args[1]};
      ThetaReport rep = theta(module(c.args[0]), module(c.args[1]), max_index);
      j.update(theta_json(rep));
    } else if (c.verb == "torsion") {
      j["module"] = c.args[0];
      TorsionResult t = torsion_submodule(module(c.args[0]));
      j["is_torsion_free"] = t.is_torsion_free;
      auto len = length_of(t.torsion);
      j["torsion_length"] = len ? json(*len) : json("inf");
    } else if (c.verb == "length") {
      j["module"] = c.args[0];
      auto len = length_of(module(c.args[0]));
      j["length"] = len ? json(*len) : json("inf");
    } else if (c.verb == "class") {
      j["module"] = c.args[0];
      j.update(class_json(reduced_class(module(c.args[0]))));
    } else if (c.verb == "hw") {
      j["module"] = c.args[0];
      HWVerdict v = hw_verdict(module(c.args[0]), max_index);
      j["is_free"] = v.is_free;
      j["is_torsion_free"] = v.is_torsion_free;
      j["dual_nonzero"] = v.dual_nonzero;
      j["tensor_dual_torsion"] = v.tensor_dual_torsion;
      j["theta_self"] = theta_json(v.theta_self);
      j["consistent_with_conjecture"] = v.consistent_with_conjecture;
    } else if (c.verb == "thm32") {
      j["modules"] = {c.args[0], c.args[1]};
      VanishingCheck v = tor_vanishing_check(module(c.args[0]), module(c.args[1]), max_index);
      json hyp{{"finite_tor_lengths", v.hyp_finite_lengths},
               {"tensor_torsion_free", v.hyp_tensor_torsion_free},
               {"tensor_nonzero", v.hyp_tensor_nonzero}};
      hyp["theta_zero"] = v.hyp_theta_zero ? json(*v.hyp_theta_zero) : json(nullptr);
      json concl{{"tor_vanish_1_6", v.concl_tor_vanish},
                 {"M_torsion_free", v.concl_M_torsion_free},
                 {"N_torsion_free", v.concl_N_torsion_free}};
      j["hypotheses"] = hyp;
      j["conclusion"] = concl;
      auto h = v.hypotheses_hold();
      j["hypotheses_hold"] = h ? json(*h) : json(nullptr);
      j["conclusion_holds"] = v.conclusion_holds();
      j["consistent"] = v.consistent();
    } else if (c.verb == "extring") {
      j["module"] = c.args[0];
      int i = std::stoi(c.args[1]);
      j["i"] = i;
      PresentedModule E = ext_ring(module(c.args[0]), i);
      auto len = length_of(E);
      j["length"] = len ? json(*len) : json("inf");
      j["is_zero"] = is_zero_module(E);
    } else {
      fail(Err::Internal, "unhandled command verb");
    }
    j["ok"] = true;
    return j;
  }
};

json Session::run(const RunFlags& flags) const {
  Exec ex{*this, flags};
  json report;
  report["schema"] = 1;
  report["engine"] = {{"max_index", flags.max_index},
                      {"field", field_.name()},
                      {"strict", flags.strict}};
  json results = json::array();
  auto guard = [&](auto&& fn, const char* verb) -> json {
    auto t0 = std::chrono::steady_clock::now();
    json j;
    try {
      j = fn();
    } catch (const Error& e) {
      j = {{"command", verb}, {"ok", false}, {"error", e.what()}};
    } catch (const std::exception& e) {
      j = {{"command", verb}, {"ok", false}, {"error", std::string("internal: ") + e.what()}};
    }
    if (flags.timings) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      j["timing_ms"] = ms;
    }
    return j;
  };

  // matrix factorizations verify eagerly and report
  for (const auto& d : mfs_) {
    json j = guard([&] { return ex.run_mf_decl(d); }, "mf");
    if (!j.value("ok", false)) j["name"] = d.name;
    results.push_back(j);
    if (flags.strict && !j.value("ok", false)) {
      report["results"] = results;
      return report;
    }
  }

  if (flags.parallel) {
    // materialize every declaration first, then commands are independent
    for (const auto& d : modules_) {
      try {
        ex.module(d.name);
      } catch (const Error&) {
        // surfaced when a command touches it
      }
    }
    std::vector<std::future<json>> futs;
    for (const auto& c : commands_)
      futs.push_back(std::async(std::launch::async, [&ex, &c, &guard] {
        return guard([&] { return ex.run_command(c); }, c.verb.c_str());
      }));
    for (auto& f : futs) results.push_back(f.get());
  } else {
    for (const auto& c : commands_) {
      json j = guard([&] { return ex.run_command(c); }, c.verb.c_str());
      bool ok = j.value("ok", false);
      if (!ok) {
        j["args"] = c.args;
        j["line"] = c.line;
      }
      results.push_back(j);
      if (flags.strict && !ok) break;
    }
  }
  report["results"] = results;
  return report;
}

namespace {

std::string text_of_result(const json& j) {
  std::ostringstream os;
  std::string verb = j.value("command", "?");
  if (!j.value("ok", false)) {
    os << "! " << verb << " failed: " << j.value("error", "unknown error");
    return os.str();
  }
  auto len_str = [&](const json& v) {
    return v.is_string() ? v.get<std::string>() : std::to_string(v.get<long>());
  };
  if (verb == "theta") {
    os << "theta(" << j["modules"][0].get<std::string>() << ", "
       << j["modules"][1].get<std::string>() << ") = "
       << (j["value"].is_null() ? "undefined [" + j["reason"].get<std::string>() + "]"
                                : std::to_string(j["value"].get<long>()));
  } else if (verb == "length") {
    os << "length(" << j["module"].get<std::string>() << ") = " << len_str(j["length"]);
  } else if (verb == "tor") {
    os << "tor_" << j["i"].get<int>() << "(" << j["modules"][0].get<std::string>() << ", "
       << j["modules"][1].get<std::string>() << "): length " << len_str(j["length"]);
  } else if (verb == "torsion") {
    os << "torsion(" << j["module"].get<std::string>() << "): "
       << (j["is_torsion_free"].get<bool>() ? "torsion-free"
                                            : "torsion of length " + len_str(j["torsion_length"]));
  } else if (verb == "hw") {
    os << "hw(" << j["module"].get<std::string>() << "): free=" << j["is_free"].get<bool>()
       << " torsion_free=" << j["is_torsion_free"].get<bool>()
       << " tensor_dual_torsion=" << j["tensor_dual_torsion"].get<bool>()
       << " consistent=" << j["consistent_with_conjecture"].get<bool>();
  } else if (verb == "class") {
    os << "class(" << j["module"].get<std::string>()
       << "): zero_class=" << j["is_zero_class"].get<bool>();
  } else {
    os << verb << ": " << j.dump();
  }
  return os.str();
}

}  // namespace

int Session::run_stream(std::ostream& out, const RunFlags& flags) const {
  json report = run(flags);
  bool any_fail = false;
  for (const auto& j : report["results"])
    if (!j.value("ok", false)) any_fail = true;
  if (flags.json_output) {
    out << report.dump(2) << "\n";
  } else {
    for (const auto& j : report["results"]) out << text_of_result(j) << "\n";
  }
  return any_fail ? 1 : 0;
}

int run_session_text(const std::string& text, std::ostream& out, std::ostream& err,
                     const RunFlags& flags) {
  try {
    Session s = Session::parse(text, flags.field_override);
    return s.run_stream(out, flags);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
}

// -------------------------------------------------------------- corpus run

namespace {

/// expected is satisfied when every key it pins equals the actual value;
/// objects recurse, everything else compares exactly.
bool subset_match(const json& expected, const json& actual, std::string path,
                  std::string& diff) {
  if (expected.is_object()) {
    if (!actual.is_object()) {
      diff = path + ": expected an object";
      return false;
    }
    for (auto it = expected.begin(); it != expected.end(); ++it) {
      if (!actual.contains(it.key())) {
        diff = path + "." + it.key() + ": missing";
        return false;
      }
      if (!subset_match(it.value(), actual.at(it.key()), path + "." + it.key(), diff))
        return false;
    }
    return true;
  }
  if (expected != actual) {
    diff = path + ": expected " + expected.dump() + " got " + actual.dump();
    return false;
  }
  return true;
}

}  // namespace

CorpusOutcome corpus_run(const std::string& dir, const RunFlags& flags) {
  namespace fs = std::filesystem;
  CorpusOutcome out;
  std::ostringstream os;
  std::vector<fs::path> sessions;
  if (fs::exists(dir))
    for (const auto& e : fs::directory_iterator(dir))
      if (e.path().extension() == ".session") sessions.push_back(e.path());
  std::sort(sessions.begin(), sessions.end());
  if (sessions.empty()) {
    out.ok = false;
    out.summary = "no corpus found in '" + dir + "'";
    return out;
  }
  for (const auto& p : sessions) {
    ++out.sessions;
    fs::path exp_path = p;
    exp_path.replace_extension(".expected.json");
    std::ifstream sf(p), ef(exp_path);
    if (!ef) {
      ++out.failures;
      os << "FAIL " << p.filename().string() << ": missing " << exp_path.filename().string()
         << "\n";
      continue;
    }
    std::stringstream buf;
    buf << sf.rdbuf();
    json expected;
    ef >> expected;
    RunFlags f = flags;
    f.json_output = true;
    if (expected.contains("flags") && expected["flags"].contains("max_index"))
      f.max_index = expected["flags"]["max_index"].get<int>();
    json actual;
    try {
      Session s = Session::parse(buf.str(), f.field_override);
      actual = s.run(f);
    } catch (const Error& e) {
      ++out.failures;
      os << "FAIL " << p.filename().string() << ": parse error: " << e.what() << "\n";
      continue;
    }
    const json& want = expected["results"];
    const json& got = actual["results"];
    bool session_ok = true;
    for (size_t i = 0; i < want.size(); ++i) {
      ++out.checks;
      std::string diff;
      if (i >= got.size()) {
        session_ok = false;
        ++out.failures;
        os << "FAIL " << p.filename().string() << " result #" << i << ": missing\n";
        continue;
      }
      if (!subset_match(want[i], got[i], "results[" + std::to_string(i) + "]", diff)) {
        session_ok = false;
        ++out.failures;
        std::string verb = got[i].value("command", "?");
        os << "FAIL " << p.filename().string() << " command '" << verb << "' " << diff << "\n";
      }
    }
    if (session_ok) os << "PASS " << p.filename().string() << " (" << want.size() << " checks)\n";
  }
  out.ok = out.failures == 0;
  os << (out.ok ? "corpus: all sessions passed" : "corpus: FAILURES present") << " ("
     << out.sessions << " sessions, " << out.checks << " checks, " << out.failures
     << " failures)\n";
  out.summary = os.str();
  return out;
}

}  // namespace torhom
