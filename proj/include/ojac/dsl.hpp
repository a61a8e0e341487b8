#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ojac/algebroid.hpp"
#include "ojac/error.hpp"

namespace ojac::dsl {

struct Pos {
  int line = 1;
  int col = 1;
};

/// Lexical, syntactic, resolution and elaboration errors, with position.
class DslError : public Error {
 public:
  DslError(Pos pos, const std::string& msg);
  Pos pos;
};

/// Expression tree. Names are qualified: x, P[x], d[x], P[d[x]].
struct Expr {
  enum class Kind { Number, Name, Exp, Neg, Add, Sub, Mul, Pow };
  Kind kind = Kind::Number;
  Rational number;    // Number value, Exp rate
  std::string name;   // Name, Exp generator
  unsigned power = 0; // Pow exponent
  std::vector<Expr> args;
  Pos pos;

  /// Structural equality; positions are ignored.
  bool operator==(const Expr& other) const;
};

struct CoordDecl {
  std::string name;
  Parity parity = Parity::Even;
  int weight = 0;
  Pos pos;
  bool operator==(const CoordDecl& o) const { return name == o.name && parity == o.parity && weight == o.weight; }
};

struct ChartDecl {
  std::string name;
  std::vector<CoordDecl> coords;
  Pos pos;
  bool operator==(const ChartDecl& o) const { return name == o.name && coords == o.coords; }
};

/// FIELD = expr; or FIELD[i, j, ...] = expr; for indexed algebroid fields.
struct FieldDecl {
  std::string name;
  std::vector<std::string> indices;
  Expr value;
  Pos pos;
  bool operator==(const FieldDecl& o) const { return name == o.name && indices == o.indices && value == o.value; }
};

struct StructureDecl {
  std::string kind;  // oddjacobi | schouten | qmanifold | quasiq | exactqs | algebroid
  std::string name;
  std::string chart;
  std::vector<FieldDecl> fields;
  Pos pos;
  bool operator==(const StructureDecl& o) const {
    return kind == o.kind && name == o.name && chart == o.chart && fields == o.fields;
  }
};

struct Directive {
  enum class Kind { Check, Bracket, Convert };
  Kind kind = Kind::Check;
  std::string target;
  std::vector<Expr> args;  // bracket operands
  std::string via;         // convert target
  Pos pos;
  bool operator==(const Directive& o) const {
    return kind == o.kind && target == o.target && args == o.args && via == o.via;
  }
};

struct Model {
  std::vector<ChartDecl> charts;
  std::vector<StructureDecl> structures;
  std::vector<Directive> directives;
  bool operator==(const Model&) const = default;
};

Model parse(std::string_view source);
Expr parse_expr(std::string_view source);

/// Canonical source text; parse(render(m)) == m.
std::string render(const Model& m);
std::string render(const Expr& e);
std::string render(const Directive& d);

struct RunOptions {
  std::uint64_t seed = 1;
  unsigned max_degree = 3;
  unsigned samples = 20;
  bool parallel = false;
};

/// Report of one directive. Bracket and convert results are kept as
/// rendered outputs next to the conditions.
struct DirectiveReport {
  std::string directive;
  VerificationReport report;
  std::vector<std::pair<std::string, std::string>> outputs;
};

/// Elaborated structure.
struct Bound {
  std::string kind;
  std::string name;
  Chart base;
  std::optional<OddJacobiStructure> jacobi;  // oddjacobi, schouten, qmanifold
  std::optional<QuasiQData> quasiq;
  std::optional<ExactQSData> exactqs;
  std::optional<AlgebroidData> algebroid;
};

/// Elaborates a model; throws DslError on the first resolution or parity
/// error. Directives are validated against the kinds of their targets.
class Session {
 public:
  explicit Session(const Model& model);

  const Bound& structure(std::string_view name) const;
  const Chart& chart(std::string_view name) const;

  std::vector<DirectiveReport> run(const RunOptions& opts = {}) const;
  DirectiveReport execute(const Directive& d, const RunOptions& opts = {}) const;

  /// [[f,g]] for expressions over the base chart of `structure`.
  Poly bracket(std::string_view structure, const Expr& f, const Expr& g) const;

 private:
  const Bound& target(const Directive& d) const;
  Model model_;
  std::map<std::string, Chart, std::less<>> charts_;
  std::map<std::string, Bound, std::less<>> structures_;
};

/// Elaborates `e` on `chart` with parity checks at every sum.
Poly elaborate(const Expr& e, const Chart& chart);

enum class Format { Text, Json };

std::string emit(const std::vector<DirectiveReport>& reports, Format format);
/// 0 when every verdict holds, 1 otherwise.
int exit_code(const std::vector<DirectiveReport>& reports);

struct CatalogEntry {
  std::string name;
  std::string summary;
  bool parameterized = false;  // takes a dimension n
  bool negative = false;       // expected to fail its check
};

const std::vector<CatalogEntry>& catalog_entries();
/// DSL source of a catalog example; throws Error listing the known names.
std::string catalog_source(std::string_view name, unsigned n = 1);
Model catalog(std::string_view name, unsigned n = 1);

}  // namespace ojac::dsl
