#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "drbd/model.hpp"

namespace drbd {

struct SourcePos {
  int line = 1;
  int column = 1;
};

/// Distribution as written in a model file.
struct DistSpec {
  enum class Kind { Exponential, Weibull };
  Kind kind = Kind::Exponential;
  double a = 1.0;  // rate, or Weibull shape
  double b = 1.0;  // Weibull scale

  Distribution to_distribution() const;
  friend bool operator==(const DistSpec& x, const DistSpec& y) {
    return x.kind == y.kind && x.a == y.a && x.b == y.b;
  }
};

struct BlockDecl {
  std::string id;
  DistSpec dist;
  SourcePos pos;
};

struct SpareDecl {
  std::string id;
  DistSpec active;
  double dormancy = 0.0;
  SourcePos pos;
};

struct SetDecl {
  std::string id;
  std::vector<std::string> members;
  SourcePos pos;
};

/// Parsed model file: block, spare and named index-set declarations plus
/// the system structure expression.
struct ModelDocument {
  std::string name = "model";
  std::vector<BlockDecl> blocks;
  std::vector<SpareDecl> spares;
  std::vector<SetDecl> sets;
  ExprPtr system;

  /// Validated in-memory model (declarations in file order).
  DrbdModel to_model() const;

  /// Canonical text form; parsing it back yields an equal document.
  std::string pretty_print() const;
};

bool doc_equal(const ModelDocument& a, const ModelDocument& b);

/// Parses the model language:
///   decl      := id "~" dist
///              | "spare" id "~" dist "dormancy" number
///              | "set" id "=" "{" id ("," id)* "}"
///   dist      := "exp(" number ")" | "weibull(" number "," number ")"
///   system    := "system" "=" expr
///   expr      := expr "+" term | term
///   term      := term "*" factor | factor
///   factor    := id | "always" | "never" | "(" expr ")"
///              | "wsp(" expr "," id ")" | "csp(" expr "," id ")"
///              | "hsp(" expr "," id ")"
///              | "after(" expr "," expr ")" | "simult(" expr "," expr ")"
///              | "inclafter(" expr "," expr ")"
///              | "series(" idlist ")" | "parallel(" idlist ")"
/// "#" starts a comment running to end of line. Declarations precede the
/// system line; idlist entries may name declared index sets, which expand
/// to their members. Lexical and syntax errors throw ParseError with
/// line:column; semantic errors throw ParseError at the offending token.
ModelDocument parse_model(std::string_view text, std::string name = "model");

/// Canonical infix rendering of an expression. Output containing only
/// grammar constructs reparses to a structurally equal tree; n-ary nodes
/// with non-variable arguments are rendered as binary chains.
std::string format_expr(const ExprPtr& e);

/// Shortest decimal rendering that round-trips the double exactly.
std::string format_double(double v);

}  // namespace drbd
