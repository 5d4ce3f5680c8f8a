#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace drbd {

enum class Op : std::uint8_t {
  Var,
  Always,
  Never,
  And,
  Or,
  After,
  Simult,
  InclAfter,
  Wsp,
  Csp,
  Hsp,
  NaryAnd,
  NaryOr,
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable node of a structure-function expression tree. Leaves are
/// block variables or the ALWAYS/NEVER constants; internal nodes are the
/// binary operators, the spare constructs (whose `name` is the spare
/// block id) and the n-ary series/parallel operators.
class Expr {
 public:
  static ExprPtr var(std::string id);
  static ExprPtr always();
  static ExprPtr never();
  static ExprPtr and_(ExprPtr left, ExprPtr right);
  static ExprPtr or_(ExprPtr left, ExprPtr right);
  static ExprPtr after(ExprPtr left, ExprPtr right);
  static ExprPtr simult(ExprPtr left, ExprPtr right);
  static ExprPtr incl_after(ExprPtr left, ExprPtr right);
  static ExprPtr wsp(ExprPtr main, std::string spare_id);
  static ExprPtr csp(ExprPtr main, std::string spare_id);
  static ExprPtr hsp(ExprPtr main, std::string spare_id);
  static ExprPtr nary_and(std::vector<ExprPtr> args);
  static ExprPtr nary_or(std::vector<ExprPtr> args);

  Op op() const { return op_; }

  /// Block id for Var nodes, spare block id for Wsp/Csp/Hsp nodes.
  const std::string& name() const { return name_; }

  const std::vector<ExprPtr>& args() const { return args_; }
  const ExprPtr& arg(std::size_t i) const { return args_[i]; }

 private:
  Expr(Op op, std::string name, std::vector<ExprPtr> args);

  Op op_;
  std::string name_;
  std::vector<ExprPtr> args_;
};

/// True for operators whose arguments can be reordered without changing
/// the evaluation (And, Or, Simult and the n-ary forms).
bool commutative(Op op);

/// Deep structural equality.
bool struct_equal(const ExprPtr& a, const ExprPtr& b);

/// Canonical total order used to sort commutative arguments: constants
/// first, then variables by block id, then composites by operator tag and
/// arguments. Returns <0, 0 or >0.
int expr_compare(const ExprPtr& a, const ExprPtr& b);

/// Number of nodes in the tree.
std::size_t expr_size(const ExprPtr& e);

/// Appends every referenced block id (Var ids and spare ids), one entry
/// per occurrence, in left-to-right order.
void collect_block_ids(const ExprPtr& e, std::vector<std::string>& out);

}  // namespace drbd
