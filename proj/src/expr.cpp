#include "drbd/expr.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace drbd {

Expr::Expr(Op op, std::string name, std::vector<ExprPtr> args)
    : op_(op), name_(std::move(name)), args_(std::move(args)) {
  for (const auto& a : args_) {
    if (!a) throw std::invalid_argument("expression argument must not be null");
  }
}

ExprPtr Expr::var(std::string id) {
  if (id.empty()) throw std::invalid_argument("block id must be nonempty");
  return ExprPtr(new Expr(Op::Var, std::move(id), {}));
}

ExprPtr Expr::always() { return ExprPtr(new Expr(Op::Always, {}, {})); }
ExprPtr Expr::never() { return ExprPtr(new Expr(Op::Never, {}, {})); }

ExprPtr Expr::and_(ExprPtr l, ExprPtr r) {
  return ExprPtr(new Expr(Op::And, {}, {std::move(l), std::move(r)}));
}

ExprPtr Expr::or_(ExprPtr l, ExprPtr r) {
  return ExprPtr(new Expr(Op::Or, {}, {std::move(l), std::move(r)}));
}

ExprPtr Expr::after(ExprPtr l, ExprPtr r) {
  return ExprPtr(new Expr(Op::After, {}, {std::move(l), std::move(r)}));
}

ExprPtr Expr::simult(ExprPtr l, ExprPtr r) {
  return ExprPtr(new Expr(Op::Simult, {}, {std::move(l), std::move(r)}));
}

ExprPtr Expr::incl_after(ExprPtr l, ExprPtr r) {
  return ExprPtr(new Expr(Op::InclAfter, {}, {std::move(l), std::move(r)}));
}

ExprPtr Expr::wsp(ExprPtr main, std::string spare_id) {
  if (spare_id.empty()) throw std::invalid_argument("spare id must be nonempty");
  return ExprPtr(new Expr(Op::Wsp, std::move(spare_id), {std::move(main)}));
}

ExprPtr Expr::csp(ExprPtr main, std::string spare_id) {
  if (spare_id.empty()) throw std::invalid_argument("spare id must be nonempty");
  return ExprPtr(new Expr(Op::Csp, std::move(spare_id), {std::move(main)}));
}

ExprPtr Expr::hsp(ExprPtr main, std::string spare_id) {
  if (spare_id.empty()) throw std::invalid_argument("spare id must be nonempty");
  return ExprPtr(new Expr(Op::Hsp, std::move(spare_id), {std::move(main)}));
}

ExprPtr Expr::nary_and(std::vector<ExprPtr> args) {
  if (args.empty()) throw std::invalid_argument("n-ary AND needs at least one argument");
  return ExprPtr(new Expr(Op::NaryAnd, {}, std::move(args)));
}

ExprPtr Expr::nary_or(std::vector<ExprPtr> args) {
  if (args.empty()) throw std::invalid_argument("n-ary OR needs at least one argument");
  return ExprPtr(new Expr(Op::NaryOr, {}, std::move(args)));
}

bool commutative(Op op) {
  return op == Op::And || op == Op::Or || op == Op::Simult || op == Op::NaryAnd ||
         op == Op::NaryOr;
}

bool struct_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->op() != b->op() || a->name() != b->name()) return false;
  if (a->args().size() != b->args().size()) return false;
  for (std::size_t i = 0; i < a->args().size(); ++i) {
    if (!struct_equal(a->arg(i), b->arg(i))) return false;
  }
  return true;
}

namespace {

// Rank classes for the canonical order: constants, then variables, then
// composite nodes by operator tag.
int rank(const Expr& e) {
  switch (e.op()) {
    case Op::Always:
      return 0;
    case Op::Never:
      return 1;
    case Op::Var:
      return 2;
    default:
      return 3;
  }
}

}  // namespace

int expr_compare(const ExprPtr& a, const ExprPtr& b) {
  int ra = rank(*a);
  int rb = rank(*b);
  if (ra != rb) return ra < rb ? -1 : 1;
  if (ra < 2) return 0;  // equal constants
  if (ra == 2) return a->name().compare(b->name());
  if (a->op() != b->op()) return a->op() < b->op() ? -1 : 1;
  std::size_t n = std::min(a->args().size(), b->args().size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = expr_compare(a->arg(i), b->arg(i));
    if (c != 0) return c;
  }
  if (a->args().size() != b->args().size()) {
    return a->args().size() < b->args().size() ? -1 : 1;
  }
  return a->name().compare(b->name());
}

std::size_t expr_size(const ExprPtr& e) {
  std::size_t n = 1;
  for (const auto& a : e->args()) n += expr_size(a);
  return n;
}

void collect_block_ids(const ExprPtr& e, std::vector<std::string>& out) {
  if (e->op() == Op::Var) out.push_back(e->name());
  for (const auto& a : e->args()) collect_block_ids(a, out);
  if (e->op() == Op::Wsp || e->op() == Op::Csp || e->op() == Op::Hsp) {
    out.push_back(e->name());
  }
}

}  // namespace drbd
