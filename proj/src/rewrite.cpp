#include "drbd/rewrite.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include "drbd/montecarlo.hpp"

namespace drbd {

namespace {

std::size_t pattern_size(const ExprPtr& e) { return expr_size(e); }

void count_metavars(const ExprPtr& p, std::map<std::string, int>& counts) {
  if (p->op() == Op::Var) {
    ++counts[p->name()];
    return;
  }
  for (const auto& a : p->args()) count_metavars(a, counts);
}

void validate_rule(const RewriteRule& r) {
  std::map<std::string, int> lhs_vars, rhs_vars;
  count_metavars(r.lhs, lhs_vars);
  count_metavars(r.rhs, rhs_vars);
  for (const auto& [name, n] : rhs_vars) {
    auto it = lhs_vars.find(name);
    if (it == lhs_vars.end()) {
      throw std::logic_error("rule '" + r.name + "': rhs metavariable '" + name +
                             "' does not occur in lhs");
    }
    if (r.mode == RuleMode::Reduce && n > it->second) {
      throw std::logic_error("rule '" + r.name + "': reduce rule duplicates metavariable '" +
                             name + "'");
    }
  }
  if (r.mode == RuleMode::Reduce && pattern_size(r.rhs) > pattern_size(r.lhs)) {
    throw std::logic_error("rule '" + r.name + "': reduce rule with growing rhs");
  }
}

}  // namespace

RuleSet::RuleSet(std::vector<RewriteRule> rules, RuleMode mode)
    : rules_(std::move(rules)), mode_(mode) {
  for (const auto& r : rules_) validate_rule(r);
}

RuleSet builtin_rules() {
  auto X = Expr::var("X");
  auto Y = Expr::var("Y");
  auto Z = Expr::var("Z");
  std::vector<RewriteRule> rules;

  auto add = [&](std::string name, ExprPtr lhs, ExprPtr rhs, RuleMode mode, bool comm,
                 bool structural, bool nonneg = false, bool distinct = false) {
    rules.push_back({std::move(name), std::move(lhs), std::move(rhs), mode, comm, structural,
                     nonneg, distinct});
  };

  add("and_always", Expr::and_(X, Expr::always()), Expr::always(), RuleMode::Reduce, true, false,
      true);
  add("and_assoc", Expr::and_(Expr::and_(X, Y), Z), Expr::and_(X, Expr::and_(Y, Z)),
      RuleMode::Reduce, false, true);
  add("and_comm", Expr::and_(X, Y), Expr::and_(Y, X), RuleMode::Reduce, false, true);
  add("and_idem", Expr::and_(X, X), X, RuleMode::Reduce, false, true);
  add("and_never", Expr::and_(X, Expr::never()), X, RuleMode::Reduce, true, false);
  add("or_always", Expr::or_(X, Expr::always()), X, RuleMode::Reduce, true, false, true);
  add("or_assoc", Expr::or_(Expr::or_(X, Y), Z), Expr::or_(X, Expr::or_(Y, Z)), RuleMode::Reduce,
      false, true);
  add("or_comm", Expr::or_(X, Y), Expr::or_(Y, X), RuleMode::Reduce, false, true);
  add("or_idem", Expr::or_(X, X), X, RuleMode::Reduce, false, true);
  add("or_never", Expr::or_(X, Expr::never()), Expr::never(), RuleMode::Reduce, true, false);
  add("absorb", Expr::or_(X, Expr::and_(X, Y)), X, RuleMode::Reduce, true, false);
  // The nested-after expansion: X after (Y after Z) completes exactly when
  // the disjunction of "X after Y" and "X after Z" completes after "Y
  // after Z" does.
  add("after_nest", Expr::after(X, Expr::after(Y, Z)),
      Expr::after(Expr::or_(Expr::after(X, Y), Expr::after(X, Z)), Expr::after(Y, Z)),
      RuleMode::Expand, false, false);
  add("after_or_never", Expr::or_(Expr::after(X, Y), Expr::after(Y, X)), Expr::never(),
      RuleMode::Reduce, true, false, false, true);
  add("after_over_and", Expr::after(X, Expr::and_(Y, Z)),
      Expr::and_(Expr::after(X, Y), Expr::after(X, Z)), RuleMode::Expand, false, false);
  add("and_over_or", Expr::and_(X, Expr::or_(Y, Z)),
      Expr::or_(Expr::and_(X, Y), Expr::and_(X, Z)), RuleMode::Expand, true, false);
  add("or_over_and", Expr::or_(X, Expr::and_(Y, Z)),
      Expr::and_(Expr::or_(X, Y), Expr::or_(X, Z)), RuleMode::Expand, true, false);
  add("incl_after_expand", Expr::incl_after(X, Y),
      Expr::and_(Expr::after(X, Y), Expr::simult(X, Y)), RuleMode::Expand, false, false);
  add("after_over_or", Expr::after(X, Expr::or_(Y, Z)),
      Expr::or_(Expr::after(X, Y), Expr::after(X, Z)), RuleMode::Expand, false, false);
  add("simult_comm", Expr::simult(X, Y), Expr::simult(Y, X), RuleMode::Reduce, false, true);

  return RuleSet(std::move(rules), RuleMode::Reduce);
}

namespace {

using Bindings = std::map<std::string, ExprPtr>;

bool match(const ExprPtr& pattern, const ExprPtr& expr, Bindings& b, bool comm) {
  if (pattern->op() == Op::Var) {
    auto it = b.find(pattern->name());
    if (it != b.end()) return struct_equal(it->second, expr);
    b.emplace(pattern->name(), expr);
    return true;
  }
  if (pattern->op() != expr->op()) return false;
  if (pattern->op() == Op::Always || pattern->op() == Op::Never) return true;
  if (pattern->args().size() != expr->args().size()) return false;
  if (!pattern->name().empty() && pattern->name() != expr->name()) return false;

  auto match_in_order = [&](Bindings& bind) {
    for (std::size_t i = 0; i < pattern->args().size(); ++i) {
      if (!match(pattern->arg(i), expr->arg(i), bind, comm)) return false;
    }
    return true;
  };

  Bindings saved = b;
  if (match_in_order(b)) return true;
  if (comm && commutative(pattern->op()) && pattern->args().size() == 2) {
    b = saved;
    if (match(pattern->arg(0), expr->arg(1), b, comm) &&
        match(pattern->arg(1), expr->arg(0), b, comm)) {
      return true;
    }
  }
  b = saved;
  return false;
}

ExprPtr instantiate(const ExprPtr& tmpl, const Bindings& b) {
  if (tmpl->op() == Op::Var) return b.at(tmpl->name());
  if (tmpl->args().empty()) return tmpl;
  std::vector<ExprPtr> args;
  args.reserve(tmpl->args().size());
  for (const auto& a : tmpl->args()) args.push_back(instantiate(a, b));
  switch (tmpl->op()) {
    case Op::And:
      return Expr::and_(args[0], args[1]);
    case Op::Or:
      return Expr::or_(args[0], args[1]);
    case Op::After:
      return Expr::after(args[0], args[1]);
    case Op::Simult:
      return Expr::simult(args[0], args[1]);
    case Op::InclAfter:
      return Expr::incl_after(args[0], args[1]);
    case Op::Wsp:
      return Expr::wsp(args[0], tmpl->name());
    case Op::Csp:
      return Expr::csp(args[0], tmpl->name());
    case Op::Hsp:
      return Expr::hsp(args[0], tmpl->name());
    case Op::NaryAnd:
      return Expr::nary_and(std::move(args));
    case Op::NaryOr:
      return Expr::nary_or(std::move(args));
    default:
      throw std::logic_error("unexpected template node");
  }
}

void collect_chain(const ExprPtr& e, Op op, std::vector<ExprPtr>& out) {
  if (e->op() == op) {
    collect_chain(e->arg(0), op, out);
    collect_chain(e->arg(1), op, out);
  } else {
    out.push_back(e);
  }
}

ExprPtr rebuild_chain(Op op, const std::vector<ExprPtr>& args) {
  ExprPtr acc = args.back();
  for (std::size_t i = args.size() - 1; i-- > 0;) {
    acc = op == Op::And ? Expr::and_(args[i], acc) : Expr::or_(args[i], acc);
  }
  return acc;
}

// Canonical ordering of commutative arguments. Binary And/Or chains are
// flattened, sorted and deduplicated (associativity, commutativity and
// idempotence in one deterministic step); Simult arguments are sorted;
// n-ary arguments are sorted and deduplicated with their identity
// elements folded away. Returns the input pointer when nothing changes.
ExprPtr canonicalize(const ExprPtr& e) {
  if (e->op() == Op::And || e->op() == Op::Or) {
    std::vector<ExprPtr> chain;
    collect_chain(e, e->op(), chain);
    std::stable_sort(chain.begin(), chain.end(),
                     [](const ExprPtr& a, const ExprPtr& b) { return expr_compare(a, b) < 0; });
    std::vector<ExprPtr> unique;
    for (const auto& a : chain) {
      if (unique.empty() || !struct_equal(unique.back(), a)) unique.push_back(a);
    }
    if (unique.size() == 1) return unique[0];
    ExprPtr rebuilt = rebuild_chain(e->op(), unique);
    return struct_equal(rebuilt, e) ? e : rebuilt;
  }
  if (e->op() == Op::Simult) {
    if (expr_compare(e->arg(0), e->arg(1)) > 0) return Expr::simult(e->arg(1), e->arg(0));
    return e;
  }
  if (e->op() == Op::NaryAnd || e->op() == Op::NaryOr) {
    bool is_and = e->op() == Op::NaryAnd;
    Op absorb = is_and ? Op::Always : Op::Never;
    Op identity = is_and ? Op::Never : Op::Always;
    for (const auto& a : e->args()) {
      if (a->op() == absorb) return is_and ? Expr::always() : Expr::never();
    }
    std::vector<ExprPtr> args;
    for (const auto& a : e->args()) {
      if (a->op() != identity) args.push_back(a);
    }
    if (args.empty()) return is_and ? Expr::never() : Expr::always();
    std::stable_sort(args.begin(), args.end(),
                     [](const ExprPtr& a, const ExprPtr& b) { return expr_compare(a, b) < 0; });
    std::vector<ExprPtr> unique;
    for (const auto& a : args) {
      if (unique.empty() || !struct_equal(unique.back(), a)) unique.push_back(a);
    }
    if (unique.size() == 1) return unique[0];
    ExprPtr rebuilt = is_and ? Expr::nary_and(unique) : Expr::nary_or(unique);
    return struct_equal(rebuilt, e) ? e : rebuilt;
  }
  return e;
}

ExprPtr rebuild_with_arg(const ExprPtr& e, std::size_t i, ExprPtr arg) {
  std::vector<ExprPtr> args = e->args();
  args[i] = std::move(arg);
  switch (e->op()) {
    case Op::And:
      return Expr::and_(args[0], args[1]);
    case Op::Or:
      return Expr::or_(args[0], args[1]);
    case Op::After:
      return Expr::after(args[0], args[1]);
    case Op::Simult:
      return Expr::simult(args[0], args[1]);
    case Op::InclAfter:
      return Expr::incl_after(args[0], args[1]);
    case Op::Wsp:
      return Expr::wsp(args[0], e->name());
    case Op::Csp:
      return Expr::csp(args[0], e->name());
    case Op::Hsp:
      return Expr::hsp(args[0], e->name());
    case Op::NaryAnd:
      return Expr::nary_and(std::move(args));
    case Op::NaryOr:
      return Expr::nary_or(std::move(args));
    default:
      throw std::logic_error("node has no arguments to rebuild");
  }
}

// Leftmost-innermost single step: canonical ordering first, then the
// first active rule that matches. Returns nullptr when e is in normal
// form.
ExprPtr step(const ExprPtr& e, const RuleSet& rules) {
  for (std::size_t i = 0; i < e->args().size(); ++i) {
    if (ExprPtr changed = step(e->arg(i), rules)) {
      return rebuild_with_arg(e, i, std::move(changed));
    }
  }
  ExprPtr canon = canonicalize(e);
  if (canon.get() != e.get() && !struct_equal(canon, e)) return canon;
  for (const auto& rule : rules.rules()) {
    if (rule.structural || !rules.active(rule)) continue;
    Bindings b;
    if (match(rule.lhs, e, b, rule.commutative_match)) {
      return instantiate(rule.rhs, b);
    }
  }
  return nullptr;
}

}  // namespace

ExprPtr simplify(const ExprPtr& e, const RuleSet& rules, std::size_t max_steps) {
  if (max_steps == 0) throw std::invalid_argument("max_steps must be positive");
  // Expansion can grow the term linearly in the step count, so a budget in
  // steps alone would make each step quadratically slower; cap the working
  // size as well and report both the same way.
  const std::size_t size_cap = std::max<std::size_t>(65536, expr_size(e) * 16);
  ExprPtr cur = e;
  for (std::size_t steps = 0; steps < max_steps; ++steps) {
    ExprPtr next = step(cur, rules);
    if (!next) return cur;
    cur = std::move(next);
    if (expr_size(cur) > size_cap) {
      throw RewriteBudgetError(
          "simplification did not converge: the term grew past " + std::to_string(size_cap) +
              " nodes (distributivity rules can grow terms without bound)",
          cur);
    }
  }
  if (!step(cur, rules)) return cur;
  throw RewriteBudgetError(
      "simplification did not reach a normal form within " + std::to_string(max_steps) +
          " steps (distributivity rules can grow terms without bound)",
      cur);
}

EquivResult check_equiv(const ExprPtr& e1, const ExprPtr& e2, const DrbdModel& model,
                        std::uint64_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample count must be at least 1");
  model.check_expr(e1);
  model.check_expr(e2);
  EquivResult result;
  for (std::uint64_t i = 0; i < n; ++i) {
    Sample s = draw_sample(model, seed, i);
    if (eval_expr(e1, s) != eval_expr(e2, s)) {
      result.equivalent = false;
      result.counterexample = std::move(s);
      result.samples_used = i + 1;
      return result;
    }
  }
  result.samples_used = n;
  return result;
}

EquivResult check_rule(const RewriteRule& rule, const DrbdModel& model, std::uint64_t n,
                       std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample count must be at least 1");
  model.check_expr(rule.lhs);
  model.check_expr(rule.rhs);
  EquivResult result;
  std::uint64_t used = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    Sample s = draw_sample(model, seed, i);
    if (rule.requires_distinct) {
      bool tied = false;
      for (auto a = s.basic.begin(); a != s.basic.end() && !tied; ++a) {
        auto b = a;
        for (++b; b != s.basic.end(); ++b) {
          if (a->second == b->second) {
            tied = true;
            break;
          }
        }
      }
      if (tied) continue;
    }
    ++used;
    if (eval_expr(rule.lhs, s) != eval_expr(rule.rhs, s)) {
      result.equivalent = false;
      result.counterexample = std::move(s);
      result.samples_used = used;
      return result;
    }
  }
  result.samples_used = used;
  return result;
}

}  // namespace drbd
