#include "drbd/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "drbd/errors.hpp"

namespace drbd {

namespace {

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

void check_probability(double p) {
  if (std::isnan(p) || p < 0.0 || p > 1.0) {
    throw std::invalid_argument("reliabilities must lie in [0, 1]");
  }
}

// Long products go through summed logs to limit underflow.
double product(const std::vector<double>& xs) {
  if (xs.size() <= 32) {
    double p = 1.0;
    for (double x : xs) p *= x;
    return p;
  }
  double log_sum = 0.0;
  for (double x : xs) {
    if (x == 0.0) return 0.0;
    log_sum += std::log(x);
  }
  return std::exp(log_sum);
}

}  // namespace

double rel_basic(const Distribution& d, double t) {
  if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
  return clamp01(1.0 - d.cdf(t));
}

double rel_series(const std::vector<double>& rels) {
  if (rels.empty()) throw StructureError("series requires a nonempty block set");
  for (double r : rels) check_probability(r);
  return product(rels);
}

double rel_parallel(const std::vector<double>& rels) {
  if (rels.empty()) throw StructureError("parallel requires a nonempty block set");
  std::vector<double> complements;
  complements.reserve(rels.size());
  for (double r : rels) {
    check_probability(r);
    complements.push_back(1.0 - r);
  }
  return 1.0 - product(complements);
}

double rel_nested(const NestedIndex& idx, const LeafRel& leaf_rel) {
  if (!leaf_rel) throw std::invalid_argument("leaf reliability function is required");
  auto leaves = [&](const std::vector<std::string>& ids, StructKind kind) {
    std::vector<double> rels;
    rels.reserve(ids.size());
    for (const auto& id : ids) rels.push_back(leaf_rel(id));
    return kind == StructKind::Series ? rel_series(rels) : rel_parallel(rels);
  };
  switch (idx.depth()) {
    case 1:
      return leaves(idx.flat_ids(), idx.root());
    case 2: {
      StructKind inner = idx.root() == StructKind::Series ? StructKind::Parallel
                                                          : StructKind::Series;
      std::vector<double> groups;
      for (const auto& g : idx.two_level_groups()) groups.push_back(leaves(g, inner));
      return idx.root() == StructKind::Series ? rel_series(groups) : rel_parallel(groups);
    }
    default: {
      std::vector<double> level_j;
      for (const auto& j : idx.four_level_groups()) {
        std::vector<double> level_a;
        for (const auto& a : j) {
          std::vector<double> level_l;
          for (const auto& l : a) level_l.push_back(leaves(l, StructKind::Parallel));
          level_a.push_back(rel_series(level_l));
        }
        level_j.push_back(rel_parallel(level_a));
      }
      return rel_series(level_j);
    }
  }
}

double rel_after(const std::function<double(double)>& f_x,
                 const std::function<double(double)>& F_y, double t, double tol) {
  if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
  if (t == 0.0) return 1.0;
  QuadResult q = integrate([&](double x) { return f_x(x) * F_y(x); }, 0.0, t, tol);
  return clamp01(1.0 - q.value);
}

double rel_wsp(const Distribution& main, const SpareSpec& spare, double t, double tol) {
  if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
  if (t == 0.0) return 1.0;
  // Active route: main fails at y with the dormant spare still alive, then
  // the activated spare fails within (y, t].
  QuadResult active = integrate(
      [&](double y) {
        return main.pdf(y) * (1.0 - spare.dormant_cdf(y)) * spare.active().cdf(t - y);
      },
      0.0, t, tol);
  // Dormant route: the spare dies dormant before the main fails at y <= t.
  QuadResult dormant =
      integrate([&](double y) { return main.pdf(y) * spare.dormant_cdf(y); }, 0.0, t, tol);
  return clamp01(1.0 - active.value - dormant.value);
}

double rel_csp(const Distribution& main, const Distribution& spare_active, double t, double tol) {
  if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
  if (t == 0.0) return 1.0;
  QuadResult q = integrate([&](double y) { return main.pdf(y) * spare_active.cdf(t - y); }, 0.0,
                           t, tol);
  return clamp01(1.0 - q.value);
}

namespace {

void check_read_once(const DrbdModel& model) {
  std::vector<std::string> ids;
  collect_block_ids(model.root(), ids);
  std::unordered_set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) {
      throw ModelError("block '" + id +
                       "' occurs more than once; the compositional formulas assume independent "
                       "(read-once) blocks - use simulate for non-read-once models");
    }
  }
}

double rel_node(const DrbdModel& model, const ExprPtr& e, double t, double tol) {
  switch (e->op()) {
    case Op::Var:
      return rel_basic(model.distribution(e->name()), t);
    case Op::Always:
      return 0.0;  // fails at time 0, so it never survives past t >= 0
    case Op::Never:
      return 1.0;
    case Op::And:
    case Op::NaryAnd: {
      std::vector<double> rels;
      rels.reserve(e->args().size());
      for (const auto& a : e->args()) rels.push_back(rel_node(model, a, t, tol));
      return rel_series(rels);
    }
    case Op::Or:
    case Op::NaryOr: {
      std::vector<double> rels;
      rels.reserve(e->args().size());
      for (const auto& a : e->args()) rels.push_back(rel_node(model, a, t, tol));
      return rel_parallel(rels);
    }
    case Op::Wsp: {
      if (e->arg(0)->op() != Op::Var) {
        throw ModelError(
            "wsp main part must be a basic block for the closed-form composition - use simulate "
            "for composite mains");
      }
      return rel_wsp(model.distribution(e->arg(0)->name()), model.spare(e->name()), t, tol);
    }
    case Op::Csp: {
      if (e->arg(0)->op() != Op::Var) {
        throw ModelError(
            "csp main part must be a basic block for the closed-form composition - use simulate "
            "for composite mains");
      }
      return rel_csp(model.distribution(e->arg(0)->name()), model.spare(e->name()).active(), t,
                     tol);
    }
    case Op::Hsp: {
      // A hot spare runs its active law from time 0 alongside the main.
      double spare_rel = clamp01(1.0 - model.spare(e->name()).active().cdf(t));
      return rel_parallel({rel_node(model, e->arg(0), t, tol), spare_rel});
    }
    case Op::After:
    case Op::Simult:
    case Op::InclAfter:
      throw ModelError(
          "temporal operators outside spare constructs have no compositional reliability "
          "formula - use simulate");
  }
  throw ModelError("unknown expression node");
}

}  // namespace

double rel_expr(const DrbdModel& model, double t, double tol) {
  if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
  if (!model.root()) throw ModelError("model has no system expression");
  check_read_once(model);
  return rel_node(model, model.root(), t, tol);
}

}  // namespace drbd
