#pragma once

#include <functional>
#include <vector>

#include "drbd/distribution.hpp"
#include "drbd/model.hpp"
#include "drbd/quadrature.hpp"
#include "drbd/structures.hpp"

namespace drbd {

inline constexpr double kDefaultRelTol = 1e-9;

/// Rel(t) = 1 - F(t) of a single block.
double rel_basic(const Distribution& d, double t);

/// Product rule for a series of independent blocks.
double rel_series(const std::vector<double>& rels);

/// Complement-product rule for a parallel arrangement.
double rel_parallel(const std::vector<double>& rels);

using LeafRel = std::function<double(const std::string&)>;

/// Alternating product / complement-product over the hierarchy.
double rel_nested(const NestedIndex& idx, const LeafRel& leaf_rel);

/// Reliability of "X continues to work after Y fails":
/// 1 - integral of f_x(x) F_y(x) over [0, t].
double rel_after(const std::function<double(double)>& f_x,
                 const std::function<double(double)>& F_y, double t,
                 double tol = kDefaultRelTol);

/// Warm-spare reliability under fresh-start activation. The spare's
/// failure routes partition into dormant death before the main failure
/// and active death after it:
///   1 - [ integral f_Y(y) (1 - F_dormant(y)) F_active(t - y) dy
///       + integral f_Y(y) F_dormant(y) dy ]                over [0, t].
double rel_wsp(const Distribution& main, const SpareSpec& spare, double t,
               double tol = kDefaultRelTol);

/// Cold-spare reliability: the dormant-death term is absent.
double rel_csp(const Distribution& main, const Distribution& spare_active, double t,
               double tol = kDefaultRelTol);

/// Compositional reliability of a read-once model: variables map to
/// rel_basic, And/Or and the n-ary forms to rel_series/rel_parallel, and
/// spare constructs to their formulas. Repeated block ids violate the
/// independence assumption and are rejected, as are temporal operators
/// outside spare constructs; both errors point at `simulate` instead.
double rel_expr(const DrbdModel& model, double t, double tol = kDefaultRelTol);

}  // namespace drbd
