#pragma once

#include <string>
#include <unordered_map>

#include "drbd/expr.hpp"
#include "drbd/exttime.hpp"

namespace drbd {

/// Dormant-state would-fail time plus the residual lifetime after
/// activation (fresh-start sampling of the active state).
struct SpareDraw {
  ExtTime dormant;
  double active_offset = 0.0;
};

/// One valuation of every block's time to failure.
struct Sample {
  std::unordered_map<std::string, ExtTime> basic;
  std::unordered_map<std::string, SpareDraw> spare;
};

/// Evaluates the structure function on a sample:
///  - And/Or and the n-ary forms fold min/max (identities NEVER/ALWAYS),
///  - After/Simult/InclAfter apply the temporal piecewise definitions,
///  - Wsp resolves the spare's state: activated when the dormant draw
///    outlives the main's failure, in which case the spare fails at
///    main-failure + active offset; otherwise it died dormant,
///  - Csp activates at the main's failure, Hsp runs the active law from 0.
/// Ties follow the piecewise definitions literally.
/// Throws ModelError for block ids not bound in the sample.
ExtTime eval_expr(const ExprPtr& e, const Sample& s);

}  // namespace drbd
