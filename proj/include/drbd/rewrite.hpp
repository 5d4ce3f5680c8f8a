#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "drbd/errors.hpp"
#include "drbd/eval.hpp"
#include "drbd/expr.hpp"
#include "drbd/model.hpp"

namespace drbd {

enum class RuleMode { Reduce, Expand };

/// One simplification identity. Patterns are expression trees whose Var
/// nodes act as metavariables; rhs metavariables must all occur in lhs.
struct RewriteRule {
  std::string name;
  ExprPtr lhs;
  ExprPtr rhs;
  RuleMode mode = RuleMode::Reduce;

  /// Match commutative pattern nodes in either argument order. Safe only
  /// for rules that strictly shrink the term.
  bool commutative_match = false;

  /// Pure argument-order or associativity identity, realized by the
  /// canonical-ordering pass of simplify() rather than by pattern
  /// matching (applying it blindly would not terminate).
  bool structural = false;

  /// Side condition: operands are nonnegative ("0 <= X s"). Holds for
  /// every expression in this algebra, since failure times are
  /// nonnegative by construction.
  bool requires_nonneg = false;

  /// Sound only for samples with pairwise distinct failure times; tied
  /// samples are excluded from its soundness check.
  bool requires_distinct = false;
};

/// Ordered rule list with an application mode: Reduce restricts to the
/// size-non-increasing rules, Expand enables all of them (adding the
/// distributivity and operator-expansion identities, which can grow
/// terms).
class RuleSet {
 public:
  RuleSet(std::vector<RewriteRule> rules, RuleMode mode = RuleMode::Reduce);

  const std::vector<RewriteRule>& rules() const { return rules_; }
  RuleMode mode() const { return mode_; }
  RuleSet with_mode(RuleMode mode) const { return RuleSet(rules_, mode); }

  /// Active under the current mode.
  bool active(const RewriteRule& r) const {
    return mode_ == RuleMode::Expand || r.mode == RuleMode::Reduce;
  }

 private:
  std::vector<RewriteRule> rules_;
  RuleMode mode_;
};

/// The full built-in rule table (19 rules), in Reduce mode by default.
RuleSet builtin_rules();

/// Step budget exhausted before reaching a normal form; carries the
/// partially rewritten expression. Possible only in Expand mode.
class RewriteBudgetError : public Error {
 public:
  RewriteBudgetError(std::string msg, ExprPtr partial)
      : Error(std::move(msg)), partial_(std::move(partial)) {}

  const ExprPtr& partial() const { return partial_; }

 private:
  ExprPtr partial_;
};

/// Innermost-first rewriting to a fixpoint, interleaved with canonical
/// ordering of commutative arguments (And/Or chains are flattened, sorted
/// and deduplicated, n-ary arguments sorted and their identity elements
/// folded), so syntactically equal normal forms imply structural
/// equality. The result evaluates identically to the input on every
/// sample.
ExprPtr simplify(const ExprPtr& e, const RuleSet& rules, std::size_t max_steps = 10000);

struct EquivResult {
  bool equivalent = true;
  std::optional<Sample> counterexample;
  std::uint64_t samples_used = 0;
};

/// Draws n samples from the model's laws and compares the two
/// expressions' evaluations; returns the first differing sample, if any.
EquivResult check_equiv(const ExprPtr& e1, const ExprPtr& e2, const DrbdModel& model,
                        std::uint64_t n, std::uint64_t seed);

/// check_equiv on a rule's two sides, with the rule's metavariables bound
/// to the model's blocks of the same name. Samples with tied failure
/// times are skipped for rules marked requires_distinct.
EquivResult check_rule(const RewriteRule& rule, const DrbdModel& model, std::uint64_t n,
                       std::uint64_t seed);

}  // namespace drbd
