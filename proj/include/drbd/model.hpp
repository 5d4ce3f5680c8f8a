#pragma once

#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "drbd/distribution.hpp"
#include "drbd/expr.hpp"

namespace drbd {

/// Named blocks with their failure laws plus the system structure
/// function. Basic blocks carry a Distribution, spare blocks a SpareSpec;
/// spare blocks may be referenced only by wsp/csp/hsp constructs and basic
/// blocks only by variables. Validation happens in `finalize()`.
class DrbdModel {
 public:
  explicit DrbdModel(std::string name = "model") : name_(std::move(name)) {}

  DrbdModel& add_block(const std::string& id, Distribution dist);
  DrbdModel& add_spare(const std::string& id, SpareSpec spec);
  DrbdModel& set_root(ExprPtr root);

  /// Checks that every reference in the root resolves to a declaration of
  /// the right kind; throws ModelError otherwise. Returns *this.
  DrbdModel& finalize();

  /// Same reference check for an arbitrary expression over this model's
  /// blocks.
  void check_expr(const ExprPtr& e) const;

  const std::string& name() const { return name_; }
  const ExprPtr& root() const { return root_; }

  bool has_block(const std::string& id) const { return index_.count(id) != 0; }
  bool is_spare(const std::string& id) const;

  const Distribution& distribution(const std::string& id) const;
  const SpareSpec& spare(const std::string& id) const;

  /// Declaration order; the position doubles as the block's random-stream
  /// index, so draws are reproducible regardless of evaluation order.
  const std::vector<std::string>& block_ids() const { return order_; }
  std::size_t block_index(const std::string& id) const;

 private:
  using BlockDef = std::variant<Distribution, SpareSpec>;

  std::string name_;
  std::vector<std::string> order_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<BlockDef> defs_;
  ExprPtr root_;
};

}  // namespace drbd
