#pragma once

#include <functional>
#include <string>
#include <vector>

#include "drbd/expr.hpp"

namespace drbd {

enum class StructKind { Series, Parallel };

/// Indexed-family description of a series/parallel hierarchy: a flat set
/// of leaves (depth 1), a two-level grouping (series-parallel or
/// parallel-series), or the four-level series-parallel-series-parallel
/// nest. Every index set must be nonempty and the leaf sets pairwise
/// disjoint; violations throw StructureError naming the offending set.
class NestedIndex {
 public:
  using Leaves = std::vector<std::string>;
  using Groups2 = std::vector<Leaves>;
  using Groups4 = std::vector<std::vector<Groups2>>;

  static NestedIndex flat(StructKind kind, Leaves ids);
  static NestedIndex two_level(StructKind outer, Groups2 groups);
  static NestedIndex four_level(Groups4 groups);  // outermost level is a series

  int depth() const { return depth_; }
  StructKind root() const { return root_; }

  const Leaves& flat_ids() const { return flat_; }
  const Groups2& two_level_groups() const { return two_; }
  const Groups4& four_level_groups() const { return four_; }

  /// Every leaf id, in hierarchy order.
  std::vector<std::string> leaf_ids() const;

 private:
  NestedIndex() = default;

  int depth_ = 1;
  StructKind root_ = StructKind::Series;
  Leaves flat_;
  Groups2 two_;
  Groups4 four_;
};

/// n-ary AND over the block set, leaves in canonical (sorted) order.
ExprPtr series(std::vector<std::string> block_ids);

/// n-ary OR over the block set, leaves in canonical (sorted) order.
ExprPtr parallel(std::vector<std::string> block_ids);

using LeafExpr = std::function<ExprPtr(const std::string&)>;

/// Alternating NaryAnd/NaryOr tree matching the hierarchy. Leaves default
/// to plain variables; pass `leaf` to substitute arbitrary
/// sub-expressions (spare constructs inside a series, for example).
ExprPtr build_nested(const NestedIndex& idx, const LeafExpr& leaf = LeafExpr());

}  // namespace drbd
