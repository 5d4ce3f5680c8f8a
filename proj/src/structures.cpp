#include "drbd/structures.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "drbd/errors.hpp"

namespace drbd {

namespace {

// Coerces an id list to a set: sorted, duplicates removed. Empty input is
// a structure error.
std::vector<std::string> as_set(std::vector<std::string> ids, const std::string& what) {
  if (ids.empty()) throw StructureError(what + " must be a nonempty set");
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

void check_disjoint(const std::vector<std::vector<std::string>>& leaf_sets,
                    const std::vector<std::string>& labels) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < leaf_sets.size(); ++i) {
    for (const auto& id : leaf_sets[i]) {
      if (!seen.insert(id).second) {
        throw StructureError("leaf index sets are not disjoint: '" + id + "' appears again in " +
                             labels[i]);
      }
    }
  }
}

}  // namespace

NestedIndex NestedIndex::flat(StructKind kind, Leaves ids) {
  NestedIndex idx;
  idx.depth_ = 1;
  idx.root_ = kind;
  idx.flat_ = as_set(std::move(ids), "index set");
  return idx;
}

NestedIndex NestedIndex::two_level(StructKind outer, Groups2 groups) {
  if (groups.empty()) throw StructureError("outer index set J must be a nonempty set");
  NestedIndex idx;
  idx.depth_ = 2;
  idx.root_ = outer;
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < groups.size(); ++j) {
    groups[j] = as_set(std::move(groups[j]), "index set s[" + std::to_string(j) + "]");
    labels.push_back("s[" + std::to_string(j) + "]");
  }
  check_disjoint(groups, labels);
  idx.two_ = std::move(groups);
  return idx;
}

NestedIndex NestedIndex::four_level(Groups4 groups) {
  if (groups.empty()) throw StructureError("outer index set J must be a nonempty set");
  NestedIndex idx;
  idx.depth_ = 4;
  idx.root_ = StructKind::Series;
  std::vector<std::vector<std::string>> leaf_sets;
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < groups.size(); ++j) {
    if (groups[j].empty()) {
      throw StructureError("index set A[" + std::to_string(j) + "] must be a nonempty set");
    }
    for (std::size_t a = 0; a < groups[j].size(); ++a) {
      if (groups[j][a].empty()) {
        throw StructureError("index set L[" + std::to_string(j) + "][" + std::to_string(a) +
                             "] must be a nonempty set");
      }
      for (std::size_t l = 0; l < groups[j][a].size(); ++l) {
        std::string label = "s[" + std::to_string(j) + "][" + std::to_string(a) + "][" +
                            std::to_string(l) + "]";
        groups[j][a][l] = as_set(std::move(groups[j][a][l]), "index set " + label);
        leaf_sets.push_back(groups[j][a][l]);
        labels.push_back(label);
      }
    }
  }
  check_disjoint(leaf_sets, labels);
  idx.four_ = std::move(groups);
  return idx;
}

std::vector<std::string> NestedIndex::leaf_ids() const {
  std::vector<std::string> out;
  switch (depth_) {
    case 1:
      out = flat_;
      break;
    case 2:
      for (const auto& g : two_) out.insert(out.end(), g.begin(), g.end());
      break;
    default:
      for (const auto& j : four_) {
        for (const auto& a : j) {
          for (const auto& l : a) out.insert(out.end(), l.begin(), l.end());
        }
      }
      break;
  }
  return out;
}

namespace {

ExprPtr default_leaf(const std::string& id) { return Expr::var(id); }

ExprPtr leaves_node(StructKind kind, const std::vector<std::string>& ids, const LeafExpr& leaf) {
  std::vector<ExprPtr> args;
  args.reserve(ids.size());
  for (const auto& id : ids) args.push_back(leaf ? leaf(id) : default_leaf(id));
  return kind == StructKind::Series ? Expr::nary_and(std::move(args))
                                    : Expr::nary_or(std::move(args));
}

StructKind flip(StructKind k) {
  return k == StructKind::Series ? StructKind::Parallel : StructKind::Series;
}

}  // namespace

ExprPtr series(std::vector<std::string> block_ids) {
  return leaves_node(StructKind::Series, as_set(std::move(block_ids), "series block set"), {});
}

ExprPtr parallel(std::vector<std::string> block_ids) {
  return leaves_node(StructKind::Parallel, as_set(std::move(block_ids), "parallel block set"), {});
}

ExprPtr build_nested(const NestedIndex& idx, const LeafExpr& leaf) {
  switch (idx.depth()) {
    case 1:
      return leaves_node(idx.root(), idx.flat_ids(), leaf);
    case 2: {
      StructKind inner = flip(idx.root());
      std::vector<ExprPtr> groups;
      for (const auto& g : idx.two_level_groups()) groups.push_back(leaves_node(inner, g, leaf));
      return idx.root() == StructKind::Series ? Expr::nary_and(std::move(groups))
                                              : Expr::nary_or(std::move(groups));
    }
    default: {
      // series of parallel of series of parallel
      std::vector<ExprPtr> level_j;
      for (const auto& j : idx.four_level_groups()) {
        std::vector<ExprPtr> level_a;
        for (const auto& a : j) {
          std::vector<ExprPtr> level_l;
          for (const auto& l : a) level_l.push_back(leaves_node(StructKind::Parallel, l, leaf));
          level_a.push_back(Expr::nary_and(std::move(level_l)));
        }
        level_j.push_back(Expr::nary_or(std::move(level_a)));
      }
      return Expr::nary_and(std::move(level_j));
    }
  }
}

}  // namespace drbd
