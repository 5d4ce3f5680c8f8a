#include "drbd/model.hpp"

#include <utility>

#include "drbd/errors.hpp"

namespace drbd {

DrbdModel& DrbdModel::add_block(const std::string& id, Distribution dist) {
  if (index_.count(id)) throw ModelError("duplicate block id '" + id + "'");
  index_.emplace(id, order_.size());
  order_.push_back(id);
  defs_.emplace_back(std::move(dist));
  return *this;
}

DrbdModel& DrbdModel::add_spare(const std::string& id, SpareSpec spec) {
  if (index_.count(id)) throw ModelError("duplicate block id '" + id + "'");
  index_.emplace(id, order_.size());
  order_.push_back(id);
  defs_.emplace_back(std::move(spec));
  return *this;
}

DrbdModel& DrbdModel::set_root(ExprPtr root) {
  root_ = std::move(root);
  return *this;
}

bool DrbdModel::is_spare(const std::string& id) const {
  auto it = index_.find(id);
  return it != index_.end() && std::holds_alternative<SpareSpec>(defs_[it->second]);
}

const Distribution& DrbdModel::distribution(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ModelError("unknown block '" + id + "'");
  const auto* d = std::get_if<Distribution>(&defs_[it->second]);
  if (!d) throw ModelError("block '" + id + "' is a spare, not a basic block");
  return *d;
}

const SpareSpec& DrbdModel::spare(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ModelError("unknown block '" + id + "'");
  const auto* s = std::get_if<SpareSpec>(&defs_[it->second]);
  if (!s) throw ModelError("block '" + id + "' is not declared as a spare");
  return *s;
}

std::size_t DrbdModel::block_index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ModelError("unknown block '" + id + "'");
  return it->second;
}

void DrbdModel::check_expr(const ExprPtr& e) const {
  switch (e->op()) {
    case Op::Var:
      if (!has_block(e->name())) throw ModelError("unknown block '" + e->name() + "'");
      if (is_spare(e->name())) {
        throw ModelError("spare '" + e->name() +
                         "' used as a basic block; spares may appear only in wsp/csp/hsp");
      }
      break;
    case Op::Wsp:
    case Op::Csp:
    case Op::Hsp:
      if (!has_block(e->name())) throw ModelError("unknown block '" + e->name() + "'");
      if (!is_spare(e->name())) {
        throw ModelError("block '" + e->name() + "' is not declared as a spare");
      }
      break;
    default:
      break;
  }
  for (const auto& a : e->args()) check_expr(a);
}

DrbdModel& DrbdModel::finalize() {
  if (!root_) throw ModelError("model '" + name_ + "' has no system expression");
  check_expr(root_);
  return *this;
}

}  // namespace drbd
