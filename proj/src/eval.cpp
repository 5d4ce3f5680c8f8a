#include "drbd/eval.hpp"

#include "drbd/errors.hpp"

namespace drbd {

namespace {

const SpareDraw& spare_draw(const Sample& s, const std::string& id) {
  auto it = s.spare.find(id);
  if (it == s.spare.end()) {
    if (s.basic.count(id)) {
      throw ModelError("block '" + id + "' is not declared as a spare");
    }
    throw ModelError("unbound block '" + id + "'");
  }
  return it->second;
}

}  // namespace

ExtTime eval_expr(const ExprPtr& e, const Sample& s) {
  switch (e->op()) {
    case Op::Var: {
      auto it = s.basic.find(e->name());
      if (it == s.basic.end()) {
        if (s.spare.count(e->name())) {
          throw ModelError("spare '" + e->name() +
                           "' used as a basic block; spares may appear only in wsp/csp/hsp");
        }
        throw ModelError("unbound block '" + e->name() + "'");
      }
      return it->second;
    }
    case Op::Always:
      return ExtTime(0.0);
    case Op::Never:
      return ExtTime::inf();
    case Op::And:
      return ext_min(eval_expr(e->arg(0), s), eval_expr(e->arg(1), s));
    case Op::Or:
      return ext_max(eval_expr(e->arg(0), s), eval_expr(e->arg(1), s));
    case Op::After:
      return after(eval_expr(e->arg(0), s), eval_expr(e->arg(1), s));
    case Op::Simult:
      return simult(eval_expr(e->arg(0), s), eval_expr(e->arg(1), s));
    case Op::InclAfter:
      return incl_after(eval_expr(e->arg(0), s), eval_expr(e->arg(1), s));
    case Op::Wsp: {
      ExtTime y = eval_expr(e->arg(0), s);
      const SpareDraw& d = spare_draw(s, e->name());
      // The spare fails in exactly one state: dormant death when the
      // dormant draw is at or before the main failure, otherwise it is
      // activated and fails after a fresh active-law residual.
      bool activated = d.dormant > y;
      ExtTime active_time = activated ? y.plus(d.active_offset) : ExtTime::inf();
      ExtTime dormant_time = activated ? ExtTime::inf() : d.dormant;
      return ext_min(after(active_time, y), after(y, dormant_time));
    }
    case Op::Csp: {
      ExtTime y = eval_expr(e->arg(0), s);
      const SpareDraw& d = spare_draw(s, e->name());
      ExtTime x = y.plus(d.active_offset);
      return y < x ? x : ExtTime::inf();
    }
    case Op::Hsp: {
      ExtTime y = eval_expr(e->arg(0), s);
      const SpareDraw& d = spare_draw(s, e->name());
      return ext_max(y, ExtTime(d.active_offset));
    }
    case Op::NaryAnd: {
      ExtTime acc = ExtTime::inf();
      for (const auto& a : e->args()) acc = ext_min(acc, eval_expr(a, s));
      return acc;
    }
    case Op::NaryOr: {
      ExtTime acc(0.0);
      for (const auto& a : e->args()) acc = ext_max(acc, eval_expr(a, s));
      return acc;
    }
  }
  throw ModelError("unknown expression node");
}

}  // namespace drbd
