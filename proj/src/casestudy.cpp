#include "drbd/casestudy.hpp"

#include <cstdio>
#include <set>

#include "drbd/errors.hpp"
#include "drbd/structures.hpp"

namespace drbd {

namespace {

class OverrideSet {
 public:
  explicit OverrideSet(const CaseOverrides& o) : o_(o) {}

  double rate(const std::string& id, double fallback) {
    auto it = o_.rates.find(id);
    if (it == o_.rates.end()) return fallback;
    if (!(it->second > 0.0)) throw ModelError("rate override for '" + id + "' must be positive");
    used_.insert(it->first);
    return it->second;
  }

  double dormancy(const std::string& id, double fallback) {
    auto it = o_.dormancy.find(id);
    if (it == o_.dormancy.end()) return fallback;
    if (!(it->second >= 0.0 && it->second <= 1.0)) {
      throw ModelError("dormancy override for '" + id + "' must lie in [0, 1]");
    }
    used_.insert(it->first);
    return it->second;
  }

  void check_all_used() const {
    for (const auto& [id, v] : o_.rates) {
      (void)v;
      if (!used_.count(id)) throw ModelError("rate override names unknown block '" + id + "'");
    }
    for (const auto& [id, v] : o_.dormancy) {
      (void)v;
      if (!used_.count(id)) {
        throw ModelError("dormancy override names unknown spare '" + id + "'");
      }
    }
  }

 private:
  const CaseOverrides& o_;
  std::set<std::string> used_;
};

std::vector<std::string> numbered(const std::string& prefix, int n) {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (int i = 1; i <= n; ++i) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%02d", i);
    ids.push_back(prefix + buf);
  }
  return ids;
}

}  // namespace

DrbdModel dbw_model(const CaseOverrides& overrides) {
  OverrideSet ov(overrides);
  const double kDefaultRate = 1e-4;  // placeholder rates; override per block as needed
  DrbdModel m("dbw");
  for (const char* id : {"TF", "EF", "BCU", "PC", "TS", "BS"}) {
    m.add_block(id, Distribution::exponential(ov.rate(id, kDefaultRate)));
  }
  m.add_spare("SC", SpareSpec(Distribution::exponential(ov.rate("SC", kDefaultRate)),
                              ov.dormancy("SC", 0.5)));
  ov.check_all_used();
  m.set_root(Expr::nary_and({
      Expr::var("TF"),
      Expr::var("EF"),
      Expr::var("BCU"),
      Expr::wsp(Expr::var("PC"), "SC"),
      Expr::var("TS"),
      Expr::var("BS"),
  }));
  return m.finalize();
}

DrbdModel sen_model(bool with_spares, const CaseOverrides& overrides) {
  OverrideSet ov(overrides);
  const double kRate = 1e-5;  // per switching element
  const double kDormancy = 0.1;
  const int kPathLength = 16;

  DrbdModel m(with_spares ? "sen" : "sen-nospare");
  m.add_block("Y", Distribution::exponential(ov.rate("Y", kRate)));
  m.add_block("Z", Distribution::exponential(ov.rate("Z", kRate)));
  auto path1 = numbered("L1_", kPathLength);
  auto path2 = numbered("L2_", kPathLength);
  for (const auto& id : path1) m.add_block(id, Distribution::exponential(ov.rate(id, kRate)));
  for (const auto& id : path2) m.add_block(id, Distribution::exponential(ov.rate(id, kRate)));

  ExprPtr ends_y = Expr::var("Y");
  ExprPtr ends_z = Expr::var("Z");
  if (with_spares) {
    m.add_spare("Ys", SpareSpec(Distribution::exponential(ov.rate("Ys", kRate)),
                                ov.dormancy("Ys", kDormancy)));
    m.add_spare("Zs", SpareSpec(Distribution::exponential(ov.rate("Zs", kRate)),
                                ov.dormancy("Zs", kDormancy)));
    ends_y = Expr::wsp(ends_y, "Ys");
    ends_z = Expr::wsp(ends_z, "Zs");
  }
  ov.check_all_used();

  ExprPtr paths = Expr::or_(series(path1), series(path2));
  m.set_root(Expr::nary_and({ends_y, paths, ends_z}));
  return m.finalize();
}

const std::vector<std::string>& case_study_names() {
  static const std::vector<std::string> names = {"dbw", "sen", "sen-nospare"};
  return names;
}

DrbdModel case_study(const std::string& name, const CaseOverrides& overrides) {
  if (name == "dbw") return dbw_model(overrides);
  if (name == "sen") return sen_model(true, overrides);
  if (name == "sen-nospare") return sen_model(false, overrides);
  throw ModelError("unknown case study '" + name + "' (expected dbw, sen or sen-nospare)");
}

GridSpec default_grid(const std::string& name) {
  if (name == "dbw") return {0.0, 1e4, 100};
  if (name == "sen" || name == "sen-nospare") return {0.0, 2e5, 100};
  throw ModelError("unknown case study '" + name + "'");
}

}  // namespace drbd
