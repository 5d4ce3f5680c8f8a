#pragma once

#include <map>
#include <string>
#include <vector>

#include "drbd/model.hpp"

namespace drbd {

/// Per-block overrides for the built-in case studies. A rate override on
/// a spare replaces its active rate; the dormant law is re-derived from
/// the (possibly overridden) dormancy factor.
struct CaseOverrides {
  std::map<std::string, double> rates;
  std::map<std::string, double> dormancy;
};

struct GridSpec {
  double t0 = 0.0;
  double t1 = 1.0;
  int steps = 100;
};

/// Drive-by-wire subsystem: a six-factor series (throttle, engine, brake
/// control unit, primary control unit with a warm spare controller,
/// throttle sensor, brake sensor). Default rates are a documented
/// placeholder of 1e-4 per block with spare dormancy 0.5; every rate is
/// overridable.
DrbdModel dbw_model(const CaseOverrides& overrides = {});

/// Shuffle-exchange network terminal pair: two endpoint switches (each
/// with a warm spare at dormancy 0.1) in series with a parallel pair of
/// 16-element switching paths, all elements at rate 1e-5.
DrbdModel sen_model(bool with_spares = true, const CaseOverrides& overrides = {});

const std::vector<std::string>& case_study_names();

/// Builds "dbw", "sen" or "sen-nospare"; unknown names throw ModelError.
DrbdModel case_study(const std::string& name, const CaseOverrides& overrides = {});

GridSpec default_grid(const std::string& name);

}  // namespace drbd
