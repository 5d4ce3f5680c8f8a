#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace drbd {

/// One reliability-curve sample; the optional columns are filled by the
/// Monte Carlo commands.
struct CurveRow {
  double t = 0.0;
  std::optional<double> rel;
  std::optional<double> mc_rel;
  std::optional<double> mc_halfwidth;
};

/// steps+1 points from t0 to t1 inclusive, strictly increasing.
std::vector<double> time_grid(double t0, double t1, int steps);

/// Value with 9 significant digits (the CSV number format).
std::string format_sig9(double v);

/// CSV with a header matching the populated columns of the first row;
/// numbers at 9 significant digits, rows ordered as given.
void write_csv(std::ostream& os, const std::vector<CurveRow>& rows);

}  // namespace drbd
