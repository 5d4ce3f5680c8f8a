#include "drbd/curve.hpp"

#include <cstdio>
#include <stdexcept>

namespace drbd {

std::vector<double> time_grid(double t0, double t1, int steps) {
  if (t0 < 0.0) throw std::invalid_argument("t0 must be nonnegative");
  if (!(t1 > t0)) throw std::invalid_argument("t1 must exceed t0");
  if (steps < 1) throw std::invalid_argument("steps must be at least 1");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) {
    grid.push_back(i == steps ? t1 : t0 + (t1 - t0) * static_cast<double>(i) / steps);
  }
  return grid;
}

std::string format_sig9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<CurveRow>& rows) {
  if (rows.empty()) return;
  const CurveRow& first = rows.front();
  os << "t";
  if (first.rel) os << ",rel";
  if (first.mc_rel) os << ",mc_rel";
  if (first.mc_halfwidth) os << ",mc_halfwidth";
  os << "\n";
  for (const auto& row : rows) {
    os << format_sig9(row.t);
    if (first.rel) os << ',' << format_sig9(row.rel.value());
    if (first.mc_rel) os << ',' << format_sig9(row.mc_rel.value());
    if (first.mc_halfwidth) os << ',' << format_sig9(row.mc_halfwidth.value());
    os << "\n";
  }
}

}  // namespace drbd
