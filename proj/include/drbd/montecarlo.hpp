#pragma once

#include <cstdint>
#include <vector>

#include "drbd/eval.hpp"
#include "drbd/model.hpp"

namespace drbd {

enum class CiLevel { P95, P99 };

/// Two-sided normal quantile for the confidence level.
double z_score(CiLevel level);

struct McConfig {
  std::uint64_t n = 1000000;
  std::uint64_t seed = 0;
  CiLevel ci = CiLevel::P99;
  unsigned workers = 1;
};

struct McEstimate {
  double rel_hat = 0.0;
  double half_width = 0.0;
  std::uint64_t n_effective = 0;
};

enum class CompareVerdict { Consistent, Discrepancy };

struct CompareResult {
  CompareVerdict verdict = CompareVerdict::Consistent;
  double algebraic = 0.0;
  double mc = 0.0;
  double half_width = 0.0;
  double z = 0.0;  // |algebraic - mc| in standard-error units
};

/// One valuation of every declared block. Basic blocks draw from their
/// law; spares draw a dormant-state time (INF for cold spares) and a
/// fresh active-state residual. Draws depend only on (seed, block, index).
Sample draw_sample(const DrbdModel& model, std::uint64_t seed, std::uint64_t sample_index);

/// Estimates Rel(t) = P(system failure time > t) from cfg.n samples.
/// Bit-identical for fixed (n, seed) regardless of cfg.workers. The
/// half-width is the normal-approximation CI except within 10/n of 0 or
/// 1, where the Wilson interval is substituted to avoid zero widths.
McEstimate estimate_rel(const DrbdModel& model, double t, const McConfig& cfg);

/// Shared-sample curve: equivalent to estimate_rel at each grid point
/// (same streams), drawing each sample once.
std::vector<McEstimate> estimate_curve(const DrbdModel& model, const std::vector<double>& grid,
                                       const McConfig& cfg);

/// Cross-checks the algebraic reliability against the Monte Carlo
/// estimate; consistent when they differ by at most tol_sigmas standard
/// errors. `tol` is the quadrature tolerance of the algebraic side.
CompareResult compare(const DrbdModel& model, double t, double tol_sigmas, const McConfig& cfg,
                      double tol = 1e-9);

}  // namespace drbd
