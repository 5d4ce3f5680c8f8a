#include "drbd/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "drbd/errors.hpp"
#include "drbd/reliability.hpp"
#include "drbd/rng.hpp"

namespace drbd {

double z_score(CiLevel level) {
  switch (level) {
    case CiLevel::P95:
      return 1.959963984540054;
    case CiLevel::P99:
      return 2.5758293035489004;
  }
  return 2.5758293035489004;
}

namespace {

// Two draw slots per block: slot 0 is the plain (or dormant-state) draw,
// slot 1 the active-state residual of a spare.
double block_u01(std::uint64_t seed, std::size_t block_index, int slot, std::uint64_t sample) {
  return u01(seed, static_cast<std::uint64_t>(block_index) * 2 + slot, sample);
}

double checked_draw(const Distribution& d, double u, const std::string& id) {
  double v = d.sample(u);
  if (std::isnan(v) || v < 0.0) {
    throw SamplingError(id, "sampler returned a negative or NaN failure time");
  }
  return v;
}

}  // namespace

Sample draw_sample(const DrbdModel& model, std::uint64_t seed, std::uint64_t sample_index) {
  Sample s;
  const auto& ids = model.block_ids();
  for (std::size_t b = 0; b < ids.size(); ++b) {
    const std::string& id = ids[b];
    if (model.is_spare(id)) {
      const SpareSpec& sp = model.spare(id);
      SpareDraw draw;
      if (sp.dormant()) {
        draw.dormant = ExtTime(checked_draw(*sp.dormant(), block_u01(seed, b, 0, sample_index), id));
      } else {
        draw.dormant = ExtTime::inf();
      }
      draw.active_offset = checked_draw(sp.active(), block_u01(seed, b, 1, sample_index), id);
      s.spare.emplace(id, draw);
    } else {
      const Distribution& d = model.distribution(id);
      s.basic.emplace(id, ExtTime(checked_draw(d, block_u01(seed, b, 0, sample_index), id)));
    }
  }
  return s;
}

namespace {

McEstimate estimate_from_count(std::uint64_t surviving, std::uint64_t n, CiLevel ci) {
  McEstimate est;
  est.n_effective = n;
  double p = static_cast<double>(surviving) / static_cast<double>(n);
  est.rel_hat = p;
  double z = z_score(ci);
  double nd = static_cast<double>(n);
  double edge = 10.0 / nd;
  if (p < edge || p > 1.0 - edge) {
    // Wilson interval keeps a positive width at the boundaries.
    double denom = 1.0 + z * z / nd;
    est.half_width = z * std::sqrt(p * (1.0 - p) / nd + z * z / (4.0 * nd * nd)) / denom;
  } else {
    est.half_width = z * std::sqrt(p * (1.0 - p) / nd);
  }
  return est;
}

// Counts, per grid point, the samples whose system failure time exceeds
// it. Partitioned by sample index; the per-point tallies are exact
// integers, so the reduction is order-independent.
std::vector<std::uint64_t> count_surviving(const DrbdModel& model, const std::vector<double>& grid,
                                           std::uint64_t n, std::uint64_t seed, unsigned workers) {
  if (workers == 0) workers = 1;
  if (static_cast<std::uint64_t>(workers) > n) workers = static_cast<unsigned>(n);

  auto run = [&](std::uint64_t begin, std::uint64_t end, std::vector<std::uint64_t>& counts) {
    counts.assign(grid.size(), 0);
    for (std::uint64_t i = begin; i < end; ++i) {
      Sample s = draw_sample(model, seed, i);
      ExtTime failure = eval_expr(model.root(), s);
      for (std::size_t g = 0; g < grid.size(); ++g) {
        if (failure > ExtTime(grid[g])) ++counts[g];
      }
    }
  };

  std::vector<std::vector<std::uint64_t>> partial(workers);
  if (workers == 1) {
    run(0, n, partial[0]);
  } else {
    std::vector<std::thread> pool;
    std::uint64_t chunk = n / workers;
    std::uint64_t extra = n % workers;
    std::uint64_t begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
      std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
      pool.emplace_back(run, begin, end, std::ref(partial[w]));
      begin = end;
    }
    for (auto& th : pool) th.join();
  }

  std::vector<std::uint64_t> total(grid.size(), 0);
  for (const auto& counts : partial) {
    for (std::size_t g = 0; g < grid.size(); ++g) total[g] += counts[g];
  }
  return total;
}

}  // namespace

McEstimate estimate_rel(const DrbdModel& model, double t, const McConfig& cfg) {
  if (cfg.n == 0) throw std::invalid_argument("sample count must be at least 1");
  if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
  auto counts = count_surviving(model, {t}, cfg.n, cfg.seed, cfg.workers);
  return estimate_from_count(counts[0], cfg.n, cfg.ci);
}

std::vector<McEstimate> estimate_curve(const DrbdModel& model, const std::vector<double>& grid,
                                       const McConfig& cfg) {
  if (cfg.n == 0) throw std::invalid_argument("sample count must be at least 1");
  for (double t : grid) {
    if (t < 0.0) throw std::invalid_argument("time must be nonnegative");
  }
  auto counts = count_surviving(model, grid, cfg.n, cfg.seed, cfg.workers);
  std::vector<McEstimate> out;
  out.reserve(grid.size());
  for (std::uint64_t c : counts) out.push_back(estimate_from_count(c, cfg.n, cfg.ci));
  return out;
}

CompareResult compare(const DrbdModel& model, double t, double tol_sigmas, const McConfig& cfg,
                      double tol) {
  if (!(tol_sigmas > 0.0)) throw std::invalid_argument("tolerance must be positive");
  CompareResult r;
  r.algebraic = rel_expr(model, t, tol);
  McEstimate est = estimate_rel(model, t, cfg);
  r.mc = est.rel_hat;
  r.half_width = est.half_width;
  double se = est.half_width / z_score(cfg.ci);
  double diff = std::abs(r.algebraic - r.mc);
  r.z = se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  r.verdict = diff <= tol_sigmas * se ? CompareVerdict::Consistent : CompareVerdict::Discrepancy;
  return r;
}

}  // namespace drbd
