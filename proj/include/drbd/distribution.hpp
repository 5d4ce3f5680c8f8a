#pragma once

#include <functional>
#include <optional>
#include <string>

namespace drbd {

/// Failure-time law of a basic block, supported on [0, inf). Built-in
/// kinds are exponential and Weibull; arbitrary laws can be supplied as a
/// (cdf, pdf, sampler) triple where the sampler maps a uniform variate in
/// [0, 1) to a failure time (inverse-CDF style, so that draws stay
/// reproducible under the counter-based streams).
class Distribution {
 public:
  enum class Kind { Exponential, Weibull, UserDefined };

  using Fn = std::function<double(double)>;

  static Distribution exponential(double rate);
  static Distribution weibull(double shape, double scale);
  static Distribution user_defined(Fn cdf, Fn pdf, Fn sampler);

  Kind kind() const { return kind_; }

  /// P(T <= t); 0 for t < 0.
  double cdf(double t) const;

  /// Density at t; 0 for t < 0.
  double pdf(double t) const;

  /// Failure time for uniform u in [0, 1).
  double sample(double u) const;

  /// Rate of an exponential law (throws otherwise).
  double rate() const;
  double weibull_shape() const;
  double weibull_scale() const;

 private:
  Distribution() = default;

  Kind kind_ = Kind::Exponential;
  double a_ = 1.0;  // rate, or Weibull shape
  double b_ = 1.0;  // Weibull scale
  Fn cdf_;
  Fn pdf_;
  Fn sampler_;
};

/// Spare block: an active law plus a dormant law attenuated by the
/// dormancy factor. dormancy 0 means the dormant state never fails (cold);
/// dormancy 1 means the dormant law equals the active one (hot).
class SpareSpec {
 public:
  /// Attenuates the active law's cumulative hazard by `dormancy`: for
  /// exponential(rate) the dormant law is exponential(dormancy * rate),
  /// for weibull(k, theta) it is weibull(k, theta / dormancy^(1/k)).
  SpareSpec(Distribution active, double dormancy);

  /// Explicit laws; `dormancy` is kept for reporting only.
  SpareSpec(Distribution dormant, Distribution active, double dormancy);

  const Distribution& active() const { return active_; }

  /// Empty when the dormant state never fails.
  const std::optional<Distribution>& dormant() const { return dormant_; }

  double dormancy() const { return dormancy_; }

  /// P(dormant-state failure <= t); identically 0 for a cold spare.
  double dormant_cdf(double t) const { return dormant_ ? dormant_->cdf(t) : 0.0; }

 private:
  std::optional<Distribution> dormant_;
  Distribution active_;
  double dormancy_;
};

}  // namespace drbd
