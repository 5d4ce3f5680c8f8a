#include "drbd/distribution.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace drbd {

Distribution Distribution::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("exponential rate must be positive and finite");
  }
  Distribution d;
  d.kind_ = Kind::Exponential;
  d.a_ = rate;
  return d;
}

Distribution Distribution::weibull(double shape, double scale) {
  if (!(shape > 0.0) || !std::isfinite(shape) || !(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("weibull shape and scale must be positive and finite");
  }
  Distribution d;
  d.kind_ = Kind::Weibull;
  d.a_ = shape;
  d.b_ = scale;
  return d;
}

Distribution Distribution::user_defined(Fn cdf, Fn pdf, Fn sampler) {
  if (!cdf || !pdf || !sampler) {
    throw std::invalid_argument("user-defined distribution needs cdf, pdf and sampler");
  }
  Distribution d;
  d.kind_ = Kind::UserDefined;
  d.cdf_ = std::move(cdf);
  d.pdf_ = std::move(pdf);
  d.sampler_ = std::move(sampler);
  return d;
}

double Distribution::cdf(double t) const {
  if (t < 0.0) return 0.0;
  switch (kind_) {
    case Kind::Exponential:
      return -std::expm1(-a_ * t);
    case Kind::Weibull:
      return -std::expm1(-std::pow(t / b_, a_));
    case Kind::UserDefined:
      return cdf_(t);
  }
  return 0.0;
}

double Distribution::pdf(double t) const {
  if (t < 0.0) return 0.0;
  switch (kind_) {
    case Kind::Exponential:
      return a_ * std::exp(-a_ * t);
    case Kind::Weibull: {
      if (t == 0.0) {
        if (a_ > 1.0) return 0.0;
        if (a_ == 1.0) return 1.0 / b_;
        return std::numeric_limits<double>::infinity();
      }
      double z = std::pow(t / b_, a_);
      return (a_ / t) * z * std::exp(-z);
    }
    case Kind::UserDefined:
      return pdf_(t);
  }
  return 0.0;
}

double Distribution::sample(double u) const {
  switch (kind_) {
    case Kind::Exponential:
      return -std::log1p(-u) / a_;
    case Kind::Weibull:
      return b_ * std::pow(-std::log1p(-u), 1.0 / a_);
    case Kind::UserDefined:
      return sampler_(u);
  }
  return 0.0;
}

double Distribution::rate() const {
  if (kind_ != Kind::Exponential) throw std::logic_error("not an exponential law");
  return a_;
}

double Distribution::weibull_shape() const {
  if (kind_ != Kind::Weibull) throw std::logic_error("not a Weibull law");
  return a_;
}

double Distribution::weibull_scale() const {
  if (kind_ != Kind::Weibull) throw std::logic_error("not a Weibull law");
  return b_;
}

namespace {

std::optional<Distribution> attenuate(const Distribution& active, double dormancy) {
  if (dormancy == 0.0) return std::nullopt;
  switch (active.kind()) {
    case Distribution::Kind::Exponential:
      return Distribution::exponential(dormancy * active.rate());
    case Distribution::Kind::Weibull: {
      double k = active.weibull_shape();
      double scale = active.weibull_scale() / std::pow(dormancy, 1.0 / k);
      return Distribution::weibull(k, scale);
    }
    case Distribution::Kind::UserDefined:
      throw std::invalid_argument(
          "dormancy attenuation is defined for exponential and Weibull laws only; "
          "supply an explicit dormant law instead");
  }
  return std::nullopt;
}

void check_dormancy(double dormancy) {
  if (!(dormancy >= 0.0) || !(dormancy <= 1.0)) {
    throw std::invalid_argument("dormancy factor must lie in [0, 1]");
  }
}

}  // namespace

SpareSpec::SpareSpec(Distribution active, double dormancy)
    : active_(std::move(active)), dormancy_(dormancy) {
  check_dormancy(dormancy);
  dormant_ = attenuate(active_, dormancy);
}

SpareSpec::SpareSpec(Distribution dormant, Distribution active, double dormancy)
    : dormant_(std::move(dormant)), active_(std::move(active)), dormancy_(dormancy) {
  check_dormancy(dormancy);
}

}  // namespace drbd
