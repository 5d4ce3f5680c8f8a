#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace drbd {

/// A failure instant: a nonnegative real number of time units, or the
/// distinguished value INF for a component that never fails. The order is
/// total, with every finite value below INF.
class ExtTime {
 public:
  ExtTime() : value_(0.0) {}

  explicit ExtTime(double value) : value_(value) {
    if (std::isnan(value) || value < 0.0) {
      throw std::invalid_argument("failure time must be a nonnegative real or INF");
    }
  }

  static ExtTime inf() {
    ExtTime t;
    t.value_ = std::numeric_limits<double>::infinity();
    return t;
  }

  bool is_inf() const { return std::isinf(value_); }
  bool is_finite() const { return !is_inf(); }

  /// Raw value; +infinity when is_inf().
  double value() const { return value_; }

  /// This instant delayed by a finite nonnegative offset; INF stays INF.
  ExtTime plus(double offset) const {
    if (std::isnan(offset) || offset < 0.0) {
      throw std::invalid_argument("offset must be a nonnegative real");
    }
    ExtTime t;
    t.value_ = value_ + offset;
    return t;
  }

  friend bool operator==(ExtTime a, ExtTime b) { return a.value_ == b.value_; }
  friend bool operator!=(ExtTime a, ExtTime b) { return a.value_ != b.value_; }
  friend bool operator<(ExtTime a, ExtTime b) { return a.value_ < b.value_; }
  friend bool operator<=(ExtTime a, ExtTime b) { return a.value_ <= b.value_; }
  friend bool operator>(ExtTime a, ExtTime b) { return a.value_ > b.value_; }
  friend bool operator>=(ExtTime a, ExtTime b) { return a.value_ >= b.value_; }

 private:
  double value_;
};

/// min(X, Y): failure time of a two-block series connection.
inline ExtTime ext_min(ExtTime a, ExtTime b) { return a < b ? a : b; }

/// max(X, Y): failure time of a two-block parallel connection.
inline ExtTime ext_max(ExtTime a, ExtTime b) { return a < b ? b : a; }

/// X after Y: X when X fails strictly after Y, otherwise never.
inline ExtTime after(ExtTime x, ExtTime y) { return x > y ? x : ExtTime::inf(); }

/// X simultaneous Y: X when both fail at the same instant, otherwise never.
inline ExtTime simult(ExtTime x, ExtTime y) { return x == y ? x : ExtTime::inf(); }

/// X inclusive-after Y: X when X fails at or after Y, otherwise never.
inline ExtTime incl_after(ExtTime x, ExtTime y) { return x >= y ? x : ExtTime::inf(); }

}  // namespace drbd
