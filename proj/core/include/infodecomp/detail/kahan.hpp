#pragma once

namespace infodecomp::detail {

// Compensated summation; keeps long reductions reproducible to the last
// bit for a fixed iteration order.
class Kahan {
 public:
  void add(double v) noexcept {
    double y = v - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }

  double value() const noexcept { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

}  // namespace infodecomp::detail
