#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace rieszlab {

/// Neumaier compensated accumulator. The rounding error of every addition is
/// kept in a carry term, so partial-sum scans of length 1e5 and beyond stay
/// accurate to a few ulp instead of drifting linearly with depth.
class CompensatedScalar {
public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + carry_; }

  void reset() noexcept { sum_ = 0.0; carry_ = 0.0; }

private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Compensated incremental mean. step(ratio, x) applies
///   mu_n = mu_{n-1} + ratio * (x_n - mu_{n-1}),   ratio = r_n / R_n in [0, 1],
/// carrying the rounding error of the update forward. The first step must be
/// called with ratio == 1 so that mu_1 == x_1 exactly.
class CompensatedMean {
public:
  void step(double ratio, double x) noexcept {
    const double m = hi_ + lo_;
    const double delta = ratio * (x - m);
    const double t = hi_ + delta;
    if (std::abs(hi_) >= std::abs(delta)) {
      lo_ += (hi_ - t) + delta;
    } else {
      lo_ += (delta - t) + hi_;
    }
    hi_ = t;
  }

  double value() const noexcept { return hi_ + lo_; }

private:
  double hi_ = 0.0;
  double lo_ = 0.0;
};

/// Coordinatewise compensated mean over R^d. Each coordinate performs exactly
/// the scalar CompensatedMean update, so a vector scan and a scalar scan of one
/// coordinate produce bitwise identical trajectories.
class CompensatedMeanVector {
public:
  explicit CompensatedMeanVector(std::size_t dim) : coords_(dim) {}

  void step(double ratio, const std::vector<double>& x) noexcept {
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i].step(ratio, x[i]);
  }

  void value_into(std::vector<double>& out) const {
    out.resize(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) out[i] = coords_[i].value();
  }

  std::size_t dim() const noexcept { return coords_.size(); }

private:
  std::vector<CompensatedMean> coords_;
};

/// Coordinatewise compensated running sum over R^d.
class CompensatedVector {
public:
  explicit CompensatedVector(std::size_t dim) : coords_(dim) {}

  void add(const std::vector<double>& x) noexcept {
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i].add(x[i]);
  }

  void value_into(std::vector<double>& out) const {
    out.resize(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i) out[i] = coords_[i].value();
  }

  std::size_t dim() const noexcept { return coords_.size(); }

private:
  std::vector<CompensatedScalar> coords_;
};

}  // namespace rieszlab
