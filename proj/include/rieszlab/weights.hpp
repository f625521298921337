#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rieszlab/accumulate.hpp"
#include "rieszlab/core.hpp"

namespace rieszlab {

/// Weight sequence r = (r_k) of a weighted-mean method, with cumulative sums
/// R_n = r_1 + ... + r_n. Constraints checked at construction: r_1 > 0 and
/// r_k >= 0 for all k, so every R_n is strictly positive and nondecreasing.
///
/// Families:
///   explicit_list  user data; entries beyond the list are zero
///   constant(c)    r_k = c, c > 0 (c = 1 is the arithmetic-mean method)
///   power(a)       r_k = k^a, 0 <= a <= 40 (larger exponents overflow double
///                  cumulative sums at diagnostic depths and are rejected)
///   geometric(q)   r_k = q^k, q > 1
///
/// For the parameterized families R_n -> infinity holds by construction; for
/// explicit lists it cannot (the tail is zero), and `divergence_evidence`
/// records the finite-depth heuristic R_{2N} > (1 + 1e-9) R_N instead.
class RieszWeights {
public:
  enum class Family { Explicit, Constant, Power, Geometric };

  static RieszWeights explicit_list(std::vector<double> values) {
    if (values.empty()) throw ValidationError("weights: explicit list must be nonempty");
    if (!detail::all_finite(values)) throw ValidationError("weights: entries must be finite");
    if (values.front() <= 0.0) throw ValidationError("weights: r_1 must be positive");
    for (double v : values) {
      if (v < 0.0) throw ValidationError("weights: entries must be nonnegative");
    }
    RieszWeights w(Family::Explicit, 0.0);
    w.values_ = std::move(values);
    w.divergence_evidence_ = w.explicit_divergence_probe();
    return w;
  }

  static RieszWeights constant(double value) {
    if (!std::isfinite(value) || value <= 0.0) {
      throw ValidationError("weights: constant value must be positive and finite");
    }
    return RieszWeights(Family::Constant, value);
  }

  static RieszWeights power(double alpha) {
    if (!std::isfinite(alpha) || alpha < 0.0 || alpha > 40.0) {
      throw ValidationError("weights: power exponent must lie in [0, 40]");
    }
    return RieszWeights(Family::Power, alpha);
  }

  static RieszWeights geometric(double ratio) {
    if (!std::isfinite(ratio) || ratio <= 1.0) {
      throw ValidationError("weights: geometric ratio must exceed 1");
    }
    return RieszWeights(Family::Geometric, ratio);
  }

  Family family() const noexcept { return family_; }
  double parameter() const noexcept { return parameter_; }
  const std::vector<double>& explicit_values() const noexcept { return values_; }
  bool divergence_evidence() const noexcept { return divergence_evidence_; }

  /// r_k (1-based). For the geometric family this overflows to infinity once
  /// q^k leaves double range; transforms never evaluate it there, they use the
  /// bounded ratio r_k / R_k from the cursor instead.
  double weight(std::size_t k) const noexcept {
    switch (family_) {
      case Family::Explicit:
        return k <= values_.size() ? values_[k - 1] : 0.0;
      case Family::Constant:
        return parameter_;
      case Family::Power:
        return std::pow(static_cast<double>(k), parameter_);
      case Family::Geometric:
        return std::pow(parameter_, static_cast<double>(k));
    }
    return 0.0;
  }

  bool operator==(const RieszWeights& other) const noexcept {
    return family_ == other.family_ && parameter_ == other.parameter_ &&
           values_ == other.values_;
  }

private:
  RieszWeights(Family f, double p) : family_(f), parameter_(p), divergence_evidence_(true) {}

  bool explicit_divergence_probe() const {
    const std::size_t n = values_.size() > 1 ? values_.size() / 2 : 1;
    CompensatedScalar acc;
    double r_n = 0.0;
    for (std::size_t k = 1; k <= 2 * n && k <= values_.size(); ++k) {
      acc.add(values_[k - 1]);
      if (k == n) r_n = acc.value();
    }
    if (n >= values_.size()) r_n = acc.value();
    return acc.value() > r_n * (1.0 + 1e-9);
  }

  Family family_;
  double parameter_;
  std::vector<double> values_;
  bool divergence_evidence_;
};

/// Forward iteration state over a weight sequence, yielding for k = 1, 2, ...
/// the weight r_k and the bounded ratio r_k / R_k in [0, 1] that drives the
/// incremental mean recurrence. The geometric family never forms R_k: it
/// tracks v_k = R_k / r_k through v_k = 1 + v_{k-1} / q, which stays within
/// [1, q/(q-1)] for any ratio, so no depth overflows.
class WeightCursor {
public:
  explicit WeightCursor(const RieszWeights& weights) : weights_(&weights) {}

  /// Move to the next index; index() becomes 1 on the first call.
  void advance() {
    ++k_;
    switch (weights_->family()) {
      case RieszWeights::Family::Constant:
        weight_ = weights_->parameter();
        ratio_ = 1.0 / static_cast<double>(k_);
        cumulative_ = weights_->parameter() * static_cast<double>(k_);
        break;
      case RieszWeights::Family::Power: {
        weight_ = std::pow(static_cast<double>(k_), weights_->parameter());
        acc_.add(weight_);
        cumulative_ = acc_.value();
        ratio_ = weight_ / cumulative_;
        break;
      }
      case RieszWeights::Family::Geometric: {
        const double q = weights_->parameter();
        inv_ratio_ = (k_ == 1) ? 1.0 : 1.0 + inv_ratio_ / q;
        ratio_ = 1.0 / inv_ratio_;
        weight_ = std::pow(q, static_cast<double>(k_));
        cumulative_ = weight_ * inv_ratio_;
        break;
      }
      case RieszWeights::Family::Explicit: {
        weight_ = weights_->weight(k_);
        acc_.add(weight_);
        cumulative_ = acc_.value();
        ratio_ = weight_ == 0.0 ? 0.0 : weight_ / cumulative_;
        break;
      }
    }
  }

  std::size_t index() const noexcept { return k_; }
  double weight() const noexcept { return weight_; }
  double ratio() const noexcept { return ratio_; }
  double cumulative() const noexcept { return cumulative_; }

private:
  const RieszWeights* weights_;
  std::size_t k_ = 0;
  double weight_ = 0.0;
  double ratio_ = 0.0;
  double cumulative_ = 0.0;
  double inv_ratio_ = 1.0;
  CompensatedScalar acc_;
};

}  // namespace rieszlab
