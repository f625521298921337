#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rieszlab/rng.hpp"

namespace rieszlab {

/// Raised when a value fails its construction-time or configuration checks.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when an analysis cannot produce a result from validated inputs.
struct AnalysisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised by the report writer on filesystem failures.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool all_finite(const std::vector<double>& v) noexcept {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace detail

/// Which l_p norm a finite-dimensional space carries; p may be any real in
/// [1, infinity], with infinity encoding the sup norm.
class NormKind {
public:
  static NormKind p1() noexcept { return NormKind(1.0); }
  static NormKind p2() noexcept { return NormKind(2.0); }
  static NormKind sup() noexcept {
    return NormKind(std::numeric_limits<double>::infinity());
  }

  static NormKind lp(double p) {
    if (std::isnan(p) || p < 1.0) {
      throw ValidationError("NormKind: exponent must satisfy p >= 1");
    }
    return NormKind(p);
  }

  double exponent() const noexcept { return p_; }
  bool is_sup() const noexcept { return std::isinf(p_); }

  /// Conjugate exponent q with 1/p + 1/q = 1; the dual of R^d with this norm.
  NormKind dual() const noexcept {
    if (is_sup()) return NormKind(1.0);
    if (p_ == 1.0) return sup();
    return NormKind(p_ / (p_ - 1.0));
  }

  bool operator==(const NormKind& other) const noexcept { return p_ == other.p_; }
  bool operator!=(const NormKind& other) const noexcept { return !(*this == other); }

private:
  explicit NormKind(double p) noexcept : p_(p) {}
  double p_;
};

/// p-norm of a raw coordinate buffer.
inline double norm_of(const std::vector<double>& v, NormKind kind) noexcept {
  if (kind.is_sup()) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  const double p = kind.exponent();
  if (p == 1.0) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  }
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), p);
  return std::pow(s, 1.0 / p);
}

inline double diff_norm(const std::vector<double>& a, const std::vector<double>& b,
                        NormKind kind) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return norm_of(d, kind);
}

/// A point of R^d. Dimension is fixed at construction and every coordinate is
/// checked to be finite; analyses may therefore assume NaN-free data.
class FiniteVector {
public:
  explicit FiniteVector(std::vector<double> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) {
      throw ValidationError("FiniteVector: dimension must be at least 1");
    }
    if (!detail::all_finite(entries_)) {
      throw ValidationError("FiniteVector: entries must be finite");
    }
  }

  static FiniteVector zero(std::size_t dim) {
    return FiniteVector(std::vector<double>(dim, 0.0));
  }

  std::size_t dim() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const noexcept { return entries_[i]; }
  const std::vector<double>& entries() const noexcept { return entries_; }

  double norm(NormKind kind) const noexcept { return norm_of(entries_, kind); }

  bool operator==(const FiniteVector& other) const noexcept {
    return entries_ == other.entries_;
  }

private:
  std::vector<double> entries_;
};

inline FiniteVector operator+(const FiniteVector& a, const FiniteVector& b) {
  if (a.dim() != b.dim()) throw ValidationError("vector sum: dimension mismatch");
  std::vector<double> r(a.dim());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
  return FiniteVector(std::move(r));
}

inline FiniteVector operator-(const FiniteVector& a, const FiniteVector& b) {
  if (a.dim() != b.dim()) throw ValidationError("vector difference: dimension mismatch");
  std::vector<double> r(a.dim());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
  return FiniteVector(std::move(r));
}

inline FiniteVector operator*(double c, const FiniteVector& v) {
  std::vector<double> r(v.dim());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = c * v[i];
  return FiniteVector(std::move(r));
}

/// Dense linear map R^cols -> R^rows, row-major storage.
class LinearOperator {
public:
  LinearOperator(std::size_t rows, std::size_t cols, std::vector<double> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ == 0 || cols_ == 0) {
      throw ValidationError("LinearOperator: dimensions must be at least 1");
    }
    if (entries_.size() != rows_ * cols_) {
      throw ValidationError("LinearOperator: entry count does not match shape");
    }
    if (!detail::all_finite(entries_)) {
      throw ValidationError("LinearOperator: entries must be finite");
    }
  }

  static LinearOperator zero(std::size_t rows, std::size_t cols) {
    return LinearOperator(rows, cols, std::vector<double>(rows * cols, 0.0));
  }

  static LinearOperator identity(std::size_t n) {
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
    return LinearOperator(n, n, std::move(e));
  }

  static LinearOperator scaled_identity(std::size_t n, double c) {
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = c;
    return LinearOperator(n, n, std::move(e));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double at(std::size_t i, std::size_t j) const noexcept { return entries_[i * cols_ + j]; }
  const std::vector<double>& entries() const noexcept { return entries_; }

  void apply_into(const std::vector<double>& x, std::vector<double>& out) const {
    out.assign(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      double s = 0.0;
      const double* row = entries_.data() + i * cols_;
      for (std::size_t j = 0; j < cols_; ++j) s += row[j] * x[j];
      out[i] = s;
    }
  }

  FiniteVector apply(const FiniteVector& x) const {
    if (x.dim() != cols_) throw ValidationError("apply: dimension mismatch");
    std::vector<double> out;
    apply_into(x.entries(), out);
    return FiniteVector(std::move(out));
  }

private:
  std::size_t rows_, cols_;
  std::vector<double> entries_;
};

/// Result of an induced-norm computation. `exact` marks the closed-form and
/// iterative cases; otherwise the value is a sampled lower bound.
struct OperatorNormEstimate {
  double value = 0.0;
  bool exact = false;
};

namespace detail {

/// Gaussian direction normalized in the given norm; a deterministic point of
/// the unit sphere. Sampling is not uniform in any particular measure, which
/// is fine for lower bounds and probe coverage.
inline std::vector<double> unit_vector(std::size_t dim, NormKind kind, SplitMix64& rng) {
  std::vector<double> v(dim);
  double n = 0.0;
  do {
    for (auto& x : v) x = rng.gaussian();
    n = norm_of(v, kind);
  } while (n == 0.0 || !std::isfinite(n));
  for (auto& x : v) x /= n;
  return v;
}

}  // namespace detail

/// Induced operator norm from (R^cols, in_kind) to (R^rows, out_kind).
/// Exact for the classical closed-form pairs and for the spectral (2 -> 2)
/// case, which is computed by power iteration to relative tolerance 1e-10.
/// Every other pair falls back to a seeded sampled lower bound over at least
/// 256 unit vectors, reported with exact == false.
inline OperatorNormEstimate operator_norm(const LinearOperator& op, NormKind in_kind,
                                          NormKind out_kind) {
  if (in_kind.exponent() == 1.0 && out_kind.exponent() == 1.0) {
    double best = 0.0;
    for (std::size_t j = 0; j < op.cols(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < op.rows(); ++i) s += std::abs(op.at(i, j));
      best = std::max(best, s);
    }
    return {best, true};
  }
  if (in_kind.is_sup() && out_kind.is_sup()) {
    double best = 0.0;
    for (std::size_t i = 0; i < op.rows(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < op.cols(); ++j) s += std::abs(op.at(i, j));
      best = std::max(best, s);
    }
    return {best, true};
  }
  if (in_kind.exponent() == 2.0 && out_kind.exponent() == 2.0) {
    // Power iteration on A^T A; the iterate is renormalized every step and the
    // Rayleigh quotient gives sigma_max^2.
    const std::size_t n = op.cols();
    SplitMix64 rng(0x5eed0b5e55ed5eedull);
    std::vector<double> v = detail::unit_vector(n, NormKind::p2(), rng);
    std::vector<double> av, bv(n);
    double lambda = 0.0;
    for (int iter = 0; iter < 20000; ++iter) {
      op.apply_into(v, av);  // av = A v
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < op.rows(); ++i) s += op.at(i, j) * av[i];
        bv[j] = s;  // bv = A^T A v
      }
      double dot = 0.0;
      for (std::size_t j = 0; j < n; ++j) dot += v[j] * bv[j];
      const double nb = norm_of(bv, NormKind::p2());
      if (nb == 0.0) return {0.0, true};
      if (iter > 0 && std::abs(dot - lambda) <= 1e-10 * std::max(dot, 1e-300)) {
        return {std::sqrt(std::max(dot, 0.0)), true};
      }
      lambda = dot;
      for (std::size_t j = 0; j < n; ++j) v[j] = bv[j] / nb;
    }
    return {std::sqrt(std::max(lambda, 0.0)), true};
  }
  SplitMix64 rng(0x5eedcafe0f00d001ull);
  std::vector<double> out;
  double best = 0.0;
  for (int s = 0; s < 256; ++s) {
    const std::vector<double> v = detail::unit_vector(op.cols(), in_kind, rng);
    op.apply_into(v, out);
    best = std::max(best, norm_of(out, out_kind));
  }
  return {best, false};
}

/// Continuous linear functional on (R^d, space_kind), acting by the dot
/// product with a coefficient vector. A functional flagged `unit` must have
/// dual norm 1 within 1e-12, where the dual carries the conjugate exponent.
class Functional {
public:
  Functional(FiniteVector coefficients, NormKind space_kind, bool unit)
      : coefficients_(std::move(coefficients)), space_kind_(space_kind), unit_(unit) {
    if (unit_) {
      const double q = dual_norm();
      if (std::abs(q - 1.0) > 1e-12) {
        throw ValidationError("Functional: unit flag requires dual norm 1 within 1e-12");
      }
    }
  }

  /// Plain left-to-right dot product. Coordinate functionals therefore extract
  /// coordinates exactly, which downstream weak/strong comparisons rely on.
  double operator()(const std::vector<double>& v) const noexcept {
    double s = 0.0;
    const auto& c = coefficients_.entries();
    for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * v[i];
    return s;
  }

  double operator()(const FiniteVector& v) const noexcept { return (*this)(v.entries()); }

  const FiniteVector& coefficients() const noexcept { return coefficients_; }
  NormKind space_kind() const noexcept { return space_kind_; }
  bool unit() const noexcept { return unit_; }
  std::size_t dim() const noexcept { return coefficients_.dim(); }

  double dual_norm() const noexcept {
    return coefficients_.norm(space_kind_.dual());
  }

  bool is_coordinate(std::size_t i) const noexcept {
    const auto& c = coefficients_.entries();
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] != (j == i ? 1.0 : 0.0)) return false;
    }
    return true;
  }

private:
  FiniteVector coefficients_;
  NormKind space_kind_;
  bool unit_;
};

/// The d coordinate functionals followed by `count` seeded random unit
/// functionals (unit in the dual norm). Deterministic for a fixed seed.
inline std::vector<Functional> sample_functionals(std::size_t dim, std::size_t count,
                                                  std::uint64_t seed, NormKind space_kind) {
  if (dim == 0) throw ValidationError("sample_functionals: dim must be at least 1");
  if (count == 0) throw ValidationError("sample_functionals: count must be at least 1");
  std::vector<Functional> fs;
  fs.reserve(dim + count);
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> c(dim, 0.0);
    c[i] = 1.0;
    fs.emplace_back(FiniteVector(std::move(c)), space_kind, true);
  }
  SplitMix64 rng(seed);
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<double> c = detail::unit_vector(dim, space_kind.dual(), rng);
    fs.emplace_back(FiniteVector(std::move(c)), space_kind, true);
  }
  return fs;
}

}  // namespace rieszlab
