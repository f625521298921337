#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rieszlab/core.hpp"

namespace rieszlab {

/// Scalar coefficient sequence c_k, k >= 1, in closed form. Explicit lists
/// are zero beyond their last entry, so every rule is defined at all depths.
class CoefficientRule {
public:
  enum class Kind { Zero, AlternatingUnit, Geometric, Harmonic, Constant, Explicit };

  static CoefficientRule zero() { return CoefficientRule(Kind::Zero, 0.0, {}); }

  /// c_k = (-1)^{k+1}: +1, -1, +1, ...
  static CoefficientRule alternating_unit() {
    return CoefficientRule(Kind::AlternatingUnit, 0.0, {});
  }

  /// c_k = q^{-k}. q = 1 is allowed and yields the constant-one tail of a
  /// divergent series; q > 1 decays geometrically.
  static CoefficientRule geometric(double q) {
    if (!std::isfinite(q) || q < 1.0) {
      throw ValidationError("coefficient rule: geometric ratio must be finite and >= 1");
    }
    return CoefficientRule(Kind::Geometric, q, {});
  }

  /// c_k = 1/k.
  static CoefficientRule harmonic() { return CoefficientRule(Kind::Harmonic, 0.0, {}); }

  static CoefficientRule constant(double c) {
    if (!std::isfinite(c)) throw ValidationError("coefficient rule: constant must be finite");
    return CoefficientRule(Kind::Constant, c, {});
  }

  static CoefficientRule explicit_list(std::vector<double> values) {
    if (values.empty()) throw ValidationError("coefficient rule: explicit list must be nonempty");
    if (!detail::all_finite(values)) {
      throw ValidationError("coefficient rule: explicit entries must be finite");
    }
    return CoefficientRule(Kind::Explicit, 0.0, std::move(values));
  }

  double value(std::size_t k) const {
    if (k == 0) throw ValidationError("coefficient rule: index is 1-based");
    switch (kind_) {
      case Kind::Zero:
        return 0.0;
      case Kind::AlternatingUnit:
        return (k % 2 == 1) ? 1.0 : -1.0;
      case Kind::Geometric:
        return std::pow(param_, -static_cast<double>(k));
      case Kind::Harmonic:
        return 1.0 / static_cast<double>(k);
      case Kind::Constant:
        return param_;
      case Kind::Explicit:
        return k <= values_.size() ? values_[k - 1] : 0.0;
    }
    return 0.0;
  }

  Kind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return param_; }
  const std::vector<double>& values() const noexcept { return values_; }

  bool operator==(const CoefficientRule& o) const noexcept {
    return kind_ == o.kind_ && param_ == o.param_ && values_ == o.values_;
  }

private:
  CoefficientRule(Kind k, double p, std::vector<double> v)
      : kind_(k), param_(p), values_(std::move(v)) {}

  Kind kind_;
  double param_;
  std::vector<double> values_;
};

/// A series of linear operators T_k: R^{dim_in} -> R^{dim_out}, each either
/// generated from a coefficient rule or listed explicitly (zero beyond the
/// list). Shapes with closed-form operator norms carry them exactly:
///
///   scalar     T_k = c_k on R^1                        ||T_k|| = |c_k|
///   diagonal   T_k = c_k I on R^d                      ||T_k|| = |c_k| (any p -> p)
///   rank_one   T_k t = c_k t e_k in R^d, zero for k > d
///                                                      ||T_k|| = |c_k| or 0
///
/// The domain and range norms are fixed at construction and default to sup.
/// Diagonal series require equal domain and range exponents so the closed
/// form above is the true induced norm.
class OperatorSeries {
public:
  enum class Kind { Scalar, Diagonal, RankOne, Explicit };

  static OperatorSeries scalar(CoefficientRule rule) {
    return OperatorSeries(Kind::Scalar, std::move(rule), 1, 1, NormKind::sup(), NormKind::sup(),
                          {});
  }

  static OperatorSeries diagonal(CoefficientRule rule, std::size_t dim,
                                 NormKind domain = NormKind::sup(),
                                 NormKind range = NormKind::sup()) {
    if (dim == 0) throw ValidationError("operator series: dimension must be at least 1");
    if (!(domain == range)) {
      throw ValidationError("operator series: diagonal terms need matching domain/range norms");
    }
    return OperatorSeries(Kind::Diagonal, std::move(rule), dim, dim, domain, range, {});
  }

  /// T_k sends the scalar t to c_k t e_k for k <= dim and vanishes beyond.
  static OperatorSeries rank_one(CoefficientRule rule, std::size_t dim,
                                 NormKind domain = NormKind::sup(),
                                 NormKind range = NormKind::sup()) {
    if (dim == 0) throw ValidationError("operator series: dimension must be at least 1");
    return OperatorSeries(Kind::RankOne, std::move(rule), 1, dim, domain, range, {});
  }

  static OperatorSeries explicit_terms(std::vector<LinearOperator> terms,
                                       NormKind domain = NormKind::sup(),
                                       NormKind range = NormKind::sup()) {
    if (terms.empty()) throw ValidationError("operator series: explicit list must be nonempty");
    for (const auto& t : terms) {
      if (t.rows() != terms.front().rows() || t.cols() != terms.front().cols()) {
        throw ValidationError("operator series: explicit terms must share one shape");
      }
    }
    const std::size_t din = terms.front().cols();
    const std::size_t dout = terms.front().rows();
    return OperatorSeries(Kind::Explicit, CoefficientRule::zero(), din, dout, domain, range,
                          std::move(terms));
  }

  Kind kind() const noexcept { return kind_; }
  std::size_t dim_in() const noexcept { return dim_in_; }
  std::size_t dim_out() const noexcept { return dim_out_; }
  NormKind domain() const noexcept { return domain_; }
  NormKind range() const noexcept { return range_; }
  const CoefficientRule& rule() const noexcept { return rule_; }
  const std::vector<LinearOperator>& explicit_terms_list() const noexcept { return terms_; }

  /// Materialize T_k as a matrix.
  LinearOperator term(std::size_t k) const {
    if (k == 0) throw ValidationError("operator series: index is 1-based");
    switch (kind_) {
      case Kind::Scalar:
        return LinearOperator::scaled_identity(1, rule_.value(k));
      case Kind::Diagonal:
        return LinearOperator::scaled_identity(dim_in_, rule_.value(k));
      case Kind::RankOne: {
        std::vector<double> m(dim_out_, 0.0);
        if (k <= dim_out_) m[k - 1] = rule_.value(k);
        return LinearOperator(dim_out_, 1, std::move(m));
      }
      case Kind::Explicit:
        if (k <= terms_.size()) return terms_[k - 1];
        return LinearOperator::zero(dim_out_, dim_in_);
    }
    return LinearOperator::zero(dim_out_, dim_in_);
  }

  /// T_k applied to raw entries without materializing the matrix.
  void apply_into(std::size_t k, const std::vector<double>& x, std::vector<double>& out) const {
    if (k == 0) throw ValidationError("operator series: index is 1-based");
    if (x.size() != dim_in_) throw ValidationError("operator series: argument dimension mismatch");
    out.assign(dim_out_, 0.0);
    switch (kind_) {
      case Kind::Scalar:
        out[0] = rule_.value(k) * x[0];
        return;
      case Kind::Diagonal: {
        const double c = rule_.value(k);
        for (std::size_t j = 0; j < dim_in_; ++j) out[j] = c * x[j];
        return;
      }
      case Kind::RankOne:
        if (k <= dim_out_) out[k - 1] = rule_.value(k) * x[0];
        return;
      case Kind::Explicit:
        if (k <= terms_.size()) terms_[k - 1].apply_into(x, out);
        return;
    }
  }

  FiniteVector apply(std::size_t k, const FiniteVector& x) const {
    std::vector<double> out;
    apply_into(k, x.entries(), out);
    if (!detail::all_finite(out)) {
      throw AnalysisError("operator series: term " + std::to_string(k) + " left the finite range");
    }
    return FiniteVector(out);
  }

  /// Operator norm of T_k under the series' domain/range norms; closed form
  /// (exact) for the generated shapes, estimated for explicit matrices.
  OperatorNormEstimate term_norm(std::size_t k) const {
    if (k == 0) throw ValidationError("operator series: index is 1-based");
    switch (kind_) {
      case Kind::Scalar:
      case Kind::Diagonal:
        return OperatorNormEstimate{std::abs(rule_.value(k)), true};
      case Kind::RankOne:
        if (k <= dim_out_) return OperatorNormEstimate{std::abs(rule_.value(k)), true};
        return OperatorNormEstimate{0.0, true};
      case Kind::Explicit:
        if (k <= terms_.size()) return operator_norm(terms_[k - 1], domain_, range_);
        return OperatorNormEstimate{0.0, true};
    }
    return OperatorNormEstimate{0.0, true};
  }

  /// Depth beyond which every term is identically zero, if the shape has one.
  std::size_t support_bound() const noexcept {
    if (kind_ == Kind::Explicit) return terms_.size();
    if (kind_ == Kind::RankOne) {
      if (rule_.kind() == CoefficientRule::Kind::Explicit) {
        return std::min(dim_out_, rule_.values().size());
      }
      return dim_out_;
    }
    if (rule_.kind() == CoefficientRule::Kind::Explicit) return rule_.values().size();
    if (rule_.kind() == CoefficientRule::Kind::Zero) return 0;
    return static_cast<std::size_t>(-1);
  }

  bool operator==(const OperatorSeries& o) const {
    if (kind_ != o.kind_ || dim_in_ != o.dim_in_ || dim_out_ != o.dim_out_) return false;
    if (!(domain_ == o.domain_) || !(range_ == o.range_)) return false;
    if (!(rule_ == o.rule_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (!(terms_[i].entries() == o.terms_[i].entries())) return false;
    }
    return true;
  }

private:
  OperatorSeries(Kind k, CoefficientRule rule, std::size_t din, std::size_t dout, NormKind dom,
                 NormKind ran, std::vector<LinearOperator> terms)
      : kind_(k),
        rule_(std::move(rule)),
        dim_in_(din),
        dim_out_(dout),
        domain_(dom),
        range_(ran),
        terms_(std::move(terms)) {}

  Kind kind_;
  CoefficientRule rule_;
  std::size_t dim_in_;
  std::size_t dim_out_;
  NormKind domain_;
  NormKind range_;
  std::vector<LinearOperator> terms_;
};

}  // namespace rieszlab
