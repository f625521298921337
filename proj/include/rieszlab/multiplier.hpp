#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "rieszlab/core.hpp"
#include "rieszlab/rng.hpp"

namespace rieszlab {

/// Classical sequence classes a multiplier may claim membership of.
enum class SequenceClass { Phi, Null, Bounded };

inline const char* to_string(SequenceClass c) noexcept {
  switch (c) {
    case SequenceClass::Phi: return "phi";
    case SequenceClass::Null: return "c0";
    case SequenceClass::Bounded: return "linf";
  }
  return "linf";
}

/// Finite-depth evidence that a multiplier behaves like its claimed class.
struct ClassEvidence {
  SequenceClass claimed = SequenceClass::Bounded;
  bool consistent = false;
  double sup_norm = 0.0;
  double final_norm = 0.0;
  std::size_t support_bound = std::numeric_limits<std::size_t>::max();
};

/// A bounded sequence x = (x_k) of vectors in R^d with deterministic random
/// access: term(k) is a pure function of the construction parameters and k,
/// independent of evaluation order. Seeded kinds derive a fresh generator
/// from (seed, k), drawing the amplitude (or sign) first and the direction
/// second.
class MultiplierSequence {
public:
  enum class Kind {
    Ones,
    Alternating,
    FiniteSupport,
    FiniteSupportVectors,
    GeometricDecay,
    SeededNull,
    SeededBounded,
    Explicit
  };

  static MultiplierSequence ones(std::size_t dim) {
    MultiplierSequence m(Kind::Ones, dim, SequenceClass::Bounded);
    return m;
  }

  /// x_k = (+/-) amplitude * ones, positive at odd k.
  static MultiplierSequence alternating(double amplitude, std::size_t dim) {
    if (!std::isfinite(amplitude) || amplitude <= 0.0) {
      throw ValidationError("multiplier: alternating amplitude must be finite and positive");
    }
    MultiplierSequence m(Kind::Alternating, dim, SequenceClass::Bounded);
    m.param_ = amplitude;
    return m;
  }

  /// x_k = coeffs[k-1] * ones for k <= len, zero beyond.
  static MultiplierSequence finite_support(std::vector<double> coeffs, std::size_t dim) {
    if (coeffs.empty()) throw ValidationError("multiplier: support coefficients must be nonempty");
    if (!detail::all_finite(coeffs)) {
      throw ValidationError("multiplier: support coefficients must be finite");
    }
    MultiplierSequence m(Kind::FiniteSupport, dim, SequenceClass::Phi);
    m.coeffs_ = std::move(coeffs);
    return m;
  }

  /// Explicitly listed head, zero beyond.
  static MultiplierSequence finite_support_vectors(std::vector<FiniteVector> vs) {
    if (vs.empty()) throw ValidationError("multiplier: support vectors must be nonempty");
    for (const auto& v : vs) {
      if (v.dim() != vs.front().dim()) {
        throw ValidationError("multiplier: support vectors must share one dimension");
      }
    }
    MultiplierSequence m(Kind::FiniteSupportVectors, vs.front().dim(), SequenceClass::Phi);
    m.vectors_ = std::move(vs);
    return m;
  }

  /// x_k = q^{-k} * ones, q > 1.
  static MultiplierSequence geometric_decay(double q, std::size_t dim) {
    if (!std::isfinite(q) || q <= 1.0) {
      throw ValidationError("multiplier: decay ratio must be finite and > 1");
    }
    MultiplierSequence m(Kind::GeometricDecay, dim, SequenceClass::Null);
    m.param_ = q;
    return m;
  }

  /// ||x_k|| = 0.95^k * U(0.5, 1) with a seeded unit direction in `kind`.
  static MultiplierSequence seeded_null(std::uint64_t seed, std::size_t dim,
                                        NormKind kind = NormKind::sup()) {
    MultiplierSequence m(Kind::SeededNull, dim, SequenceClass::Null);
    m.seed_ = seed;
    m.norm_kind_ = kind;
    return m;
  }

  /// Unit-norm terms: ||x_k|| = 1 in `kind`, with a seeded sign and direction.
  static MultiplierSequence seeded_bounded(std::uint64_t seed, std::size_t dim,
                                           NormKind kind = NormKind::sup()) {
    MultiplierSequence m(Kind::SeededBounded, dim, SequenceClass::Bounded);
    m.seed_ = seed;
    m.norm_kind_ = kind;
    return m;
  }

  /// Explicit head with a caller-declared class; zero beyond the list.
  static MultiplierSequence explicit_list(std::vector<FiniteVector> vs, SequenceClass claimed) {
    if (vs.empty()) throw ValidationError("multiplier: explicit list must be nonempty");
    for (const auto& v : vs) {
      if (v.dim() != vs.front().dim()) {
        throw ValidationError("multiplier: explicit vectors must share one dimension");
      }
    }
    MultiplierSequence m(Kind::Explicit, vs.front().dim(), claimed);
    m.vectors_ = std::move(vs);
    return m;
  }

  Kind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }
  SequenceClass claimed_class() const noexcept { return class_; }
  double scale() const noexcept { return scale_; }
  double parameter() const noexcept { return param_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// The same sequence multiplied by a scalar (membership in the multiplier
  /// classes is scale-invariant; the summing functional is homogeneous).
  MultiplierSequence scaled(double c) const {
    if (!std::isfinite(c)) throw ValidationError("multiplier: scale must be finite");
    MultiplierSequence m(*this);
    m.scale_ *= c;
    return m;
  }

  FiniteVector term(std::size_t k) const {
    if (k == 0) throw ValidationError("multiplier: index is 1-based");
    switch (kind_) {
      case Kind::Ones:
        return uniform_vector(scale_);
      case Kind::Alternating:
        return uniform_vector(((k % 2 == 1) ? param_ : -param_) * scale_);
      case Kind::FiniteSupport:
        if (k <= coeffs_.size()) return uniform_vector(coeffs_[k - 1] * scale_);
        return FiniteVector::zero(dim_);
      case Kind::FiniteSupportVectors:
      case Kind::Explicit:
        if (k <= vectors_.size()) return scale_ * vectors_[k - 1];
        return FiniteVector::zero(dim_);
      case Kind::GeometricDecay:
        return uniform_vector(std::pow(param_, -static_cast<double>(k)) * scale_);
      case Kind::SeededNull: {
        SplitMix64 rng(detail::mix_seed(seed_, k));
        const double amp = std::pow(0.95, static_cast<double>(k)) * rng.uniform(0.5, 1.0);
        return (amp * scale_) * FiniteVector(detail::unit_vector(dim_, norm_kind_, rng));
      }
      case Kind::SeededBounded: {
        SplitMix64 rng(detail::mix_seed(seed_, k));
        const double sign = rng.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0;
        return (sign * scale_) * FiniteVector(detail::unit_vector(dim_, norm_kind_, rng));
      }
    }
    return FiniteVector::zero(dim_);
  }

  /// Index beyond which every term is zero, when the kind guarantees one.
  std::size_t support_bound() const noexcept {
    switch (kind_) {
      case Kind::FiniteSupport:
        return coeffs_.size();
      case Kind::FiniteSupportVectors:
        return vectors_.size();
      case Kind::Explicit:
        return class_ == SequenceClass::Phi ? vectors_.size()
                                            : std::numeric_limits<std::size_t>::max();
      default:
        return std::numeric_limits<std::size_t>::max();
    }
  }

  /// max ||x_k|| over k <= depth, in the norm the sequence was built with.
  double sup_norm(std::size_t depth) const {
    if (depth == 0) throw ValidationError("multiplier: depth must be at least 1");
    const std::size_t stop = std::min(depth, support_bound());
    double s = 0.0;
    for (std::size_t k = 1; k <= stop; ++k) s = std::max(s, term(k).norm(norm_kind_));
    return s;
  }

  /// Checks the claimed class against the computable finite-depth signal:
  /// phi needs an observed support bound within depth, c0 needs the final
  /// norm to have dropped well under the sup, linf only needs boundedness.
  ClassEvidence class_evidence(std::size_t depth, double tol = 1e-6) const {
    if (depth == 0) throw ValidationError("multiplier: depth must be at least 1");
    ClassEvidence ev;
    ev.claimed = class_;
    ev.support_bound = support_bound();
    ev.sup_norm = sup_norm(depth);
    ev.final_norm = term(depth).norm(norm_kind_);
    switch (class_) {
      case SequenceClass::Phi:
        ev.consistent = ev.support_bound <= depth;
        break;
      case SequenceClass::Null:
        ev.consistent = ev.final_norm <= std::max(tol, 0.01 * ev.sup_norm);
        break;
      case SequenceClass::Bounded:
        ev.consistent = std::isfinite(ev.sup_norm);
        break;
    }
    return ev;
  }

  NormKind norm_kind() const noexcept { return norm_kind_; }

private:
  MultiplierSequence(Kind k, std::size_t dim, SequenceClass c) : kind_(k), dim_(dim), class_(c) {
    if (dim_ == 0) throw ValidationError("multiplier: dimension must be at least 1");
  }

  FiniteVector uniform_vector(double v) const {
    return FiniteVector(std::vector<double>(dim_, v));
  }

  Kind kind_;
  std::size_t dim_;
  SequenceClass class_;
  double scale_ = 1.0;
  double param_ = 0.0;
  std::uint64_t seed_ = 0;
  NormKind norm_kind_ = NormKind::sup();
  std::vector<double> coeffs_;
  std::vector<FiniteVector> vectors_;
};

}  // namespace rieszlab
