#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mereoml/dataset.hpp"
#include "mereoml/mereo_core.hpp"
#include "mereoml/types.hpp"

namespace mereoml {

// --- weight-ratio rough subsets on entities ---------------------------------

/// w(x*y) / w(x).
Degree rs_star_weight(const Entity& x, const Entity& y, const WeightFn& w);
/// Throws PreconditionError when x is the empty entity.
Degree rs_star_weight(const MaybeEntity& x, const Entity& y, const WeightFn& w);
bool rsubst_weight(const Entity& x, const Entity& y, Degree r, const WeightFn& w);

// --- t-norms and residua on [0, 1] -----------------------------------------

enum class TNorm { Lukasiewicz, Product, Minimum };

Degree t_lukasiewicz(Degree a, Degree b);
Degree residuum_lukasiewicz(Degree a, Degree b);
Degree t_norm(TNorm t, Degree a, Degree b);
/// sup{c : T(a, c) <= b}.
Degree residuum(TNorm t, Degree a, Degree b);

/// a =>_T b.
Degree rs_star_residual(Degree a, Degree b, TNorm t = TNorm::Lukasiewicz);

/// Generator pair of an Archimedean t-norm, T(a, b) = h(g(a) + g(b)).
/// h must be decreasing with h(0) = 1.
struct ArchimedeanGenerator {
  std::function<double(double)> h;
  std::function<double(double)> g;

  /// h(t) = max(0, 1 - t), g(t) = 1 - t.
  static ArchimedeanGenerator lukasiewicz();

  Degree t_norm(Degree a, Degree b) const { return h(g(a) + g(b)); }
};

/// h(|a - b|).
Degree rs_star_archimedean(Degree a, Degree b, const ArchimedeanGenerator& gen);

// --- inclusions on objects of an information system ------------------------

/// Positive per-feature weights used by the exponential inclusion.
class FeatureWeights {
 public:
  static FeatureWeights uniform(std::size_t features);  // 1/|F| each
  explicit FeatureWeights(std::vector<double> weights);

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t f) const { return weights_[f]; }
  const std::vector<double>& values() const noexcept { return weights_; }

 private:
  std::vector<double> weights_;
};

/// 1 - |Dis(x, y)| / |F|: the Lukasiewicz inclusion on an information system.
Degree rs_star_is(ObjectId x, ObjectId y, const InformationSystem& system);

/// exp(-(sum of w_f over Dis(x, y))^2).
Degree rs_star_exp(ObjectId x, ObjectId y, const InformationSystem& system, const FeatureWeights& fw);
Degree rs_star_exp(std::span<const int> a, std::span<const int> b, const FeatureWeights& fw);

/// Lower bound on rs_exp(x, z) given rs_exp(x, y) >= r and rs_exp(y, z) >= s:
/// r * s * exp(-2 sqrt(ln r * ln s)) = exp(-(sqrt(-ln r) + sqrt(-ln s))^2).
///
/// The bound follows from Dis(x, z) being inside Dis(x, y) u Dis(y, z), so
/// the root-log distances add. The variant with exp(+sqrt(2 ln r ln s)) sits
/// above r*s and is not a lower bound. Throws DegreeUnderflow for r or s == 0.
Degree exp_compose(Degree r, Degree s);

/// A graded containment on the objects of one information system.
class RoughInclusion {
 public:
  enum class Kind { Lukasiewicz, Exponential };

  static RoughInclusion lukasiewicz();
  static RoughInclusion exponential(FeatureWeights weights);
  /// Exponential with uniform weights over `features` features.
  static RoughInclusion exponential(std::size_t features);

  Kind kind() const noexcept { return kind_; }
  std::string name() const;
  const FeatureWeights* weights() const noexcept { return kind_ == Kind::Exponential ? &weights_ : nullptr; }

  /// rs*(a, b) on encoded rows.
  Degree degree(std::span<const int> a, std::span<const int> b) const;
  Degree degree(ObjectId x, ObjectId y, const InformationSystem& system) const;
  /// rs*(x, y) >= r, with kDegreeTolerance slack.
  bool holds(ObjectId x, ObjectId y, Degree r, const InformationSystem& system) const;

 private:
  RoughInclusion(Kind kind, FeatureWeights weights) : kind_(kind), weights_(std::move(weights)) {}

  Kind kind_;
  FeatureWeights weights_;
};

/// min(rs*(x, y), rs*(y, x)).
template <typename Inclusion>
Degree fuzzy_similarity(const Inclusion& rs_star, const auto& x, const auto& y) {
  const Degree forward = rs_star(x, y);
  const Degree backward = rs_star(y, x);
  return forward < backward ? forward : backward;
}

}  // namespace mereoml
