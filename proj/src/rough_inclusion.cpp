#include "mereoml/rough_inclusion.hpp"

#include <algorithm>
#include <cmath>

#include "mereoml/error.hpp"

namespace mereoml {

Degree rs_star_weight(const Entity& x, const Entity& y, const WeightFn& w) {
  return weight(w, product(x, y)) / weight(w, x);
}

Degree rs_star_weight(const MaybeEntity& x, const Entity& y, const WeightFn& w) {
  if (!x) throw PreconditionError("rough subset degree of the empty entity is undefined");
  return rs_star_weight(*x, y, w);
}

bool rsubst_weight(const Entity& x, const Entity& y, Degree r, const WeightFn& w) {
  return rs_star_weight(x, y, w) >= r - kDegreeTolerance;
}

Degree t_lukasiewicz(Degree a, Degree b) { return std::max(0.0, a + b - 1.0); }

Degree residuum_lukasiewicz(Degree a, Degree b) { return std::min(1.0, 1.0 - a + b); }

Degree t_norm(TNorm t, Degree a, Degree b) {
  switch (t) {
    case TNorm::Lukasiewicz:
      return t_lukasiewicz(a, b);
    case TNorm::Product:
      return a * b;
    case TNorm::Minimum:
      return std::min(a, b);
  }
  return 0.0;
}

Degree residuum(TNorm t, Degree a, Degree b) {
  if (a <= b) return 1.0;
  switch (t) {
    case TNorm::Lukasiewicz:
      return residuum_lukasiewicz(a, b);
    case TNorm::Product:
      return b / a;
    case TNorm::Minimum:
      return b;
  }
  return 0.0;
}

Degree rs_star_residual(Degree a, Degree b, TNorm t) {
  if (a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0) throw PreconditionError("degrees must lie in [0, 1]");
  return residuum(t, a, b);
}

ArchimedeanGenerator ArchimedeanGenerator::lukasiewicz() {
  return {[](double t) { return std::max(0.0, 1.0 - t); }, [](double t) { return 1.0 - t; }};
}

Degree rs_star_archimedean(Degree a, Degree b, const ArchimedeanGenerator& gen) {
  return gen.h(std::abs(a - b));
}

FeatureWeights FeatureWeights::uniform(std::size_t features) {
  if (features == 0) throw PreconditionError("feature weights need at least one feature");
  return FeatureWeights(std::vector<double>(features, 1.0 / static_cast<double>(features)));
}

FeatureWeights::FeatureWeights(std::vector<double> weights) : weights_(std::move(weights)) {
  for (const double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw PreconditionError("feature weights must be positive");
  }
}

Degree rs_star_is(ObjectId x, ObjectId y, const InformationSystem& system) { return ind_fraction(x, y, system); }

Degree rs_star_exp(std::span<const int> a, std::span<const int> b, const FeatureWeights& fw) {
  if (a.size() != fw.size() || b.size() != fw.size()) {
    throw PreconditionError("feature weights do not match the row width");
  }
  double sum = 0.0;
  for (std::size_t f = 0; f < a.size(); ++f) {
    if (a[f] != b[f]) sum += fw[f];
  }
  return std::exp(-sum * sum);
}

Degree rs_star_exp(ObjectId x, ObjectId y, const InformationSystem& system, const FeatureWeights& fw) {
  return rs_star_exp(system.row(x), system.row(y), fw);
}

Degree exp_compose(Degree r, Degree s) {
  if (!(r > 0.0) || !(s > 0.0)) throw DegreeUnderflow("exp_compose is undefined at degree 0");
  if (r > 1.0 || s > 1.0) throw PreconditionError("degrees must lie in (0, 1]");
  const double dr = std::sqrt(-std::log(r));
  const double ds = std::sqrt(-std::log(s));
  return std::exp(-(dr + ds) * (dr + ds));
}

RoughInclusion RoughInclusion::lukasiewicz() { return RoughInclusion(Kind::Lukasiewicz, FeatureWeights({})); }

RoughInclusion RoughInclusion::exponential(FeatureWeights weights) {
  return RoughInclusion(Kind::Exponential, std::move(weights));
}

RoughInclusion RoughInclusion::exponential(std::size_t features) {
  return exponential(FeatureWeights::uniform(features));
}

std::string RoughInclusion::name() const { return kind_ == Kind::Lukasiewicz ? "lukasiewicz" : "exp"; }

Degree RoughInclusion::degree(std::span<const int> a, std::span<const int> b) const {
  return kind_ == Kind::Lukasiewicz ? ind_fraction(a, b) : rs_star_exp(a, b, weights_);
}

Degree RoughInclusion::degree(ObjectId x, ObjectId y, const InformationSystem& system) const {
  return degree(system.row(x), system.row(y));
}

bool RoughInclusion::holds(ObjectId x, ObjectId y, Degree r, const InformationSystem& system) const {
  return degree(x, y, system) >= r - kDegreeTolerance;
}

}  // namespace mereoml
