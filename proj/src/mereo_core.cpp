#include "mereoml/mereo_core.hpp"

#include <bit>
#include <cmath>
#include <unordered_set>

#include "mereoml/error.hpp"

namespace mereoml {

namespace {

void require_same_carrier(const Entity& x, const Entity& y) {
  if (&x.carrier() != &y.carrier()) throw PreconditionError("entities live on different carriers");
}

}  // namespace

Carrier::Carrier(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {}

std::shared_ptr<const Carrier> Carrier::make(std::vector<std::string> atoms) {
  if (atoms.empty()) throw PreconditionError("carrier needs at least one atom");
  if (atoms.size() > kMaxAtoms) throw PreconditionError("carrier supports at most 64 atoms");
  std::unordered_set<std::string> seen;
  for (const auto& a : atoms) {
    if (!seen.insert(a).second) throw PreconditionError("duplicate atom label '" + a + "'");
  }
  return std::shared_ptr<const Carrier>(new Carrier(std::move(atoms)));
}

std::shared_ptr<const Carrier> Carrier::make(std::size_t n) {
  std::vector<std::string> atoms;
  for (std::size_t i = 0; i < n; ++i) atoms.push_back("a" + std::to_string(i));
  return make(std::move(atoms));
}

std::uint64_t Carrier::full_mask() const noexcept {
  return atoms_.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << atoms_.size()) - 1;
}

Entity Carrier::entity(std::uint64_t mask) const {
  if (mask == 0) throw PreconditionError("an entity must contain at least one atom");
  if ((mask & ~full_mask()) != 0) throw PreconditionError("mask has bits outside the carrier");
  return Entity(shared_from_this(), mask);
}

Entity Carrier::entity(std::initializer_list<std::string_view> labels) const {
  std::uint64_t mask = 0;
  for (const auto label : labels) {
    std::size_t i = 0;
    while (i < atoms_.size() && atoms_[i] != label) ++i;
    if (i == atoms_.size()) throw PreconditionError("unknown atom '" + std::string(label) + "'");
    mask |= std::uint64_t{1} << i;
  }
  return entity(mask);
}

Entity Carrier::universe() const { return entity(full_mask()); }

std::vector<Entity> Carrier::all_entities() const {
  if (atoms_.size() > 20) throw PreconditionError("refusing to enumerate more than 2^20 entities");
  std::vector<Entity> out;
  for (std::uint64_t m = 1; m <= full_mask(); ++m) out.push_back(entity(m));
  return out;
}

std::size_t Entity::atom_count() const noexcept { return static_cast<std::size_t>(std::popcount(mask_)); }

std::string Entity::to_string() const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < carrier_->size(); ++i) {
    if ((mask_ >> i) & 1U) {
      if (!first) out += ",";
      out += carrier_->atoms()[i];
      first = false;
    }
  }
  return out + "}";
}

bool part(const Entity& x, const Entity& y) {
  require_same_carrier(x, y);
  return (x.mask() & ~y.mask()) == 0 && x.mask() != y.mask();
}

bool subst(const Entity& x, const Entity& y) {
  require_same_carrier(x, y);
  return (x.mask() & ~y.mask()) == 0;
}

bool overlap(const Entity& x, const Entity& y) {
  require_same_carrier(x, y);
  return (x.mask() & y.mask()) != 0;
}

bool exterior(const Entity& x, const Entity& y) { return !overlap(x, y); }

Entity cls(std::span<const Entity> family) {
  if (family.empty()) throw PreconditionError("class of an empty family");
  std::uint64_t mask = 0;
  for (const auto& e : family) {
    require_same_carrier(e, family.front());
    mask |= e.mask();
  }
  return family.front().carrier().entity(mask);
}

MaybeEntity complement(const Entity& x) {
  const auto rest = x.carrier().full_mask() & ~x.mask();
  if (rest == 0) return kEmptyEntity;
  return x.carrier().entity(rest);
}

MaybeEntity rel_complement(const Entity& x, const Entity& y) {
  if (!part(x, y)) throw PreconditionError("relative complement requires part(x, y)");
  const auto rest = y.mask() & ~x.mask();
  if (rest == 0) return kEmptyEntity;
  return x.carrier().entity(rest);
}

Entity sum(const Entity& x, const Entity& y) {
  require_same_carrier(x, y);
  return x.carrier().entity(x.mask() | y.mask());
}

MaybeEntity product(const Entity& x, const Entity& y) {
  require_same_carrier(x, y);
  const auto common = x.mask() & y.mask();
  if (common == 0) return kEmptyEntity;
  return x.carrier().entity(common);
}

MaybeEntity sum(const MaybeEntity& x, const MaybeEntity& y) {
  if (!x) return y;
  if (!y) return x;
  return sum(*x, *y);
}

MaybeEntity product(const MaybeEntity& x, const MaybeEntity& y) {
  if (!x || !y) return kEmptyEntity;
  return product(*x, *y);
}

MaybeEntity difference(const Entity& x, const Entity& y) { return product(MaybeEntity(x), complement(y)); }

MaybeEntity implication(const Entity& x, const Entity& y) { return sum(complement(x), MaybeEntity(y)); }

bool is_valid_implication(const Entity& x, const Entity& y) {
  const auto result = implication(x, y);
  return result && result->mask() == x.carrier().full_mask();
}

WeightFn WeightFn::uniform(std::size_t atoms) { return WeightFn(std::vector<double>(atoms, 1.0)); }

WeightFn::WeightFn(std::vector<double> masses) : masses_(std::move(masses)) {
  if (masses_.empty()) throw PreconditionError("weight function needs at least one atom");
  for (const double m : masses_) {
    if (!(m > 0.0) || !std::isfinite(m)) throw PreconditionError("atom masses must be positive and finite");
    total_ += m;
  }
}

Degree weight(const WeightFn& w, const MaybeEntity& x) {
  if (!x) return 0.0;
  if (x->carrier().size() != w.size()) throw PreconditionError("weight function and carrier sizes differ");
  if (x->mask() == x->carrier().full_mask()) return 1.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if ((x->mask() >> i) & 1U) mass += w.masses_[i];
  }
  return mass / w.total_;
}

}  // namespace mereoml
