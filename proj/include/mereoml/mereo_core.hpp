#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mereoml/types.hpp"

namespace mereoml {

class Entity;

/// Finite domain of atoms interpreting the mereological universe. At most 64
/// atoms, so an entity is a bitmask.
class Carrier : public std::enable_shared_from_this<Carrier> {
 public:
  static constexpr std::size_t kMaxAtoms = 64;

  static std::shared_ptr<const Carrier> make(std::vector<std::string> atoms);
  static std::shared_ptr<const Carrier> make(std::size_t n);  // atoms "a0".."a{n-1}"

  std::size_t size() const noexcept { return atoms_.size(); }
  const std::vector<std::string>& atoms() const noexcept { return atoms_; }
  std::uint64_t full_mask() const noexcept;

  Entity entity(std::uint64_t mask) const;
  Entity entity(std::initializer_list<std::string_view> labels) const;
  Entity universe() const;

  /// Every entity (nonempty subset), in ascending mask order.
  std::vector<Entity> all_entities() const;

 private:
  explicit Carrier(std::vector<std::string> atoms);

  std::vector<std::string> atoms_;
};

/// A nonempty subset of a carrier.
class Entity {
 public:
  std::uint64_t mask() const noexcept { return mask_; }
  const Carrier& carrier() const noexcept { return *carrier_; }
  std::size_t atom_count() const noexcept;
  std::string to_string() const;

  friend bool operator==(const Entity& a, const Entity& b) noexcept {
    return a.carrier_ == b.carrier_ && a.mask_ == b.mask_;
  }

 private:
  friend class Carrier;
  Entity(std::shared_ptr<const Carrier> carrier, std::uint64_t mask) : carrier_(std::move(carrier)), mask_(mask) {}

  std::shared_ptr<const Carrier> carrier_;
  std::uint64_t mask_;
};

/// An Entity or the empty entity, which lies outside the domain.
using MaybeEntity = std::optional<Entity>;
inline constexpr std::nullopt_t kEmptyEntity = std::nullopt;

bool part(const Entity& x, const Entity& y);
bool subst(const Entity& x, const Entity& y);
bool overlap(const Entity& x, const Entity& y);
bool exterior(const Entity& x, const Entity& y);

/// Class of a nonempty family. Throws PreconditionError on an empty family.
Entity cls(std::span<const Entity> family);

MaybeEntity complement(const Entity& x);
/// Requires part(x, y).
MaybeEntity rel_complement(const Entity& x, const Entity& y);

Entity sum(const Entity& x, const Entity& y);
MaybeEntity product(const Entity& x, const Entity& y);

// Lifted to the empty entity: 0 + y = y, 0 * y = 0, -0 = V.
MaybeEntity sum(const MaybeEntity& x, const MaybeEntity& y);
MaybeEntity product(const MaybeEntity& x, const MaybeEntity& y);
/// x * (-y); the weight identity w(x -> y) = 1 - w(difference(x, y)) reads
/// "x - y" this way.
MaybeEntity difference(const Entity& x, const Entity& y);

/// x -> y = -x + y.
MaybeEntity implication(const Entity& x, const Entity& y);
bool is_valid_implication(const Entity& x, const Entity& y);

/// Normalized positive measure on atoms.
class WeightFn {
 public:
  static WeightFn uniform(std::size_t atoms);
  /// Throws PreconditionError unless every mass is finite and > 0.
  explicit WeightFn(std::vector<double> masses);

  std::size_t size() const noexcept { return masses_.size(); }
  const std::vector<double>& masses() const noexcept { return masses_; }

 private:
  std::vector<double> masses_;
  double total_ = 0.0;

  friend Degree weight(const WeightFn& w, const MaybeEntity& x);
};

Degree weight(const WeightFn& w, const MaybeEntity& x);

}  // namespace mereoml
