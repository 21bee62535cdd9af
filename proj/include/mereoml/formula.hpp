#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include <boost/dynamic_bitset.hpp>

#include "mereoml/dataset.hpp"

namespace mereoml {

/// A set of objects of one information system, indexed by ObjectId.
using ObjectSet = boost::dynamic_bitset<>;

ObjectSet make_object_set(std::size_t universe_size, std::span<const ObjectId> members);

/// Descriptor formula: atoms `feature = value` under !, &, |, ->.
class Formula {
 public:
  enum class Op { Atom, Not, And, Or, Implies };

  static Formula atom(std::string feature, std::string value);
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);

  Op op() const noexcept { return node_->op; }
  bool is_binary() const noexcept { return op() == Op::And || op() == Op::Or || op() == Op::Implies; }
  const std::string& feature() const noexcept { return node_->feature; }
  const std::string& value() const noexcept { return node_->value; }
  /// Operand of Not, left operand of binary connectives.
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }

  /// Atoms have depth 0.
  std::size_t depth() const noexcept { return node_->depth; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Op op = Op::Atom;
    std::string feature;
    std::string value;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    std::size_t depth = 0;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula binary(Op op, Formula lhs, Formula rhs);

  std::shared_ptr<const Node> node_;
};

/// Canonical text: binary operands are parenthesized whenever they are
/// themselves binary, so parse_formula(to_string(f)) == f.
std::string to_string(const Formula& formula);

/// Grammar:
///   formula := imp
///   imp     := or ("->" imp)?
///   or      := and ("|" and)*
///   and     := not ("&" not)*
///   not     := "!" not | "(" formula ")" | atom
///   atom    := ident "=" value
/// Throws ParseError with a 1-based column.
Formula parse_formula(std::string_view text);

/// Also resolves every atom against `schema`: unknown features are an error,
/// and so are unseen values unless allowed.
Formula parse_formula(std::string_view text, const InformationSystem& schema, bool allow_unseen_values = false);

/// [phi] under classical set semantics. Unknown features throw DataError.
ObjectSet meaning(const Formula& formula, const InformationSystem& system);

/// Satisfaction of a single tuple given as parallel feature/value lists.
bool satisfies(std::span<const std::string> features, std::span<const std::string> values, const Formula& formula);

}  // namespace mereoml
