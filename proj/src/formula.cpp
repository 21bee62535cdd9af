#include "mereoml/formula.hpp"

#include <algorithm>
#include <cctype>

#include "mereoml/error.hpp"

namespace mereoml {

ObjectSet make_object_set(std::size_t universe_size, std::span<const ObjectId> members) {
  ObjectSet set(universe_size);
  for (const auto y : members) set.set(y);
  return set;
}

Formula Formula::atom(std::string feature, std::string value) {
  auto node = std::make_shared<Node>();
  node->op = Op::Atom;
  node->feature = std::move(feature);
  node->value = std::move(value);
  return Formula(std::move(node));
}

Formula Formula::negation(Formula operand) {
  auto node = std::make_shared<Node>();
  node->op = Op::Not;
  node->depth = operand.depth() + 1;
  node->lhs = std::move(operand.node_);
  return Formula(std::move(node));
}

Formula Formula::binary(Op op, Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->depth = std::max(lhs.depth(), rhs.depth()) + 1;
  node->lhs = std::move(lhs.node_);
  node->rhs = std::move(rhs.node_);
  return Formula(std::move(node));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) { return binary(Op::And, std::move(lhs), std::move(rhs)); }
Formula Formula::disjunction(Formula lhs, Formula rhs) { return binary(Op::Or, std::move(lhs), std::move(rhs)); }
Formula Formula::implication(Formula lhs, Formula rhs) {
  return binary(Op::Implies, std::move(lhs), std::move(rhs));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Formula::Op::Atom:
      return a.feature() == b.feature() && a.value() == b.value();
    case Formula::Op::Not:
      return a.lhs() == b.lhs();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

namespace {

void print(const Formula& f, std::string& out) {
  auto operand = [&out](const Formula& child) {
    if (child.is_binary()) {
      out += '(';
      print(child, out);
      out += ')';
    } else {
      print(child, out);
    }
  };
  switch (f.op()) {
    case Formula::Op::Atom:
      out += f.feature();
      out += '=';
      out += f.value();
      return;
    case Formula::Op::Not:
      out += '!';
      operand(f.lhs());
      return;
    case Formula::Op::And:
    case Formula::Op::Or:
    case Formula::Op::Implies:
      operand(f.lhs());
      out += f.op() == Formula::Op::And ? " & " : f.op() == Formula::Op::Or ? " | " : " -> ";
      operand(f.rhs());
      return;
  }
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '.';
}

bool is_value_char(char c) {
  return std::isspace(static_cast<unsigned char>(c)) == 0 && c != '(' && c != ')' && c != '&' && c != '|' &&
         c != '!' && c != '=';
}

class FormulaParser {
 public:
  FormulaParser(std::string_view text, const InformationSystem* schema, bool allow_unseen)
      : text_(text), schema_(schema), allow_unseen_(allow_unseen) {}

  Formula parse() {
    auto f = implication();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_ + 1); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  Formula implication() {
    auto lhs = disjunction();
    if (accept("->")) return Formula::implication(std::move(lhs), implication());
    return lhs;
  }

  Formula disjunction() {
    auto lhs = conjunction();
    while (accept("|")) lhs = Formula::disjunction(std::move(lhs), conjunction());
    return lhs;
  }

  Formula conjunction() {
    auto lhs = negation();
    while (accept("&")) lhs = Formula::conjunction(std::move(lhs), negation());
    return lhs;
  }

  Formula negation() {
    if (accept("!")) return Formula::negation(negation());
    if (accept("(")) {
      auto inner = implication();
      if (!accept(")")) fail("expected ')'");
      return inner;
    }
    return atom();
  }

  Formula atom() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    if (pos_ == start) {
      if (pos_ >= text_.size()) fail("expected a feature name, got end of input");
      fail("expected a feature name");
    }
    std::string feature(text_.substr(start, pos_ - start));
    if (!accept("=")) fail("expected '='");
    skip_space();
    const std::size_t value_start = pos_;
    while (pos_ < text_.size() && is_value_char(text_[pos_]) && text_.substr(pos_, 2) != "->") ++pos_;
    if (pos_ == value_start) fail("expected a value");
    std::string value(text_.substr(value_start, pos_ - value_start));
    if (schema_ != nullptr) {
      const auto f = schema_->feature_index(feature);
      if (!f) throw ParseError("unknown feature '" + feature + "'", start + 1);
      if (!allow_unseen_ && !schema_->code_of(*f, value)) {
        throw ParseError("value '" + value + "' never occurs in '" + feature + "'", value_start + 1);
      }
    }
    return Formula::atom(std::move(feature), std::move(value));
  }

  std::string_view text_;
  const InformationSystem* schema_;
  bool allow_unseen_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Formula& formula) {
  std::string out;
  print(formula, out);
  return out;
}

Formula parse_formula(std::string_view text) { return FormulaParser(text, nullptr, true).parse(); }

Formula parse_formula(std::string_view text, const InformationSystem& schema, bool allow_unseen_values) {
  return FormulaParser(text, &schema, allow_unseen_values).parse();
}

ObjectSet meaning(const Formula& formula, const InformationSystem& system) {
  const std::size_t n = system.num_objects();
  switch (formula.op()) {
    case Formula::Op::Atom: {
      const auto f = system.feature_index(formula.feature());
      if (!f) throw DataError(DataError::Kind::UnknownFeature, "unknown feature '" + formula.feature() + "'");
      ObjectSet out(n);
      const auto code = system.code_of(*f, formula.value());
      if (!code) return out;
      for (ObjectId x = 0; x < n; ++x) {
        if (system.code(x, *f) == *code) out.set(x);
      }
      return out;
    }
    case Formula::Op::Not:
      return ~meaning(formula.lhs(), system);
    case Formula::Op::And:
      return meaning(formula.lhs(), system) & meaning(formula.rhs(), system);
    case Formula::Op::Or:
      return meaning(formula.lhs(), system) | meaning(formula.rhs(), system);
    case Formula::Op::Implies:
      return ~meaning(formula.lhs(), system) | meaning(formula.rhs(), system);
  }
  return ObjectSet(n);
}

bool satisfies(std::span<const std::string> features, std::span<const std::string> values, const Formula& formula) {
  switch (formula.op()) {
    case Formula::Op::Atom: {
      const auto it = std::find(features.begin(), features.end(), formula.feature());
      if (it == features.end()) {
        throw DataError(DataError::Kind::UnknownFeature, "unknown feature '" + formula.feature() + "'");
      }
      return values[static_cast<std::size_t>(it - features.begin())] == formula.value();
    }
    case Formula::Op::Not:
      return !satisfies(features, values, formula.lhs());
    case Formula::Op::And:
      return satisfies(features, values, formula.lhs()) && satisfies(features, values, formula.rhs());
    case Formula::Op::Or:
      return satisfies(features, values, formula.lhs()) || satisfies(features, values, formula.rhs());
    case Formula::Op::Implies:
      return !satisfies(features, values, formula.lhs()) || satisfies(features, values, formula.rhs());
  }
  return false;
}

}  // namespace mereoml
