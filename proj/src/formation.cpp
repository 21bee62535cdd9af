#include "mereoml/formation.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "mereoml/error.hpp"

namespace mereoml {

namespace {

constexpr double kSlack = 1e-9;

class FormationParser {
 public:
  FormationParser(std::string_view text, const std::optional<std::set<int>>& known) : text_(text), known_(known) {}

  Formation parse() {
    Formation f;
    expect('(');
    f.name = word("formation name");
    expect('(');
    const auto set_at = here();
    if (word("'set'") != "set") fail("expected 'set'", set_at);
    while (peek() == '(') f.constraints.push_back(clause());
    expect(')');
    expect(')');
    skip_space();
    if (pos_ < text_.size()) fail("trailing input after the formation", here());
    return f;
  }

 private:
  struct Where {
    std::size_t pos, line, column;
  };

  Where here() const { return {pos_, line_, column_}; }

  [[noreturn]] void fail(const std::string& message, Where at) const {
    throw ParseError(message, at.column, at.line);
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        advance();
      } else if (c == ';') {  // comment to end of line
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    const char got = peek();
    if (got != c) {
      const std::string found = got == '\0' ? "end of input" : "'" + std::string(1, got) + "'";
      fail(std::string("expected '") + c + "', found " + found, here());
    }
    advance();
  }

  std::string word(const char* what) {
    skip_space();
    const auto at = here();
    std::string out;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) != 0 || c == '(' || c == ')' || c == ';') break;
      out += c;
      advance();
    }
    if (out.empty()) fail(std::string("expected ") + what, at);
    return out;
  }

  double number() {
    skip_space();
    const auto at = here();
    const auto token = word("a number");
    double value = 0.0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || end != token.data() + token.size() || !std::isfinite(value)) {
      fail("'" + token + "' is not a number", at);
    }
    if (!(value > 0.0)) fail("max-dist must be positive, got " + token, at);
    return value;
  }

  RobotRef robot() {
    RobotRef r;
    r.kind = word("a robot kind");
    if (!std::isalpha(static_cast<unsigned char>(r.kind.front()))) fail("robot kind must start with a letter", here());
    skip_space();
    const auto at = here();
    const auto token = word("a robot id");
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), r.id);
    if (ec != std::errc() || end != token.data() + token.size()) fail("'" + token + "' is not a robot id", at);
    if (known_ && known_->count(r.id) == 0) fail("unknown robot id " + token, at);
    return r;
  }

  FormationConstraint between_body(FormationConstraint::Kind kind) {
    FormationConstraint c;
    c.kind = kind;
    c.r = robot();
    c.a = robot();
    c.b = robot();
    expect(')');
    return c;
  }

  FormationConstraint clause() {
    expect('(');
    skip_space();
    const auto at = here();
    const auto head = word("a clause name");
    if (head == "between") return between_body(FormationConstraint::Kind::Between);
    if (head == "not-between") return between_body(FormationConstraint::Kind::NotBetween);
    if (head != "max-dist") fail("unknown clause '" + head + "'", at);
    const double delta = number();
    const auto anchor = robot();
    expect('(');
    skip_space();
    const auto inner_at = here();
    if (word("'between'") != "between") fail("max-dist expects a between clause", inner_at);
    auto c = between_body(FormationConstraint::Kind::MaxDist);
    c.delta = delta;
    c.anchor = anchor;
    expect(')');
    return c;
  }

  std::string_view text_;
  const std::optional<std::set<int>>& known_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

std::string format_number(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string ref(const RobotRef& r) { return r.kind + " " + std::to_string(r.id); }

std::string between_text(const FormationConstraint& c) {
  return "(between " + ref(c.r) + " " + ref(c.a) + " " + ref(c.b) + ")";
}

const Rect& pose_of(const std::map<int, Rect>& poses, const RobotRef& r) {
  const auto it = poses.find(r.id);
  if (it == poses.end()) throw PreconditionError("no pose for robot " + std::to_string(r.id));
  return it->second;
}

}  // namespace

std::set<int> Formation::robot_ids() const {
  std::set<int> ids;
  for (const auto& c : constraints) {
    ids.insert({c.r.id, c.a.id, c.b.id});
    if (c.kind == FormationConstraint::Kind::MaxDist) ids.insert(c.anchor.id);
  }
  return ids;
}

Formation parse_formation(std::string_view text, const std::optional<std::set<int>>& known_ids) {
  return FormationParser(text, known_ids).parse();
}

std::string to_string(const Formation& formation) {
  std::string out = "(" + formation.name + " (set";
  for (const auto& c : formation.constraints) {
    out += ' ';
    switch (c.kind) {
      case FormationConstraint::Kind::Between:
        out += between_text(c);
        break;
      case FormationConstraint::Kind::NotBetween:
        out += "(not-between " + ref(c.r) + " " + ref(c.a) + " " + ref(c.b) + ")";
        break;
      case FormationConstraint::Kind::MaxDist:
        out += "(max-dist " + format_number(c.delta) + " " + ref(c.anchor) + " " + between_text(c) + ")";
        break;
    }
  }
  out += "))";
  return out;
}

std::vector<Violation> check_formation(const Formation& formation, const std::map<int, Rect>& poses) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < formation.constraints.size(); ++i) {
    const auto& c = formation.constraints[i];
    const bool between = between_extent(pose_of(poses, c.r), pose_of(poses, c.a), pose_of(poses, c.b), kSlack);
    switch (c.kind) {
      case FormationConstraint::Kind::Between:
        if (!between) out.push_back({i, ref(c.r) + " is not between " + ref(c.a) + " and " + ref(c.b)});
        break;
      case FormationConstraint::Kind::NotBetween:
        if (between) out.push_back({i, ref(c.r) + " is between " + ref(c.a) + " and " + ref(c.b)});
        break;
      case FormationConstraint::Kind::MaxDist: {
        if (!between) {
          out.push_back({i, ref(c.r) + " is not between " + ref(c.a) + " and " + ref(c.b)});
          break;
        }
        const auto& m = pose_of(poses, c.anchor);
        const double d = std::max(centroid_distance(m, pose_of(poses, c.a)), centroid_distance(m, pose_of(poses, c.b)));
        if (d > c.delta + kSlack) {
          out.push_back({i, ref(c.anchor) + " is " + format_number(d) + " from its pair, above " + format_number(c.delta)});
        }
        break;
      }
    }
  }
  return out;
}

}  // namespace mereoml
