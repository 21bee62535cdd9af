#pragma once

#include <span>
#include <string>

#include "mereoml/types.hpp"

namespace mereoml {

/// Closed axis-parallel rectangle [x1, x2] x [y1, y2] with positive area.
struct Rect {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 1.0;
  double y2 = 1.0;

  /// Throws PreconditionError unless x1 < x2 and y1 < y2.
  static Rect make(double x1, double y1, double x2, double y2);

  double width() const noexcept { return x2 - x1; }
  double height() const noexcept { return y2 - y1; }
  double area() const noexcept { return width() * height(); }
  double cx() const noexcept { return 0.5 * (x1 + x2); }
  double cy() const noexcept { return 0.5 * (y1 + y2); }
  Rect translated(double dx, double dy) const { return {x1 + dx, y1 + dy, x2 + dx, y2 + dy}; }

  friend bool operator==(const Rect&, const Rect&) = default;
};

std::string to_string(const Rect& r);

/// Area of a n b; 0 when they only touch or are apart.
double intersection_area(const Rect& a, const Rect& b);
bool overlaps(const Rect& a, const Rect& b);  // positive-area intersection
/// a inside b, with `slack` world units of tolerance on every side.
bool contains(const Rect& b, const Rect& a, double slack = 0.0);
double centroid_distance(const Rect& a, const Rect& b);

/// area(a n b) / area(a).
Degree area_inclusion(const Rect& a, const Rect& b);

/// rs*(a, b) + rs*(b, a), in [0, 2]. A similarity: 2 exactly when a == b.
Degree rho(const Rect& a, const Rect& b);
/// rho / 2, which is 1 exactly when a == b.
Degree rho_normalized(const Rect& a, const Rect& b);

/// rho(x, y) >= rho(x, z).
bool rnear(const Rect& x, const Rect& y, const Rect& z);

/// For every w in candidates: w == z, rnear(z, x, w) or rnear(z, y, w).
/// Throws PreconditionError when z is not among the candidates.
bool rbtw(const Rect& z, const Rect& x, const Rect& y, std::span<const Rect> candidates);

/// Smallest rectangle containing a and b.
Rect extent(const Rect& a, const Rect& b);

/// z inside extent(a, b).
bool between_extent(const Rect& z, const Rect& a, const Rect& b, double slack = 0.0);

}  // namespace mereoml
