#include "mereoml/mereogeometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mereoml/error.hpp"

namespace mereoml {

Rect Rect::make(double x1, double y1, double x2, double y2) {
  if (!(x1 < x2) || !(y1 < y2)) throw PreconditionError("rectangle needs x1 < x2 and y1 < y2");
  return {x1, y1, x2, y2};
}

std::string to_string(const Rect& r) {
  std::ostringstream out;
  out << '[' << r.x1 << ',' << r.x2 << "]x[" << r.y1 << ',' << r.y2 << ']';
  return out.str();
}

double intersection_area(const Rect& a, const Rect& b) {
  const double w = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double h = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  return w > 0.0 && h > 0.0 ? w * h : 0.0;
}

bool overlaps(const Rect& a, const Rect& b) { return intersection_area(a, b) > 0.0; }

bool contains(const Rect& b, const Rect& a, double slack) {
  return a.x1 >= b.x1 - slack && a.y1 >= b.y1 - slack && a.x2 <= b.x2 + slack && a.y2 <= b.y2 + slack;
}

double centroid_distance(const Rect& a, const Rect& b) { return std::hypot(a.cx() - b.cx(), a.cy() - b.cy()); }

Degree area_inclusion(const Rect& a, const Rect& b) {
  // Exact 1 on containment, where the ratio could round just below it.
  if (contains(b, a)) return 1.0;
  return intersection_area(a, b) / a.area();
}

Degree rho(const Rect& a, const Rect& b) { return area_inclusion(a, b) + area_inclusion(b, a); }

Degree rho_normalized(const Rect& a, const Rect& b) { return 0.5 * rho(a, b); }

bool rnear(const Rect& x, const Rect& y, const Rect& z) { return rho(x, y) >= rho(x, z); }

bool rbtw(const Rect& z, const Rect& x, const Rect& y, std::span<const Rect> candidates) {
  if (std::find(candidates.begin(), candidates.end(), z) == candidates.end()) {
    throw PreconditionError("rbtw needs z among the candidates");
  }
  const Degree to_x = rho(z, x);
  const Degree to_y = rho(z, y);
  return std::all_of(candidates.begin(), candidates.end(), [&](const Rect& w) {
    if (w == z) return true;
    const Degree to_w = rho(z, w);
    return to_x >= to_w || to_y >= to_w;
  });
}

Rect extent(const Rect& a, const Rect& b) {
  return {std::min(a.x1, b.x1), std::min(a.y1, b.y1), std::max(a.x2, b.x2), std::max(a.y2, b.y2)};
}

bool between_extent(const Rect& z, const Rect& a, const Rect& b, double slack) {
  return contains(extent(a, b), z, slack);
}

}  // namespace mereoml
