#pragma once

#include <array>
#include <vector>

namespace epigauss {

using Point2 = std::array<double, 2>;

/// Convex polygon in counter-clockwise order. tags[i] labels the edge from
/// vertices[i] to vertices[i+1]: the index of the clipping halfspace that
/// produced it, or -1 for an edge of the initial square.
struct Polygon {
  std::vector<Point2> vertices;
  std::vector<int> tags;
  bool empty() const { return vertices.size() < 3; }
  double area() const;
  Point2 centroid() const;
};

Polygon square_polygon(double radius);

/// Sutherland–Hodgman step: keeps {x : ⟨u, x⟩ ≤ c}; new edges get `tag`.
Polygon clip(const Polygon& poly, const Point2& u, double c, int tag);

/// Counter-clockwise convex hull (monotone chain); collinear points dropped.
std::vector<Point2> convex_hull(std::vector<Point2> points);

}  // namespace epigauss
