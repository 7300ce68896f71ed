#pragma once

#include <vector>

namespace magscissor {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
    friend constexpr bool operator==(const Point2&, const Point2&) = default;
};

struct Box2 {
    double xmin, ymin, xmax, ymax;
};

/// Simple polygon given by its vertex loop (closing edge implicit).
class Polygon {
public:
    Polygon() = default;
    explicit Polygon(std::vector<Point2> vertices);

    const std::vector<Point2>& vertices() const { return vertices_; }
    Box2 bounds() const;
    double signed_area() const;

    /// Points on an edge or vertex count as inside.
    bool contains(Point2 p) const;

    /// Euclidean distance from p to the nearest edge.
    double boundary_distance(Point2 p) const;

    /// 0 inside (or on the boundary), otherwise the distance to the boundary.
    double outside_distance(Point2 p) const { return contains(p) ? 0.0 : boundary_distance(p); }

    /// >= 3 vertices, nonzero area, no two non-adjacent edges touch.
    bool is_simple() const;

private:
    std::vector<Point2> vertices_;
};

Polygon make_rectangle(double xmin, double ymin, double xmax, double ymax);

}  // namespace magscissor
