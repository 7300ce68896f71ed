#include "magscissor/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace magscissor {

namespace {

double cross2(Point2 o, Point2 a, Point2 b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(Point2 p, Point2 a, Point2 b) {
    return cross2(a, b, p) == 0.0 && p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
           p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y);
}

double segment_distance(Point2 p, Point2 a, Point2 b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = 0.0;
    if (len2 > 0.0) {
        t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
    }
    return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

int orientation(Point2 a, Point2 b, Point2 c) {
    const double v = cross2(a, b, c);
    return (v > 0.0) - (v < 0.0);
}

bool segments_touch(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
    const int o1 = orientation(p1, p2, q1);
    const int o2 = orientation(p1, p2, q2);
    const int o3 = orientation(q1, q2, p1);
    const int o4 = orientation(q1, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    return (o1 == 0 && on_segment(q1, p1, p2)) || (o2 == 0 && on_segment(q2, p1, p2)) ||
           (o3 == 0 && on_segment(p1, q1, q2)) || (o4 == 0 && on_segment(p2, q1, q2));
}

}  // namespace

Polygon::Polygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {}

Box2 Polygon::bounds() const {
    Box2 b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& v : vertices_) {
        b.xmin = std::min(b.xmin, v.x);
        b.ymin = std::min(b.ymin, v.y);
        b.xmax = std::max(b.xmax, v.x);
        b.ymax = std::max(b.ymax, v.y);
    }
    return b;
}

double Polygon::signed_area() const {
    double a = 0.0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = vertices_[i];
        const auto& q = vertices_[(i + 1) % n];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

bool Polygon::contains(Point2 p) const {
    const std::size_t n = vertices_.size();
    if (n < 3) return false;
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point2 a = vertices_[i];
        const Point2 b = vertices_[j];
        if (on_segment(p, a, b)) return true;
        // crossing-number test, half-open in y
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

double Polygon::boundary_distance(Point2 p) const {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        best = std::min(best, segment_distance(p, vertices_[i], vertices_[(i + 1) % n]));
    }
    return best;
}

bool Polygon::is_simple() const {
    const std::size_t n = vertices_.size();
    if (n < 3 || signed_area() == 0.0) return false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) {
                // adjacent edges may only share their common vertex
                if (vertices_[i] == vertices_[(i + 1) % n] || vertices_[j] == vertices_[(j + 1) % n]) {
                    return false;
                }
                continue;
            }
            if (segments_touch(vertices_[i], vertices_[(i + 1) % n], vertices_[j],
                               vertices_[(j + 1) % n])) {
                return false;
            }
        }
    }
    return true;
}

Polygon make_rectangle(double xmin, double ymin, double xmax, double ymax) {
    return Polygon({{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}});
}

}  // namespace magscissor
