#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace ssg {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double k) const { return {x * k, y * k}; }
    bool operator==(const Vec2&) const = default;

    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
};

/// Wrap an angle to (-pi, pi].
double wrap_angle(double a);

/// Sum of Euclidean chord lengths of a polyline.
double polyline_length(std::span<const Vec2> pts);

/// Cumulative arc length at every vertex; front() == 0, back() == length.
std::vector<double> arc_lengths(std::span<const Vec2> pts);

/// Closest point of a polyline to a query point.
struct PolylineHit {
    double s = 0.0;        // arc length of the matched point
    Vec2 point;            // matched point on the polyline
    double distance = 0.0; // Euclidean distance query <-> matched point
    double side = 0.0;     // >0 query left of local tangent, <0 right, 0 on line
    double tangent = 0.0;  // tangent angle of the matched subsegment
};

/// Global minimum-distance match over all subsegments. Ties within 1e-9 m
/// keep the smaller-s candidate.
PolylineHit project_to_polyline(std::span<const Vec2> pts, Vec2 query);

/// Closest pair of points between two segments a0-a1 and b0-b1.
struct SegmentContact {
    double t_a = 0.0; // parameter on a in [0,1]
    double t_b = 0.0;
    double distance = 0.0;
};

SegmentContact closest_segment_pair(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);

/// Minimum-distance contact between two polylines, located by arc length.
/// For crossing polylines this is the first crossing along `a`; for a
/// near-miss it is the earliest point on `a` attaining the minimum distance
/// (ties resolved toward smaller s_a).
struct PolylineContact {
    double s_a = 0.0;
    double s_b = 0.0;
    double distance = 0.0;
};

PolylineContact polyline_contact(std::span<const Vec2> a, std::span<const Vec2> b);

} // namespace ssg
