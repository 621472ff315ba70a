#include "ssg/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace ssg {

namespace {

constexpr double kTieEps = 1e-9;

// Closest point on segment p0-p1 to q, as clamped parameter t in [0,1].
double foot_param(Vec2 p0, Vec2 p1, Vec2 q) {
    const Vec2 d = p1 - p0;
    const double len2 = d.norm2();
    if (len2 <= 0.0) {
        return 0.0;
    }
    return std::clamp((q - p0).dot(d) / len2, 0.0, 1.0);
}

} // namespace

double wrap_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(a + std::numbers::pi, two_pi);
    if (r <= 0.0) {
        r += two_pi;
    }
    return r - std::numbers::pi;
}

double polyline_length(std::span<const Vec2> pts) {
    double total = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        total += (pts[i] - pts[i - 1]).norm();
    }
    return total;
}

std::vector<double> arc_lengths(std::span<const Vec2> pts) {
    std::vector<double> acc;
    acc.reserve(pts.size());
    double total = 0.0;
    acc.push_back(0.0);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        total += (pts[i] - pts[i - 1]).norm();
        acc.push_back(total);
    }
    return acc;
}

PolylineHit project_to_polyline(std::span<const Vec2> pts, Vec2 query) {
    PolylineHit best;
    best.distance = std::numeric_limits<double>::infinity();

    double s_base = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const Vec2 p0 = pts[i];
        const Vec2 p1 = pts[i + 1];
        const Vec2 d = p1 - p0;
        const double seg_len = d.norm();
        const double t = foot_param(p0, p1, query);
        const Vec2 foot = p0 + d * t;
        const double dist = (query - foot).norm();

        // Strict improvement required: equal-distance candidates (within
        // 1e-9) keep the earlier, smaller-s match.
        if (dist + kTieEps < best.distance) {
            best.s = s_base + t * seg_len;
            best.point = foot;
            best.distance = dist;
            best.side = d.cross(query - foot);
            best.tangent = std::atan2(d.y, d.x);
        }
        s_base += seg_len;
    }
    return best;
}

SegmentContact closest_segment_pair(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
    const Vec2 da = a1 - a0;
    const Vec2 db = b1 - b0;
    const double denom = da.cross(db);

    // Proper crossing: solve a0 + ta*da == b0 + tb*db.
    if (std::abs(denom) > 1e-12) {
        const Vec2 w = b0 - a0;
        const double ta = w.cross(db) / denom;
        const double tb = w.cross(da) / denom;
        if (ta >= 0.0 && ta <= 1.0 && tb >= 0.0 && tb <= 1.0) {
            return {ta, tb, 0.0};
        }
    }

    // Otherwise the minimum is attained at an endpoint of one segment.
    SegmentContact best;
    best.distance = std::numeric_limits<double>::infinity();
    auto consider = [&](double ta, double tb) {
        const Vec2 pa = a0 + da * ta;
        const Vec2 pb = b0 + db * tb;
        const double dist = (pa - pb).norm();
        if (dist < best.distance) {
            best = {ta, tb, dist};
        }
    };
    consider(0.0, foot_param(b0, b1, a0));
    consider(1.0, foot_param(b0, b1, a1));
    consider(foot_param(a0, a1, b0), 0.0);
    consider(foot_param(a0, a1, b1), 1.0);
    return best;
}

PolylineContact polyline_contact(std::span<const Vec2> a, std::span<const Vec2> b) {
    PolylineContact best;
    best.distance = std::numeric_limits<double>::infinity();

    double sa_base = 0.0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        const double len_a = (a[i + 1] - a[i]).norm();
        double sb_base = 0.0;
        for (std::size_t j = 0; j + 1 < b.size(); ++j) {
            const double len_b = (b[j + 1] - b[j]).norm();
            const SegmentContact c = closest_segment_pair(a[i], a[i + 1], b[j], b[j + 1]);
            const double s_a = sa_base + c.t_a * len_a;
            const double s_b = sb_base + c.t_b * len_b;
            const bool better = c.distance + kTieEps < best.distance;
            const bool tied_earlier =
                c.distance < best.distance + kTieEps && s_a + kTieEps < best.s_a;
            if (better || tied_earlier) {
                best = {s_a, s_b, c.distance};
            }
            sb_base += len_b;
        }
        sa_base += len_a;
    }
    return best;
}

} // namespace ssg
