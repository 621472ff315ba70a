#include "ssg/frenet.hpp"

#include <cmath>

#include "ssg/errors.hpp"

namespace ssg {

FrenetProjection project_point(std::span<const Vec2> centerline, double x, double y, double psi) {
    if (centerline.size() < 2) {
        throw ValidationError("cannot project onto a centerline with fewer than 2 points");
    }
    const PolylineHit hit = project_to_polyline(centerline, {x, y});
    FrenetProjection projection;
    projection.s = hit.s;
    // Left of the tangent is positive; a point exactly on the line keeps +0.
    projection.d_t = hit.side < 0.0 ? -hit.distance : hit.distance;
    projection.phi = wrap_angle(psi - hit.tangent);
    return projection;
}

double matching_probability(double d_t, double phi, const MatchParams& params) {
    if (!(params.sigma_d > 0.0) || !(params.sigma_p > 0.0)) {
        throw ValidationError("matching standard deviations must be positive");
    }
    const double f_d = std::exp(-(d_t * d_t) / (2.0 * params.sigma_d * params.sigma_d));
    const double c = std::cos(phi) - 1.0;
    const double f_p = std::exp(-(c * c) / (2.0 * params.sigma_p * params.sigma_p));
    return f_d * f_p;
}

} // namespace ssg
