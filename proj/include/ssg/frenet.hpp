#pragma once

#include <span>

#include "ssg/geometry.hpp"

namespace ssg {

/// Pose expressed relative to a segment centerline: arc length s from the
/// segment start (clamped to [0, length]), lateral offset d_t (signed,
/// positive to the left of driving direction), and angular deviation phi
/// between the participant yaw and the centerline tangent, in (−π, π].
struct FrenetProjection {
    double s = 0.0;
    double d_t = 0.0;
    double phi = 0.0;
};

/// Standard deviations of the Gaussian matching terms: sigma_d acts on the
/// lateral offset (meters), sigma_p on cos(phi) − 1 (dimensionless).
struct MatchParams {
    double sigma_d = 1.5;
    double sigma_p = 0.7;
};

/// Project a pose onto a centerline polyline (global minimum-distance match
/// over all subsegments; equal distances within 1e-9 resolve to the smaller
/// arc length). Beyond the endpoints s clamps to 0 or the total length.
FrenetProjection project_point(std::span<const Vec2> centerline, double x, double y, double psi);

/// Gaussian matching probability
///   f_d = exp(−d_t² / (2 σ_d²)),  f_p = exp(−(cos φ − 1)² / (2 σ_p²)),
/// returned as f_d · f_p ∈ (0, 1].
double matching_probability(double d_t, double phi, const MatchParams& params);

} // namespace ssg
