#include "ssg/matching.hpp"

#include <algorithm>
#include <cmath>

#include "ssg/errors.hpp"

namespace ssg {

namespace {

void validate(const MatchConfig& config) {
    if (!(config.max_lateral_distance > 0.0) || !(config.pedestrian_radius > 0.0) ||
        config.pedestrian_max_segments <= 0) {
        throw ValidationError("matching thresholds must be positive");
    }
    if (!(config.min_probability > 0.0) || !(config.min_probability < 1.0)) {
        throw ValidationError("min_probability must lie in (0, 1)");
    }
}

void sort_by_probability(std::vector<ProjectionIdentity>& identities) {
    std::sort(identities.begin(), identities.end(),
              [](const ProjectionIdentity& a, const ProjectionIdentity& b) {
                  if (a.probability != b.probability) return a.probability > b.probability;
                  return a.segment_id < b.segment_id;
              });
}

} // namespace

std::vector<ProjectionIdentity> match_participant(const TrafficParticipantState& state,
                                                  const RoadGraph& graph,
                                                  const MatchConfig& config) {
    validate(config);
    const bool pedestrian = state.object_class == ObjectClass::Pedestrian;
    const double radius = pedestrian ? config.pedestrian_radius : config.max_lateral_distance;

    std::vector<ProjectionIdentity> identities;
    for (const RoadSegment& segment : graph.segments()) {
        const FrenetProjection projection =
            project_point(segment.centerline, state.x, state.y, state.psi);
        if (std::abs(projection.d_t) > radius) {
            continue;
        }
        // Pedestrians are matched regardless of orientation: the angular
        // term is evaluated at zero deviation, which fixes it to 1.
        const double probability =
            matching_probability(projection.d_t, pedestrian ? 0.0 : projection.phi,
                                 config.match_params);
        if (!pedestrian && probability < config.min_probability) {
            continue;
        }
        identities.push_back({state.participant_id, segment.id, projection, probability});
    }

    sort_by_probability(identities);
    if (pedestrian && identities.size() > static_cast<std::size_t>(config.pedestrian_max_segments)) {
        // Probability order equals |d_t| order here (the lateral term is the
        // only varying factor), so truncating keeps the nearest segments.
        identities.resize(static_cast<std::size_t>(config.pedestrian_max_segments));
    }
    return identities;
}

std::map<std::int64_t, std::vector<ProjectionIdentity>>
match_scene(const SceneState& scene, const RoadGraph& graph, const MatchConfig& config) {
    std::map<std::int64_t, std::vector<ProjectionIdentity>> matched;
    for (const TrafficParticipantState& state : scene.participants) {
        std::vector<ProjectionIdentity> identities = match_participant(state, graph, config);
        if (!identities.empty()) {
            matched.emplace(state.participant_id, std::move(identities));
        }
    }
    return matched;
}

} // namespace ssg
