#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ssg/frenet.hpp"
#include "ssg/ingest.hpp"
#include "ssg/map_model.hpp"

namespace ssg {

/// Assignment of one participant onto one road segment: the Frenet
/// projection plus its Gaussian matching probability. A participant with an
/// ambiguous pose owns several identities, at most one per segment.
struct ProjectionIdentity {
    std::int64_t participant_id = 0;
    std::string segment_id;
    FrenetProjection projection;
    double probability = 0.0;
};

struct MatchConfig {
    MatchParams match_params;
    /// Vehicles beyond this lateral offset from a centerline are not
    /// considered candidates for that segment.
    double max_lateral_distance = 5.0;
    /// Vehicle candidates below this probability are dropped.
    double min_probability = 0.05;
    /// Pedestrians ignore orientation and use this tighter radius instead.
    double pedestrian_radius = 3.0;
    int pedestrian_max_segments = 3;
};

/// All projection identities of one participant, sorted by descending
/// probability (ties by segment id). Vehicles keep candidates with
/// |d_t| ≤ max_lateral_distance and probability ≥ min_probability;
/// pedestrians keep the nearest pedestrian_max_segments segments within
/// pedestrian_radius, with the orientation term forced to 1. An empty
/// result means the participant is not relevant to the road network.
std::vector<ProjectionIdentity> match_participant(const TrafficParticipantState& state,
                                                  const RoadGraph& graph,
                                                  const MatchConfig& config);

/// match_participant over a whole scene; participants with no identities
/// are omitted from the mapping.
std::map<std::int64_t, std::vector<ProjectionIdentity>>
match_scene(const SceneState& scene, const RoadGraph& graph, const MatchConfig& config);

} // namespace ssg
