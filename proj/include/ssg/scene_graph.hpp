#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "ssg/ingest.hpp"
#include "ssg/map_model.hpp"
#include "ssg/matching.hpp"
#include "ssg/relations.hpp"

namespace ssg {

/// One traffic participant inside a scene graph, consolidated over all of
/// its projection identities.
struct SceneNode {
    std::int64_t participant_id = 0;
    ObjectClass object_class = ObjectClass::Other;
    double speed = 0.0;
    std::vector<ProjectionIdentity> identities; // non-empty
};

/// The Semantic Scene Graph of one timestep: matched participants as nodes,
/// their pairwise semantic relations as directed attributed edges. Parallel
/// edges between two nodes differ in (class, segment_a, segment_b).
struct SceneGraph {
    std::int64_t timestamp_ms = 0;
    std::vector<SceneNode> nodes; // ascending participant_id
    std::vector<Relation> edges;  // sorted by source, target, class, |distance|
};

/// Bounded path sets for every segment of a road graph, computed once and
/// shared read-only across scenes and worker threads.
class PathCache {
public:
    PathCache(const RoadGraph& graph, const PathSearchConfig& config);

    const std::vector<RoadPath>& paths(std::string_view segment_id) const;
    const std::vector<RoadPath>& paths(int segment_index) const;

private:
    const RoadGraph* graph_;
    std::vector<std::vector<RoadPath>> paths_; // indexed like graph_->segments()
};

/// Build the scene graph of one timestep: match participants, search paths
/// from every matched segment, relate all ordered identity pairs, and
/// consolidate. Deterministic for identical inputs.
SceneGraph build_scene_graph(const SceneState& scene, const RoadGraph& graph,
                             const MatchConfig& match_config, const PathCache& cache);
SceneGraph build_scene_graph(const SceneState& scene, const RoadGraph& graph,
                             const MatchConfig& match_config,
                             const PathSearchConfig& path_config);

/// build_scene_graph over every timestep, in timestamp order. `jobs` worker
/// threads share the immutable graph and path cache; the output is
/// identical for every job count.
std::vector<SceneGraph> build_recording(const Recording& recording, const RoadGraph& graph,
                                        const MatchConfig& match_config,
                                        const PathSearchConfig& path_config, int jobs = 1);

} // namespace ssg
