#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssg/map_model.hpp"
#include "ssg/matching.hpp"

namespace ssg {

/// A simple path through the road graph, starting at a matched segment.
/// edge_kinds[k] joins segments[k] and segments[k+1]; total_length is the
/// sum of all member segment lengths.
struct RoadPath {
    std::vector<std::string> segments;
    std::vector<RoadEdgeKind> edge_kinds;
    double total_length = 0.0;
};

enum class RelationClass { Longitudinal, Lateral, Intersecting };

std::string_view to_string(RelationClass relation_class);

/// One directed semantic relation between two projection identities.
/// Longitudinal/Lateral relations carry the along-path distance d_F;
/// Intersecting relations carry the distance d_ip from the source identity
/// to the intersection point, measured along the source path. Both are
/// signed in driving direction of the source.
struct Relation {
    std::int64_t source_id = 0;
    std::int64_t target_id = 0;
    RelationClass relation_class = RelationClass::Longitudinal;
    std::optional<double> d_F;
    std::optional<double> d_ip;
    std::string segment_a; // segment hosting the source identity
    std::string segment_b; // segment hosting the target identity
    double d_t_i = 0.0;
    double phi_i = 0.0;
    double d_t_j = 0.0;
    double phi_j = 0.0;

    /// The one distance this relation carries (d_ip for Intersecting,
    /// d_F otherwise).
    double distance() const;
};

struct PathSearchConfig {
    /// A path may grow as long as the summed length of its fully traversed
    /// segments (all but the last) stays within this bound.
    double max_total_length = 150.0;
};

/// All simple paths from start_segment over Consecutive (forward) and
/// Adjacent (either direction) edges, with at most one Adjacent edge per
/// path, admissible under the length bound. Includes the trivial
/// single-segment path. Ordered lexicographically by segment-id sequence;
/// the result is prefix-closed.
std::vector<RoadPath> find_paths(const RoadGraph& graph, std::string_view start_segment,
                                 const PathSearchConfig& config);

/// Classify a traversed edge-kind sequence. Empty/all-Consecutive →
/// Longitudinal; exactly one Adjacent among Consecutive → Lateral; exactly
/// one Overlapping → Intersecting; anything else → nullopt.
std::optional<RelationClass> classify_path(const std::vector<RoadEdgeKind>& edge_kinds);

/// Along-path distance from the source identity (at arc length s_i on the
/// path start) to the target identity (at s_j on target_segment). Fully
/// traversed segments contribute their length over Consecutive transitions
/// and nothing over Adjacent ones.
double compute_dF(const RoadPath& path, std::string_view target_segment, double s_i, double s_j,
                  const RoadGraph& graph);

/// Along-path distance from the source identity to the intersection point
/// of overlap_segment (on the path) with partner_segment (joined to it by
/// an Overlapping edge). Negative once the source has passed the point.
/// Throws ValidationError when the declared overlap has no geometric
/// counterpart within the overlap tolerance.
double compute_dip(const RoadPath& path, std::string_view overlap_segment,
                   std::string_view partner_segment, double s_i, const RoadGraph& graph);

/// Variant resolving the overlap partner automatically: among all segments
/// joined to overlap_segment by an Overlapping edge, the one yielding the
/// smallest |d_ip| wins (ties to the smaller signed value).
double compute_dip(const RoadPath& path, std::string_view overlap_segment, double s_i,
                   const RoadGraph& graph);

/// All relations from identity_i to identity_j given the bounded path sets
/// of their segments. Longitudinal/Lateral arise from paths of identity_i
/// reaching identity_j's segment; Intersecting from path pairs joined by an
/// Overlapping edge. Duplicates per (class, segment_a, segment_b) collapse
/// to the smallest |distance|. Deterministically ordered.
std::vector<Relation> relate_pair(const ProjectionIdentity& identity_i,
                                  const ProjectionIdentity& identity_j,
                                  const std::vector<RoadPath>& paths_i,
                                  const std::vector<RoadPath>& paths_j,
                                  const RoadGraph& graph);

} // namespace ssg
