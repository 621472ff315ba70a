#include "ssg/relations.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <utility>

#include "ssg/errors.hpp"

namespace ssg {

namespace {

/// Arc-length offset accumulated from the path start up to (not including)
/// stop_segment: Consecutive transitions advance by the traversed segment's
/// length, lane changes (Adjacent) and overlap hops do not.
double walk_offset(const RoadPath& path, std::string_view stop_segment, const RoadGraph& graph) {
    double offset = 0.0;
    for (std::size_t k = 0; k < path.segments.size(); ++k) {
        if (path.segments[k] == stop_segment) {
            return offset;
        }
        if (k >= path.edge_kinds.size()) {
            break;
        }
        if (path.edge_kinds[k] == RoadEdgeKind::Consecutive) {
            offset += graph.segment(path.segments[k]).length;
        }
    }
    throw ValidationError("segment '" + std::string(stop_segment) + "' is not on the path");
}

} // namespace

std::string_view to_string(RelationClass relation_class) {
    switch (relation_class) {
    case RelationClass::Longitudinal: return "longitudinal";
    case RelationClass::Lateral: return "lateral";
    case RelationClass::Intersecting: return "intersecting";
    }
    return "longitudinal";
}

double Relation::distance() const {
    if (relation_class == RelationClass::Intersecting) {
        return d_ip.value();
    }
    return d_F.value();
}

std::vector<RoadPath> find_paths(const RoadGraph& graph, std::string_view start_segment,
                                 const PathSearchConfig& config) {
    if (!(config.max_total_length > 0.0)) {
        throw ValidationError("max_total_length must be positive");
    }
    const int start = graph.index_of(start_segment);

    std::vector<RoadPath> paths;
    std::vector<int> current{start};
    std::vector<RoadEdgeKind> kinds;
    std::vector<char> visited(graph.size(), 0);
    visited[static_cast<std::size_t>(start)] = 1;

    const auto emit = [&]() {
        RoadPath path;
        path.segments.reserve(current.size());
        for (int index : current) {
            const RoadSegment& segment = graph.segment(index);
            path.segments.push_back(segment.id);
            path.total_length += segment.length;
        }
        path.edge_kinds = kinds;
        paths.push_back(std::move(path));
    };

    // Depth-first expansion with children in segment-id order yields the
    // lexicographic, prefix-closed enumeration the callers rely on.
    // `traversed` covers every segment except the current last one; a path
    // may be extended only while that sum stays within the bound.
    const std::function<void(int, bool, double)> expand = [&](int u, bool adjacent_used,
                                                              double traversed) {
        emit();
        const double next_traversed = traversed + graph.segment(u).length;
        if (next_traversed > config.max_total_length) {
            return;
        }
        std::vector<std::pair<int, RoadEdgeKind>> children;
        for (int v : graph.neighbor_indices(u, RoadEdgeKind::Consecutive)) {
            children.emplace_back(v, RoadEdgeKind::Consecutive);
        }
        if (!adjacent_used) {
            for (int v : graph.neighbor_indices(u, RoadEdgeKind::Adjacent)) {
                children.emplace_back(v, RoadEdgeKind::Adjacent);
            }
        }
        std::sort(children.begin(), children.end());
        for (const auto& [v, kind] : children) {
            if (visited[static_cast<std::size_t>(v)]) {
                continue;
            }
            visited[static_cast<std::size_t>(v)] = 1;
            current.push_back(v);
            kinds.push_back(kind);
            expand(v, adjacent_used || kind == RoadEdgeKind::Adjacent, next_traversed);
            kinds.pop_back();
            current.pop_back();
            visited[static_cast<std::size_t>(v)] = 0;
        }
    };
    expand(start, false, 0.0);
    return paths;
}

std::optional<RelationClass> classify_path(const std::vector<RoadEdgeKind>& edge_kinds) {
    int adjacent = 0;
    int overlapping = 0;
    for (RoadEdgeKind kind : edge_kinds) {
        if (kind == RoadEdgeKind::Adjacent) ++adjacent;
        if (kind == RoadEdgeKind::Overlapping) ++overlapping;
    }
    if (overlapping >= 2) {
        return std::nullopt;
    }
    if (overlapping == 1) {
        return RelationClass::Intersecting;
    }
    if (adjacent == 0) {
        return RelationClass::Longitudinal;
    }
    if (adjacent == 1) {
        return RelationClass::Lateral;
    }
    return std::nullopt;
}

double compute_dF(const RoadPath& path, std::string_view target_segment, double s_i, double s_j,
                  const RoadGraph& graph) {
    return walk_offset(path, target_segment, graph) + s_j - s_i;
}

double compute_dip(const RoadPath& path, std::string_view overlap_segment,
                   std::string_view partner_segment, double s_i, const RoadGraph& graph) {
    const RoadSegment& overlap = graph.segment(overlap_segment);
    const RoadSegment& partner = graph.segment(partner_segment);
    const PolylineContact contact = polyline_contact(overlap.centerline, partner.centerline);
    if (contact.distance > kOverlapTolerance) {
        throw ValidationError("segments '" + overlap.id + "' and '" + partner.id +
                              "' are declared overlapping but their centerlines stay " +
                              std::to_string(contact.distance) + " m apart (map inconsistency)");
    }
    return walk_offset(path, overlap_segment, graph) + contact.s_a - s_i;
}

double compute_dip(const RoadPath& path, std::string_view overlap_segment, double s_i,
                   const RoadGraph& graph) {
    const int overlap_index = graph.index_of(overlap_segment);
    const auto partners = graph.neighbor_indices(overlap_index, RoadEdgeKind::Overlapping);
    if (partners.empty()) {
        throw ValidationError("segment '" + std::string(overlap_segment) +
                              "' has no overlapping edge");
    }
    std::optional<double> best;
    for (int partner : partners) {
        const double candidate =
            compute_dip(path, overlap_segment, graph.segment(partner).id, s_i, graph);
        if (!best || std::abs(candidate) < std::abs(*best) ||
            (std::abs(candidate) == std::abs(*best) && candidate < *best)) {
            best = candidate;
        }
    }
    return *best;
}

std::vector<Relation> relate_pair(const ProjectionIdentity& identity_i,
                                  const ProjectionIdentity& identity_j,
                                  const std::vector<RoadPath>& paths_i,
                                  const std::vector<RoadPath>& paths_j,
                                  const RoadGraph& graph) {
    if (identity_i.participant_id == identity_j.participant_id) {
        throw ValidationError("cannot relate two identities of participant " +
                              std::to_string(identity_i.participant_id));
    }

    // segment_a/segment_b are fixed by the identity pair, so relations
    // collapse per class, keeping the smallest |distance| (ties to the
    // smaller signed value).
    std::map<RelationClass, Relation> best;
    const auto offer = [&](RelationClass relation_class, double distance) {
        Relation relation;
        relation.source_id = identity_i.participant_id;
        relation.target_id = identity_j.participant_id;
        relation.relation_class = relation_class;
        if (relation_class == RelationClass::Intersecting) {
            relation.d_ip = distance;
        } else {
            relation.d_F = distance;
        }
        relation.segment_a = identity_i.segment_id;
        relation.segment_b = identity_j.segment_id;
        relation.d_t_i = identity_i.projection.d_t;
        relation.phi_i = identity_i.projection.phi;
        relation.d_t_j = identity_j.projection.d_t;
        relation.phi_j = identity_j.projection.phi;
        const auto [it, inserted] = best.try_emplace(relation_class, relation);
        if (!inserted) {
            const double current = it->second.distance();
            if (std::abs(distance) < std::abs(current) ||
                (std::abs(distance) == std::abs(current) && distance < current)) {
                it->second = relation;
            }
        }
    };

    // Longitudinal / Lateral: paths of i that end at j's segment. The path
    // set is prefix-closed, so this sees every "reaches b" prefix exactly
    // once.
    const double s_i = identity_i.projection.s;
    const double s_j = identity_j.projection.s;
    for (const RoadPath& path : paths_i) {
        if (path.segments.back() != identity_j.segment_id) {
            continue;
        }
        const std::optional<RelationClass> relation_class = classify_path(path.edge_kinds);
        if (!relation_class) {
            continue;
        }
        offer(*relation_class, compute_dF(path, identity_j.segment_id, s_i, s_j, graph));
    }

    // Intersecting: a path of i and a path of j whose end segments are
    // joined by an Overlapping edge; d_ip runs along i's path to the
    // geometric contact with j's end segment.
    for (const RoadPath& path_i : paths_i) {
        const int u = graph.index_of(path_i.segments.back());
        const auto overlaps = graph.neighbor_indices(u, RoadEdgeKind::Overlapping);
        if (overlaps.empty()) {
            continue;
        }
        for (const RoadPath& path_j : paths_j) {
            const int v = graph.index_of(path_j.segments.back());
            if (!std::binary_search(overlaps.begin(), overlaps.end(), v)) {
                continue;
            }
            offer(RelationClass::Intersecting,
                  compute_dip(path_i, path_i.segments.back(), graph.segment(v).id, s_i, graph));
        }
    }

    std::vector<Relation> relations;
    relations.reserve(best.size());
    for (auto& [relation_class, relation] : best) {
        relations.push_back(std::move(relation));
    }
    return relations;
}

} // namespace ssg
