#pragma once

#include <json.hpp>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ssg/geometry.hpp"

namespace ssg {

enum class RoadEdgeKind { Consecutive, Adjacent, Overlapping };

/// Two centerlines count as geometrically overlapping when they approach
/// within this distance (meters).
inline constexpr double kOverlapTolerance = 0.5;

std::string_view to_string(RoadEdgeKind kind);
RoadEdgeKind road_edge_kind_from_string(std::string_view text);

/// One elementary road segment (lane). The centerline is ordered in driving
/// direction; coordinates are meters in a local metric frame.
struct RoadSegment {
    std::string id;
    std::vector<Vec2> centerline;
    std::optional<double> width;
    nlohmann::json regulatory; // opaque list of rule annotations, retained verbatim
    double length = 0.0;       // cached sum of chord lengths
};

/// Sum of Euclidean chord lengths of a segment's centerline.
double segment_length(const RoadSegment& segment);

struct RoadEdge {
    std::string from;
    std::string to;
    RoadEdgeKind kind = RoadEdgeKind::Consecutive;

    bool operator==(const RoadEdge&) const = default;
};

/// Directed graph of lane segments. Consecutive edges are directed
/// predecessor -> successor; Adjacent and Overlapping edges are stored once
/// (endpoints in lexicographic order) and traversed symmetrically.
/// Immutable after parsing; safe for concurrent reads.
class RoadGraph {
public:
    RoadGraph() = default;
    RoadGraph(std::vector<RoadSegment> segments, std::vector<RoadEdge> edges);

    /// Segments sorted by id; the position of a segment in this vector is
    /// its integer index (deterministic, 0-based).
    const std::vector<RoadSegment>& segments() const { return segments_; }
    const std::vector<RoadEdge>& edges() const { return edges_; }

    std::size_t size() const { return segments_.size(); }
    bool has_segment(std::string_view id) const;
    int index_of(std::string_view id) const;
    const RoadSegment& segment(std::string_view id) const;
    const RoadSegment& segment(int index) const { return segments_.at(static_cast<std::size_t>(index)); }

    /// Consecutive queries return forward successors only; Adjacent and
    /// Overlapping queries return both stored directions. Sorted by id.
    std::vector<std::string> neighbors(std::string_view id, RoadEdgeKind kind) const;
    std::span<const int> neighbor_indices(int index, RoadEdgeKind kind) const;

private:
    void build_indices();

    std::vector<RoadSegment> segments_;
    std::vector<RoadEdge> edges_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<int>> consecutive_;
    std::vector<std::vector<int>> adjacent_;
    std::vector<std::vector<int>> overlapping_;
};

/// Parse and validate a map document (JSON, see README for the schema).
/// Throws ParseError on malformed documents and ValidationError on semantic
/// violations, naming the offending segment or edge.
RoadGraph parse_map(std::string_view text);

/// Serialize back to the map file format. parse_map(serialize_map(g))
/// reproduces an identical graph.
std::string serialize_map(const RoadGraph& graph);

/// Infer Overlapping edges from geometry: one edge per unordered segment
/// pair whose centerlines cross or pass within `tolerance`, excluding pairs
/// already joined by a Consecutive or Adjacent edge. Merging the result into
/// the graph and re-running adds nothing new.
std::vector<RoadEdge> detect_overlaps(const RoadGraph& graph, double tolerance = kOverlapTolerance);

} // namespace ssg
