#include "ssg/map_model.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ssg/errors.hpp"

namespace ssg {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr double kMinPointSeparation = 1e-9;

bool is_symmetric(RoadEdgeKind kind) {
    return kind == RoadEdgeKind::Adjacent || kind == RoadEdgeKind::Overlapping;
}

/// Symmetric edges are stored with endpoints in lexicographic order so that
/// {A,B} and {B,A} compare equal and duplicates collapse.
RoadEdge normalized(RoadEdge edge) {
    if (is_symmetric(edge.kind) && edge.to < edge.from) {
        std::swap(edge.from, edge.to);
    }
    return edge;
}

bool edge_less(const RoadEdge& a, const RoadEdge& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
}

} // namespace

std::string_view to_string(RoadEdgeKind kind) {
    switch (kind) {
    case RoadEdgeKind::Consecutive: return "consecutive";
    case RoadEdgeKind::Adjacent: return "adjacent";
    case RoadEdgeKind::Overlapping: return "overlapping";
    }
    return "consecutive";
}

RoadEdgeKind road_edge_kind_from_string(std::string_view text) {
    if (text == "consecutive") return RoadEdgeKind::Consecutive;
    if (text == "adjacent") return RoadEdgeKind::Adjacent;
    if (text == "overlapping") return RoadEdgeKind::Overlapping;
    throw ParseError("unknown edge kind '" + std::string(text) + "'");
}

double segment_length(const RoadSegment& segment) {
    return polyline_length(segment.centerline);
}

RoadGraph::RoadGraph(std::vector<RoadSegment> segments, std::vector<RoadEdge> edges)
    : segments_(std::move(segments)), edges_(std::move(edges)) {
    std::sort(segments_.begin(), segments_.end(),
              [](const RoadSegment& a, const RoadSegment& b) { return a.id < b.id; });
    for (RoadEdge& edge : edges_) {
        edge = normalized(edge);
    }
    std::sort(edges_.begin(), edges_.end(), edge_less);
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    build_indices();
}

void RoadGraph::build_indices() {
    index_.clear();
    index_.reserve(segments_.size());
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        RoadSegment& segment = segments_[i];
        if (segment.id.empty()) {
            throw ValidationError("segment at position " + std::to_string(i) + " has an empty id");
        }
        if (!index_.emplace(segment.id, static_cast<int>(i)).second) {
            throw ValidationError("duplicate segment id '" + segment.id + "'");
        }
        if (segment.centerline.size() < 2) {
            throw ValidationError("segment '" + segment.id + "': centerline needs at least 2 points");
        }
        for (const Vec2& p : segment.centerline) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
                throw ValidationError("segment '" + segment.id + "': centerline has a non-finite coordinate");
            }
        }
        for (std::size_t k = 1; k < segment.centerline.size(); ++k) {
            if ((segment.centerline[k] - segment.centerline[k - 1]).norm() <= kMinPointSeparation) {
                throw ValidationError("segment '" + segment.id + "': centerline points " +
                                      std::to_string(k - 1) + " and " + std::to_string(k) +
                                      " coincide");
            }
        }
        if (segment.width && (!std::isfinite(*segment.width) || *segment.width <= 0.0)) {
            throw ValidationError("segment '" + segment.id + "': width must be positive");
        }
        segment.length = segment_length(segment);
    }

    consecutive_.assign(segments_.size(), {});
    adjacent_.assign(segments_.size(), {});
    overlapping_.assign(segments_.size(), {});
    for (const RoadEdge& edge : edges_) {
        auto from = index_.find(edge.from);
        auto to = index_.find(edge.to);
        if (from == index_.end()) {
            throw ValidationError("edge " + edge.from + " -> " + edge.to +
                                  ": unknown segment '" + edge.from + "'");
        }
        if (to == index_.end()) {
            throw ValidationError("edge " + edge.from + " -> " + edge.to +
                                  ": unknown segment '" + edge.to + "'");
        }
        if (from->second == to->second) {
            throw ValidationError("edge " + edge.from + " -> " + edge.to +
                                  ": a segment cannot relate to itself");
        }
        switch (edge.kind) {
        case RoadEdgeKind::Consecutive:
            consecutive_[static_cast<std::size_t>(from->second)].push_back(to->second);
            break;
        case RoadEdgeKind::Adjacent:
            adjacent_[static_cast<std::size_t>(from->second)].push_back(to->second);
            adjacent_[static_cast<std::size_t>(to->second)].push_back(from->second);
            break;
        case RoadEdgeKind::Overlapping:
            overlapping_[static_cast<std::size_t>(from->second)].push_back(to->second);
            overlapping_[static_cast<std::size_t>(to->second)].push_back(from->second);
            break;
        }
    }
    for (auto* lists : {&consecutive_, &adjacent_, &overlapping_}) {
        for (std::vector<int>& list : *lists) {
            std::sort(list.begin(), list.end());
        }
    }
}

bool RoadGraph::has_segment(std::string_view id) const {
    return index_.find(std::string(id)) != index_.end();
}

int RoadGraph::index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) {
        throw ValidationError("unknown segment '" + std::string(id) + "'");
    }
    return it->second;
}

const RoadSegment& RoadGraph::segment(std::string_view id) const {
    return segments_[static_cast<std::size_t>(index_of(id))];
}

std::span<const int> RoadGraph::neighbor_indices(int index, RoadEdgeKind kind) const {
    const auto i = static_cast<std::size_t>(index);
    switch (kind) {
    case RoadEdgeKind::Consecutive: return consecutive_.at(i);
    case RoadEdgeKind::Adjacent: return adjacent_.at(i);
    case RoadEdgeKind::Overlapping: return overlapping_.at(i);
    }
    return {};
}

std::vector<std::string> RoadGraph::neighbors(std::string_view id, RoadEdgeKind kind) const {
    std::vector<std::string> out;
    for (int neighbor : neighbor_indices(index_of(id), kind)) {
        out.push_back(segments_[static_cast<std::size_t>(neighbor)].id);
    }
    return out; // indices are sorted and segments are sorted by id
}

RoadGraph parse_map(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("map is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("map root must be a JSON object");
    }
    if (!doc.contains("segments") || !doc["segments"].is_array()) {
        throw ParseError("map needs a 'segments' array");
    }

    std::vector<RoadSegment> segments;
    segments.reserve(doc["segments"].size());
    for (const json& entry : doc["segments"]) {
        if (!entry.is_object()) {
            throw ParseError("every segment must be a JSON object");
        }
        if (!entry.contains("id") || !entry["id"].is_string()) {
            throw ParseError("every segment needs a string 'id'");
        }
        RoadSegment segment;
        segment.id = entry["id"].get<std::string>();
        if (!entry.contains("centerline") || !entry["centerline"].is_array()) {
            throw ParseError("segment '" + segment.id + "': needs a 'centerline' array");
        }
        for (const json& point : entry["centerline"]) {
            if (!point.is_array() || point.size() != 2 ||
                !point[0].is_number() || !point[1].is_number()) {
                throw ParseError("segment '" + segment.id +
                                 "': centerline points must be [x, y] number pairs");
            }
            segment.centerline.push_back({point[0].get<double>(), point[1].get<double>()});
        }
        if (entry.contains("width")) {
            if (!entry["width"].is_number()) {
                throw ParseError("segment '" + segment.id + "': 'width' must be a number");
            }
            segment.width = entry["width"].get<double>();
        }
        if (entry.contains("regulatory")) {
            if (!entry["regulatory"].is_array()) {
                throw ParseError("segment '" + segment.id + "': 'regulatory' must be a list");
            }
            segment.regulatory = entry["regulatory"];
        }
        segments.push_back(std::move(segment));
    }

    std::vector<RoadEdge> edges;
    if (doc.contains("edges")) {
        if (!doc["edges"].is_array()) {
            throw ParseError("'edges' must be an array");
        }
        edges.reserve(doc["edges"].size());
        for (const json& entry : doc["edges"]) {
            if (!entry.is_object() || !entry.contains("from") || !entry["from"].is_string() ||
                !entry.contains("to") || !entry["to"].is_string() ||
                !entry.contains("kind") || !entry["kind"].is_string()) {
                throw ParseError("every edge needs string 'from', 'to' and 'kind' fields");
            }
            edges.push_back({entry["from"].get<std::string>(), entry["to"].get<std::string>(),
                             road_edge_kind_from_string(entry["kind"].get<std::string>())});
        }
    }

    return RoadGraph(std::move(segments), std::move(edges));
}

std::string serialize_map(const RoadGraph& graph) {
    ordered_json doc;
    doc["segments"] = ordered_json::array();
    for (const RoadSegment& segment : graph.segments()) {
        ordered_json entry;
        entry["id"] = segment.id;
        ordered_json points = ordered_json::array();
        for (const Vec2& p : segment.centerline) {
            points.push_back({p.x, p.y});
        }
        entry["centerline"] = std::move(points);
        if (segment.width) {
            entry["width"] = *segment.width;
        }
        if (!segment.regulatory.is_null()) {
            entry["regulatory"] = segment.regulatory;
        }
        doc["segments"].push_back(std::move(entry));
    }
    doc["edges"] = ordered_json::array();
    for (const RoadEdge& edge : graph.edges()) {
        doc["edges"].push_back({{"from", edge.from}, {"to", edge.to}, {"kind", to_string(edge.kind)}});
    }
    return doc.dump(2) + "\n";
}

std::vector<RoadEdge> detect_overlaps(const RoadGraph& graph, double tolerance) {
    // Pairs already joined by a Consecutive or Adjacent edge touch by
    // construction (shared endpoints, parallel lanes) and are never read as
    // crossings. Declared Overlapping pairs are re-derived, which keeps the
    // operation idempotent under merging.
    std::vector<std::vector<bool>> linked(graph.size(), std::vector<bool>(graph.size(), false));
    for (const RoadEdge& edge : graph.edges()) {
        if (edge.kind == RoadEdgeKind::Overlapping) {
            continue;
        }
        const auto a = static_cast<std::size_t>(graph.index_of(edge.from));
        const auto b = static_cast<std::size_t>(graph.index_of(edge.to));
        linked[a][b] = linked[b][a] = true;
    }

    std::vector<RoadEdge> found;
    for (std::size_t i = 0; i < graph.size(); ++i) {
        for (std::size_t j = i + 1; j < graph.size(); ++j) {
            if (linked[i][j]) continue;
            const RoadSegment& a = graph.segments()[i];
            const RoadSegment& b = graph.segments()[j];
            if (polyline_contact(a.centerline, b.centerline).distance <= tolerance) {
                found.push_back(normalized({a.id, b.id, RoadEdgeKind::Overlapping}));
            }
        }
    }
    std::sort(found.begin(), found.end(), edge_less);
    return found;
}

} // namespace ssg
