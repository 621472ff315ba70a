#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ssg/map_model.hpp"
#include "ssg/scene_graph.hpp"

namespace ssg {

/// Numeric view of a batch of scene graphs: COO edge list over global
/// 1-based node indices, per-node and per-edge attribute rows (row k of
/// edge_attributes describes row k of a_coo), and the per-node graph
/// indicator. Graphs are numbered by position in the batch, so an empty
/// graph leaves a gap in the indicator numbering.
struct NumericExport {
    std::vector<std::array<std::int64_t, 2>> a_coo;
    std::vector<std::array<double, 6>> node_attributes;
    std::vector<std::array<double, 11>> edge_attributes;
    std::vector<std::int64_t> graph_indicator;
};

/// Serialize one scene graph as a directed DOT document. Node statements
/// carry participant id, class and speed; edge statements carry the
/// relation class and its full attribute set. Deterministic.
std::string to_dot(const SceneGraph& graph);

/// Node attribute row: [δ_car, δ_pedestrian, δ_bike, δ_truck, δ_other,
/// speed] — a one-hot class encoding followed by the absolute velocity.
std::array<double, 6> node_vector(const SceneNode& node);

/// Edge attribute row: [δ_lon, δ_lat, δ_int, d_F, d_ip, a, d_t_i, phi_i,
/// b, d_t_j, phi_j]. The distance not carried by the relation is encoded
/// 0.0 (the one-hot prefix disambiguates); a and b are the integer segment
/// indices of the road graph.
std::array<double, 11> edge_vector(const Relation& relation, const RoadGraph& graph);

/// Assemble the numeric view of a graph batch.
NumericExport build_numeric_export(std::span<const SceneGraph> graphs, const RoadGraph& graph);

/// Write the four-file numeric dataset `<prefix>_A.txt`,
/// `<prefix>_graph_indicator.txt`, `<prefix>_node_attributes.txt`,
/// `<prefix>_edge_attributes.txt`. `prefix` may carry a directory part.
/// Decimals use 6 fraction digits, locale-independent; pair/row elements
/// are joined with ", ".
void export_dataset(std::span<const SceneGraph> graphs, const RoadGraph& graph,
                    const std::filesystem::path& prefix);

} // namespace ssg
