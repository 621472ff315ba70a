#include "ssg/export.hpp"

#include <charconv>
#include <fstream>
#include <string_view>
#include <unordered_map>

#include "ssg/errors.hpp"

namespace ssg {

namespace {

/// Fixed six fraction digits, locale-independent.
std::string format_decimal(double value) {
    std::array<char, 64> buffer;
    const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                                         std::chars_format::fixed, 6);
    return std::string(buffer.data(), ptr);
}

std::string dot_quote(std::string_view text) {
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\') {
            quoted += '\\';
        }
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

template <std::size_t N>
void write_rows(const std::filesystem::path& path,
                const std::vector<std::array<double, N>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) {
                out << ", ";
            }
            out << format_decimal(row[i]);
        }
        out << '\n';
    }
    if (!out.flush()) {
        throw IoError("failed to write '" + path.string() + "'");
    }
}

} // namespace

std::string to_dot(const SceneGraph& graph) {
    const std::string name = "scene_t" + std::to_string(graph.timestamp_ms);
    std::string dot = "digraph ";
    // A leading minus sign (negative timestamp) is not a bare DOT identifier.
    dot += graph.timestamp_ms < 0 ? dot_quote(name) : name;
    dot += " {\n";
    for (const SceneNode& node : graph.nodes) {
        dot += "  " + dot_quote("v" + std::to_string(node.participant_id));
        dot += " [participant_id=" + std::to_string(node.participant_id);
        dot += ", class=" + dot_quote(to_string(node.object_class));
        dot += ", speed=" + format_decimal(node.speed) + "];\n";
    }
    for (const Relation& edge : graph.edges) {
        dot += "  " + dot_quote("v" + std::to_string(edge.source_id));
        dot += " -> " + dot_quote("v" + std::to_string(edge.target_id));
        dot += " [relation=" + dot_quote(to_string(edge.relation_class));
        if (edge.relation_class == RelationClass::Intersecting) {
            dot += ", d_ip=" + format_decimal(edge.d_ip.value());
        } else {
            dot += ", d_F=" + format_decimal(edge.d_F.value());
        }
        dot += ", a=" + dot_quote(edge.segment_a);
        dot += ", d_t_i=" + format_decimal(edge.d_t_i);
        dot += ", phi_i=" + format_decimal(edge.phi_i);
        dot += ", b=" + dot_quote(edge.segment_b);
        dot += ", d_t_j=" + format_decimal(edge.d_t_j);
        dot += ", phi_j=" + format_decimal(edge.phi_j);
        dot += "];\n";
    }
    dot += "}\n";
    return dot;
}

std::array<double, 6> node_vector(const SceneNode& node) {
    std::array<double, 6> row{0.0, 0.0, 0.0, 0.0, 0.0, node.speed};
    switch (node.object_class) {
    case ObjectClass::Car: row[0] = 1.0; break;
    case ObjectClass::Pedestrian: row[1] = 1.0; break;
    case ObjectClass::Bike: row[2] = 1.0; break;
    case ObjectClass::Truck: row[3] = 1.0; break;
    case ObjectClass::Other: row[4] = 1.0; break;
    }
    return row;
}

std::array<double, 11> edge_vector(const Relation& relation, const RoadGraph& graph) {
    std::array<double, 11> row{};
    switch (relation.relation_class) {
    case RelationClass::Longitudinal: row[0] = 1.0; break;
    case RelationClass::Lateral: row[1] = 1.0; break;
    case RelationClass::Intersecting: row[2] = 1.0; break;
    }
    row[3] = relation.d_F.value_or(0.0);
    row[4] = relation.d_ip.value_or(0.0);
    row[5] = static_cast<double>(graph.index_of(relation.segment_a));
    row[6] = relation.d_t_i;
    row[7] = relation.phi_i;
    row[8] = static_cast<double>(graph.index_of(relation.segment_b));
    row[9] = relation.d_t_j;
    row[10] = relation.phi_j;
    return row;
}

NumericExport build_numeric_export(std::span<const SceneGraph> graphs, const RoadGraph& graph) {
    NumericExport data;
    std::int64_t next_node = 1; // global node indices are 1-based
    std::int64_t graph_number = 0;
    for (const SceneGraph& scene : graphs) {
        ++graph_number;
        std::unordered_map<std::int64_t, std::int64_t> node_index;
        node_index.reserve(scene.nodes.size());
        for (const SceneNode& node : scene.nodes) {
            node_index.emplace(node.participant_id, next_node++);
            data.node_attributes.push_back(node_vector(node));
            data.graph_indicator.push_back(graph_number);
        }
        for (const Relation& edge : scene.edges) {
            data.a_coo.push_back({node_index.at(edge.source_id), node_index.at(edge.target_id)});
            data.edge_attributes.push_back(edge_vector(edge, graph));
        }
    }
    return data;
}

void export_dataset(std::span<const SceneGraph> graphs, const RoadGraph& graph,
                    const std::filesystem::path& prefix) {
    if (graphs.empty()) {
        throw ValidationError("cannot export an empty graph batch");
    }
    const NumericExport data = build_numeric_export(graphs, graph);
    const std::string stem = prefix.string();

    {
        const std::filesystem::path path = stem + "_A.txt";
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw IoError("cannot open '" + path.string() + "' for writing");
        }
        for (const auto& [i, j] : data.a_coo) {
            out << i << ", " << j << '\n';
        }
        if (!out.flush()) {
            throw IoError("failed to write '" + path.string() + "'");
        }
    }
    {
        const std::filesystem::path path = stem + "_graph_indicator.txt";
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw IoError("cannot open '" + path.string() + "' for writing");
        }
        for (std::int64_t number : data.graph_indicator) {
            out << number << '\n';
        }
        if (!out.flush()) {
            throw IoError("failed to write '" + path.string() + "'");
        }
    }
    write_rows(stem + "_node_attributes.txt", data.node_attributes);
    write_rows(stem + "_edge_attributes.txt", data.edge_attributes);
}

} // namespace ssg
