// Command-line front-end: build semantic scene graphs from an object-list
// recording and a road map, audit maps, or print relation statistics.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ssg/errors.hpp"
#include "ssg/export.hpp"
#include "ssg/ingest.hpp"
#include "ssg/map_model.hpp"
#include "ssg/matching.hpp"
#include "ssg/relations.hpp"
#include "ssg/scene_graph.hpp"

namespace fs = std::filesystem;

namespace {

int default_jobs() {
    const unsigned hardware = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hardware, 1u, 8u));
}

struct RunConfig {
    std::string map_path;
    std::string objects_path;
    std::string out_dir = "out";
    std::string format = "both";
    std::optional<std::int64_t> from_ms;
    std::optional<std::int64_t> to_ms;
    ssg::MatchConfig match;
    ssg::PathSearchConfig path;
    int jobs = default_jobs();
};

/// Flag storage plus the CLI option handles needed to tell "explicitly
/// given" apart from "default": flags override config-file values only when
/// actually present on the command line.
struct Flags {
    std::string config;
    std::string map;
    std::string objects;
    std::string out;
    std::string format;
    std::int64_t from_ms = 0;
    std::int64_t to_ms = 0;
    double sigma_d = 0.0;
    double sigma_p = 0.0;
    double max_lateral = 0.0;
    double min_prob = 0.0;
    double max_path_length = 0.0;
    int jobs = 0;

    CLI::Option* map_opt = nullptr;
    CLI::Option* objects_opt = nullptr;
    CLI::Option* out_opt = nullptr;
    CLI::Option* format_opt = nullptr;
    CLI::Option* from_opt = nullptr;
    CLI::Option* to_opt = nullptr;
    CLI::Option* sigma_d_opt = nullptr;
    CLI::Option* sigma_p_opt = nullptr;
    CLI::Option* max_lateral_opt = nullptr;
    CLI::Option* min_prob_opt = nullptr;
    CLI::Option* max_path_length_opt = nullptr;
    CLI::Option* jobs_opt = nullptr;
};

void add_common_flags(CLI::App* cmd, Flags& flags, bool with_output) {
    cmd->add_option("--config", flags.config, "JSON config file; explicit flags win");
    flags.map_opt = cmd->add_option("--map", flags.map, "Road map JSON file");
    flags.objects_opt = cmd->add_option("--objects", flags.objects, "Object-list CSV file");
    if (with_output) {
        flags.out_opt = cmd->add_option("--out", flags.out, "Output directory (default: out)");
        flags.format_opt = cmd->add_option("--format", flags.format, "Export format")
                               ->check(CLI::IsMember({"dot", "tudataset", "both"}));
    }
    flags.from_opt = cmd->add_option("--from-ms", flags.from_ms, "First timestamp (inclusive)");
    flags.to_opt = cmd->add_option("--to-ms", flags.to_ms, "Last timestamp (inclusive)");
    flags.sigma_d_opt = cmd->add_option("--sigma-d", flags.sigma_d, "Lateral matching std dev (m)");
    flags.sigma_p_opt = cmd->add_option("--sigma-p", flags.sigma_p, "Orientation matching std dev");
    flags.max_lateral_opt =
        cmd->add_option("--max-lateral", flags.max_lateral, "Vehicle relevance radius (m)");
    flags.min_prob_opt =
        cmd->add_option("--min-prob", flags.min_prob, "Minimum matching probability");
    flags.max_path_length_opt =
        cmd->add_option("--max-path-length", flags.max_path_length, "Path search bound (m)");
    flags.jobs_opt = cmd->add_option("--jobs", flags.jobs, "Worker threads");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ssg::IoError("cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

void apply_config_file(RunConfig& config, const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ssg::ParseError("config '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) {
        throw ssg::ParseError("config '" + path + "' must be a JSON object");
    }
    for (const auto& [key, value] : doc.items()) {
        try {
            if (key == "map") config.map_path = value.get<std::string>();
            else if (key == "objects") config.objects_path = value.get<std::string>();
            else if (key == "out") config.out_dir = value.get<std::string>();
            else if (key == "format") config.format = value.get<std::string>();
            else if (key == "from_ms") config.from_ms = value.get<std::int64_t>();
            else if (key == "to_ms") config.to_ms = value.get<std::int64_t>();
            else if (key == "sigma_d") config.match.match_params.sigma_d = value.get<double>();
            else if (key == "sigma_p") config.match.match_params.sigma_p = value.get<double>();
            else if (key == "max_lateral") config.match.max_lateral_distance = value.get<double>();
            else if (key == "min_prob") config.match.min_probability = value.get<double>();
            else if (key == "pedestrian_radius") config.match.pedestrian_radius = value.get<double>();
            else if (key == "pedestrian_max_segments")
                config.match.pedestrian_max_segments = value.get<int>();
            else if (key == "max_path_length") config.path.max_total_length = value.get<double>();
            else if (key == "jobs") config.jobs = value.get<int>();
            else throw ssg::ParseError("config '" + path + "': unknown key '" + key + "'");
        } catch (const nlohmann::json::exception& e) {
            throw ssg::ParseError("config '" + path + "': bad value for '" + key + "': " + e.what());
        }
    }
    if (config.format != "dot" && config.format != "tudataset" && config.format != "both") {
        throw ssg::ParseError("config '" + path + "': format must be dot, tudataset or both");
    }
}

RunConfig merge(const Flags& flags) {
    RunConfig config;
    if (!flags.config.empty()) {
        apply_config_file(config, flags.config);
    }
    if (flags.map_opt && flags.map_opt->count() > 0) config.map_path = flags.map;
    if (flags.objects_opt && flags.objects_opt->count() > 0) config.objects_path = flags.objects;
    if (flags.out_opt && flags.out_opt->count() > 0) config.out_dir = flags.out;
    if (flags.format_opt && flags.format_opt->count() > 0) config.format = flags.format;
    if (flags.from_opt && flags.from_opt->count() > 0) config.from_ms = flags.from_ms;
    if (flags.to_opt && flags.to_opt->count() > 0) config.to_ms = flags.to_ms;
    if (flags.sigma_d_opt && flags.sigma_d_opt->count() > 0)
        config.match.match_params.sigma_d = flags.sigma_d;
    if (flags.sigma_p_opt && flags.sigma_p_opt->count() > 0)
        config.match.match_params.sigma_p = flags.sigma_p;
    if (flags.max_lateral_opt && flags.max_lateral_opt->count() > 0)
        config.match.max_lateral_distance = flags.max_lateral;
    if (flags.min_prob_opt && flags.min_prob_opt->count() > 0)
        config.match.min_probability = flags.min_prob;
    if (flags.max_path_length_opt && flags.max_path_length_opt->count() > 0)
        config.path.max_total_length = flags.max_path_length;
    if (flags.jobs_opt && flags.jobs_opt->count() > 0) config.jobs = flags.jobs;

    if (config.map_path.empty()) {
        throw ssg::ValidationError("--map is required (flag or config file)");
    }
    if (config.jobs < 1) {
        throw ssg::ValidationError("--jobs must be at least 1");
    }
    if (config.from_ms && config.to_ms && *config.from_ms > *config.to_ms) {
        throw ssg::ValidationError("--from-ms must not exceed --to-ms");
    }
    return config;
}

ssg::Recording load_recording(const RunConfig& config, std::size_t* dropped_rows) {
    if (config.objects_path.empty()) {
        throw ssg::ValidationError("--objects is required (flag or config file)");
    }
    ssg::Recording recording = ssg::parse_object_list(read_file(config.objects_path));
    ssg::Recording selected;
    std::size_t kept_rows = 0;
    std::size_t total_rows = 0;
    for (ssg::SceneState& scene : recording.scenes) {
        total_rows += scene.participants.size();
        if (config.from_ms && scene.timestamp_ms < *config.from_ms) continue;
        if (config.to_ms && scene.timestamp_ms > *config.to_ms) continue;
        kept_rows += scene.participants.size();
        selected.scenes.push_back(std::move(scene));
    }
    if (dropped_rows) {
        *dropped_rows = total_rows - kept_rows;
    }
    return selected;
}

struct EdgeCounts {
    std::size_t longitudinal = 0;
    std::size_t lateral = 0;
    std::size_t intersecting = 0;
};

EdgeCounts count_edges(const std::vector<ssg::SceneGraph>& graphs) {
    EdgeCounts counts;
    for (const ssg::SceneGraph& graph : graphs) {
        for (const ssg::Relation& edge : graph.edges) {
            switch (edge.relation_class) {
            case ssg::RelationClass::Longitudinal: ++counts.longitudinal; break;
            case ssg::RelationClass::Lateral: ++counts.lateral; break;
            case ssg::RelationClass::Intersecting: ++counts.intersecting; break;
            }
        }
    }
    return counts;
}

int run_build(const RunConfig& config) {
    const ssg::RoadGraph graph = ssg::parse_map(read_file(config.map_path));
    const ssg::Recording recording = load_recording(config, nullptr);
    if (recording.scenes.empty()) {
        std::cerr << "warning: no scenes in the selected timestamp range\n";
    }
    const std::vector<ssg::SceneGraph> graphs =
        ssg::build_recording(recording, graph, config.match, config.path, config.jobs);

    std::size_t participants = 0;
    std::size_t matched = 0;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        participants += recording.scenes[i].participants.size();
        matched += graphs[i].nodes.size();
    }

    const fs::path out_dir(config.out_dir);
    fs::create_directories(out_dir);
    std::size_t dot_files = 0;
    if (config.format == "dot" || config.format == "both") {
        for (const ssg::SceneGraph& scene : graphs) {
            const fs::path path =
                out_dir / ("scene_" + std::to_string(scene.timestamp_ms) + ".dot");
            std::ofstream out(path, std::ios::binary);
            if (!out) {
                throw ssg::IoError("cannot open '" + path.string() + "' for writing");
            }
            out << ssg::to_dot(scene);
            if (!out.flush()) {
                throw ssg::IoError("failed to write '" + path.string() + "'");
            }
            ++dot_files;
        }
    }
    bool dataset_written = false;
    if ((config.format == "tudataset" || config.format == "both") && !graphs.empty()) {
        ssg::export_dataset(graphs, graph, out_dir / "ssg");
        dataset_written = true;
    }

    const EdgeCounts counts = count_edges(graphs);
    std::cout << "scenes processed: " << graphs.size() << "\n";
    std::cout << "participants: " << matched << " matched, " << (participants - matched)
              << " filtered\n";
    std::cout << "edges: longitudinal " << counts.longitudinal << ", lateral " << counts.lateral
              << ", intersecting " << counts.intersecting << "\n";
    if (config.format == "dot" || config.format == "both") {
        std::cout << "wrote " << dot_files << " dot file(s) to " << out_dir.string() << "\n";
    }
    if (dataset_written) {
        std::cout << "wrote dataset prefix " << (out_dir / "ssg").string() << "\n";
    }
    return 0;
}

int run_validate_map(const std::string& map_path) {
    const ssg::RoadGraph graph = ssg::parse_map(read_file(map_path));

    std::size_t consecutive = 0;
    std::size_t adjacent = 0;
    std::size_t overlapping = 0;
    std::size_t missing_contact = 0;
    for (const ssg::RoadEdge& edge : graph.edges()) {
        switch (edge.kind) {
        case ssg::RoadEdgeKind::Consecutive: ++consecutive; break;
        case ssg::RoadEdgeKind::Adjacent: ++adjacent; break;
        case ssg::RoadEdgeKind::Overlapping: {
            ++overlapping;
            const ssg::PolylineContact contact = ssg::polyline_contact(
                graph.segment(edge.from).centerline, graph.segment(edge.to).centerline);
            if (contact.distance > ssg::kOverlapTolerance) {
                std::cerr << "error: segments '" << edge.from << "' and '" << edge.to
                          << "' are declared overlapping but stay " << contact.distance
                          << " m apart\n";
                ++missing_contact;
            }
            break;
        }
        }
    }

    std::vector<ssg::RoadEdge> undeclared;
    for (ssg::RoadEdge edge : ssg::detect_overlaps(graph)) {
        const auto& declared = graph.edges();
        if (std::find(declared.begin(), declared.end(), edge) == declared.end()) {
            undeclared.push_back(std::move(edge));
        }
    }
    for (const ssg::RoadEdge& edge : undeclared) {
        std::cerr << "warning: segments '" << edge.from << "' and '" << edge.to
                  << "' touch within " << ssg::kOverlapTolerance
                  << " m but share no edge\n";
    }

    std::cout << "segments: " << graph.size() << "\n";
    std::cout << "edges: consecutive " << consecutive << ", adjacent " << adjacent
              << ", overlapping " << overlapping << "\n";
    std::cout << "declared overlaps without geometric contact: " << missing_contact << "\n";
    std::cout << "geometric contacts without declared edge: " << undeclared.size() << "\n";
    if (missing_contact > 0) {
        return 1;
    }
    std::cout << "ok\n";
    return 0;
}

void print_histogram(const std::map<long long, std::size_t>& bins) {
    if (bins.empty()) {
        std::cout << "  (none)\n";
        return;
    }
    for (const auto& [bin, count] : bins) {
        std::cout << "  [" << bin * 10 << ", " << (bin + 1) * 10 << "): " << count << "\n";
    }
}

long long histogram_bin(double value) {
    return static_cast<long long>(std::floor(value / 10.0));
}

int run_stats(const RunConfig& config) {
    const ssg::RoadGraph graph = ssg::parse_map(read_file(config.map_path));
    const ssg::Recording recording = load_recording(config, nullptr);
    const std::vector<ssg::SceneGraph> graphs =
        ssg::build_recording(recording, graph, config.match, config.path, config.jobs);

    const EdgeCounts counts = count_edges(graphs);
    std::map<long long, std::size_t> d_f_bins;
    std::map<long long, std::size_t> d_ip_bins;
    std::map<std::size_t, std::size_t> identity_counts;
    for (const ssg::SceneGraph& scene : graphs) {
        for (const ssg::SceneNode& node : scene.nodes) {
            ++identity_counts[node.identities.size()];
        }
        for (const ssg::Relation& edge : scene.edges) {
            if (edge.relation_class == ssg::RelationClass::Intersecting) {
                ++d_ip_bins[histogram_bin(edge.d_ip.value())];
            } else {
                ++d_f_bins[histogram_bin(edge.d_F.value())];
            }
        }
    }

    std::cout << "scenes: " << graphs.size() << "\n";
    std::cout << "relation classes:\n";
    std::cout << "  longitudinal: " << counts.longitudinal << "\n";
    std::cout << "  lateral: " << counts.lateral << "\n";
    std::cout << "  intersecting: " << counts.intersecting << "\n";
    std::cout << "d_F histogram (10 m bins):\n";
    print_histogram(d_f_bins);
    std::cout << "d_ip histogram (10 m bins):\n";
    print_histogram(d_ip_bins);
    std::cout << "identities per participant:\n";
    if (identity_counts.empty()) {
        std::cout << "  (none)\n";
    }
    for (const auto& [identities, nodes] : identity_counts) {
        std::cout << "  " << identities << ": " << nodes << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semantic scene graph builder for traffic recordings"};
    app.require_subcommand(1);

    Flags build_flags;
    CLI::App* build_cmd =
        app.add_subcommand("build", "Build per-timestep scene graphs and export them");
    add_common_flags(build_cmd, build_flags, /*with_output=*/true);

    std::string validate_map_path;
    CLI::App* validate_cmd = app.add_subcommand("validate-map", "Audit a road map file");
    validate_cmd->add_option("--map", validate_map_path, "Road map JSON file")->required();

    Flags stats_flags;
    CLI::App* stats_cmd =
        app.add_subcommand("stats", "Print relation statistics for a recording");
    add_common_flags(stats_cmd, stats_flags, /*with_output=*/false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (build_cmd->parsed()) {
            return run_build(merge(build_flags));
        }
        if (validate_cmd->parsed()) {
            return run_validate_map(validate_map_path);
        }
        if (stats_cmd->parsed()) {
            return run_stats(merge(stats_flags));
        }
    } catch (const ssg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
