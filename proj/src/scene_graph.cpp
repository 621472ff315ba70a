#include "ssg/scene_graph.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <utility>

#include "ssg/errors.hpp"

namespace ssg {

PathCache::PathCache(const RoadGraph& graph, const PathSearchConfig& config) : graph_(&graph) {
    paths_.reserve(graph.size());
    for (const RoadSegment& segment : graph.segments()) {
        paths_.push_back(find_paths(graph, segment.id, config));
    }
}

const std::vector<RoadPath>& PathCache::paths(int segment_index) const {
    return paths_.at(static_cast<std::size_t>(segment_index));
}

const std::vector<RoadPath>& PathCache::paths(std::string_view segment_id) const {
    return paths(graph_->index_of(segment_id));
}

SceneGraph build_scene_graph(const SceneState& scene, const RoadGraph& graph,
                             const MatchConfig& match_config, const PathCache& cache) {
    SceneGraph scene_graph;
    scene_graph.timestamp_ms = scene.timestamp_ms;

    const auto matched = match_scene(scene, graph, match_config);
    if (matched.empty()) {
        return scene_graph;
    }

    std::unordered_map<std::int64_t, const TrafficParticipantState*> states;
    states.reserve(scene.participants.size());
    for (const TrafficParticipantState& state : scene.participants) {
        states.emplace(state.participant_id, &state);
    }

    scene_graph.nodes.reserve(matched.size());
    for (const auto& [participant_id, identities] : matched) {
        const TrafficParticipantState& state = *states.at(participant_id);
        scene_graph.nodes.push_back(
            {participant_id, state.object_class, state.speed(), identities});
    }

    for (const SceneNode& source : scene_graph.nodes) {
        for (const SceneNode& target : scene_graph.nodes) {
            if (source.participant_id == target.participant_id) {
                continue;
            }
            for (const ProjectionIdentity& identity_i : source.identities) {
                const auto& paths_i = cache.paths(identity_i.segment_id);
                for (const ProjectionIdentity& identity_j : target.identities) {
                    std::vector<Relation> relations = relate_pair(
                        identity_i, identity_j, paths_i, cache.paths(identity_j.segment_id), graph);
                    scene_graph.edges.insert(scene_graph.edges.end(),
                                             std::make_move_iterator(relations.begin()),
                                             std::make_move_iterator(relations.end()));
                }
            }
        }
    }

    std::sort(scene_graph.edges.begin(), scene_graph.edges.end(),
              [](const Relation& a, const Relation& b) {
                  if (a.source_id != b.source_id) return a.source_id < b.source_id;
                  if (a.target_id != b.target_id) return a.target_id < b.target_id;
                  if (a.relation_class != b.relation_class) {
                      return static_cast<int>(a.relation_class) < static_cast<int>(b.relation_class);
                  }
                  const double abs_a = std::abs(a.distance());
                  const double abs_b = std::abs(b.distance());
                  if (abs_a != abs_b) return abs_a < abs_b;
                  if (a.segment_a != b.segment_a) return a.segment_a < b.segment_a;
                  return a.segment_b < b.segment_b;
              });
    return scene_graph;
}

SceneGraph build_scene_graph(const SceneState& scene, const RoadGraph& graph,
                             const MatchConfig& match_config,
                             const PathSearchConfig& path_config) {
    return build_scene_graph(scene, graph, match_config, PathCache(graph, path_config));
}

std::vector<SceneGraph> build_recording(const Recording& recording, const RoadGraph& graph,
                                        const MatchConfig& match_config,
                                        const PathSearchConfig& path_config, int jobs) {
    const PathCache cache(graph, path_config);
    std::vector<SceneGraph> graphs(recording.scenes.size());
    if (graphs.empty()) {
        return graphs;
    }

    const int worker_count = std::clamp<int>(jobs, 1, static_cast<int>(graphs.size()));
    if (worker_count == 1) {
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            graphs[i] = build_scene_graph(recording.scenes[i], graph, match_config, cache);
        }
        return graphs;
    }

    // Scenes are independent; workers pull indices from a shared counter and
    // write into pre-sized slots, so the result order never depends on
    // scheduling.
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    const auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= graphs.size()) {
                return;
            }
            try {
                graphs[i] = build_scene_graph(recording.scenes[i], graph, match_config, cache);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                return;
            }
        }
    };

    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(worker_count));
    for (int i = 0; i < worker_count; ++i) {
        workers.emplace_back(worker);
    }
    for (std::thread& thread : workers) {
        thread.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
    return graphs;
}

} // namespace ssg
