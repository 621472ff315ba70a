#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ssg/errors.hpp"
#include "ssg/map_model.hpp"
#include "support/paths.hpp"

using ssg::RoadEdge;
using ssg::RoadEdgeKind;
using ssg::RoadGraph;
using ssg::RoadSegment;
using ssg::Vec2;

namespace {

/// Runs `fn`, requires it to throw `E`, and checks the message mentions `needle`.
template <typename E, typename Fn>
void expect_error(Fn&& fn, const std::string& needle) {
    try {
        fn();
        FAIL_CHECK("expected exception mentioning '" << needle << "', none thrown");
    } catch (const E& e) {
        CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos,
                      "message '" << e.what() << "' lacks '" << needle << "'");
    }
}

RoadSegment seg(std::string id, std::vector<Vec2> points) {
    RoadSegment s;
    s.id = std::move(id);
    s.centerline = std::move(points);
    return s;
}

RoadGraph fixture_graph() {
    return ssg::parse_map(testsupport::read_file(testsupport::fixture_path("fig1_map.json")));
}

/// Independent minimum centerline distance: dense pairwise sampling at 1 cm.
double sampled_min_distance(const RoadSegment& a, const RoadSegment& b) {
    const auto sample = [](const RoadSegment& s) {
        std::vector<Vec2> pts;
        for (std::size_t i = 0; i + 1 < s.centerline.size(); ++i) {
            const Vec2 p = s.centerline[i];
            const Vec2 q = s.centerline[i + 1];
            const double len = std::hypot(q.x - p.x, q.y - p.y);
            const int n = std::max(1, static_cast<int>(std::ceil(len / 0.01)));
            for (int k = 0; k < n; ++k) {
                const double t = static_cast<double>(k) / n;
                pts.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
            }
        }
        pts.push_back(s.centerline.back());
        return pts;
    };
    double best = std::numeric_limits<double>::infinity();
    for (const Vec2& p : sample(a)) {
        for (const Vec2& q : sample(b)) {
            best = std::min(best, std::hypot(p.x - q.x, p.y - q.y));
        }
    }
    return best;
}

} // namespace

TEST_CASE("map: two-segment parse yields lexicographic indices") {
    const RoadGraph g = ssg::parse_map(R"json({
        "segments": [
            { "id": "B", "centerline": [[10, 0], [20, 0]] },
            { "id": "A", "centerline": [[0, 0], [10, 0]] }
        ],
        "edges": [ { "from": "A", "to": "B", "kind": "consecutive" } ]
    })json");

    REQUIRE(g.size() == 2);
    CHECK(g.index_of("A") == 0);
    CHECK(g.index_of("B") == 1);
    CHECK(g.segments()[0].id == "A");
    CHECK(g.segments()[1].id == "B");
    CHECK(g.has_segment("A"));
    CHECK_FALSE(g.has_segment("Z"));
    CHECK(g.segment("A").length == doctest::Approx(10.0));
    CHECK(g.segment(1).id == "B");
    CHECK(g.neighbors("A", RoadEdgeKind::Consecutive) == std::vector<std::string>{"B"});
    CHECK(g.neighbors("B", RoadEdgeKind::Consecutive).empty()); // directed edge
}

TEST_CASE("map: index assignment ignores input order") {
    const char* shuffled = R"json({
        "segments": [
            { "id": "m", "centerline": [[0, 0], [1, 0]] },
            { "id": "a", "centerline": [[0, 1], [1, 1]] },
            { "id": "k", "centerline": [[0, 2], [1, 2]] }
        ],
        "edges": []
    })json";
    const RoadGraph g = ssg::parse_map(shuffled);
    CHECK(g.index_of("a") == 0);
    CHECK(g.index_of("k") == 1);
    CHECK(g.index_of("m") == 2);
}

TEST_CASE("map: edge referencing an unknown segment names it") {
    expect_error<ssg::ValidationError>(
        [] {
            ssg::parse_map(R"json({
                "segments": [ { "id": "A", "centerline": [[0, 0], [10, 0]] } ],
                "edges": [ { "from": "A", "to": "Z", "kind": "consecutive" } ]
            })json");
        },
        "Z");
}

TEST_CASE("map: segment_length sums chord lengths") {
    CHECK(ssg::segment_length(seg("a", {{0, 0}, {10, 0}})) == doctest::Approx(10.0));
    CHECK(ssg::segment_length(seg("b", {{0, 0}, {3, 4}})) == doctest::Approx(5.0));
    CHECK(ssg::segment_length(seg("c", {{0, 0}, {10, 0}, {10, 10}})) == doctest::Approx(20.0));
}

TEST_CASE("map: edge kind names round-trip") {
    for (const RoadEdgeKind kind : {RoadEdgeKind::Consecutive, RoadEdgeKind::Adjacent,
                                    RoadEdgeKind::Overlapping}) {
        CHECK(ssg::road_edge_kind_from_string(ssg::to_string(kind)) == kind);
    }
    expect_error<ssg::ParseError>([] { ssg::road_edge_kind_from_string("diagonal"); },
                                  "diagonal");
}

TEST_CASE("map: symmetric edges are normalized and deduplicated") {
    const RoadGraph g = ssg::parse_map(R"json({
        "segments": [
            { "id": "A", "centerline": [[0, 0], [10, 0]] },
            { "id": "B", "centerline": [[0, 4], [10, 4]] }
        ],
        "edges": [
            { "from": "B", "to": "A", "kind": "adjacent" },
            { "from": "A", "to": "B", "kind": "adjacent" }
        ]
    })json");
    REQUIRE(g.edges().size() == 1);
    CHECK(g.edges()[0] == RoadEdge{"A", "B", RoadEdgeKind::Adjacent});
    CHECK(g.neighbors("A", RoadEdgeKind::Adjacent) == std::vector<std::string>{"B"});
    CHECK(g.neighbors("B", RoadEdgeKind::Adjacent) == std::vector<std::string>{"A"});
}

TEST_CASE("map: fixture graph exposes the expected topology") {
    const RoadGraph g = fixture_graph();
    REQUIRE(g.size() == 6);

    int consecutive = 0;
    int adjacent = 0;
    int overlapping = 0;
    for (const RoadEdge& e : g.edges()) {
        switch (e.kind) {
        case RoadEdgeKind::Consecutive: ++consecutive; break;
        case RoadEdgeKind::Adjacent: ++adjacent; break;
        case RoadEdgeKind::Overlapping: ++overlapping; break;
        }
    }
    CHECK(consecutive == 2);
    CHECK(adjacent == 3);
    CHECK(overlapping == 2);

    CHECK(g.neighbors("D", RoadEdgeKind::Adjacent) == std::vector<std::string>{"E"});
    CHECK(g.neighbors("B", RoadEdgeKind::Overlapping) == std::vector<std::string>{"C"});
    CHECK(g.neighbors("E", RoadEdgeKind::Adjacent) == std::vector<std::string>{"A", "D"});
    CHECK(g.neighbors("A", RoadEdgeKind::Consecutive) == std::vector<std::string>{"B"});
    CHECK(g.neighbors("C", RoadEdgeKind::Consecutive).empty());
    CHECK(g.segment("C").regulatory.is_array());

    // Index-based adjacency mirrors the id-based view.
    const int e = g.index_of("E");
    const auto adj = g.neighbor_indices(e, RoadEdgeKind::Adjacent);
    REQUIRE(adj.size() == 2);
    CHECK(g.segment(adj[0]).id == "A");
    CHECK(g.segment(adj[1]).id == "D");
}

TEST_CASE("map: neighbors of a segment without edges are empty") {
    const RoadGraph g = ssg::parse_map(R"json({
        "segments": [ { "id": "solo", "centerline": [[0, 0], [5, 0]] } ],
        "edges": []
    })json");
    CHECK(g.neighbors("solo", RoadEdgeKind::Consecutive).empty());
    CHECK(g.neighbors("solo", RoadEdgeKind::Adjacent).empty());
    CHECK(g.neighbors("solo", RoadEdgeKind::Overlapping).empty());
}

TEST_CASE("map: serialize/parse round-trip reproduces the graph") {
    const RoadGraph g = fixture_graph();
    const std::string text = ssg::serialize_map(g);
    const RoadGraph back = ssg::parse_map(text);

    REQUIRE(back.size() == g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const RoadSegment& a = g.segments()[i];
        const RoadSegment& b = back.segments()[i];
        CHECK(a.id == b.id);
        CHECK(a.centerline == b.centerline);
        CHECK(a.width == b.width);
        CHECK(a.regulatory == b.regulatory);
    }
    CHECK(back.edges() == g.edges());
    CHECK(ssg::serialize_map(back) == text); // serialization is a fixed point
}

TEST_CASE("map: parse rejects malformed documents") {
    expect_error<ssg::ParseError>([] { ssg::parse_map("not json"); }, "");
    expect_error<ssg::ParseError>([] { ssg::parse_map("{}"); }, "segments");
    expect_error<ssg::ParseError>(
        [] { ssg::parse_map(R"({"segments": [], "edges": 5})"); }, "edges");
    expect_error<ssg::ParseError>(
        [] {
            ssg::parse_map(R"json({
                "segments": [ { "id": "A", "centerline": [[0, 0], [1, 0]],
                                "regulatory": "no-parking" } ],
                "edges": []
            })json");
        },
        "regulatory");
}

TEST_CASE("map: semantic validation names the offending entity") {
    SUBCASE("duplicate segment id") {
        expect_error<ssg::ValidationError>(
            [] {
                ssg::parse_map(R"json({
                    "segments": [
                        { "id": "A", "centerline": [[0, 0], [1, 0]] },
                        { "id": "A", "centerline": [[0, 1], [1, 1]] }
                    ],
                    "edges": []
                })json");
            },
            "A");
    }
    SUBCASE("empty id") {
        expect_error<ssg::ValidationError>(
            [] {
                RoadGraph g({seg("", {{0, 0}, {1, 0}})}, {});
            },
            "id");
    }
    SUBCASE("centerline with fewer than two points") {
        expect_error<ssg::ValidationError>(
            [] {
                RoadGraph g({seg("P", {{0, 0}})}, {});
            },
            "P");
    }
    SUBCASE("coincident consecutive points") {
        expect_error<ssg::ValidationError>(
            [] {
                RoadGraph g({seg("Q", {{0, 0}, {0, 0}, {1, 0}})}, {});
            },
            "Q");
    }
    SUBCASE("non-finite coordinate") {
        expect_error<ssg::ValidationError>(
            [] {
                RoadGraph g({seg("R", {{0, 0}, {std::nan(""), 1}})}, {});
            },
            "R");
    }
    SUBCASE("non-positive width") {
        expect_error<ssg::ValidationError>(
            [] {
                RoadSegment s = seg("W", {{0, 0}, {1, 0}});
                s.width = 0.0;
                RoadGraph g({std::move(s)}, {});
            },
            "W");
    }
    SUBCASE("self edge") {
        expect_error<ssg::ValidationError>(
            [] {
                RoadGraph g({seg("S", {{0, 0}, {1, 0}})},
                            {{"S", "S", RoadEdgeKind::Adjacent}});
            },
            "S");
    }
}

TEST_CASE("map: detect_overlaps finds crossing centerlines") {
    const RoadGraph crossing({seg("ew", {{-10, 0}, {10, 0}}), seg("ns", {{0, -10}, {0, 10}})}, {});
    const auto found = ssg::detect_overlaps(crossing);
    REQUIRE(found.size() == 1);
    CHECK(found[0] == RoadEdge{"ew", "ns", RoadEdgeKind::Overlapping});
}

TEST_CASE("map: detect_overlaps ignores well-separated parallels") {
    const RoadGraph parallel({seg("a", {{0, 0}, {50, 0}}), seg("b", {{0, 10}, {50, 10}})}, {});
    CHECK(ssg::detect_overlaps(parallel).empty());
}

TEST_CASE("map: detect_overlaps sees merging lanes that share an endpoint") {
    const RoadSegment straight = seg("main", {{0, 0}, {10, 0}});
    const RoadSegment ramp = seg("ramp", {{0, 3}, {10, 0}});
    CHECK(sampled_min_distance(straight, ramp) <= 0.5); // independent distance check
    const RoadGraph g({straight, ramp}, {});
    const auto found = ssg::detect_overlaps(g, 0.5);
    REQUIRE(found.size() == 1);
    CHECK(found[0] == RoadEdge{"main", "ramp", RoadEdgeKind::Overlapping});
}

TEST_CASE("map: detect_overlaps honours the tolerance") {
    // Closest approach is exactly 0.45 m.
    const RoadGraph g({seg("lo", {{0, 0}, {20, 0}}), seg("hi", {{0, 0.45}, {20, 0.45}})}, {});
    CHECK(ssg::detect_overlaps(g, 0.4).empty());
    CHECK(ssg::detect_overlaps(g, 0.5).size() == 1);
    CHECK(sampled_min_distance(g.segment(0), g.segment(1)) == doctest::Approx(0.45));
}

TEST_CASE("map: detect_overlaps skips consecutive and adjacent pairs") {
    const RoadGraph g({seg("a", {{0, 0}, {10, 0}}),   // a -> b share the point (10, 0)
                       seg("b", {{10, 0}, {20, 0}})},
                      {{"a", "b", RoadEdgeKind::Consecutive}});
    CHECK(ssg::detect_overlaps(g).empty());

    const RoadGraph h({seg("l", {{0, 0}, {10, 0}}), seg("r", {{0, 0.3}, {10, 0.3}})},
                      {{"l", "r", RoadEdgeKind::Adjacent}});
    CHECK(ssg::detect_overlaps(h).empty());
}

TEST_CASE("map: detect_overlaps is idempotent under merging") {
    const RoadGraph g = fixture_graph();
    const auto found = ssg::detect_overlaps(g);

    // Every derived edge is already declared in the fixture, so merging the
    // result changes nothing.
    for (const RoadEdge& e : found) {
        CHECK(std::find(g.edges().begin(), g.edges().end(), e) != g.edges().end());
    }

    std::vector<RoadEdge> merged = g.edges();
    merged.insert(merged.end(), found.begin(), found.end());
    const RoadGraph remerged(g.segments(), merged);
    CHECK(remerged.edges() == g.edges());
    CHECK(ssg::detect_overlaps(remerged) == found);
}

TEST_CASE("map: detection result does not depend on segment listing order") {
    const std::vector<RoadSegment> forward = {seg("ew", {{-10, 0}, {10, 0}}),
                                              seg("ns", {{0, -10}, {0, 10}})};
    std::vector<RoadSegment> reversed = {forward[1], forward[0]};
    const auto a = ssg::detect_overlaps(RoadGraph(forward, {}));
    const auto b = ssg::detect_overlaps(RoadGraph(reversed, {}));
    CHECK(a == b);
}
