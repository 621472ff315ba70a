#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ssg/ingest.hpp"
#include "ssg/map_model.hpp"
#include "ssg/matching.hpp"
#include "support/paths.hpp"

using ssg::MatchConfig;
using ssg::ObjectClass;
using ssg::ProjectionIdentity;
using ssg::RoadGraph;
using ssg::RoadSegment;
using ssg::TrafficParticipantState;
using ssg::Vec2;

namespace {

constexpr double kPi = std::numbers::pi;

TrafficParticipantState participant(std::int64_t id, ObjectClass cls, double x, double y,
                                    double psi) {
    TrafficParticipantState s;
    s.participant_id = id;
    s.object_class = cls;
    s.x = x;
    s.y = y;
    s.psi = psi;
    s.vx = 1.0;
    s.width = 0.6;
    s.length = 0.8;
    return s;
}

RoadSegment seg(std::string id, std::vector<Vec2> points) {
    RoadSegment s;
    s.id = std::move(id);
    s.centerline = std::move(points);
    return s;
}

/// Eastbound lanes stacked at the given y offsets, named lane<y-index>.
RoadGraph parallel_lanes(const std::vector<double>& offsets) {
    std::vector<RoadSegment> segments;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        segments.push_back(seg("lane" + std::to_string(i),
                               {{-50, offsets[i]}, {50, offsets[i]}}));
    }
    return RoadGraph(std::move(segments), {});
}

} // namespace

TEST_CASE("matching: centered aligned vehicle yields one certain identity") {
    const RoadGraph g = parallel_lanes({0.0});
    const auto ids = ssg::match_participant(participant(1, ObjectClass::Car, 5, 0, 0), g, {});
    REQUIRE(ids.size() == 1);
    CHECK(ids[0].participant_id == 1);
    CHECK(ids[0].segment_id == "lane0");
    CHECK(ids[0].probability == 1.0);
    CHECK(ids[0].projection.s == doctest::Approx(55.0));
    CHECK(ids[0].projection.d_t == doctest::Approx(0.0));
    CHECK(ids[0].projection.phi == doctest::Approx(0.0));
}

TEST_CASE("matching: ambiguous pose keeps every candidate, farthest scores lowest") {
    // Two straight lanes flanking the vehicle plus a skewed distant lane.
    std::vector<RoadSegment> segments = {
        seg("K", {{-20, 1}, {20, 1}}),
        seg("L", {{-20, -1.2}, {20, -1.2}}),
        seg("M", {{-20.0 * std::cos(0.8), -4.0 - 20.0 * std::sin(0.8)},
                  {20.0 * std::cos(0.8), -4.0 + 20.0 * std::sin(0.8)}}),
    };
    const RoadGraph g(std::move(segments), {});
    const auto ids = ssg::match_participant(participant(1, ObjectClass::Car, 0, 0, 0), g, {});

    REQUIRE(ids.size() == 3);
    double p_k = 0, p_l = 0, p_m = 0;
    for (const ProjectionIdentity& id : ids) {
        CHECK(std::abs(id.projection.d_t) <= 5.0);
        // The stored probability is exactly the Gaussian of the stored projection.
        CHECK(id.probability ==
              doctest::Approx(ssg::matching_probability(id.projection.d_t, id.projection.phi, {}))
                  .epsilon(1e-12));
        if (id.segment_id == "K") p_k = id.probability;
        if (id.segment_id == "L") p_l = id.probability;
        if (id.segment_id == "M") p_m = id.probability;
    }
    CHECK(p_k > p_m);
    CHECK(p_l > p_m);

    // Sorted by descending probability.
    CHECK(ids[0].probability >= ids[1].probability);
    CHECK(ids[1].probability >= ids[2].probability);
    CHECK(ids[2].segment_id == "M");
}

TEST_CASE("matching: equal probabilities order by segment id") {
    const RoadGraph g({seg("north", {{-50, 1}, {50, 1}}), seg("south", {{-50, -1}, {50, -1}})},
                      {});
    const auto ids = ssg::match_participant(participant(1, ObjectClass::Car, 0, 0, 0), g, {});
    REQUIRE(ids.size() == 2);
    CHECK(ids[0].probability == ids[1].probability);
    CHECK(ids[0].segment_id == "north");
    CHECK(ids[1].segment_id == "south");
}

TEST_CASE("matching: vehicle lateral threshold is a hard cutoff") {
    MatchConfig config;
    config.min_probability = 1e-9; // isolate the distance test from the probability cutoff

    const RoadGraph near(std::vector<RoadSegment>{seg("a", {{-50, 4.9}, {50, 4.9}})}, {});
    CHECK(ssg::match_participant(participant(1, ObjectClass::Car, 0, 0, 0), near, config).size() ==
          1);

    const RoadGraph far(std::vector<RoadSegment>{seg("a", {{-50, 5.1}, {50, 5.1}})}, {});
    CHECK(ssg::match_participant(participant(1, ObjectClass::Car, 0, 0, 0), far, config).empty());
}

TEST_CASE("matching: vehicle candidates below min_probability are dropped") {
    // 4 m offset: inside the lateral threshold, but P ≈ 0.0285 < 0.05.
    const RoadGraph g(std::vector<RoadSegment>{seg("a", {{-50, 4}, {50, 4}})}, {});
    const auto dropped = ssg::match_participant(participant(1, ObjectClass::Car, 0, 0, 0), g, {});
    CHECK(dropped.empty());

    MatchConfig relaxed;
    relaxed.min_probability = 0.01;
    const auto kept =
        ssg::match_participant(participant(1, ObjectClass::Car, 0, 0, 0), g, relaxed);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].probability == doctest::Approx(std::exp(-16.0 / 4.5)));
}

TEST_CASE("matching: pedestrians ignore orientation") {
    const RoadGraph g(std::vector<RoadSegment>{seg("walk", {{-50, 1}, {50, 1}})}, {});
    // Standing perpendicular to the lane, 1 m from the centerline.
    const auto ids =
        ssg::match_participant(participant(7, ObjectClass::Pedestrian, 0, 0, kPi / 2), g, {});
    REQUIRE(ids.size() == 1);
    CHECK(ids[0].probability == doctest::Approx(std::exp(-1.0 / 4.5)).epsilon(1e-12));

    // Any yaw gives the identical probability.
    for (const double psi : {-kPi, -1.0, 0.3, kPi / 2}) {
        const auto again =
            ssg::match_participant(participant(7, ObjectClass::Pedestrian, 0, 0, psi), g, {});
        REQUIRE(again.size() == 1);
        CHECK(again[0].probability == ids[0].probability);
    }

    // A vehicle with the same perpendicular pose scores strictly lower.
    const auto vehicle =
        ssg::match_participant(participant(8, ObjectClass::Car, 0, 0, kPi / 2), g, {});
    REQUIRE(vehicle.size() == 1);
    CHECK(vehicle[0].probability < ids[0].probability);
}

TEST_CASE("matching: pedestrian radius is tighter than the vehicle threshold") {
    const RoadGraph near(std::vector<RoadSegment>{seg("a", {{-50, 2.9}, {50, 2.9}})}, {});
    CHECK(ssg::match_participant(participant(1, ObjectClass::Pedestrian, 0, 0, 0), near, {})
              .size() == 1);

    const RoadGraph far(std::vector<RoadSegment>{seg("a", {{-50, 3.1}, {50, 3.1}})}, {});
    CHECK(ssg::match_participant(participant(1, ObjectClass::Pedestrian, 0, 0, 0), far, {})
              .empty());
    // The same offset is fine for a car.
    CHECK(ssg::match_participant(participant(1, ObjectClass::Car, 0, 0, 0), far, {}).size() == 1);
}

TEST_CASE("matching: pedestrians keep the nearest segments only") {
    const RoadGraph g = parallel_lanes({-2.0, -1.0, 0.0, 1.0, 2.0});
    const auto ids =
        ssg::match_participant(participant(3, ObjectClass::Pedestrian, 5, 0.1, 0), g, {});
    REQUIRE(ids.size() == 3); // pedestrian_max_segments
    // Nearest by |d_t|: lane2 (0.1 m), lane3 (0.9 m), lane1 (1.1 m).
    CHECK(ids[0].segment_id == "lane2");
    CHECK(ids[1].segment_id == "lane3");
    CHECK(ids[2].segment_id == "lane1");
    for (const auto& id : ids) {
        CHECK(std::abs(id.projection.d_t) <= 3.0);
    }
}

TEST_CASE("matching: pedestrians have no probability cutoff") {
    MatchConfig config;
    config.match_params.sigma_d = 0.5; // makes 2.9 m offset astronomically unlikely
    const RoadGraph g(std::vector<RoadSegment>{seg("a", {{-50, 2.9}, {50, 2.9}})}, {});

    const auto ped =
        ssg::match_participant(participant(1, ObjectClass::Pedestrian, 0, 0, 0), g, config);
    REQUIRE(ped.size() == 1);
    CHECK(ped[0].probability < config.min_probability);

    const auto car = ssg::match_participant(participant(1, ObjectClass::Car, 0, 0, 0), g, config);
    CHECK(car.empty()); // vehicles do get pruned
}

TEST_CASE("matching: match_scene drops unmatched participants") {
    const RoadGraph g = parallel_lanes({0.0});
    ssg::SceneState scene;
    scene.timestamp_ms = 42;
    scene.participants = {
        participant(1, ObjectClass::Car, 0, 0, 0),
        participant(2, ObjectClass::Car, 0, 50, 0), // 50 m from any lane
    };
    const auto mapping = ssg::match_scene(scene, g, {});
    REQUIRE(mapping.size() == 1);
    CHECK(mapping.count(1) == 1);
    CHECK(mapping.count(2) == 0);
}

TEST_CASE("matching: empty scene yields an empty mapping") {
    const RoadGraph g = parallel_lanes({0.0});
    CHECK(ssg::match_scene(ssg::SceneState{}, g, {}).empty());
}

TEST_CASE("matching: fixture scene produces six identities over five vehicles") {
    const RoadGraph g =
        ssg::parse_map(testsupport::read_file(testsupport::fixture_path("fig1_map.json")));
    const ssg::Recording rec = ssg::parse_object_list(
        testsupport::read_file(testsupport::fixture_path("fig3_objects.csv")));
    const auto mapping = ssg::match_scene(ssg::scene_at(rec, 0), g, {});

    REQUIRE(mapping.size() == 5);
    std::size_t total = 0;
    for (const auto& [id, identities] : mapping) {
        total += identities.size();
    }
    CHECK(total == 6);

    // Vehicle 1 is halfway between lanes A and E: two equal candidates,
    // ordered by id on the exact tie.
    const auto& v1 = mapping.at(1);
    REQUIRE(v1.size() == 2);
    CHECK(v1[0].segment_id == "A");
    CHECK(v1[1].segment_id == "E");
    CHECK(v1[0].probability == doctest::Approx(v1[1].probability));
    CHECK(v1[0].probability == doctest::Approx(std::exp(-4.0 / 4.5)));
    CHECK(v1[0].projection.d_t == doctest::Approx(-2.0));
    CHECK(v1[1].projection.d_t == doctest::Approx(2.0));

    CHECK(mapping.at(2).size() == 1);
    CHECK(mapping.at(2)[0].segment_id == "E");
    CHECK(mapping.at(3)[0].segment_id == "C");
    CHECK(mapping.at(4)[0].segment_id == "F");
    CHECK(mapping.at(5)[0].segment_id == "D");
    for (const std::int64_t id : {2, 3, 4, 5}) {
        CHECK(mapping.at(id).size() == 1);
        CHECK(mapping.at(id)[0].probability == doctest::Approx(1.0));
    }
}

TEST_CASE("matching: no identity violates its class threshold") {
    const RoadGraph g = parallel_lanes({-4.0, -1.0, 2.5, 6.0});
    for (const ObjectClass cls :
         {ObjectClass::Car, ObjectClass::Truck, ObjectClass::Bike, ObjectClass::Pedestrian}) {
        for (double y = -6.0; y <= 8.0; y += 0.7) {
            const auto ids = ssg::match_participant(participant(1, cls, 0, y, 0.4), g, {});
            const double limit = (cls == ObjectClass::Pedestrian) ? 3.0 : 5.0;
            for (const auto& id : ids) {
                CHECK(std::abs(id.projection.d_t) <= limit);
            }
            if (cls == ObjectClass::Pedestrian) {
                CHECK(ids.size() <= 3);
            }
        }
    }
}
