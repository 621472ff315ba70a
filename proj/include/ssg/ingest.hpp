#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ssg {

enum class ObjectClass { Car, Pedestrian, Bike, Truck, Other };

std::string_view to_string(ObjectClass object_class);

/// Case-insensitive mapping of a class label onto the enumeration.
/// Unknown labels map to Other.
ObjectClass object_class_from_string(std::string_view text);

/// Discrete state of one traffic participant at one timestep. Position is
/// the geometric center in the map frame; psi is the body yaw in (−π, π].
struct TrafficParticipantState {
    std::int64_t participant_id = 0;
    double x = 0.0;
    double y = 0.0;
    double psi = 0.0;
    double vx = 0.0;
    double vy = 0.0;
    double ax = 0.0;
    double ay = 0.0;
    double width = 0.0;
    double length = 0.0;
    ObjectClass object_class = ObjectClass::Other;

    double speed() const;
};

/// All participants observed at one timestamp.
struct SceneState {
    std::int64_t timestamp_ms = 0;
    std::vector<TrafficParticipantState> participants; // unique ids
};

/// Time-ordered list of scene states (strictly increasing timestamps).
struct Recording {
    std::vector<SceneState> scenes;
};

/// Parse an object-list CSV (header
/// `timestamp_ms,track_id,class,x,y,psi,vx,vy,ax,ay,width,length`) into a
/// Recording, grouping rows by timestamp. Throws ParseError with the line
/// number on malformed rows and ValidationError on semantic violations
/// (duplicate participant within a timestamp, non-positive box, ...).
Recording parse_object_list(std::string_view text);

/// Exact lookup of one scene; no interpolation. Throws ValidationError
/// naming the nearest available timestamps when absent.
const SceneState& scene_at(const Recording& recording, std::int64_t timestamp_ms);

} // namespace ssg
