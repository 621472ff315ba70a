#include "ssg/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <utility>

#include "ssg/errors.hpp"
#include "ssg/geometry.hpp"

namespace ssg {

namespace {

constexpr std::string_view kHeader =
    "timestamp_ms,track_id,class,x,y,psi,vx,vy,ax,ay,width,length";
constexpr std::size_t kColumnCount = 12;

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    return line;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::int64_t parse_int64(std::string_view field, std::size_t line_no, std::string_view name) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": field '" + std::string(name) +
                         "' is not an integer: '" + std::string(field) + "'");
    }
    return value;
}

double parse_double(std::string_view field, std::size_t line_no, std::string_view name) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": field '" + std::string(name) +
                         "' is not a number: '" + std::string(field) + "'");
    }
    if (!std::isfinite(value)) {
        throw ValidationError("line " + std::to_string(line_no) + ": field '" + std::string(name) +
                              "' must be finite");
    }
    return value;
}

char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

} // namespace

std::string_view to_string(ObjectClass object_class) {
    switch (object_class) {
    case ObjectClass::Car: return "car";
    case ObjectClass::Pedestrian: return "pedestrian";
    case ObjectClass::Bike: return "bike";
    case ObjectClass::Truck: return "truck";
    case ObjectClass::Other: return "other";
    }
    return "other";
}

ObjectClass object_class_from_string(std::string_view text) {
    std::string lowered(text.size(), '\0');
    std::transform(text.begin(), text.end(), lowered.begin(), ascii_lower);
    if (lowered == "car") return ObjectClass::Car;
    if (lowered == "pedestrian") return ObjectClass::Pedestrian;
    if (lowered == "bike") return ObjectClass::Bike;
    if (lowered == "truck") return ObjectClass::Truck;
    return ObjectClass::Other;
}

double TrafficParticipantState::speed() const {
    return std::hypot(vx, vy);
}

Recording parse_object_list(std::string_view text) {
    std::map<std::int64_t, SceneState> scenes;
    std::size_t line_no = 0;
    std::size_t cursor = 0;
    bool header_seen = false;

    while (cursor <= text.size()) {
        const std::size_t newline = text.find('\n', cursor);
        std::string_view line = (newline == std::string_view::npos)
                                    ? text.substr(cursor)
                                    : text.substr(cursor, newline - cursor);
        cursor = (newline == std::string_view::npos) ? text.size() + 1 : newline + 1;
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) {
            if (!header_seen && cursor <= text.size()) {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected header '" + std::string(kHeader) + "'");
            }
            continue;
        }
        if (!header_seen) {
            if (line != kHeader) {
                throw ParseError("line " + std::to_string(line_no) + ": expected header '" +
                                 std::string(kHeader) + "', got '" + std::string(line) + "'");
            }
            header_seen = true;
            continue;
        }

        const std::vector<std::string_view> fields = split_fields(line);
        if (fields.size() != kColumnCount) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(kColumnCount) + " fields, got " +
                             std::to_string(fields.size()));
        }

        TrafficParticipantState state;
        const std::int64_t timestamp = parse_int64(fields[0], line_no, "timestamp_ms");
        state.participant_id = parse_int64(fields[1], line_no, "track_id");
        state.object_class = object_class_from_string(fields[2]);
        state.x = parse_double(fields[3], line_no, "x");
        state.y = parse_double(fields[4], line_no, "y");
        state.psi = wrap_angle(parse_double(fields[5], line_no, "psi"));
        state.vx = parse_double(fields[6], line_no, "vx");
        state.vy = parse_double(fields[7], line_no, "vy");
        state.ax = parse_double(fields[8], line_no, "ax");
        state.ay = parse_double(fields[9], line_no, "ay");
        state.width = parse_double(fields[10], line_no, "width");
        state.length = parse_double(fields[11], line_no, "length");
        if (state.width <= 0.0 || state.length <= 0.0) {
            throw ValidationError("line " + std::to_string(line_no) +
                                  ": width and length must be positive");
        }

        SceneState& scene = scenes[timestamp];
        scene.timestamp_ms = timestamp;
        const bool duplicate = std::any_of(
            scene.participants.begin(), scene.participants.end(),
            [&](const TrafficParticipantState& p) { return p.participant_id == state.participant_id; });
        if (duplicate) {
            throw ValidationError("line " + std::to_string(line_no) + ": participant " +
                                  std::to_string(state.participant_id) +
                                  " appears twice at timestamp " + std::to_string(timestamp));
        }
        scene.participants.push_back(state);
    }

    if (!header_seen) {
        throw ParseError("empty input: expected header '" + std::string(kHeader) + "'");
    }

    Recording recording;
    recording.scenes.reserve(scenes.size());
    for (auto& [timestamp, scene] : scenes) {
        recording.scenes.push_back(std::move(scene));
    }
    return recording;
}

const SceneState& scene_at(const Recording& recording, std::int64_t timestamp_ms) {
    const auto it = std::lower_bound(
        recording.scenes.begin(), recording.scenes.end(), timestamp_ms,
        [](const SceneState& scene, std::int64_t t) { return scene.timestamp_ms < t; });
    if (it != recording.scenes.end() && it->timestamp_ms == timestamp_ms) {
        return *it;
    }
    if (recording.scenes.empty()) {
        throw ValidationError("no scene at t=" + std::to_string(timestamp_ms) +
                              " ms: recording is empty");
    }
    std::string nearest;
    if (it != recording.scenes.begin()) {
        nearest += std::to_string(std::prev(it)->timestamp_ms);
    }
    if (it != recording.scenes.end()) {
        if (!nearest.empty()) nearest += ", ";
        nearest += std::to_string(it->timestamp_ms);
    }
    throw ValidationError("no scene at t=" + std::to_string(timestamp_ms) +
                          " ms; nearest timestamps: " + nearest);
}

} // namespace ssg
