#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "laceforge/arrangement.hpp"
#include "laceforge/braid.hpp"
#include "laceforge/lacecheck.hpp"

namespace lace {

struct MalformedDocument : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Serializable tile record: anchor-first ccw corners plus optional kind,
// arrow marks and grid provenance.
struct PatternTile {
    std::array<Vec2, 4> corners{};
    std::string kind;                          // "thin", "thick" or "" (generic rhomb)
    std::vector<std::string> marks;            // per-edge arrows, e.g. "D-"
    std::optional<std::array<int, 2>> gridA;   // (family, line)
    std::optional<std::array<int, 2>> gridB;

    bool operator==(const PatternTile&) const = default;
};

struct PatternDocument {
    int schemaVersion = 1;
    std::string kind;
    nlohmann::json params = nlohmann::json::object();
    unsigned seed = 0;
    OrientedDrawing drawing;
    std::optional<std::vector<PatternTile>> tiles;
    std::optional<EdgeTwistLabel> edgeTwists;
    std::optional<std::map<int, std::string>> vertexWords;
    std::optional<std::vector<int>> edgeToPath;
    std::optional<VerificationReport> verification;
};

nlohmann::json report_to_json(const VerificationReport& r);
VerificationReport report_from_json(const nlohmann::json& j);

nlohmann::json document_to_json(const PatternDocument& doc);
// Throws MalformedDocument on missing or ill-typed fields.
PatternDocument document_from_json(const nlohmann::json& j);

std::string serialize_document(const PatternDocument& doc);
PatternDocument parse_document(const std::string& text);

// {"classes": [{"key": ..., "rotation": ..., "word": "CTCT"}],
//  "default": "CTC", "edgeTwists": {"default": 1, "values": {"3": 2}}}
BraidMap braid_map_from_json(const nlohmann::json& j);
EdgeTwistLabel edge_twists_from_json(const nlohmann::json& j);

}  // namespace lace
