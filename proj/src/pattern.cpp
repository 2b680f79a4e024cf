#include "laceforge/pattern.hpp"

namespace lace {

using nlohmann::json;

namespace {

json vec_to_json(Vec2 v) { return json::array({v.x, v.y}); }

Vec2 vec_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw MalformedDocument("expected [x, y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

template <typename T>
T require(const json& j, const char* key) {
    if (!j.contains(key))
        throw MalformedDocument(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw MalformedDocument(std::string("field '") + key + "' has the wrong type");
    }
}

}  // namespace

json report_to_json(const VerificationReport& r) {
    json j;
    j["c0"] = {{"minPairDistance", r.c0.minPairDistance},
               {"largestEmptyCircleRadius", r.c0.largestEmptyCircleRadius},
               {"minFaceInradius", r.c0.minFaceInradius},
               {"maxFaceCircumradius", r.c0.maxFaceCircumradius},
               {"pass", r.c0.pass}};
    j["c1"] = {{"pass", r.c1.pass}, {"offenders", r.c1.offenders}};
    j["c2"] = {{"connected", r.c2.connected},
               {"minFaceDegree", r.c2.minFaceDegree},
               {"pass", r.c2.pass}};
    j["c3"] = {{"acyclic", r.c3.acyclic},
               {"allEdgesDownward", r.c3.allEdgesDownward},
               {"pass", r.c3.pass}};
    json perPath = json::array();
    for (const auto& p : r.c4.perPath)
        perPath.push_back({{"pathId", p.pathId},
                           {"maxDeviation", p.maxDeviation},
                           {"angleToUp", p.angleToUp},
                           {"interiorVertices", p.interiorVertices}});
    j["c4"] = {{"perPath", perPath},
               {"worstDeviation", r.c4.worstDeviation},
               {"pass", r.c4.pass}};
    j["boundaryExcludedVertices"] = r.boundaryExcludedVertices;
    j["pass"] = r.pass;
    return j;
}

VerificationReport report_from_json(const json& j) {
    VerificationReport r;
    const json& c0 = j.at("c0");
    r.c0.minPairDistance = c0.at("minPairDistance").get<double>();
    r.c0.largestEmptyCircleRadius = c0.at("largestEmptyCircleRadius").get<double>();
    r.c0.minFaceInradius = c0.at("minFaceInradius").get<double>();
    r.c0.maxFaceCircumradius = c0.at("maxFaceCircumradius").get<double>();
    r.c0.pass = c0.at("pass").get<bool>();
    r.c1.pass = j.at("c1").at("pass").get<bool>();
    r.c1.offenders = j.at("c1").at("offenders").get<std::vector<int>>();
    r.c2.connected = j.at("c2").at("connected").get<bool>();
    r.c2.minFaceDegree = j.at("c2").at("minFaceDegree").get<int>();
    r.c2.pass = j.at("c2").at("pass").get<bool>();
    r.c3.acyclic = j.at("c3").at("acyclic").get<bool>();
    r.c3.allEdgesDownward = j.at("c3").at("allEdgesDownward").get<bool>();
    r.c3.pass = j.at("c3").at("pass").get<bool>();
    for (const json& p : j.at("c4").at("perPath"))
        r.c4.perPath.push_back({p.at("pathId").get<int>(), p.at("maxDeviation").get<double>(),
                                p.at("angleToUp").get<double>(),
                                p.at("interiorVertices").get<int>()});
    r.c4.worstDeviation = j.at("c4").at("worstDeviation").get<double>();
    r.c4.pass = j.at("c4").at("pass").get<bool>();
    r.boundaryExcludedVertices = j.at("boundaryExcludedVertices").get<std::vector<int>>();
    r.pass = j.at("pass").get<bool>();
    return r;
}

json document_to_json(const PatternDocument& doc) {
    json j;
    j["schemaVersion"] = doc.schemaVersion;
    j["metadata"] = {{"kind", doc.kind}, {"seed", doc.seed}, {"params", doc.params}};
    j["up"] = vec_to_json(doc.drawing.up);
    json vertices = json::array();
    for (std::size_t v = 0; v < doc.drawing.vertices.size(); ++v) {
        const DrawingVertex& dv = doc.drawing.vertices[v];
        vertices.push_back(
            {{"id", v}, {"x", dv.pos.x}, {"y", dv.pos.y}, {"boundary", dv.boundary}});
    }
    j["vertices"] = std::move(vertices);
    json edges = json::array();
    for (std::size_t e = 0; e < doc.drawing.edges.size(); ++e)
        edges.push_back({{"id", e},
                         {"tail", doc.drawing.edges[e].tail},
                         {"head", doc.drawing.edges[e].head}});
    j["edges"] = std::move(edges);

    if (doc.tiles) {
        json tiles = json::array();
        for (const PatternTile& t : *doc.tiles) {
            json tile;
            tile["corners"] = json::array();
            for (Vec2 c : t.corners) tile["corners"].push_back(vec_to_json(c));
            if (!t.kind.empty()) tile["kind"] = t.kind;
            if (!t.marks.empty()) tile["marks"] = t.marks;
            if (t.gridA) tile["gridA"] = *t.gridA;
            if (t.gridB) tile["gridB"] = *t.gridB;
            tiles.push_back(std::move(tile));
        }
        j["tiles"] = std::move(tiles);
    }
    if (doc.edgeTwists) {
        json values = json::object();
        for (auto& [e, n] : doc.edgeTwists->twists) values[std::to_string(e)] = n;
        j["edgeTwists"] = {{"default", doc.edgeTwists->defaultTwists},
                           {"values", std::move(values)}};
    }
    if (doc.vertexWords) {
        json words = json::object();
        for (auto& [v, w] : *doc.vertexWords) words[std::to_string(v)] = w;
        j["vertexWords"] = std::move(words);
    }
    if (doc.edgeToPath) j["edgeToPath"] = *doc.edgeToPath;
    if (doc.verification) j["verification"] = report_to_json(*doc.verification);
    return j;
}

PatternDocument document_from_json(const json& j) {
    PatternDocument doc;
    doc.schemaVersion = require<int>(j, "schemaVersion");
    if (!j.contains("metadata")) throw MalformedDocument("missing field 'metadata'");
    const json& meta = j.at("metadata");
    doc.kind = require<std::string>(meta, "kind");
    doc.seed = require<unsigned>(meta, "seed");
    doc.params = meta.contains("params") ? meta.at("params") : json::object();
    if (!j.contains("up")) throw MalformedDocument("missing field 'up'");
    doc.drawing.up = vec_from_json(j.at("up"));

    if (!j.contains("vertices") || !j.at("vertices").is_array())
        throw MalformedDocument("missing 'vertices' array");
    for (const json& v : j.at("vertices")) {
        if (require<std::size_t>(v, "id") != doc.drawing.vertices.size())
            throw MalformedDocument("vertex ids must be dense and ordered");
        doc.drawing.vertices.push_back(
            {{require<double>(v, "x"), require<double>(v, "y")},
             require<bool>(v, "boundary")});
    }
    if (!j.contains("edges") || !j.at("edges").is_array())
        throw MalformedDocument("missing 'edges' array");
    for (const json& e : j.at("edges")) {
        if (require<std::size_t>(e, "id") != doc.drawing.edges.size())
            throw MalformedDocument("edge ids must be dense and ordered");
        int tail = require<int>(e, "tail");
        int head = require<int>(e, "head");
        int n = static_cast<int>(doc.drawing.vertices.size());
        if (tail < 0 || tail >= n || head < 0 || head >= n)
            throw MalformedDocument("edge references a missing vertex");
        doc.drawing.edges.push_back({tail, head});
    }
    doc.drawing.rebuild_rotation();

    if (j.contains("tiles")) {
        std::vector<PatternTile> tiles;
        for (const json& t : j.at("tiles")) {
            PatternTile tile;
            const json& corners = t.at("corners");
            if (!corners.is_array() || corners.size() != 4)
                throw MalformedDocument("tile needs 4 corners");
            for (int c = 0; c < 4; ++c)
                tile.corners[static_cast<std::size_t>(c)] =
                    vec_from_json(corners[static_cast<std::size_t>(c)]);
            if (t.contains("kind")) tile.kind = t.at("kind").get<std::string>();
            if (t.contains("marks")) tile.marks = t.at("marks").get<std::vector<std::string>>();
            if (t.contains("gridA")) tile.gridA = t.at("gridA").get<std::array<int, 2>>();
            if (t.contains("gridB")) tile.gridB = t.at("gridB").get<std::array<int, 2>>();
            tiles.push_back(std::move(tile));
        }
        doc.tiles = std::move(tiles);
    }
    if (j.contains("edgeTwists")) {
        EdgeTwistLabel labels;
        labels.defaultTwists = j.at("edgeTwists").at("default").get<int>();
        for (auto& [key, value] : j.at("edgeTwists").at("values").items())
            labels.twists[std::stoi(key)] = value.get<int>();
        doc.edgeTwists = std::move(labels);
    }
    if (j.contains("vertexWords")) {
        std::map<int, std::string> words;
        for (auto& [key, value] : j.at("vertexWords").items())
            words[std::stoi(key)] = value.get<std::string>();
        doc.vertexWords = std::move(words);
    }
    if (j.contains("edgeToPath")) {
        doc.edgeToPath = j.at("edgeToPath").get<std::vector<int>>();
        if (doc.edgeToPath->size() != doc.drawing.edges.size())
            throw MalformedDocument("edgeToPath must cover every edge");
    }
    if (j.contains("verification")) {
        try {
            doc.verification = report_from_json(j.at("verification"));
        } catch (const json::exception&) {
            throw MalformedDocument("verification section is malformed");
        }
    }
    return doc;
}

std::string serialize_document(const PatternDocument& doc) {
    return document_to_json(doc).dump(2) + "\n";
}

PatternDocument parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw MalformedDocument(std::string("invalid JSON: ") + e.what());
    }
    return document_from_json(j);
}

BraidMap braid_map_from_json(const json& j) {
    BraidMap map;
    if (j.contains("classes")) {
        for (const json& entry : j.at("classes")) {
            std::string key = entry.at("key").get<std::string>();
            int rotation = entry.value("rotation", 0);
            map.entries[{key, rotation}] = BraidWord::parse(entry.at("word").get<std::string>());
        }
    }
    if (j.contains("default"))
        map.defaultWord = BraidWord::parse(j.at("default").get<std::string>());
    return map;
}

EdgeTwistLabel edge_twists_from_json(const json& j) {
    EdgeTwistLabel labels;
    labels.defaultTwists = j.value("default", 0);
    if (j.contains("values"))
        for (auto& [key, value] : j.at("values").items())
            labels.twists[std::stoi(key)] = value.get<int>();
    return labels;
}

}  // namespace lace
