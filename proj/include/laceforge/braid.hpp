#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "laceforge/arrangement.hpp"
#include "laceforge/geometry.hpp"

namespace lace {

struct UnalignedEdge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnmappedClass : std::runtime_error {
    UnmappedClass(std::string msg, std::vector<std::string> keys)
        : std::runtime_error(std::move(msg)), missingKeys(std::move(keys)) {}
    std::vector<std::string> missingKeys;
};

// C = cross, T = twist both pairs, L/R = twist one pair only.
enum class BraidSymbol : char {
    Cross = 'C',
    TwistBoth = 'T',
    TwistLeft = 'L',
    TwistRight = 'R',
};

struct BraidWord {
    std::vector<BraidSymbol> symbols;

    static BraidWord parse(const std::string& letters);
    std::string str() const;
    bool operator==(const BraidWord&) const = default;
};

// A braid word is workable iff it contains at least one cross.
bool validate_braidword(const BraidWord& w);

// Local class of an interior vertex: the cyclic pattern of incident edge
// directions (snapped to the signed star) with in/out flags, canonical over
// the star's rotational symmetries and cyclic rotation.
struct VertexClassKey {
    std::string canonical;
    int rotationIndex = 0;

    bool operator<(const VertexClassKey& o) const {
        return std::tie(canonical, rotationIndex) < std::tie(o.canonical, o.rotationIndex);
    }
    bool operator==(const VertexClassKey&) const = default;
};

VertexClassKey classify_vertex_local(const OrientedDrawing& d, int vertex,
                                     const std::vector<Vec2>& star);

// Distinct edge directions of the drawing modulo sign, one unit vector per
// class with angle in [0, pi), sorted by angle. The natural star for
// classify_vertex_local when no grid star applies.
std::vector<Vec2> drawing_direction_star(const PlanarDrawing& d, double tol = 1e-6);

struct EdgeTwistLabel {
    std::map<int, int> twists;  // directed edge id -> twist count
    int defaultTwists = 0;

    int at(int edge) const {
        auto it = twists.find(edge);
        return it == twists.end() ? defaultTwists : it->second;
    }
};

struct BraidMap {
    std::map<std::pair<std::string, int>, BraidWord> entries;
    std::optional<BraidWord> defaultWord;
};

struct LacePattern {
    std::vector<int> edgeTwists;                 // per edge id
    std::map<int, BraidWord> vertexWords;        // per interior vertex
    std::map<int, VertexClassKey> vertexClasses;
};

// Labels every edge and maps every interior vertex to a braid word through
// its local class; throws UnmappedClass (listing the missing keys) when the
// map has no entry and no default.
LacePattern assign_braids(const OrientedDrawing& d, const BraidMap& map,
                          const EdgeTwistLabel& labels, const std::vector<Vec2>& star);

}  // namespace lace
