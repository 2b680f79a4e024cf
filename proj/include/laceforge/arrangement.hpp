#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "laceforge/geometry.hpp"
#include "laceforge/words.hpp"

namespace lace {

struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct ParallelLines : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateIntersection : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyArrangement : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BoundaryVertex : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct HorizontalEdge : std::runtime_error {
    HorizontalEdge(std::string msg, int edge) : std::runtime_error(std::move(msg)), edgeId(edge) {}
    int edgeId;
};

struct ConstantSpacing {
    double step = 1.0;
};
struct WordSpacing {
    SpacingWord word;
    // Word position of the gap between lines 0 and 1; gap k uses symbol
    // anchor + k, which must stay inside the word.
    int anchor = 0;
};
using Spacing = std::variant<ConstantSpacing, WordSpacing>;

// One family of parallel lines. Line k is the set of points p with
// dot(p, normal) == position(k), where normal = unit_vector(normalAngle).
struct LineFamily {
    double normalAngle = 0.0;
    double offset = 0.0;  // signed position of line 0 along the normal
    Spacing spacing = ConstantSpacing{};
    int kmin = 0;
    int kmax = 0;

    Vec2 normal() const { return unit_vector(normalAngle); }
    // Direction along the lines (normal rotated 90 degrees ccw).
    Vec2 direction() const { return normal().perp(); }
    int line_count() const { return kmax - kmin + 1; }
};

// Signed offset of line k along the family normal (prefix sum of spacings).
double line_position(const LineFamily& family, int k);

struct Multigrid {
    std::vector<LineFamily> families;
    double gpTolerance = 1e-7;

    // Star vector of family i: the unit normal of its lines.
    Vec2 star(std::size_t i) const { return families.at(i).normal(); }
    std::size_t family_count() const { return families.size(); }

    void validate() const;
};

// Identifies one line of a multigrid.
struct GridLine {
    int family = -1;
    int line = 0;

    bool operator==(const GridLine&) const = default;
    auto operator<=>(const GridLine&) const = default;
};

// Intersection point of two concrete lines; throws ParallelLines when the
// directions coincide mod pi within kAngleTol.
Vec2 intersect(const LineFamily& a, int ka, const LineFamily& b, int kb);

struct DrawingVertex {
    Vec2 pos;
    // True when the vertex lost incident edges to clipping or to the end of a
    // line's index range; such vertices are excluded from condition checks.
    bool boundary = false;
};

struct DrawingEdge {
    int tail = -1;
    int head = -1;
};

// Straight-line drawing of a plane graph with a per-vertex rotation system.
// Until assign_down_orientation runs, tail/head order is arbitrary.
struct PlanarDrawing {
    std::vector<DrawingVertex> vertices;
    std::vector<DrawingEdge> edges;
    // Incident edge ids per vertex, sorted ccw by outgoing direction angle.
    std::vector<std::vector<int>> rotation;

    int other_end(int edge, int vertex) const {
        const DrawingEdge& e = edges[static_cast<std::size_t>(edge)];
        return e.tail == vertex ? e.head : e.tail;
    }
    Vec2 edge_vector_from(int edge, int vertex) const {
        return vertices[static_cast<std::size_t>(other_end(edge, vertex))].pos -
               vertices[static_cast<std::size_t>(vertex)].pos;
    }
    std::size_t degree(int vertex) const { return rotation[static_cast<std::size_t>(vertex)].size(); }

    // Rebuilds the rotation system from vertex positions.
    void rebuild_rotation();
};

// A face cycle discovered by rotation-system traversal. `outer` marks the
// unbounded face of the patch (negative signed area).
struct Face {
    std::vector<int> vertexCycle;
    bool outer = false;
    bool touchesBoundary = false;  // some cycle vertex is a boundary vertex
    double area = 0.0;
};

std::vector<Face> extract_faces(const PlanarDrawing& d);

// PlanarDrawing plus a direction per edge (tail -> head) and the up vector
// that was used to orient it.
struct OrientedDrawing : PlanarDrawing {
    Vec2 up{0.0, 1.0};
};

// Provenance of arrangement vertices: the two grid lines crossing there.
struct ArrangementVertexSource {
    GridLine a;  // a.family < b.family
    GridLine b;
};

struct Arrangement {
    PlanarDrawing drawing;
    std::vector<ArrangementVertexSource> sources;  // parallel to vertices
    Rect clip;
};

// Places a vertex at every pairwise line crossing inside the clip and an edge
// between crossings that are consecutive along a line. Vertices that lose an
// incident edge to the clip boundary (or to the end of a line's index range)
// are flagged boundary. Throws DegenerateIntersection when two distinct
// crossings are closer than grid.gpTolerance.
Arrangement build_arrangement(const Multigrid& grid, const Rect& clip);

// Directs every edge so its vector has strictly negative component along
// `up`. Throws HorizontalEdge when an edge is perpendicular to `up` within
// kAngleTol.
OrientedDrawing assign_down_orientation(const PlanarDrawing& d, Vec2 up);

}  // namespace lace
