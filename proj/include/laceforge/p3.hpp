#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "laceforge/arrangement.hpp"
#include "laceforge/gdm.hpp"
#include "laceforge/geometry.hpp"

namespace lace {

struct MatchingViolationInInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownConfiguration : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IncompleteNeighbourhood : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RhombKind { Thin, Thick };

inline double acute_angle_of(RhombKind kind) {
    return kind == RhombKind::Thin ? kPi / 5 : 2 * kPi / 5;
}

enum class ArrowShape { Single, Double };

// Arrow on one prototile edge. sense +1 points along the ccw boundary
// direction (corner i -> corner i+1), -1 against it.
struct EdgeMark {
    ArrowShape shape;
    int sense;

    bool operator==(const EdgeMark&) const = default;
};

// Corner 0 is the anchor corner: the two edges meeting there carry double
// arrows pointing into it. The thick rhomb's single arrows point into the
// opposite corner, the thin rhomb's point away from it.
EdgeMark prototile_mark(RhombKind kind, int edgeSlot);

struct DecoratedPrototile {
    RhombKind kind;
    double acuteAngle;
    std::array<EdgeMark, 4> edgeMarks;
};

DecoratedPrototile prototile(RhombKind kind);

struct PlacedTile {
    RhombKind kind = RhombKind::Thick;
    std::array<Vec2, 4> corners{};  // ccw; corners[0] is the anchor corner

    Vec2 centroid() const {
        return (corners[0] + corners[1] + corners[2] + corners[3]) / 4.0;
    }
    EdgeMark mark(int edgeSlot) const { return prototile_mark(kind, edgeSlot); }
    // Rotation of the prototile in units of pi/5 relative to `reference`.
    int pose_rotation(double referenceAngle = 0.0) const;
};

// A mirror half of a rhomb (Robinson triangle) that could not be glued; kept
// so area bookkeeping over deflation is exact on clipped patches.
struct HalfTile {
    RhombKind kind;
    Vec2 anchor, apex, other;

    double area() const { return std::fabs((apex - anchor).cross(other - anchor)) / 2; }
};

struct TileEdgeRef {
    int tile = -1;
    int slot = -1;  // edge corners[slot] -> corners[slot+1]
};

struct P3SharedEdge {
    TileEdgeRef a, b;
    bool sameDirection = false;  // slots traverse the edge in the same direction
};

struct PenroseTiling {
    enum class Provenance { Gdm, Deflation };

    std::vector<PlacedTile> tiles;
    std::vector<P3SharedEdge> adjacency;
    Provenance provenance = Provenance::Gdm;
    double starTilt = 0.07;  // rotation of the five edge directions
    std::vector<HalfTile> boundaryHalves;
    long thinHalves = 0;   // half-tile counts including unglued boundary halves
    long thickHalves = 0;
    std::optional<RhombTiling> gdmSource;  // parallel to tiles when Provenance::Gdm

    double total_area() const;
    // Per-tile slot -> adjacency index, -1 when the edge is unshared.
    std::vector<std::array<int, 4>> neighbour_slots() const;
};

// Offsets lambda_i - mean(lambda) from a seeded uniform draw; they sum to
// zero, which keeps the pentagrid dual inside the P3 matching rules.
std::array<double, 5> default_pentagrid_offsets(unsigned seed);

// GDM dual of the pentagrid with star (cos(2 pi i/5), sin(2 pi i/5)) rotated
// by starTilt, clipped to the centered square of the given radius. Offsets
// are normalised to sum to zero.
PenroseTiling pentagrid_p3(double radius, std::array<double, 5> offsets,
                           double starTilt = 0.07);

struct MatchingViolation {
    TileEdgeRef a, b;
};

// Empty iff every shared edge carries the same arrow shape and direction on
// both sides.
std::vector<MatchingViolation> check_matching(const PenroseTiling& t);

// Single decorated rhomb in standard pose (useful as a deflation seed).
PenroseTiling single_rhomb(RhombKind kind, double starTilt = 0.07);

// Scales the patch by tau and subdivides every tile (and boundary half) per
// step via Robinson half-triangles, then re-glues mirror pairs into rhombs.
// Throws MatchingViolationInInput when the input violates matching rules.
PenroseTiling deflate(const PenroseTiling& patch, int steps);

// --- vertex / configuration classification --------------------------------

struct TilingVertex {
    Vec2 pos;
    std::vector<TileEdgeRef> wedges;  // (tile, corner) pairs, ccw order
    bool interior = false;            // wedge angles close up to 2 pi
};

std::vector<TilingVertex> tiling_vertices(const PenroseTiling& t);

struct VertexConfigClass {
    int classId = 0;                // 1..8
    std::string canonicalWedges;    // angle units in pi/5, canonical cyclic form
};

// Canonical interior vertex configuration; throws BoundaryVertex for open
// wedge fans and UnknownConfiguration for keys outside the eight P3 classes.
VertexConfigClass classify_vertex(const PenroseTiling& t, const TilingVertex& v);

struct CentralTileConfig {
    int classId = 0;           // 1..7
    std::string canonicalKey;  // central kind plus per-slot neighbour poses
};

// Configuration of a tile and its four edge neighbours, canonical up to
// rotation; throws IncompleteNeighbourhood when a neighbour is missing.
CentralTileConfig classify_central(const PenroseTiling& t, int tileId);

// The eight/seven canonical keys, exposed for tests.
const std::vector<std::string>& p3_vertex_class_keys();
const std::vector<std::string>& p3_central_class_keys();

// --- centroid dual ---------------------------------------------------------

// Drawing with one vertex per tile at its centroid and one edge per shared
// tile edge, directed along the downward sense of the grid family whose
// lines cross that edge. up is (0, 1); starTilt keeps every family off the
// horizontal.
OrientedDrawing centroid_dual(const PenroseTiling& t);

}  // namespace lace
