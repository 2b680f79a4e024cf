#pragma once

#include <array>
#include <map>
#include <vector>

#include "laceforge/arrangement.hpp"
#include "laceforge/geometry.hpp"

namespace lace {

struct OnGridLine : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnknownLine : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ordinal position of a multigrid face, one entry per family: the face lies
// between lines p[i] and p[i] + 1 of family i.
struct OrdinalTuple {
    std::vector<int> p;

    bool operator==(const OrdinalTuple&) const = default;
};

// Ordinals of the face containing `point`. Throws OnGridLine when the point
// sits on one of the grid lines within kGeomTol.
OrdinalTuple face_ordinals(const Multigrid& grid, Vec2 point);

// One rhomb of the dual tiling, dual to the crossing of gridA and gridB.
struct RhombTile {
    GridLine gridA;  // gridA.family < gridB.family
    GridLine gridB;
    std::array<Vec2, 4> corners;  // ccw; edge vectors are the two star vectors
    Vec2 sourceVertex;            // multigrid crossing position
    bool sourceBoundary = false;  // crossing was a boundary vertex of the patch
    std::vector<int> baseOrdinals;  // ordinals of the corner stored first
    int baseOrdinalSum = 0;

    Vec2 centroid() const {
        return (corners[0] + corners[1] + corners[2] + corners[3]) / 4.0;
    }
    // Interior angle at corner 0 in (0, pi).
    double acute_angle() const;
};

// A shared edge between two tiles of the dual tiling.
struct TileAdjacency {
    int tileA = -1;
    int tileB = -1;
    Vec2 endpointA;
    Vec2 endpointB;
    // Family whose star vector is parallel to the shared edge.
    int edgeFamily = -1;
};

struct RhombTiling {
    std::vector<RhombTile> tiles;
    std::vector<TileAdjacency> adjacency;
    Multigrid grid;
    Rect clip;

    std::size_t family_count() const { return grid.family_count(); }
};

// De Bruijn's generalized dual: one rhomb per multigrid crossing, with corner
// positions f(p) = sum_i p_i e_i over the four faces incident to the crossing.
RhombTiling gdm_dual(const Multigrid& grid, const Rect& clip);

// The chain of tiles dual to the crossings along one grid line, ordered by
// the line's direction parameter.
struct Stack {
    GridLine line;
    std::vector<int> tileIds;
};

Stack extract_stack(const RhombTiling& t, int family, int line);
std::vector<Stack> stack_family(const RhombTiling& t, int family);

// Drawing with one vertex per tile at its centroid and one edge per shared
// tile edge, directed along the downward direction of the grid family whose
// lines cross that edge. Tiles with fewer than four neighbours are boundary
// vertices.
OrientedDrawing centroid_dual_of(const RhombTiling& t, Vec2 up = {0.0, 1.0});

}  // namespace lace
