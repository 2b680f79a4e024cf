#pragma once

#include <optional>
#include <vector>

#include "laceforge/arrangement.hpp"
#include "laceforge/geometry.hpp"

namespace lace {

struct TooFewVertices : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegeneratePoints : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct C1Violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Vertex interiority for condition checks: kBoundary lost incident edges to
// the clip, kNearBoundary is adjacent to such a vertex, kInterior is neither.
enum class Interiority { kBoundary = 0, kNearBoundary = 1, kInterior = 2 };

std::vector<Interiority> classify_interiority(const PlanarDrawing& d);

// --- C0: feature size --------------------------------------------------

struct C0Metrics {
    double minPairDistance = 0.0;          // 2d of the Delone condition
    double largestEmptyCircleRadius = 0.0; // D, via Delaunay circumcenters
    double minFaceInradius = 0.0;          // r over interior faces
    double maxFaceCircumradius = 0.0;      // R over interior faces
    bool pass = false;
};

// Metrics are computed on vertices and faces outside a boundary strip of
// width `margin` (measured from the drawing's bounding box).
C0Metrics check_c0(const OrientedDrawing& d, double margin = 0.0);

// --- C1: 2-2-regular with rotationally consecutive out-edges ------------

struct C1Result {
    bool pass = false;
    std::vector<int> offenders;  // interior vertices violating the condition
};

C1Result check_c1(const OrientedDrawing& d);

// --- C2: connected, faces of degree >= 3 --------------------------------

struct C2Result {
    bool connected = false;
    int minFaceDegree = 0;  // 0 when the patch has no interior faces
    bool pass = false;
};

C2Result check_c2(const OrientedDrawing& d);

// --- C3: partial order ---------------------------------------------------

struct C3Result {
    bool acyclic = false;
    bool allEdgesDownward = false;
    bool pass = false;
};

C3Result check_c3(const OrientedDrawing& d);

// --- Osculating partition ------------------------------------------------

struct OsculatingPath {
    std::vector<int> edges;     // directed edge ids in walk order
    std::vector<int> vertices;  // induced vertex sequence (edges + 1 entries)
    bool cycle = false;
};

struct PartitionResult {
    std::vector<OsculatingPath> paths;
    std::vector<int> edgeToPath;  // edge id -> path id, total
};

// Pairs each incoming edge with the rotationally adjacent outgoing edge at
// every 2-in/2-out vertex, which is the unique non-crossing continuation.
// Paths truncate at vertices without that structure. Throws C1Violation when
// an interior vertex fails the C1 shape.
PartitionResult osculating_partition(const OrientedDrawing& d);

// --- Deming (total least squares) fit -------------------------------------

struct DemingFit {
    Vec2 centroid;
    Vec2 direction;  // unit principal axis; ties resolved toward `up`
    double maxDeviation = 0.0;
};

DemingFit deming_fit(const std::vector<Vec2>& points, Vec2 up = {0.0, 1.0});

// --- C4: well-behaved paths ----------------------------------------------

struct C4Metrics {
    struct PathFit {
        int pathId = -1;
        double maxDeviation = 0.0;
        double angleToUp = 0.0;  // radians between fitted line and up vector
        int interiorVertices = 0;
    };
    std::vector<PathFit> perPath;  // paths with >= 4 interior vertices
    double worstDeviation = 0.0;
    bool pass = false;
};

C4Metrics check_c4(const OrientedDrawing& d, double sMax);

// --- Aggregate -------------------------------------------------------------

struct VerifyThresholds {
    double margin = 0.0;
    double sMax = 1.0;
};

struct VerificationReport {
    C0Metrics c0;
    C1Result c1;
    C2Result c2;
    C3Result c3;
    C4Metrics c4;
    std::vector<int> boundaryExcludedVertices;
    bool pass = false;
};

VerificationReport verify_all(const OrientedDrawing& d, const VerifyThresholds& thresholds);

}  // namespace lace
