#include "laceforge/lacecheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <unordered_map>

#include "laceforge/delaunay.hpp"
#include "laceforge/polygon.hpp"

namespace lace {

std::vector<Interiority> classify_interiority(const PlanarDrawing& d) {
    std::vector<Interiority> out(d.vertices.size(), Interiority::kInterior);
    for (std::size_t v = 0; v < d.vertices.size(); ++v)
        if (d.vertices[v].boundary) out[v] = Interiority::kBoundary;
    for (const DrawingEdge& e : d.edges) {
        bool tailB = d.vertices[static_cast<std::size_t>(e.tail)].boundary;
        bool headB = d.vertices[static_cast<std::size_t>(e.head)].boundary;
        if (tailB && out[static_cast<std::size_t>(e.head)] == Interiority::kInterior)
            out[static_cast<std::size_t>(e.head)] = Interiority::kNearBoundary;
        if (headB && out[static_cast<std::size_t>(e.tail)] == Interiority::kInterior)
            out[static_cast<std::size_t>(e.tail)] = Interiority::kNearBoundary;
    }
    return out;
}

namespace {

Rect vertex_bbox(const PlanarDrawing& d) {
    Rect r{d.vertices[0].pos.x, d.vertices[0].pos.y, d.vertices[0].pos.x, d.vertices[0].pos.y};
    for (const DrawingVertex& v : d.vertices) {
        r.xmin = std::min(r.xmin, v.pos.x);
        r.xmax = std::max(r.xmax, v.pos.x);
        r.ymin = std::min(r.ymin, v.pos.y);
        r.ymax = std::max(r.ymax, v.pos.y);
    }
    return r;
}

// Exact minimum pairwise distance given an upper bound on the answer.
double min_pair_distance(const std::vector<Vec2>& pts, double upperBound) {
    double cell = std::max(upperBound, 1e-12);
    auto key = [cell](double x, double y) {
        auto ix = static_cast<std::int64_t>(std::floor(x / cell));
        auto iy = static_cast<std::int64_t>(std::floor(y / cell));
        return (static_cast<std::uint64_t>(ix) << 32) ^
               (static_cast<std::uint64_t>(iy) & 0xffffffffULL);
    };
    std::unordered_map<std::uint64_t, std::vector<int>> grid;
    grid.reserve(pts.size() * 2);
    double best = upperBound;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy) {
                auto it = grid.find(key(pts[i].x + dx * cell, pts[i].y + dy * cell));
                if (it == grid.end()) continue;
                for (int j : it->second)
                    best = std::min(best, distance(pts[i], pts[static_cast<std::size_t>(j)]));
            }
        grid[key(pts[i].x, pts[i].y)].push_back(static_cast<int>(i));
    }
    return best;
}

}  // namespace

C0Metrics check_c0(const OrientedDrawing& d, double margin) {
    C0Metrics m;
    if (d.vertices.empty()) throw TooFewVertices("drawing has no vertices");
    Rect inner = vertex_bbox(d).shrunk(margin);

    std::vector<Vec2> interiorPts;
    std::vector<Vec2> uniquePts;
    std::vector<std::uint8_t> uniqueInterior;
    std::map<std::pair<double, double>, int> seen;
    bool interiorDuplicates = false;
    for (const DrawingVertex& v : d.vertices) {
        bool interior = !v.boundary && inner.contains_closed(v.pos);
        auto [it, fresh] = seen.emplace(std::make_pair(v.pos.x, v.pos.y),
                                        static_cast<int>(uniquePts.size()));
        if (fresh) {
            uniquePts.push_back(v.pos);
            uniqueInterior.push_back(interior);
        } else {
            uniqueInterior[static_cast<std::size_t>(it->second)] |= interior ? 1 : 0;
            if (interior) interiorDuplicates = true;
        }
        if (interior) interiorPts.push_back(v.pos);
    }
    if (interiorPts.size() < 2)
        throw TooFewVertices("fewer than 2 interior vertices after margin exclusion");

    // Delaunay over distinct positions: empty-circle estimate restricted to
    // the interior region, plus an upper bound for the closest interior pair.
    auto triangles = delaunay_triangulate(uniquePts);
    double largestEmpty = 0.0;
    for (const DelaunayTriangle& t : triangles)
        if (inner.contains_closed(t.circumcenter))
            largestEmpty = std::max(largestEmpty, t.circumradius);
    m.largestEmptyCircleRadius = largestEmpty;

    if (interiorDuplicates) {
        m.minPairDistance = 0.0;
    } else {
        double bound = std::numeric_limits<double>::infinity();
        auto edgeBound = [&](int a, int b) {
            if (uniqueInterior[static_cast<std::size_t>(a)] &&
                uniqueInterior[static_cast<std::size_t>(b)])
                bound = std::min(bound, distance(uniquePts[static_cast<std::size_t>(a)],
                                                 uniquePts[static_cast<std::size_t>(b)]));
        };
        for (const DelaunayTriangle& t : triangles) {
            edgeBound(t.a, t.b);
            edgeBound(t.b, t.c);
            edgeBound(t.c, t.a);
        }
        if (!std::isfinite(bound)) bound = distance(interiorPts[0], interiorPts[1]);
        m.minPairDistance = min_pair_distance(interiorPts, bound * (1 + 1e-12));
    }

    double minIn = std::numeric_limits<double>::infinity();
    double maxCirc = 0.0;
    for (const Face& f : extract_faces(d)) {
        if (f.outer || f.touchesBoundary) continue;
        std::vector<Vec2> poly;
        bool inside = true;
        for (int v : f.vertexCycle) {
            poly.push_back(d.vertices[static_cast<std::size_t>(v)].pos);
            if (!inner.contains_closed(poly.back())) inside = false;
        }
        if (!inside) continue;
        minIn = std::min(minIn, polygon_inradius(poly));
        maxCirc = std::max(maxCirc, polygon_circumradius(poly));
    }
    if (std::isfinite(minIn)) {
        m.minFaceInradius = minIn;
        m.maxFaceCircumradius = maxCirc;
    }
    m.pass = m.minPairDistance > 0 && std::isfinite(m.minPairDistance) &&
             std::isfinite(m.largestEmptyCircleRadius) && m.minFaceInradius > 0 &&
             m.minFaceInradius <= m.maxFaceCircumradius;
    return m;
}

namespace {

// Outgoing-edge slots of v in rotation order; empty optional when the vertex
// is not 2-in/2-out with rotationally consecutive out-edges.
std::optional<std::pair<int, int>> consecutive_out_slots(const OrientedDrawing& d, int v) {
    const auto& rot = d.rotation[static_cast<std::size_t>(v)];
    if (rot.size() != 4) return std::nullopt;
    std::vector<int> outSlots;
    for (std::size_t s = 0; s < rot.size(); ++s)
        if (d.edges[static_cast<std::size_t>(rot[s])].tail == v)
            outSlots.push_back(static_cast<int>(s));
    if (outSlots.size() != 2) return std::nullopt;
    int a = outSlots[0], b = outSlots[1];
    if ((b - a) == 1 || (a == 0 && b == 3)) {
        if (a == 0 && b == 3) return std::make_pair(3, 0);  // wrap: 3 then 0
        return std::make_pair(a, b);
    }
    return std::nullopt;
}

}  // namespace

C1Result check_c1(const OrientedDrawing& d) {
    C1Result r;
    auto interiority = classify_interiority(d);
    for (std::size_t v = 0; v < d.vertices.size(); ++v) {
        if (interiority[v] != Interiority::kInterior) continue;
        if (!consecutive_out_slots(d, static_cast<int>(v)))
            r.offenders.push_back(static_cast<int>(v));
    }
    r.pass = r.offenders.empty();
    return r;
}

C2Result check_c2(const OrientedDrawing& d) {
    C2Result r;
    if (d.vertices.empty()) return r;
    // Connectivity of the underlying undirected graph.
    std::vector<int> component(d.vertices.size(), -1);
    std::vector<int> stack{0};
    component[0] = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int e : d.rotation[static_cast<std::size_t>(v)]) {
            int u = d.other_end(e, v);
            if (component[static_cast<std::size_t>(u)] == -1) {
                component[static_cast<std::size_t>(u)] = 0;
                stack.push_back(u);
            }
        }
    }
    r.connected = std::none_of(component.begin(), component.end(),
                               [](int c) { return c == -1; });

    int minDeg = 0;
    for (const Face& f : extract_faces(d)) {
        if (f.outer || f.touchesBoundary) continue;
        int deg = static_cast<int>(f.vertexCycle.size());
        minDeg = minDeg == 0 ? deg : std::min(minDeg, deg);
    }
    r.minFaceDegree = minDeg;
    r.pass = r.connected && (minDeg == 0 || minDeg >= 3);
    return r;
}

C3Result check_c3(const OrientedDrawing& d) {
    C3Result r;
    std::vector<int> indeg(d.vertices.size(), 0);
    for (const DrawingEdge& e : d.edges) indeg[static_cast<std::size_t>(e.head)]++;
    std::vector<int> queue;
    for (std::size_t v = 0; v < d.vertices.size(); ++v)
        if (indeg[v] == 0) queue.push_back(static_cast<int>(v));
    std::size_t seen = 0;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        ++seen;
        for (int e : d.rotation[static_cast<std::size_t>(v)]) {
            const DrawingEdge& de = d.edges[static_cast<std::size_t>(e)];
            if (de.tail != v) continue;
            if (--indeg[static_cast<std::size_t>(de.head)] == 0) queue.push_back(de.head);
        }
    }
    r.acyclic = seen == d.vertices.size();
    r.allEdgesDownward = true;
    for (const DrawingEdge& e : d.edges) {
        Vec2 v = d.vertices[static_cast<std::size_t>(e.head)].pos -
                 d.vertices[static_cast<std::size_t>(e.tail)].pos;
        if (v.dot(d.up) >= 0) {
            r.allEdgesDownward = false;
            break;
        }
    }
    r.pass = r.acyclic;
    return r;
}

PartitionResult osculating_partition(const OrientedDrawing& d) {
    auto interiority = classify_interiority(d);
    const int edgeCount = static_cast<int>(d.edges.size());

    // successor[e]: the edge the thread pair continues on after e, or -1.
    std::vector<int> successor(static_cast<std::size_t>(edgeCount), -1);
    std::vector<int> predecessor(static_cast<std::size_t>(edgeCount), -1);
    for (std::size_t v = 0; v < d.vertices.size(); ++v) {
        auto slots = consecutive_out_slots(d, static_cast<int>(v));
        if (!slots) {
            if (interiority[v] == Interiority::kInterior)
                throw C1Violation("vertex " + std::to_string(v) +
                                  " is not 2-in/2-out with consecutive out-edges");
            continue;  // path endpoints at the patch boundary
        }
        const auto& rot = d.rotation[v];
        auto [so1, so2] = *slots;
        int o1 = rot[static_cast<std::size_t>(so1)];
        int o2 = rot[static_cast<std::size_t>(so2)];
        // In rotation order (o1, o2, i1, i2): i1 follows o2, i2 precedes o1.
        int i1 = rot[static_cast<std::size_t>((so2 + 1) % 4)];
        int i2 = rot[static_cast<std::size_t>((so2 + 2) % 4)];
        successor[static_cast<std::size_t>(i1)] = o2;
        successor[static_cast<std::size_t>(i2)] = o1;
        predecessor[static_cast<std::size_t>(o2)] = i1;
        predecessor[static_cast<std::size_t>(o1)] = i2;
    }

    PartitionResult out;
    out.edgeToPath.assign(static_cast<std::size_t>(edgeCount), -1);
    auto walk = [&](int start, bool cycle) {
        OsculatingPath path;
        path.cycle = cycle;
        int pathId = static_cast<int>(out.paths.size());
        int e = start;
        while (e != -1 && out.edgeToPath[static_cast<std::size_t>(e)] == -1) {
            out.edgeToPath[static_cast<std::size_t>(e)] = pathId;
            path.edges.push_back(e);
            if (path.vertices.empty())
                path.vertices.push_back(d.edges[static_cast<std::size_t>(e)].tail);
            path.vertices.push_back(d.edges[static_cast<std::size_t>(e)].head);
            e = successor[static_cast<std::size_t>(e)];
        }
        out.paths.push_back(std::move(path));
    };
    for (int e = 0; e < edgeCount; ++e)
        if (predecessor[static_cast<std::size_t>(e)] == -1) walk(e, false);
    for (int e = 0; e < edgeCount; ++e)  // anything left lies on a circuit
        if (out.edgeToPath[static_cast<std::size_t>(e)] == -1) walk(e, true);
    return out;
}

DemingFit deming_fit(const std::vector<Vec2>& points, Vec2 up) {
    if (points.size() < 2) throw DegeneratePoints("need at least 2 points");
    Vec2 centroid{0, 0};
    for (const Vec2& p : points) centroid += p;
    centroid = centroid / static_cast<double>(points.size());

    double sxx = 0, sxy = 0, syy = 0;
    for (const Vec2& p : points) {
        Vec2 q = p - centroid;
        sxx += q.x * q.x;
        sxy += q.x * q.y;
        syy += q.y * q.y;
    }
    if (sxx + syy < 1e-300) throw DegeneratePoints("all points coincide");

    double half = (sxx + syy) / 2;
    double diff = (sxx - syy) / 2;
    double root = std::hypot(diff, sxy);
    Vec2 dir;
    if (root <= 1e-9 * half) {
        dir = up.normalized();  // isotropic spread: tie toward the up vector
    } else {
        double lambda = half + root;
        // Eigenvector of the larger eigenvalue; pick the better-conditioned form.
        Vec2 cand1{lambda - syy, sxy};
        Vec2 cand2{sxy, lambda - sxx};
        dir = (cand1.norm2() >= cand2.norm2() ? cand1 : cand2).normalized();
    }
    if (dir.dot(up) < 0) dir = -dir;

    DemingFit fit;
    fit.centroid = centroid;
    fit.direction = dir;
    for (const Vec2& p : points)
        fit.maxDeviation = std::max(fit.maxDeviation, std::fabs((p - centroid).cross(dir)));
    return fit;
}

C4Metrics check_c4(const OrientedDrawing& d, double sMax) {
    C4Metrics m;
    PartitionResult partition = osculating_partition(d);
    auto interiority = classify_interiority(d);
    for (std::size_t pid = 0; pid < partition.paths.size(); ++pid) {
        const OsculatingPath& path = partition.paths[pid];
        int interiorCount = 0;
        for (int v : path.vertices)
            interiorCount += interiority[static_cast<std::size_t>(v)] == Interiority::kInterior;
        if (interiorCount < 4) continue;
        std::vector<Vec2> pts;
        pts.reserve(path.vertices.size());
        for (int v : path.vertices) pts.push_back(d.vertices[static_cast<std::size_t>(v)].pos);
        DemingFit fit = deming_fit(pts, d.up);
        double angle = std::acos(std::clamp(std::fabs(fit.direction.dot(d.up.normalized())),
                                            0.0, 1.0));
        m.perPath.push_back({static_cast<int>(pid), fit.maxDeviation, angle, interiorCount});
        m.worstDeviation = std::max(m.worstDeviation, fit.maxDeviation);
    }
    m.pass = m.worstDeviation <= sMax;
    return m;
}

VerificationReport verify_all(const OrientedDrawing& d, const VerifyThresholds& thresholds) {
    VerificationReport r;
    r.c0 = check_c0(d, thresholds.margin);
    r.c1 = check_c1(d);
    r.c2 = check_c2(d);
    r.c3 = check_c3(d);
    r.c4 = check_c4(d, thresholds.sMax);
    auto interiority = classify_interiority(d);
    for (std::size_t v = 0; v < interiority.size(); ++v)
        if (interiority[v] != Interiority::kInterior)
            r.boundaryExcludedVertices.push_back(static_cast<int>(v));
    r.pass = r.c0.pass && r.c1.pass && r.c2.pass && r.c3.pass && r.c4.pass;
    return r;
}

}  // namespace lace
