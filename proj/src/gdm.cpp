#include "laceforge/gdm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace lace {

double RhombTile::acute_angle() const {
    Vec2 u = (corners[1] - corners[0]).normalized();
    Vec2 v = (corners[3] - corners[0]).normalized();
    double a = std::acos(std::clamp(u.dot(v), -1.0, 1.0));
    return std::min(a, kPi - a);
}

namespace {

// Largest k in the family range with line_position(k) <= proj. The family
// must bracket the projection; silent clamping would mis-place dual tiles.
int ordinal_for(const std::vector<double>& positions, int kmin, double proj, double tol) {
    auto it = std::upper_bound(positions.begin(), positions.end(), proj);
    int k = kmin + static_cast<int>(it - positions.begin()) - 1;
    std::size_t idx = static_cast<std::size_t>(it - positions.begin());
    if (idx < positions.size() && std::fabs(positions[idx] - proj) < tol)
        throw OnGridLine("point lies on a grid line");
    if (idx > 0 && std::fabs(positions[idx - 1] - proj) < tol)
        throw OnGridLine("point lies on a grid line");
    if (idx == 0 || idx == positions.size())
        throw IndexOutOfRange("family index range does not cover the queried point");
    return k;
}

std::vector<std::vector<double>> family_positions(const Multigrid& grid) {
    std::vector<std::vector<double>> pos(grid.family_count());
    for (std::size_t i = 0; i < grid.family_count(); ++i) {
        const LineFamily& f = grid.families[i];
        pos[i].reserve(static_cast<std::size_t>(f.line_count()));
        for (int k = f.kmin; k <= f.kmax; ++k) pos[i].push_back(line_position(f, k));
    }
    return pos;
}

std::uint64_t corner_key(Vec2 p) {
    auto q = [](double v) { return static_cast<std::int64_t>(std::llround(v * 1e7)); };
    return (static_cast<std::uint64_t>(q(p.x)) << 32) ^
           (static_cast<std::uint64_t>(q(p.y)) & 0xffffffffULL);
}

}  // namespace

OrdinalTuple face_ordinals(const Multigrid& grid, Vec2 point) {
    auto positions = family_positions(grid);
    OrdinalTuple t;
    t.p.resize(grid.family_count());
    for (std::size_t i = 0; i < grid.family_count(); ++i) {
        double proj = grid.star(i).dot(point);
        t.p[i] = ordinal_for(positions[i], grid.families[i].kmin, proj, kGeomTol);
    }
    return t;
}

RhombTiling gdm_dual(const Multigrid& grid, const Rect& clip) {
    Arrangement arr = build_arrangement(grid, clip);
    auto positions = family_positions(grid);
    const std::size_t n = grid.family_count();

    std::vector<Vec2> star(n);
    for (std::size_t i = 0; i < n; ++i) star[i] = grid.star(i);

    RhombTiling out;
    out.grid = grid;
    out.clip = clip;
    out.tiles.reserve(arr.drawing.vertices.size());

    for (std::size_t v = 0; v < arr.drawing.vertices.size(); ++v) {
        const ArrangementVertexSource& src = arr.sources[v];
        Vec2 p = arr.drawing.vertices[v].pos;

        RhombTile tile;
        tile.gridA = src.a;
        tile.gridB = src.b;
        tile.sourceVertex = p;
        tile.sourceBoundary = arr.drawing.vertices[v].boundary;
        tile.baseOrdinals.resize(n);
        for (std::size_t m = 0; m < n; ++m) {
            if (static_cast<int>(m) == src.a.family) {
                tile.baseOrdinals[m] = src.a.line - 1;
            } else if (static_cast<int>(m) == src.b.family) {
                tile.baseOrdinals[m] = src.b.line - 1;
            } else {
                double proj = star[m].dot(p);
                tile.baseOrdinals[m] =
                    ordinal_for(positions[m], grid.families[m].kmin, proj, kGeomTol);
            }
            tile.baseOrdinalSum += tile.baseOrdinals[m];
        }

        // f(p) for the base face, then the three faces reached by stepping
        // over line a, lines a and b, and line b.
        Vec2 base{0, 0};
        for (std::size_t m = 0; m < n; ++m) base += star[m] * tile.baseOrdinals[m];
        Vec2 ea = star[static_cast<std::size_t>(src.a.family)];
        Vec2 eb = star[static_cast<std::size_t>(src.b.family)];
        if (ea.cross(eb) > 0)
            tile.corners = {base, base + ea, base + ea + eb, base + eb};
        else
            tile.corners = {base, base + eb, base + eb + ea, base + ea};
        out.tiles.push_back(std::move(tile));
    }

    // Shared edges via exact corner coincidence (corners of adjacent tiles are
    // sums of identical integer multiples of the star vectors).
    struct EdgeRef {
        int tile;
        int corner;
    };
    std::unordered_map<std::uint64_t, std::vector<EdgeRef>> edgeMap;
    edgeMap.reserve(out.tiles.size() * 4);
    for (std::size_t t = 0; t < out.tiles.size(); ++t) {
        for (int c = 0; c < 4; ++c) {
            Vec2 a = out.tiles[t].corners[static_cast<std::size_t>(c)];
            Vec2 b = out.tiles[t].corners[static_cast<std::size_t>((c + 1) % 4)];
            std::uint64_t ka = corner_key(a), kb = corner_key(b);
            std::uint64_t key = ka < kb ? ka * 2654435761u + kb : kb * 2654435761u + ka;
            edgeMap[key].push_back({static_cast<int>(t), c});
        }
    }
    for (auto& [key, refs] : edgeMap) {
        if (refs.size() < 2) continue;
        // Group by exact geometry in case of hash collisions.
        for (std::size_t i = 0; i < refs.size(); ++i) {
            for (std::size_t j = i + 1; j < refs.size(); ++j) {
                const RhombTile& ta = out.tiles[static_cast<std::size_t>(refs[i].tile)];
                const RhombTile& tb = out.tiles[static_cast<std::size_t>(refs[j].tile)];
                Vec2 a0 = ta.corners[static_cast<std::size_t>(refs[i].corner)];
                Vec2 a1 = ta.corners[static_cast<std::size_t>((refs[i].corner + 1) % 4)];
                Vec2 b0 = tb.corners[static_cast<std::size_t>(refs[j].corner)];
                Vec2 b1 = tb.corners[static_cast<std::size_t>((refs[j].corner + 1) % 4)];
                bool same = (distance(a0, b0) < kGeomTol && distance(a1, b1) < kGeomTol) ||
                            (distance(a0, b1) < kGeomTol && distance(a1, b0) < kGeomTol);
                if (!same) continue;
                TileAdjacency adj;
                adj.tileA = refs[i].tile;
                adj.tileB = refs[j].tile;
                adj.endpointA = a0;
                adj.endpointB = a1;
                // The edge runs along the star vector of the family the two
                // source crossings share.
                Vec2 dir = (a1 - a0).normalized();
                adj.edgeFamily = -1;
                for (std::size_t m = 0; m < n; ++m)
                    if (std::fabs(std::fabs(dir.dot(star[m])) - 1.0) < 1e-9) {
                        adj.edgeFamily = static_cast<int>(m);
                        break;
                    }
                out.adjacency.push_back(adj);
            }
        }
    }
    std::sort(out.adjacency.begin(), out.adjacency.end(),
              [](const TileAdjacency& x, const TileAdjacency& y) {
                  return std::tie(x.tileA, x.tileB) < std::tie(y.tileA, y.tileB);
              });
    return out;
}

Stack extract_stack(const RhombTiling& t, int family, int line) {
    GridLine target{family, line};
    Stack s;
    s.line = target;
    std::vector<std::pair<double, int>> order;
    Vec2 dir = t.grid.families.at(static_cast<std::size_t>(family)).direction();
    for (std::size_t i = 0; i < t.tiles.size(); ++i) {
        const RhombTile& tile = t.tiles[i];
        if (tile.gridA == target || tile.gridB == target)
            order.emplace_back(dir.dot(tile.sourceVertex), static_cast<int>(i));
    }
    if (order.empty())
        throw UnknownLine("no tile is dual to family " + std::to_string(family) +
                          " line " + std::to_string(line));
    std::sort(order.begin(), order.end());
    for (auto& [param, id] : order) s.tileIds.push_back(id);
    return s;
}

OrientedDrawing centroid_dual_of(const RhombTiling& t, Vec2 up) {
    OrientedDrawing d;
    d.up = up.normalized();
    std::vector<int> neighbourCount(t.tiles.size(), 0);
    for (const TileAdjacency& adj : t.adjacency) {
        neighbourCount[static_cast<std::size_t>(adj.tileA)]++;
        neighbourCount[static_cast<std::size_t>(adj.tileB)]++;
    }
    d.vertices.reserve(t.tiles.size());
    for (std::size_t i = 0; i < t.tiles.size(); ++i)
        d.vertices.push_back({t.tiles[i].centroid(), neighbourCount[i] < 4});

    for (const TileAdjacency& adj : t.adjacency) {
        if (adj.edgeFamily < 0)
            throw std::runtime_error("shared tile edge has no grid family");
        Vec2 lineDir =
            t.grid.families[static_cast<std::size_t>(adj.edgeFamily)].direction();
        if (lineDir.dot(d.up) > 0) lineDir = -lineDir;
        Vec2 delta = d.vertices[static_cast<std::size_t>(adj.tileB)].pos -
                     d.vertices[static_cast<std::size_t>(adj.tileA)].pos;
        double along = delta.dot(lineDir);
        if (std::fabs(along) < kGeomTol)
            throw std::runtime_error("degenerate dual edge orientation");
        if (along > 0)
            d.edges.push_back({adj.tileA, adj.tileB});
        else
            d.edges.push_back({adj.tileB, adj.tileA});
    }
    d.rebuild_rotation();
    return d;
}

std::vector<Stack> stack_family(const RhombTiling& t, int family) {
    std::vector<int> linesSeen;
    for (const RhombTile& tile : t.tiles) {
        if (tile.gridA.family == family) linesSeen.push_back(tile.gridA.line);
        if (tile.gridB.family == family) linesSeen.push_back(tile.gridB.line);
    }
    std::sort(linesSeen.begin(), linesSeen.end());
    linesSeen.erase(std::unique(linesSeen.begin(), linesSeen.end()), linesSeen.end());
    std::vector<Stack> out;
    out.reserve(linesSeen.size());
    for (int k : linesSeen) out.push_back(extract_stack(t, family, k));
    return out;
}

}  // namespace lace
