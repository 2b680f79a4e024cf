#include "laceforge/p3.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace lace {

namespace {

constexpr double kTau = kGoldenRatio;

// Quantised coordinate key; std::map keeps everything deterministic.
using PointKey = std::pair<long, long>;
PointKey point_key(Vec2 p) {
    return {std::lround(p.x * 1e7), std::lround(p.y * 1e7)};
}
PointKey midpoint_key(Vec2 a, Vec2 b) { return point_key((a + b) / 2); }

}  // namespace

EdgeMark prototile_mark(RhombKind kind, int edgeSlot) {
    int slot = ((edgeSlot % 4) + 4) % 4;
    switch (slot) {
        case 0: return {ArrowShape::Double, -1};
        case 3: return {ArrowShape::Double, +1};
        case 1: return {ArrowShape::Single, kind == RhombKind::Thin ? -1 : +1};
        default: return {ArrowShape::Single, kind == RhombKind::Thin ? +1 : -1};
    }
}

DecoratedPrototile prototile(RhombKind kind) {
    DecoratedPrototile p;
    p.kind = kind;
    p.acuteAngle = acute_angle_of(kind);
    for (int s = 0; s < 4; ++s) p.edgeMarks[static_cast<std::size_t>(s)] = prototile_mark(kind, s);
    return p;
}

int PlacedTile::pose_rotation(double referenceAngle) const {
    double a = angle_of(corners[1] - corners[0]) - referenceAngle;
    double unit = kPi / 5;
    long k = std::lround(a / unit);
    return static_cast<int>(((k % 10) + 10) % 10);
}

double PenroseTiling::total_area() const {
    double area = 0;
    for (const PlacedTile& t : tiles) {
        Vec2 d1 = t.corners[1] - t.corners[0];
        Vec2 d2 = t.corners[3] - t.corners[0];
        area += std::fabs(d1.cross(d2));
    }
    for (const HalfTile& h : boundaryHalves) area += h.area();
    return area;
}

std::vector<std::array<int, 4>> PenroseTiling::neighbour_slots() const {
    std::vector<std::array<int, 4>> out(tiles.size(), {-1, -1, -1, -1});
    for (std::size_t i = 0; i < adjacency.size(); ++i) {
        const P3SharedEdge& e = adjacency[i];
        out[static_cast<std::size_t>(e.a.tile)][static_cast<std::size_t>(e.a.slot)] =
            static_cast<int>(i);
        out[static_cast<std::size_t>(e.b.tile)][static_cast<std::size_t>(e.b.slot)] =
            static_cast<int>(i);
    }
    return out;
}

std::array<double, 5> default_pentagrid_offsets(unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uni(0.05, 0.95);
    std::array<double, 5> lambda{};
    double mean = 0;
    for (double& v : lambda) {
        v = uni(rng);
        mean += v;
    }
    mean /= 5;
    for (double& v : lambda) v -= mean;
    return lambda;
}

namespace {

// Builds adjacency between placed tiles from coincident edge midpoints.
void build_adjacency(PenroseTiling& t) {
    std::map<PointKey, std::vector<TileEdgeRef>> edges;
    for (std::size_t i = 0; i < t.tiles.size(); ++i)
        for (int s = 0; s < 4; ++s) {
            const PlacedTile& tile = t.tiles[i];
            edges[midpoint_key(tile.corners[static_cast<std::size_t>(s)],
                               tile.corners[static_cast<std::size_t>((s + 1) % 4)])]
                .push_back({static_cast<int>(i), s});
        }
    t.adjacency.clear();
    for (auto& [key, refs] : edges) {
        if (refs.size() != 2) continue;
        const PlacedTile& ta = t.tiles[static_cast<std::size_t>(refs[0].tile)];
        const PlacedTile& tb = t.tiles[static_cast<std::size_t>(refs[1].tile)];
        Vec2 da = ta.corners[static_cast<std::size_t>((refs[0].slot + 1) % 4)] -
                  ta.corners[static_cast<std::size_t>(refs[0].slot)];
        Vec2 db = tb.corners[static_cast<std::size_t>((refs[1].slot + 1) % 4)] -
                  tb.corners[static_cast<std::size_t>(refs[1].slot)];
        t.adjacency.push_back({refs[0], refs[1], da.dot(db) > 0});
    }
}

}  // namespace

PenroseTiling pentagrid_p3(double radius, std::array<double, 5> offsets, double starTilt) {
    if (radius <= 0) throw std::invalid_argument("radius must be positive");
    double mean = (offsets[0] + offsets[1] + offsets[2] + offsets[3] + offsets[4]) / 5;
    for (double& v : offsets) v -= mean;

    Multigrid grid;
    int span = static_cast<int>(std::ceil(radius * 1.5)) + 3;
    for (int i = 0; i < 5; ++i)
        grid.families.push_back({2 * kPi * i / 5 + starTilt, offsets[static_cast<std::size_t>(i)],
                                 ConstantSpacing{1.0}, -span, span});
    RhombTiling dual = gdm_dual(grid, Rect::centered_square(radius));

    PenroseTiling out;
    out.provenance = PenroseTiling::Provenance::Gdm;
    out.starTilt = starTilt;
    out.tiles.reserve(dual.tiles.size());
    for (const RhombTile& rt : dual.tiles) {
        if (rt.baseOrdinalSum != -4 && rt.baseOrdinalSum != -3)
            throw std::runtime_error("pentagrid index sums outside the P3 range");
        PlacedTile tile;
        tile.kind = rt.acute_angle() > kPi / 4 ? RhombKind::Thick : RhombKind::Thin;
        int anchor = rt.baseOrdinalSum == -4 ? 0 : 2;
        for (int i = 0; i < 4; ++i)
            tile.corners[static_cast<std::size_t>(i)] =
                rt.corners[static_cast<std::size_t>((anchor + i) % 4)];
        out.tiles.push_back(tile);
        if (tile.kind == RhombKind::Thick)
            out.thickHalves += 2;
        else
            out.thinHalves += 2;
    }
    out.gdmSource = std::move(dual);
    build_adjacency(out);
    return out;
}

std::vector<MatchingViolation> check_matching(const PenroseTiling& t) {
    std::vector<MatchingViolation> out;
    for (const P3SharedEdge& e : t.adjacency) {
        EdgeMark ma = t.tiles[static_cast<std::size_t>(e.a.tile)].mark(e.a.slot);
        EdgeMark mb = t.tiles[static_cast<std::size_t>(e.b.tile)].mark(e.b.slot);
        int senseB = e.sameDirection ? mb.sense : -mb.sense;
        if (ma.shape != mb.shape || ma.sense != senseB) out.push_back({e.a, e.b});
    }
    return out;
}

PenroseTiling single_rhomb(RhombKind kind, double starTilt) {
    PenroseTiling out;
    out.provenance = PenroseTiling::Provenance::Deflation;
    out.starTilt = starTilt;
    PlacedTile tile;
    tile.kind = kind;
    double anchorAngle = kind == RhombKind::Thick ? 2 * kPi / 5 : 4 * kPi / 5;
    Vec2 u1 = unit_vector(starTilt);
    Vec2 u2 = unit_vector(starTilt + anchorAngle);
    tile.corners = {Vec2{0, 0}, u1, u1 + u2, u2};
    out.tiles.push_back(tile);
    if (kind == RhombKind::Thick)
        out.thickHalves = 2;
    else
        out.thinHalves = 2;
    return out;
}

namespace {

struct Robinson {
    RhombKind kind;
    Vec2 anchor, apex, other;
};

// One tau-scaling-and-subdivision step on a set of half-tiles.
std::vector<Robinson> substitute(const std::vector<Robinson>& halves) {
    std::vector<Robinson> next;
    next.reserve(halves.size() * 3);
    for (const Robinson& h : halves) {
        if (h.kind == RhombKind::Thin) {
            Vec2 p = h.anchor * kTau, q = h.apex * kTau, r = h.other * kTau;
            Vec2 x = q + (r - q) / kTau;
            next.push_back({RhombKind::Thick, q, x, p});
            next.push_back({RhombKind::Thin, r, p, x});
        } else {
            Vec2 a = h.anchor * kTau, b = h.apex * kTau, c = h.other * kTau;
            Vec2 y = c + (b - c) / kTau;
            Vec2 z = c + (a - c) / kTau;
            next.push_back({RhombKind::Thick, c, y, z});
            next.push_back({RhombKind::Thick, b, z, a});
            next.push_back({RhombKind::Thin, b, z, y});
        }
    }
    return next;
}

}  // namespace

PenroseTiling deflate(const PenroseTiling& patch, int steps) {
    if (steps < 0) throw std::invalid_argument("steps must be non-negative");
    if (!check_matching(patch).empty())
        throw MatchingViolationInInput("input tiling violates the matching rules");
    if (steps == 0) return patch;

    std::vector<Robinson> halves;
    halves.reserve(patch.tiles.size() * 2 + patch.boundaryHalves.size());
    for (const PlacedTile& t : patch.tiles) {
        halves.push_back({t.kind, t.corners[0], t.corners[1], t.corners[2]});
        halves.push_back({t.kind, t.corners[0], t.corners[3], t.corners[2]});
    }
    for (const HalfTile& h : patch.boundaryHalves)
        halves.push_back({h.kind, h.anchor, h.apex, h.other});

    for (int s = 0; s < steps; ++s) halves = substitute(halves);

    PenroseTiling out;
    out.provenance = PenroseTiling::Provenance::Deflation;
    out.starTilt = patch.starTilt;
    for (const Robinson& h : halves)
        (h.kind == RhombKind::Thick ? out.thickHalves : out.thinHalves)++;

    // Re-glue mirror pairs across the anchor-other diagonal.
    std::map<PointKey, std::vector<int>> byDiagonal;
    for (std::size_t i = 0; i < halves.size(); ++i)
        byDiagonal[midpoint_key(halves[i].anchor, halves[i].other)].push_back(
            static_cast<int>(i));
    for (auto& [key, ids] : byDiagonal) {
        if (ids.size() == 1) {
            const Robinson& h = halves[static_cast<std::size_t>(ids[0])];
            out.boundaryHalves.push_back({h.kind, h.anchor, h.apex, h.other});
            continue;
        }
        if (ids.size() != 2)
            throw std::runtime_error("deflation produced an over-shared half-tile diagonal");
        const Robinson& h1 = halves[static_cast<std::size_t>(ids[0])];
        const Robinson& h2 = halves[static_cast<std::size_t>(ids[1])];
        if (distance(h1.anchor, h2.anchor) > 1e-6 || distance(h1.other, h2.other) > 1e-6 ||
            h1.kind != h2.kind)
            throw std::runtime_error("deflation produced inconsistent mirror halves");
        PlacedTile tile;
        tile.kind = h1.kind;
        if ((h1.apex - h1.anchor).cross(h2.apex - h1.anchor) > 0)
            tile.corners = {h1.anchor, h1.apex, h1.other, h2.apex};
        else
            tile.corners = {h1.anchor, h2.apex, h1.other, h1.apex};
        out.tiles.push_back(tile);
    }
    build_adjacency(out);
    return out;
}

// --- vertex handling --------------------------------------------------------

std::vector<TilingVertex> tiling_vertices(const PenroseTiling& t) {
    std::map<PointKey, std::vector<TileEdgeRef>> corners;
    for (std::size_t i = 0; i < t.tiles.size(); ++i)
        for (int c = 0; c < 4; ++c)
            corners[point_key(t.tiles[i].corners[static_cast<std::size_t>(c)])].push_back(
                {static_cast<int>(i), c});

    std::vector<TilingVertex> out;
    out.reserve(corners.size());
    for (auto& [key, refs] : corners) {
        TilingVertex v;
        v.pos = t.tiles[static_cast<std::size_t>(refs[0].tile)]
                    .corners[static_cast<std::size_t>(refs[0].slot)];
        // Sort wedges ccw by their opening direction.
        std::sort(refs.begin(), refs.end(), [&](const TileEdgeRef& x, const TileEdgeRef& y) {
            auto start = [&](const TileEdgeRef& r) {
                const PlacedTile& tile = t.tiles[static_cast<std::size_t>(r.tile)];
                return angle_of(tile.corners[static_cast<std::size_t>((r.slot + 1) % 4)] -
                                tile.corners[static_cast<std::size_t>(r.slot)]);
            };
            return start(x) < start(y);
        });
        v.wedges = refs;
        // Interior iff consecutive wedges chain all the way around.
        v.interior = true;
        for (std::size_t w = 0; w < refs.size() && v.interior; ++w) {
            const PlacedTile& cur = t.tiles[static_cast<std::size_t>(refs[w].tile)];
            const PlacedTile& nxt =
                t.tiles[static_cast<std::size_t>(refs[(w + 1) % refs.size()].tile)];
            int cs = refs[w].slot;
            int ns = refs[(w + 1) % refs.size()].slot;
            Vec2 curEnd = cur.corners[static_cast<std::size_t>((cs + 3) % 4)] -
                          cur.corners[static_cast<std::size_t>(cs)];
            Vec2 nxtStart = nxt.corners[static_cast<std::size_t>((ns + 1) % 4)] -
                            nxt.corners[static_cast<std::size_t>(ns)];
            if (std::fabs(curEnd.normalized().cross(nxtStart.normalized())) > 1e-6 ||
                curEnd.dot(nxtStart) < 0)
                v.interior = false;
        }
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

// A wedge is encoded as tile kind plus corner role (0 anchor, 1, 2 opposite,
// 3); kind and role determine the wedge angle and the arrows on its edges.
// Reflection reverses the cycle and swaps roles 1 and 3.
std::string canonical_wedge_cycle(std::vector<std::pair<char, int>> wedges) {
    auto render = [](const std::vector<std::pair<char, int>>& v) {
        std::string s;
        for (auto& [kind, role] : v) {
            s += kind;
            s += static_cast<char>('0' + role);
        }
        return s;
    };
    auto minRotation = [&](std::vector<std::pair<char, int>> v) {
        std::string best = render(v);
        for (std::size_t i = 1; i < v.size(); ++i) {
            std::rotate(v.begin(), v.begin() + 1, v.end());
            best = std::min(best, render(v));
        }
        return best;
    };
    std::string best = minRotation(wedges);
    std::vector<std::pair<char, int>> mirrored(wedges.rbegin(), wedges.rend());
    for (auto& [kind, role] : mirrored) role = (4 - role) % 4;
    return std::min(best, minRotation(mirrored));
}

// The eight vertex configurations of P3, frozen from large pentagrid and
// deflation patches (identical sets across seeds and provenances). Angle
// units alone merge the two five-fold stars; the corner roles separate them.
const std::vector<std::string> kVertexKeys = {
    "K0K0K0K0K0", "K0K0K0N0", "K0N0N0", "K1K3N2",
    "K1N3K2N1K3", "K2K2K2K2K2", "K2K2K2K2N1N3", "K2K2N1N3K2N1N3",
};

// The seven central-tile configurations (central kind, then per-slot
// neighbour kind, glued slot and direction bit), same derivation.
const std::vector<std::string> kCentralKeys = {
    "K|K3-N1-K1-N0-", "K|K3-N1-N2-K0-", "K|N3-K2-K1-N0-", "K|N3-K2-N2-K0-",
    "N|K3-K1-K2-K0-", "N|K3-K1-K2-N0-", "N|N3-K1-K2-K0-",
};

}  // namespace

VertexConfigClass classify_vertex(const PenroseTiling& t, const TilingVertex& v) {
    if (!v.interior)
        throw BoundaryVertex("vertex wedge fan does not close up");
    std::vector<std::pair<char, int>> wedges;
    for (const TileEdgeRef& w : v.wedges)
        wedges.push_back(
            {t.tiles[static_cast<std::size_t>(w.tile)].kind == RhombKind::Thick ? 'K' : 'N',
             w.slot});
    VertexConfigClass out;
    out.canonicalWedges = canonical_wedge_cycle(std::move(wedges));
    auto it = std::find(kVertexKeys.begin(), kVertexKeys.end(), out.canonicalWedges);
    if (it == kVertexKeys.end())
        throw UnknownConfiguration("vertex configuration " + out.canonicalWedges +
                                   " is not one of the eight P3 classes");
    out.classId = static_cast<int>(it - kVertexKeys.begin()) + 1;
    return out;
}

CentralTileConfig classify_central(const PenroseTiling& t, int tileId) {
    auto slots = t.neighbour_slots();
    const auto& mySlots = slots.at(static_cast<std::size_t>(tileId));
    const PlacedTile& center = t.tiles[static_cast<std::size_t>(tileId)];
    std::string key;
    key += center.kind == RhombKind::Thick ? 'K' : 'N';
    key += '|';
    for (int s = 0; s < 4; ++s) {
        int adjIdx = mySlots[static_cast<std::size_t>(s)];
        if (adjIdx < 0)
            throw IncompleteNeighbourhood("tile " + std::to_string(tileId) +
                                          " lacks a neighbour on slot " + std::to_string(s));
        const P3SharedEdge& e = t.adjacency[static_cast<std::size_t>(adjIdx)];
        TileEdgeRef nb = e.a.tile == tileId && e.a.slot == s ? e.b : e.a;
        const PlacedTile& other = t.tiles[static_cast<std::size_t>(nb.tile)];
        key += other.kind == RhombKind::Thick ? 'K' : 'N';
        key += static_cast<char>('0' + nb.slot);
        key += e.sameDirection ? '+' : '-';
    }
    CentralTileConfig out;
    out.canonicalKey = key;
    auto it = std::find(kCentralKeys.begin(), kCentralKeys.end(), key);
    if (it == kCentralKeys.end())
        throw UnknownConfiguration("central configuration " + key +
                                   " is not one of the seven P3 classes");
    out.classId = static_cast<int>(it - kCentralKeys.begin()) + 1;
    return out;
}

const std::vector<std::string>& p3_vertex_class_keys() { return kVertexKeys; }
const std::vector<std::string>& p3_central_class_keys() { return kCentralKeys; }

OrientedDrawing centroid_dual(const PenroseTiling& t) {
    OrientedDrawing d;
    d.up = {0, 1};
    auto slots = t.neighbour_slots();
    d.vertices.reserve(t.tiles.size());
    for (std::size_t i = 0; i < t.tiles.size(); ++i) {
        bool boundary = false;
        for (int s = 0; s < 4; ++s)
            if (slots[i][static_cast<std::size_t>(s)] < 0) boundary = true;
        d.vertices.push_back({t.tiles[i].centroid(), boundary});
    }
    std::array<Vec2, 5> star;
    for (int j = 0; j < 5; ++j)
        star[static_cast<std::size_t>(j)] = unit_vector(2 * kPi * j / 5 + t.starTilt);

    for (const P3SharedEdge& e : t.adjacency) {
        const PlacedTile& ta = t.tiles[static_cast<std::size_t>(e.a.tile)];
        Vec2 edgeDir = (ta.corners[static_cast<std::size_t>((e.a.slot + 1) % 4)] -
                        ta.corners[static_cast<std::size_t>(e.a.slot)])
                           .normalized();
        // The primal edge is parallel to the star vector of the grid family
        // whose lines cross it; that family's downward line direction orients
        // the dual edge.
        int family = -1;
        for (int j = 0; j < 5; ++j)
            if (std::fabs(std::fabs(edgeDir.dot(star[static_cast<std::size_t>(j)])) - 1.0) <
                1e-6) {
                family = j;
                break;
            }
        if (family < 0)
            throw std::runtime_error("tile edge is not aligned with the orientation star");
        Vec2 lineDir = star[static_cast<std::size_t>(family)].perp();
        if (lineDir.dot(d.up) > 0) lineDir = -lineDir;
        Vec2 delta = d.vertices[static_cast<std::size_t>(e.b.tile)].pos -
                     d.vertices[static_cast<std::size_t>(e.a.tile)].pos;
        double along = delta.dot(lineDir);
        if (std::fabs(along) < kGeomTol)
            throw std::runtime_error("degenerate dual edge orientation");
        if (along > 0)
            d.edges.push_back({e.a.tile, e.b.tile});
        else
            d.edges.push_back({e.b.tile, e.a.tile});
    }
    d.rebuild_rotation();
    return d;
}

}  // namespace lace
