#include "laceforge/p3.hpp"

#include <map>
#include <set>

#include "doctest.h"
#include "laceforge/lacecheck.hpp"
#include "test_helpers.hpp"

using namespace lace;

namespace {

// Thin rhomb glued to a shifted copy so that a double edge of one meets a
// single edge of the other.
PenroseTiling mismatched_pair() {
    PenroseTiling t = single_rhomb(RhombKind::Thin);
    PlacedTile base = t.tiles[0];
    PlacedTile other = base;
    Vec2 shift = base.corners[3] - base.corners[0];
    for (Vec2& c : other.corners) c -= shift;
    t.tiles.push_back(other);
    t.thinHalves += 2;
    // Edge of `base` from corner 0 to 1 coincides with `other`'s corner 3 to 2.
    t.adjacency.push_back({{0, 0}, {1, 2}, false});
    return t;
}

}  // namespace

TEST_CASE("pentagrid_p3: two shape classes with P3 angles") {
    PenroseTiling t = pentagrid_p3(6.0, default_pentagrid_offsets(42));
    REQUIRE(t.tiles.size() > 100);
    int thin = 0, thick = 0;
    for (const PlacedTile& tile : t.tiles) {
        Vec2 u = (tile.corners[1] - tile.corners[0]);
        Vec2 v = (tile.corners[3] - tile.corners[0]);
        CHECK(u.norm() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-9));
        double angle = std::acos(std::clamp(u.dot(v), -1.0, 1.0));
        double acute = std::min(angle, kPi - angle);
        if (tile.kind == RhombKind::Thin) {
            ++thin;
            CHECK(acute == doctest::Approx(kPi / 5).epsilon(1e-9));
        } else {
            ++thick;
            CHECK(acute == doctest::Approx(2 * kPi / 5).epsilon(1e-9));
        }
    }
    CHECK(thin > 0);
    CHECK(thick > 0);
}

TEST_CASE("pentagrid_p3 satisfies the matching rules") {
    PenroseTiling t = pentagrid_p3(8.0, default_pentagrid_offsets(1));
    CHECK(check_matching(t).empty());
}

TEST_CASE("pentagrid_p3 with a tiny radius yields a small tiling without error") {
    PenroseTiling t = pentagrid_p3(0.5, default_pentagrid_offsets(42));
    CHECK(t.tiles.size() < 40);
}

TEST_CASE("matching detects a constructed violation") {
    PenroseTiling bad = mismatched_pair();
    CHECK(check_matching(bad).size() == 1);
    CHECK_THROWS_AS(deflate(bad, 1), MatchingViolationInInput);
}

TEST_CASE("single tile has no violations") {
    CHECK(check_matching(single_rhomb(RhombKind::Thick)).empty());
    CHECK(check_matching(single_rhomb(RhombKind::Thin)).empty());
}

TEST_CASE("deflate: identity at zero steps, area scales by tau^2 per step") {
    PenroseTiling seed = single_rhomb(RhombKind::Thick);
    PenroseTiling same = deflate(seed, 0);
    CHECK(same.tiles.size() == 1);
    CHECK(same.tiles[0].corners[2].x == doctest::Approx(seed.tiles[0].corners[2].x));

    double area = seed.total_area();
    PenroseTiling cur = seed;
    for (int step = 1; step <= 4; ++step) {
        cur = deflate(cur, 1);
        area *= kGoldenRatio * kGoldenRatio;
        CHECK(cur.total_area() == doctest::Approx(area).epsilon(1e-9));
    }
}

TEST_CASE("deflate output satisfies matching rules") {
    PenroseTiling t = deflate(single_rhomb(RhombKind::Thick), 6);
    CHECK(check_matching(t).empty());
    PenroseTiling t2 = deflate(single_rhomb(RhombKind::Thin), 6);
    CHECK(check_matching(t2).empty());
    // Deflating a GDM patch keeps the rules as well.
    PenroseTiling g = deflate(pentagrid_p3(4.0, default_pentagrid_offsets(5)), 2);
    CHECK(check_matching(g).empty());
}

TEST_CASE("deflate half-tile counts follow the substitution matrix") {
    // thick half -> 2 thick + 1 thin, thin half -> 1 thick + 1 thin.
    PenroseTiling cur = single_rhomb(RhombKind::Thick);
    long thick = 2, thin = 0;
    for (int step = 1; step <= 6; ++step) {
        cur = deflate(cur, 1);
        long nthick = 2 * thick + thin;
        long nthin = thick + thin;
        CHECK(cur.thickHalves == nthick);
        CHECK(cur.thinHalves == nthin);
        thick = nthick;
        thin = nthin;
    }
}

TEST_CASE("deflated halves recount: every piece is one of the two Robinson shapes") {
    PenroseTiling t = deflate(single_rhomb(RhombKind::Thick), 5);
    long thickPieces = 0, thinPieces = 0;
    auto classify = [&](RhombKind kind, Vec2 anchor, Vec2 apex, Vec2 other) {
        double a = (apex - anchor).norm();
        double b = (other - apex).norm();
        CHECK(a == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(b == doctest::Approx(1.0).epsilon(1e-9));
        double base = (other - anchor).norm();
        if (kind == RhombKind::Thick)
            CHECK(base == doctest::Approx(kGoldenRatio).epsilon(1e-9));
        else
            CHECK(base == doctest::Approx(kGoldenRatio - 1).epsilon(1e-9));
        (kind == RhombKind::Thick ? thickPieces : thinPieces)++;
    };
    for (const PlacedTile& tile : t.tiles) {
        classify(tile.kind, tile.corners[0], tile.corners[1], tile.corners[2]);
        classify(tile.kind, tile.corners[0], tile.corners[3], tile.corners[2]);
    }
    for (const HalfTile& h : t.boundaryHalves) classify(h.kind, h.anchor, h.apex, h.other);
    CHECK(thickPieces == t.thickHalves);
    CHECK(thinPieces == t.thinHalves);
}

TEST_CASE("vertex classification finds the eight configurations") {
    PenroseTiling t = pentagrid_p3(12.0, default_pentagrid_offsets(42));
    auto verts = tiling_vertices(t);
    std::set<std::string> seen;
    bool sawSun = false;
    for (const TilingVertex& v : verts) {
        if (!v.interior) {
            CHECK_THROWS_AS(classify_vertex(t, v), BoundaryVertex);
            continue;
        }
        VertexConfigClass c = classify_vertex(t, v);
        CHECK(c.classId >= 1);
        CHECK(c.classId <= 8);
        seen.insert(c.canonicalWedges);
        if (c.canonicalWedges == "K0K0K0K0K0") {
            sawSun = true;
            CHECK(v.wedges.size() == 5);  // five thick wedges of 2 pi / 5
        }
    }
    CHECK(seen.size() == 8);
    CHECK(sawSun);
}

TEST_CASE("central classification finds the seven configurations") {
    PenroseTiling t = pentagrid_p3(12.0, default_pentagrid_offsets(42));
    auto slots = t.neighbour_slots();
    std::set<std::string> seen;
    int boundaryTiles = 0;
    for (std::size_t i = 0; i < t.tiles.size(); ++i) {
        bool full = true;
        for (int s = 0; s < 4; ++s)
            if (slots[i][static_cast<std::size_t>(s)] < 0) full = false;
        if (!full) {
            ++boundaryTiles;
            CHECK_THROWS_AS(classify_central(t, static_cast<int>(i)), IncompleteNeighbourhood);
            continue;
        }
        CentralTileConfig c = classify_central(t, static_cast<int>(i));
        CHECK(c.classId >= 1);
        CHECK(c.classId <= 7);
        seen.insert(c.canonicalKey);
    }
    CHECK(seen.size() == 7);
    CHECK(boundaryTiles > 0);
}

TEST_CASE("the decoration of each central configuration is unique") {
    // Group complete neighbourhoods by congruence of their undecorated
    // geometry; each geometric class must map to exactly one decorated key.
    PenroseTiling t = pentagrid_p3(10.0, default_pentagrid_offsets(9));
    auto slots = t.neighbour_slots();
    std::map<std::string, std::set<std::string>> decorationsOfShape;
    for (std::size_t i = 0; i < t.tiles.size(); ++i) {
        bool full = true;
        for (int s = 0; s < 4; ++s)
            if (slots[i][static_cast<std::size_t>(s)] < 0) full = false;
        if (!full) continue;
        // Geometric fingerprint: the five tiles' corners relative to the
        // central centroid, canonical over the central tile's two rotations.
        std::vector<int> group{static_cast<int>(i)};
        for (int s = 0; s < 4; ++s) {
            const P3SharedEdge& e =
                t.adjacency[static_cast<std::size_t>(slots[i][static_cast<std::size_t>(s)])];
            group.push_back(e.a.tile == static_cast<int>(i) && e.a.slot == s ? e.b.tile
                                                                             : e.a.tile);
        }
        Vec2 center = t.tiles[i].centroid();
        auto fingerprint = [&](double rotation) {
            std::multiset<std::string> parts;
            for (int id : group) {
                const PlacedTile& tile = t.tiles[static_cast<std::size_t>(id)];
                std::string part = tile.kind == RhombKind::Thick ? "K" : "N";
                std::multiset<std::pair<long, long>> pts;
                for (Vec2 c : tile.corners) {
                    Vec2 r = (c - center).rotated(rotation);
                    pts.insert({std::lround(r.x * 1e6), std::lround(r.y * 1e6)});
                }
                for (auto& [x, y] : pts)
                    part += std::to_string(x) + "," + std::to_string(y) + ";";
                parts.insert(part);
            }
            std::string all;
            for (const auto& p : parts) all += p + "|";
            return all;
        };
        double poseAngle = angle_of(t.tiles[i].corners[1] - t.tiles[i].corners[0]);
        std::string shape = std::min(fingerprint(-poseAngle), fingerprint(-poseAngle + kPi));
        decorationsOfShape[shape].insert(classify_central(t, static_cast<int>(i)).canonicalKey);
    }
    CHECK(decorationsOfShape.size() >= 7);
    for (auto& [shape, keys] : decorationsOfShape) CHECK(keys.size() == 1);
}

TEST_CASE("centroid of a rhomb is the corner mean") {
    PenroseTiling t = single_rhomb(RhombKind::Thick);
    Vec2 c = t.tiles[0].centroid();
    Vec2 mean{0, 0};
    for (Vec2 p : t.tiles[0].corners) mean += p;
    mean = mean / 4;
    CHECK(c.x == doctest::Approx(mean.x));
    CHECK(c.y == doctest::Approx(mean.y));
}

TEST_CASE("centroid dual: 2-in/2-out with consecutive out-edges, acyclic") {
    PenroseTiling t = pentagrid_p3(10.0, default_pentagrid_offsets(42));
    OrientedDrawing d = centroid_dual(t);
    CHECK(d.vertices.size() == t.tiles.size());

    C1Result c1 = check_c1(d);
    CHECK(c1.pass);
    C3Result c3 = check_c3(d);
    CHECK(c3.acyclic);
    // Dual edges may tilt upward; the underlying pentagrid orientation is
    // what guarantees acyclicity.
    C2Result c2 = check_c2(d);
    CHECK(c2.connected);
    CHECK(c2.minFaceDegree >= 3);
}

TEST_CASE("centroid dual of a GDM tiling is isomorphic to the arrangement") {
    PenroseTiling t = pentagrid_p3(7.0, default_pentagrid_offsets(11));
    REQUIRE(t.gdmSource.has_value());
    OrientedDrawing d = centroid_dual(t);

    // Tiles correspond to arrangement vertices by index; the dual edge set
    // must equal the arrangement edge set under that bijection.
    Multigrid grid = t.gdmSource->grid;
    Arrangement arr = build_arrangement(grid, t.gdmSource->clip);
    std::set<std::pair<int, int>> dualEdges, primalEdges;
    for (const DrawingEdge& e : d.edges)
        dualEdges.insert({std::min(e.tail, e.head), std::max(e.tail, e.head)});
    for (const DrawingEdge& e : arr.drawing.edges)
        primalEdges.insert({std::min(e.tail, e.head), std::max(e.tail, e.head)});
    CHECK(dualEdges == primalEdges);
}

TEST_CASE("centroid dual faces fall into seven congruence classes") {
    PenroseTiling t = pentagrid_p3(14.0, default_pentagrid_offsets(42));
    OrientedDrawing d = centroid_dual(t);
    std::map<std::string, int> classes;
    for (const Face& f : extract_faces(d)) {
        if (f.outer || f.touchesBoundary) continue;
        std::vector<Vec2> poly;
        for (int v : f.vertexCycle)
            poly.push_back(d.vertices[static_cast<std::size_t>(v)].pos);
        classes[lace::testing::congruence_key(poly)]++;
    }
    CHECK(classes.size() == 7);
}

TEST_CASE("stacks of the aligned family contain osculating paths of the deflation's dual") {
    // The containment statement pairs the stacks of T belonging to the stack
    // family aligned with the orientation (near-vertical lines) with paths in
    // the osculating partition of the centroid-dual of the deflation of T.
    // Paths of the partition all descend, so only that family's strips can
    // contain whole paths; the rest are sandwiched between them.
    double radius = 8.0;
    PenroseTiling t = pentagrid_p3(radius, default_pentagrid_offsets(42));
    REQUIRE(t.gdmSource.has_value());
    PenroseTiling deflated = deflate(t, 1);
    OrientedDrawing d = centroid_dual(deflated);
    PartitionResult part = osculating_partition(d);

    const RhombTiling& src = *t.gdmSource;
    const int alignedFamily = 0;  // lines of family 0 are the near-vertical ones
    const LineFamily& fam = src.grid.families[alignedFamily];
    int stacksChecked = 0, stacksContained = 0;
    for (const Stack& s : stack_family(src, alignedFamily)) {
        // Fully interior stacks: the defining line crosses the whole clip.
        if (std::fabs(line_position(fam, s.line.line)) > 0.8 * radius) continue;
        ++stacksChecked;
        // Stack strip scaled by tau (deflate scales the patch).
        std::vector<std::array<Vec2, 4>> strip;
        for (int id : s.tileIds) {
            std::array<Vec2, 4> c = src.tiles[static_cast<std::size_t>(id)].corners;
            for (Vec2& p : c) p = p * kGoldenRatio;
            strip.push_back(c);
        }
        auto inStrip = [&](Vec2 p) {
            for (const auto& tile : strip)
                if (lace::testing::point_in_rhomb(tile, p, 1e-6)) return true;
            return false;
        };
        // Some path must run through the strip without leaving it: all path
        // vertices between its first and last in-strip vertex are in-strip.
        bool contained = false;
        for (const OsculatingPath& path : part.paths) {
            int first = -1, last = -1;
            int n = static_cast<int>(path.vertices.size());
            for (int i = 0; i < n; ++i)
                if (inStrip(d.vertices[static_cast<std::size_t>(path.vertices[i])].pos)) {
                    if (first < 0) first = i;
                    last = i;
                }
            if (first < 0 || last - first < 20) continue;
            bool gap = false;
            for (int i = first; i <= last && !gap; ++i)
                if (!inStrip(d.vertices[static_cast<std::size_t>(path.vertices[i])].pos))
                    gap = true;
            if (!gap) {
                contained = true;
                break;
            }
        }
        if (contained) ++stacksContained;
    }
    CHECK(stacksChecked >= 10);
    CHECK(stacksContained == stacksChecked);
}
